//! Two composition series of one tower group with different lengths.

use crate::ordinal::Ordinal;
use crate::tower::{LabelPattern, PositionBijection, SimpleLabel, TowerGroup, TowerSeries};

use super::{jordan_holder_check, validate, JordanHolderVerdict, SeriesError, TransfiniteSeries, ValidationReport};

/// Outcome of [`demo_transfinite`].
#[derive(Debug, Clone)]
pub struct TransfiniteDemo {
    pub first: TransfiniteSeries,
    pub second: TransfiniteSeries,
    pub first_report: ValidationReport,
    pub second_report: ValidationReport,
    /// Both series pass the union check at index `ω`.
    pub limit_checked: bool,
    pub verdict: JordanHolderVerdict,
}

impl TransfiniteDemo {
    /// Isomorphic series whose lengths differ but have equal cardinality.
    pub fn passed(&self) -> bool {
        self.first_report.is_valid()
            && self.second_report.is_valid()
            && self.limit_checked
            && self.verdict.isomorphic
            && self.verdict.refinements_fixed
            && !self.verdict.lengths_equal()
            && self.verdict.cardinalities_equal()
    }

    pub fn summary(&self) -> String {
        let iso = if self.verdict.isomorphic { "isomorphic" } else { "not isomorphic" };
        let lengths = if self.verdict.lengths_equal() { "n=m" } else { "n≠m" };
        let cards = if self.verdict.cardinalities_equal() { "|n|=|m|" } else { "|n|≠|m|" };
        format!("{iso}, {lengths}, {cards}")
    }
}

/// Builds the tower group on positions `[0, ω+1)` with factors
/// alternating `C2`, `C3`, and compares the series adding positions in
/// order against the one that adds position 0 last.
pub fn demo_transfinite() -> Result<TransfiniteDemo, SeriesError> {
    let bound = Ordinal::omega().successor().map_err(crate::tower::TowerError::from)?;
    let group = TowerGroup::new(
        bound.clone(),
        LabelPattern::Parity {
            even: SimpleLabel::Cyclic(2),
            odd: SimpleLabel::Cyclic(3),
        },
    )?;
    let in_order = PositionBijection::identity(bound.clone());
    let zero_last = in_order.move_block(&Ordinal::zero(), &Ordinal::one(), None)?;
    let first = TowerSeries::from_bijection(group.clone(), in_order)?;
    let second = TowerSeries::from_bijection(group, zero_last)?;
    let omega = Ordinal::omega();
    let limit_checked = [&first, &second].iter().all(|s| {
        s.bijection()
            .map(|pi| s.limit_is_union(pi, &omega).unwrap_or(false))
            .unwrap_or(false)
    });
    let (first, second): (TransfiniteSeries, TransfiniteSeries) = (first.into(), second.into());
    let verdict = jordan_holder_check(&first, &second)?;
    Ok(TransfiniteDemo {
        first_report: validate(&first),
        second_report: validate(&second),
        first,
        second,
        limit_checked,
        verdict,
    })
}
