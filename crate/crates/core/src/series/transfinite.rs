//! Series computations on tower groups.
//!
//! Refinement is supported for composition series. For those, row `i` of
//! the double family `G_i (G_{i+1} ∩ H_j)` equals `G_i` while `j` is below
//! the index `t_i` at which the second series first contains the position
//! added at step `i`, and `G_{i+1}` from there on. The classes of the
//! glued family are therefore located by thresholds instead of being
//! enumerated, and the refinements coincide with the inputs.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::indexset::{ClassLocator, ConcordantQuotient, PairIndex, ProductOrder};
use crate::ordinal::Ordinal;
use crate::tower::{Cardinality, FactorLabels, IntervalSet, PositionBijection, TowerSeries};

use super::{
    CompositionReport, FactorEntry, FactorKind, Pairing, RefinementResult, SeriesError, StepCertificate,
    TransfiniteSeries, CHECK_SEED, LIMIT_SAMPLES,
};

/// Pairs sampled when cross-checking the located classes.
const PAIR_SAMPLES: usize = 256;

/// Finite factor indices listed in the factor table.
const TABLE_PREFIX: u32 = 8;

fn require_valid(s: &TowerSeries, which: &str) -> Result<(), SeriesError> {
    let violations = s.violations(LIMIT_SAMPLES, CHECK_SEED);
    if violations.is_empty() {
        return Ok(());
    }
    let parts: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    Err(SeriesError::Invalid(format!("{which} series: {}", parts.join("; "))))
}

/// The same composition series given by an enumeration of positions.
fn enumeration_of(s: &TowerSeries) -> Result<TowerSeries, SeriesError> {
    if s.bijection().is_some() {
        return Ok(s.clone());
    }
    let steps = s.length().as_natural().expect("explicit series are finite");
    let mut blocks = Vec::with_capacity(steps as usize);
    for i in 1..steps {
        let added = s.increment(&Ordinal::from(i))?;
        let q = added.as_singleton().expect("composition step").clone();
        blocks.push((q.clone(), q.successor().map_err(crate::tower::TowerError::from)?));
    }
    let pi = PositionBijection::from_blocks(s.group().bound().clone(), blocks)?;
    Ok(TowerSeries::from_bijection(s.group().clone(), pi)?)
}

/// Classes of `G_i (G_{i+1} ∩ H_j)` over `[1, n) x [1, m]`, plus `(n, 1)`
/// when `n` is a limit; the class of rank `r` has value `G_r`.
struct ThresholdClasses {
    rows: TowerSeries,
    columns: TowerSeries,
    n: Ordinal,
    m: Ordinal,
}

impl ThresholdClasses {
    /// `t_i`: first column index containing the position added at row `i`.
    fn threshold(&self, i: &Ordinal) -> Ordinal {
        let added = self.rows.increment(i).expect("row below n");
        let q = added.as_singleton().expect("composition step");
        self.columns.threshold(q).expect("position below bound")
    }
}

impl ClassLocator for ThresholdClasses {
    fn class_of(&self, pair: &PairIndex) -> Ordinal {
        if pair.major == self.n {
            return self.n.clone();
        }
        if pair.minor < self.threshold(&pair.major) {
            pair.major.clone()
        } else {
            pair.major.successor().expect("rank within caps")
        }
    }

    fn class_min(&self, rank: &Ordinal) -> Option<PairIndex> {
        if rank.is_zero() || *rank > self.n {
            return None;
        }
        if *rank == Ordinal::one() {
            return Some(PairIndex::from((1, 1)));
        }
        if rank.is_limit() {
            return Some(PairIndex::new(rank.clone(), Ordinal::one()));
        }
        let k = rank.predecessor().expect("successor rank");
        let t = self.threshold(&k);
        Some(PairIndex::new(k, t))
    }

    fn class_max(&self, rank: &Ordinal) -> Option<PairIndex> {
        if rank.is_zero() || *rank > self.n {
            return None;
        }
        if *rank < self.n {
            let t = self.threshold(rank);
            return Some(PairIndex::new(rank.clone(), t.predecessor().expect("threshold >= 2")));
        }
        if self.n.is_limit() {
            Some(PairIndex::new(self.n.clone(), Ordinal::one()))
        } else {
            Some(PairIndex::new(self.n.predecessor().expect("successor"), self.m.clone()))
        }
    }

    fn order_type(&self) -> Ordinal {
        self.n.clone()
    }
}

fn quotient_for(rows: &TowerSeries, columns: &TowerSeries) -> Result<ConcordantQuotient, SeriesError> {
    let (n, m) = (rows.length(), columns.length());
    let order = ProductOrder::new(n.clone(), m.clone())?;
    let locator = ThresholdClasses {
        rows: rows.clone(),
        columns: columns.clone(),
        n,
        m,
    };
    Ok(ConcordantQuotient::from_locator(order, Arc::new(locator)))
}

/// `G_i (G_{i+1} ∩ H_j)` computed directly from supports.
fn cell_support(rows: &TowerSeries, columns: &TowerSeries, pair: &PairIndex) -> Result<IntervalSet, SeriesError> {
    if pair.major == rows.length() {
        return Ok(rows.group().whole());
    }
    let lower = rows.support(&pair.major)?;
    let upper = rows.support(&pair.major.successor().map_err(crate::tower::TowerError::from)?)?;
    let column = columns.support(&pair.minor)?;
    Ok(lower.union(&upper.intersect(&column)))
}

/// Ranks at which the refinement is cross-checked and tabulated: a finite
/// prefix, the limit indices with their successors, and the top.
fn sample_ranks(s: &TowerSeries) -> Vec<Ordinal> {
    let n = s.length();
    let mut ranks: Vec<Ordinal> = (1..=TABLE_PREFIX).map(Ordinal::from).filter(|r| *r <= n).collect();
    for limit in s.limit_indices(LIMIT_SAMPLES, CHECK_SEED) {
        if let Ok(next) = limit.successor() {
            ranks.push(next);
        }
        ranks.push(limit);
    }
    ranks.push(n.clone());
    ranks.retain(|r| *r <= n);
    ranks.sort();
    ranks.dedup();
    ranks
}

/// Checks the located classes against direct support computations.
fn cross_check(rows: &TowerSeries, columns: &TowerSeries, quotient: &ConcordantQuotient) -> Result<(), SeriesError> {
    let fail = |what: String| Err(SeriesError::Internal(what));
    let order = quotient.order();
    let mut pairs: Vec<PairIndex> = Vec::new();
    for rank in sample_ranks(rows) {
        pairs.push(quotient.class_min(&rank)?);
        pairs.push(quotient.class_max_of_rank(&rank)?);
        if let Some(next) = quotient.class_successor(&rank)? {
            let top = quotient.class_max_of_rank(&rank)?;
            if order.successor(&top)? != quotient.class_min(&next)? {
                return fail(format!("class {next} does not start right after class {rank}"));
            }
        }
        if rank.is_limit() && rank < rows.length() {
            let pi = rows.bijection().expect("enumeration");
            if !rows.limit_is_union(pi, &rank)? {
                return fail(format!("limit class {rank} is not the union of earlier classes"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    pairs.extend((0..PAIR_SAMPLES).map(|_| order.sample(&mut rng)));
    for pair in pairs {
        let rank = quotient.class_of(&pair)?;
        if cell_support(rows, columns, &pair)? != rows.support(&rank)? {
            return fail(format!("value at {pair} is not the term of class {rank}"));
        }
    }
    Ok(())
}

pub(super) fn schreier_refine(a: &TowerSeries, b: &TowerSeries) -> Result<RefinementResult, SeriesError> {
    require_valid(a, "first")?;
    require_valid(b, "second")?;
    if a.group() != b.group() {
        return Err(SeriesError::DifferentGroups);
    }
    if !a.is_composition() {
        return Err(SeriesError::NotComposition("first"));
    }
    if !b.is_composition() {
        return Err(SeriesError::NotComposition("second"));
    }
    let (rows, columns) = (enumeration_of(a)?, enumeration_of(b)?);
    let first_quotient = quotient_for(&rows, &columns)?;
    let second_quotient = quotient_for(&columns, &rows)?;
    cross_check(&rows, &columns, &first_quotient)?;
    cross_check(&columns, &rows, &second_quotient)?;

    let pairing = Pairing::Positions {
        first: Box::new(rows.clone()),
        second: Box::new(columns.clone()),
    };
    let mut factor_table = Vec::new();
    let n = rows.length();
    for rank in sample_ranks(&rows).into_iter().filter(|r| *r < n) {
        // The factor after class `rank` pairs with the class of the
        // swapped class maximum.
        let top = first_quotient.class_max_of_rank(&rank)?;
        let image = second_quotient.class_of(&top.swapped())?;
        if pairing.image(&rank)?.as_ref() != Some(&image) {
            return Err(SeriesError::Internal(format!("pairing of factor {rank} disagrees")));
        }
        let position = rows.increment(&rank)?.as_singleton().expect("composition step").clone();
        factor_table.push(FactorEntry {
            first: rank,
            second: image,
            factor: FactorKind::Label(rows.group().label_of(&position)?),
        });
    }
    Ok(RefinementResult {
        refined_first: TransfiniteSeries::Tower(a.clone()),
        refined_second: TransfiniteSeries::Tower(b.clone()),
        first_quotient: Some(first_quotient),
        second_quotient: Some(second_quotient),
        pairing,
        factor_table,
    })
}

pub(super) fn series_isomorphic(a: &TowerSeries, b: &TowerSeries) -> Result<Option<Pairing>, SeriesError> {
    if a.is_composition() && b.is_composition() {
        if a.group() == b.group() {
            return Ok(Some(Pairing::Positions {
                first: Box::new(enumeration_of(a)?),
                second: Box::new(enumeration_of(b)?),
            }));
        }
        let counts = a.group().label_counts(&a.group().whole());
        if counts == b.group().label_counts(&b.group().whole()) {
            return Ok(Some(Pairing::LabelCounts(counts)));
        }
        return Ok(None);
    }
    // A non-simple factor can only match a series with finitely many
    // factors listed explicitly.
    let (Some(n), Some(m)) = (a.length().as_natural(), b.length().as_natural()) else {
        return Ok(None);
    };
    if n != m {
        return Ok(None);
    }
    let factors = |s: &TowerSeries, k: u32| -> Result<Vec<(FactorLabels, u32)>, SeriesError> {
        let mut out = (1..k)
            .map(|i| Ok((s.factor_label(&Ordinal::from(i))?, i)))
            .collect::<Result<Vec<_>, SeriesError>>()?;
        out.sort_by(|x, y| x.0.counts.cmp(&y.0.counts).then(x.1.cmp(&y.1)));
        Ok(out)
    };
    let (fa, fb) = (factors(a, n)?, factors(b, m)?);
    if fa.iter().zip(&fb).any(|(x, y)| x.0 != y.0) {
        return Ok(None);
    }
    let mut pairs: Vec<(Ordinal, Ordinal)> = fa
        .iter()
        .zip(&fb)
        .map(|(x, y)| (Ordinal::from(x.1), Ordinal::from(y.1)))
        .collect();
    pairs.sort();
    Ok(Some(Pairing::Explicit(pairs)))
}

pub(super) fn composition_report(s: &TowerSeries) -> Result<CompositionReport, SeriesError> {
    let Some(n) = s.length().as_natural() else {
        return Ok(CompositionReport {
            is_composition: s.is_composition(),
            steps: Vec::new(),
        });
    };
    let mut steps = Vec::new();
    for i in 1..n {
        let labels = s.factor_label(&Ordinal::from(i))?;
        steps.push(StepCertificate {
            index: Ordinal::from(i),
            simple: labels.simple,
            factor: labels.to_string(),
        });
    }
    Ok(CompositionReport {
        is_composition: steps.iter().all(|s| s.simple),
        steps,
    })
}

pub(super) fn factor_multiset(s: &TowerSeries) -> Result<BTreeMap<FactorKind, Cardinality>, SeriesError> {
    Ok(s
        .factor_label_counts()?
        .into_iter()
        .map(|(label, count)| (FactorKind::Label(label), count))
        .collect())
}

/// Whether `set` is the image of a slot prefix of `pi`.
fn is_initial_segment(pi: &PositionBijection, set: &IntervalSet) -> Result<bool, SeriesError> {
    let slots = pi.preimage(set)?;
    Ok(match slots.intervals() {
        [] => true,
        [(lo, _)] => lo.is_zero(),
        _ => false,
    })
}

pub(super) fn is_refinement(refined: &TowerSeries, original: &TowerSeries) -> Result<bool, SeriesError> {
    if refined == original {
        return Ok(true);
    }
    if refined.group() != original.group() {
        return Ok(false);
    }
    let indices: Vec<Ordinal> = match original.length().as_natural() {
        Some(n) => (1..=n).map(Ordinal::from).collect(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
            let n = original.length();
            let mut picks = sample_ranks(original);
            picks.extend((0..LIMIT_SAMPLES).filter_map(|_| {
                crate::ordinal::sample_below(&n, &mut rng).and_then(|x| x.successor().ok())
            }));
            picks
        }
    };
    let terms: Vec<IntervalSet> = match refined.bijection() {
        Some(_) => Vec::new(),
        None => {
            let k = refined.length().as_natural().expect("explicit series are finite");
            (1..=k)
                .map(|i| refined.support(&Ordinal::from(i)))
                .collect::<Result<_, _>>()?
        }
    };
    for index in indices {
        let term = original.support(&index)?;
        let present = match refined.bijection() {
            Some(pi) => is_initial_segment(pi, &term)?,
            None => terms.contains(&term),
        };
        if !present {
            return Ok(false);
        }
    }
    Ok(true)
}

impl TransfiniteSeries {
    /// Series of a tower group induced by an enumeration of its positions.
    pub fn tower(series: TowerSeries) -> TransfiniteSeries {
        TransfiniteSeries::Tower(series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{is_composition_series, jordan_holder_check, refinement_is_fixed, validate};
    use crate::tower::{LabelPattern, SimpleLabel, TowerGroup};

    fn o(text: &str) -> Ordinal {
        text.parse().unwrap()
    }

    fn group(bound: &str) -> TowerGroup {
        TowerGroup::new(
            o(bound),
            LabelPattern::Parity {
                even: SimpleLabel::Cyclic(2),
                odd: SimpleLabel::Cyclic(3),
            },
        )
        .unwrap()
    }

    fn identity(bound: &str) -> TowerSeries {
        TowerSeries::from_bijection(group(bound), PositionBijection::identity(o(bound))).unwrap()
    }

    fn moved(bound: &str) -> TowerSeries {
        let pi = PositionBijection::identity(o(bound))
            .move_block(&o("0"), &o("1"), None)
            .unwrap();
        TowerSeries::from_bijection(group(bound), pi).unwrap()
    }

    #[test]
    fn omega_refinement_pairs_by_threshold() {
        let (a, b) = (identity("w").into(), moved("w").into());
        let r = crate::series::schreier_refine(&a, &b).unwrap();
        assert_eq!(r.refined_first, a);
        assert_eq!(r.refined_second, b);
        assert_eq!(r.first_quotient.as_ref().unwrap().order_type(), o("w"));
        assert_eq!(r.second_quotient.as_ref().unwrap().order_type(), o("w+1"));
        // Position 0 is added first by one series and last by the other.
        assert_eq!(r.pairing.image(&o("1")).unwrap(), Some(o("w")));
        assert_eq!(r.pairing.image(&o("5")).unwrap(), Some(o("4")));
        assert!(r.factor_table.iter().all(|e| r.pairing.image(&e.first).unwrap() == Some(e.second.clone())));
    }

    #[test]
    fn demo_pair_has_different_lengths_of_equal_cardinality() {
        let (a, b): (TransfiniteSeries, TransfiniteSeries) = (identity("w+1").into(), moved("w+1").into());
        assert!(validate(&a).is_valid() && validate(&b).is_valid());
        let v = jordan_holder_check(&a, &b).unwrap();
        assert!(v.isomorphic && v.refinements_fixed);
        assert_eq!((v.first_length.clone(), v.second_length.clone()), (o("w+1"), o("w+2")));
        assert!(!v.lengths_equal());
        assert!(v.cardinalities_equal());
    }

    #[test]
    fn explicit_composition_series_refine_against_enumerations() {
        let g = group("4");
        let supports = ["{}", "[2,3)", "[1,3)", "[0,3)", "[0,4)"].map(|s| s.parse().unwrap()).to_vec();
        let explicit = TowerSeries::explicit(g.clone(), supports).unwrap();
        let enumerated = TowerSeries::from_bijection(g, PositionBijection::identity(o("4"))).unwrap();
        let (a, b) = (explicit.into(), enumerated.into());
        let r = crate::series::schreier_refine(&a, &b).unwrap();
        assert_eq!(r.pairing.image(&o("1")).unwrap(), Some(o("3")));
        assert!(refinement_is_fixed(&a, &b).unwrap());
        assert!(jordan_holder_check(&a, &b).unwrap().isomorphic);
    }

    #[test]
    fn coarse_tower_series() {
        let g = group("w+1");
        let coarse = TowerSeries::explicit(
            g.clone(),
            ["{}", "[0,w)", "[0,w+1)"].map(|s| s.parse().unwrap()).to_vec(),
        )
        .unwrap();
        let coarse: TransfiniteSeries = coarse.into();
        let report = is_composition_series(&coarse).unwrap();
        assert!(!report.is_composition);
        assert!(!report.steps[0].simple);
        assert!(report.steps[1].simple);
        assert!(matches!(
            crate::series::schreier_refine(&coarse, &identity("w+1").into()),
            Err(SeriesError::NotComposition("first"))
        ));
        assert!(crate::series::is_refinement(&identity("w+1").into(), &coarse).unwrap());
        assert!(!crate::series::is_refinement(&moved("w+1").into(), &coarse).unwrap());
    }

    #[test]
    fn different_groups_compare_by_label_counts() {
        let other = TowerGroup::new(
            o("w*2"),
            LabelPattern::Parity {
                even: SimpleLabel::Cyclic(2),
                odd: SimpleLabel::Cyclic(3),
            },
        )
        .unwrap();
        let s = TowerSeries::from_bijection(other, PositionBijection::identity(o("w*2"))).unwrap();
        let pairing = crate::series::series_isomorphic(&identity("w").into(), &s.into()).unwrap();
        assert!(matches!(pairing, Some(Pairing::LabelCounts(_))));
        let constant = TowerGroup::constant(o("w"), SimpleLabel::A5).unwrap();
        let t = TowerSeries::from_bijection(constant, PositionBijection::identity(o("w"))).unwrap();
        assert!(crate::series::series_isomorphic(&identity("w").into(), &t.into()).unwrap().is_none());
    }

    #[test]
    fn refinement_checks_limit_classes() {
        let pi = PositionBijection::identity(o("w*2+2"))
            .move_block(&o("w+1"), &o("w*2"), Some(&o("3")))
            .unwrap();
        let a = TowerSeries::from_bijection(group("w*2+2"), pi).unwrap();
        let b = identity("w*2+2");
        let r = crate::series::schreier_refine(&a.clone().into(), &b.into()).unwrap();
        let q = r.first_quotient.unwrap();
        assert_eq!(q.order_type(), a.length());
        assert_eq!(q.class_min(&o("w")).unwrap(), PairIndex::new(o("w"), o("1")));
    }
}
