//! Fixtures shared by the benchmarks.

use transfinite::ordinal::Ordinal;
use transfinite::permgroup::catalog;
use transfinite::series::{composition_series, normal_series, TransfiniteSeries};
use transfinite::tower::{LabelPattern, PositionBijection, SimpleLabel, TowerGroup, TowerSeries};

/// The first and last normal series of `S4` in enumeration order.
pub fn s4_normal_pair() -> (TransfiniteSeries, TransfiniteSeries) {
    let all = normal_series(&catalog::symmetric(4).expect("S4")).expect("enumerable");
    let first = all.first().expect("non-empty").clone();
    let last = all.last().expect("non-empty").clone();
    (first.into(), last.into())
}

/// Two distinct composition series of the cyclic group of order `n`.
pub fn cyclic_composition_pair(n: usize) -> (TransfiniteSeries, TransfiniteSeries) {
    let all = composition_series(&catalog::cyclic(n)).expect("enumerable");
    (all[0].clone().into(), all[all.len() - 1].clone().into())
}

/// The identity enumeration of a tower group on `[0, bound)` and one with
/// a block of `width` positions moved past `ω`.
pub fn tower_pair(bound: &str, width: u32) -> (TransfiniteSeries, TransfiniteSeries) {
    let bound: Ordinal = bound.parse().expect("ordinal");
    let group = TowerGroup::new(
        bound.clone(),
        LabelPattern::Parity {
            even: SimpleLabel::Cyclic(2),
            odd: SimpleLabel::Cyclic(3),
        },
    )
    .expect("tower group");
    let identity = PositionBijection::identity(bound);
    let moved = identity
        .move_block(&Ordinal::zero(), &Ordinal::from(width), Some(&Ordinal::omega()))
        .expect("block move");
    (
        TowerSeries::from_bijection(group.clone(), identity).expect("series").into(),
        TowerSeries::from_bijection(group, moved).expect("series").into(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_refinable_pairs() {
        let (a, b) = tower_pair("w^2+1", 5);
        assert_eq!(a.length().to_string(), "w^2+1");
        assert_eq!(b.length().to_string(), "w^2+1");
        let (a, b) = cyclic_composition_pair(24);
        assert_ne!(a.to_string(), b.to_string());
        let (a, b) = s4_normal_pair();
        assert!(transfinite::series::schreier_refine(&a, &b).is_ok());
    }
}
