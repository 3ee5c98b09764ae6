//! Normal and composition series indexed by ordinals, with Schreier
//! refinement, Zassenhaus isomorphisms and Jordan–Hölder checks over
//! finite permutation groups and tower groups.
//!
//! ```
//! use transfinite::permgroup::PermGroup;
//! use transfinite::series::{jordan_holder_check, TransfiniteSeries};
//!
//! let g = PermGroup::from_cycles(6, &["(0 1 2 3 4 5)"]).unwrap();
//! let c2 = g.subgroup_from_cycles(&["(0 3)(1 4)(2 5)"]).unwrap();
//! let c3 = g.subgroup_from_cycles(&["(0 2 4)(1 3 5)"]).unwrap();
//! let a = TransfiniteSeries::perm(g.clone(), vec![g.trivial_subgroup(), c2, g.clone()]).unwrap();
//! let b = TransfiniteSeries::perm(g.clone(), vec![g.trivial_subgroup(), c3, g.clone()]).unwrap();
//! let verdict = jordan_holder_check(&a, &b).unwrap();
//! assert!(verdict.isomorphic);
//! assert_eq!(verdict.factor_list(), "C2,C3");
//! ```

pub mod indexset;
pub mod ordinal;
pub mod permgroup;
pub mod series;
pub mod tower;

pub use indexset::{ConcordantQuotient, PairIndex, ProductOrder};
pub use ordinal::Ordinal;
pub use permgroup::{PermGroup, Permutation};
pub use series::{
    is_composition_series, jordan_holder_check, schreier_refine, series_isomorphic, validate, zassenhaus,
    JordanHolderVerdict, PermSeries, RefinementResult, SeriesError, TransfiniteSeries,
};
pub use tower::{IntervalSet, PositionBijection, TowerGroup, TowerSeries};
