//! Normal and composition series, Schreier refinement and Jordan–Hölder.
//!
//! Series are indexed from 1: a series of length `n` has terms
//! `G_1 = {1} ⊊ ... ⊊ G_n = G`, and the factor at index `i < n` is
//! `G_{i+1} / G_i`. The permutation backend handles finite series exactly;
//! the tower backend handles ordinal-length series of tower groups.

mod demo;
mod enumerate;
mod finite;
mod transfinite;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::indexset::{ConcordantQuotient, IndexError};
use crate::ordinal::Ordinal;
use crate::permgroup::{FactorDescriptor, FiniteGroup, GroupError, PermGroup};
use crate::tower::{Cardinality, SimpleLabel, TowerError, TowerSeries};

pub use demo::{demo_transfinite, TransfiniteDemo};
pub use enumerate::{composition_series, normal_series, normal_series_capped};
pub use finite::{zassenhaus, PermSeries, ZassenhausResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series is invalid: {0}")]
    Invalid(String),
    #[error("series use different backends")]
    BackendMismatch,
    #[error("series are not series of the same group")]
    DifferentGroups,
    #[error("the {0} series is not a composition series")]
    NotComposition(&'static str),
    #[error("{0} side: the smaller subgroup is not normal in the larger")]
    NotNormal(&'static str),
    #[error("term {index} is not a subgroup of the group")]
    NotSubgroup { index: usize },
    #[error("construction check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Index(#[from] IndexError),
}

impl SeriesError {
    pub fn is_resource(&self) -> bool {
        match self {
            SeriesError::Group(e) => e.is_resource(),
            SeriesError::Index(IndexError::Resource(_)) => true,
            SeriesError::Tower(TowerError::Ordinal(e)) => e.is_resource(),
            _ => false,
        }
    }
}

/// Which defining condition of a series fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    BottomNotTrivial,
    TopNotWhole,
    NotSubgroup,
    /// The term equals or is not contained in the next one.
    NotStrict,
    /// The term is not normal in the next one.
    NotNormal,
    /// The term at a limit index is not the union of the earlier terms.
    LimitNotUnion,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::BottomNotTrivial => "first term is not trivial",
            Clause::TopNotWhole => "last term is not the whole group",
            Clause::NotSubgroup => "term is not a subgroup of the group",
            Clause::NotStrict => "term is not strictly contained in the next",
            Clause::NotNormal => "term is not normal in the next",
            Clause::LimitNotUnion => "limit term is not the union of earlier terms",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub index: Ordinal,
    pub clause: Clause,
}

impl Violation {
    pub fn new(index: Ordinal, clause: Clause) -> Violation {
        Violation { index, clause }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "index {}: {}", self.index, self.clause)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Samples drawn by the tower backend when checking limit indices.
pub const LIMIT_SAMPLES: usize = 64;

// Seed for the tower backend's sampled checks; results never depend on it
// for valid input.
pub const CHECK_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransfiniteSeries {
    Perm(PermSeries),
    Tower(TowerSeries),
}

impl From<PermSeries> for TransfiniteSeries {
    fn from(s: PermSeries) -> TransfiniteSeries {
        TransfiniteSeries::Perm(s)
    }
}

impl From<TowerSeries> for TransfiniteSeries {
    fn from(s: TowerSeries) -> TransfiniteSeries {
        TransfiniteSeries::Tower(s)
    }
}

impl TransfiniteSeries {
    pub fn length(&self) -> Ordinal {
        match self {
            TransfiniteSeries::Perm(s) => Ordinal::from(s.len() as u32),
            TransfiniteSeries::Tower(s) => s.length(),
        }
    }

    pub fn backend(&self) -> &'static str {
        match self {
            TransfiniteSeries::Perm(_) => "permutation",
            TransfiniteSeries::Tower(_) => "tower",
        }
    }

    pub fn as_perm(&self) -> Option<&PermSeries> {
        match self {
            TransfiniteSeries::Perm(s) => Some(s),
            TransfiniteSeries::Tower(_) => None,
        }
    }

    pub fn as_tower(&self) -> Option<&TowerSeries> {
        match self {
            TransfiniteSeries::Perm(_) => None,
            TransfiniteSeries::Tower(s) => Some(s),
        }
    }
}

impl fmt::Display for TransfiniteSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransfiniteSeries::Perm(s) => write!(f, "{s}"),
            TransfiniteSeries::Tower(s) => write!(f, "{s}"),
        }
    }
}

/// Reports every violated clause; an empty report means a valid series.
///
/// Finite series are checked at every index. Tower series are checked
/// symbolically at block boundaries and at sampled limit indices.
pub fn validate(series: &TransfiniteSeries) -> ValidationReport {
    validate_with_seed(series, CHECK_SEED)
}

/// [`validate`] with the seed that picks the sampled limit indices.
pub fn validate_with_seed(series: &TransfiniteSeries, seed: u64) -> ValidationReport {
    let violations = match series {
        TransfiniteSeries::Perm(s) => s.violations(),
        TransfiniteSeries::Tower(s) => s.violations(LIMIT_SAMPLES, seed),
    };
    ValidationReport { violations }
}

/// Isomorphism type of one factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    Finite(FactorName),
    Label(SimpleLabel),
}

/// A finite factor's descriptor name, ordered by group order first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorName {
    pub order: usize,
    pub name: String,
}

impl From<&FactorDescriptor> for FactorName {
    fn from(d: &FactorDescriptor) -> FactorName {
        FactorName {
            order: d.order,
            name: d.name(),
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Finite(n) => f.write_str(&n.name),
            FactorKind::Label(l) => write!(f, "{l}"),
        }
    }
}

/// Factor at index `first` of one series matched with index `second` of
/// the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorEntry {
    pub first: Ordinal,
    pub second: Ordinal,
    pub factor: FactorKind,
}

/// A bijection between the factor indices of two series that pairs
/// isomorphic factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pairing {
    /// Every pair listed.
    Explicit(Vec<(Ordinal, Ordinal)>),
    /// Two enumerations of the same tower group: factor `a` of the first
    /// adds the position that the second adds at `threshold - 1`.
    Positions { first: Box<TowerSeries>, second: Box<TowerSeries> },
    /// Series of different tower groups whose labels occur equally often;
    /// a bijection exists but is not named.
    LabelCounts(BTreeMap<SimpleLabel, Cardinality>),
}

impl Pairing {
    /// Image of factor index `a`, when the pairing names one.
    pub fn image(&self, a: &Ordinal) -> Result<Option<Ordinal>, SeriesError> {
        match self {
            Pairing::Explicit(pairs) => Ok(pairs.iter().find(|(x, _)| x == a).map(|(_, y)| y.clone())),
            Pairing::Positions { first, second } => {
                let added = first.increment(a)?;
                let q = added.as_singleton().expect("composition step");
                let t = second.threshold(q)?;
                Ok(Some(t.predecessor().map_err(TowerError::from)?))
            }
            Pairing::LabelCounts(_) => Ok(None),
        }
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pairing::Explicit(pairs) => {
                let parts: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                f.write_str(&parts.join(","))
            }
            Pairing::Positions { .. } => f.write_str("by position"),
            Pairing::LabelCounts(counts) => {
                let parts: Vec<String> = counts.iter().map(|(l, c)| format!("{l}:{c}")).collect();
                write!(f, "by label count {}", parts.join(","))
            }
        }
    }
}

/// Two refined series and the factor pairing between them.
#[derive(Debug, Clone)]
pub struct RefinementResult {
    pub refined_first: TransfiniteSeries,
    pub refined_second: TransfiniteSeries,
    /// Class structure of each refinement; absent for the trivial group,
    /// whose series have a single term.
    pub first_quotient: Option<ConcordantQuotient>,
    pub second_quotient: Option<ConcordantQuotient>,
    pub pairing: Pairing,
    /// Every factor for finite series; for tower series, the factors at
    /// small and boundary indices.
    pub factor_table: Vec<FactorEntry>,
}

/// Refines both series until their factors correspond.
///
/// Tower series must be composition series of the same tower group.
pub fn schreier_refine(first: &TransfiniteSeries, second: &TransfiniteSeries) -> Result<RefinementResult, SeriesError> {
    match (first, second) {
        (TransfiniteSeries::Perm(a), TransfiniteSeries::Perm(b)) => finite::schreier_refine(a, b),
        (TransfiniteSeries::Tower(a), TransfiniteSeries::Tower(b)) => transfinite::schreier_refine(a, b),
        _ => Err(SeriesError::BackendMismatch),
    }
}

/// A factor bijection pairing isomorphic factors, if one exists. Series
/// of different groups may be isomorphic.
pub fn series_isomorphic(first: &TransfiniteSeries, second: &TransfiniteSeries) -> Result<Option<Pairing>, SeriesError> {
    match (first, second) {
        (TransfiniteSeries::Perm(a), TransfiniteSeries::Perm(b)) => finite::series_isomorphic(a, b),
        (TransfiniteSeries::Tower(a), TransfiniteSeries::Tower(b)) => transfinite::series_isomorphic(a, b),
        _ => Ok(None),
    }
}

/// Simplicity verdict for one factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCertificate {
    pub index: Ordinal,
    pub simple: bool,
    pub factor: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub is_composition: bool,
    /// One entry per factor for finite series; tower bijection series are
    /// composition series by construction and list none.
    pub steps: Vec<StepCertificate>,
}

impl CompositionReport {
    pub fn first_failure(&self) -> Option<&StepCertificate> {
        self.steps.iter().find(|s| !s.simple)
    }
}

/// Whether every factor is simple. The series must be valid.
pub fn is_composition_series(series: &TransfiniteSeries) -> Result<CompositionReport, SeriesError> {
    require_valid(series)?;
    match series {
        TransfiniteSeries::Perm(s) => finite::composition_report(s),
        TransfiniteSeries::Tower(s) => transfinite::composition_report(s),
    }
}

fn require_valid(series: &TransfiniteSeries) -> Result<(), SeriesError> {
    let report = validate(series);
    if report.is_valid() {
        Ok(())
    } else {
        Err(SeriesError::Invalid(report.to_string()))
    }
}

/// Whether every term of `original` is a term of `refined`.
///
/// Tower series given by enumerations are compared at boundary and
/// sampled indices.
pub fn is_refinement(refined: &TransfiniteSeries, original: &TransfiniteSeries) -> Result<bool, SeriesError> {
    match (refined, original) {
        (TransfiniteSeries::Perm(r), TransfiniteSeries::Perm(o)) => finite::is_refinement(r, o),
        (TransfiniteSeries::Tower(r), TransfiniteSeries::Tower(o)) => transfinite::is_refinement(r, o),
        _ => Err(SeriesError::BackendMismatch),
    }
}

/// Whether refining `series` against `other` leaves `series` unchanged.
pub fn refinement_is_fixed(series: &TransfiniteSeries, other: &TransfiniteSeries) -> Result<bool, SeriesError> {
    match (series, other) {
        (TransfiniteSeries::Perm(s), TransfiniteSeries::Perm(t)) => finite::refinement_is_fixed(s, t),
        _ => {
            let result = schreier_refine(series, other)?;
            Ok(same_terms(&result.refined_first, series))
        }
    }
}

fn same_terms(a: &TransfiniteSeries, b: &TransfiniteSeries) -> bool {
    match (a, b) {
        (TransfiniteSeries::Perm(x), TransfiniteSeries::Perm(y)) => x.same_terms(y),
        (TransfiniteSeries::Tower(x), TransfiniteSeries::Tower(y)) => x == y,
        _ => false,
    }
}

/// Outcome of comparing two composition series.
#[derive(Debug, Clone)]
pub struct JordanHolderVerdict {
    pub isomorphic: bool,
    pub pairing: Option<Pairing>,
    /// Factor multiset, identical for both series when isomorphic.
    pub factors: BTreeMap<FactorKind, Cardinality>,
    pub first_length: Ordinal,
    pub second_length: Ordinal,
    /// Both refinements returned the input series unchanged.
    pub refinements_fixed: bool,
}

impl JordanHolderVerdict {
    pub fn lengths_equal(&self) -> bool {
        self.first_length == self.second_length
    }

    pub fn cardinalities_equal(&self) -> bool {
        Cardinality::of(&self.first_length) == Cardinality::of(&self.second_length)
    }

    /// Factors as `C2,C3` (finite counts repeat the name).
    pub fn factor_list(&self) -> String {
        let mut parts = Vec::new();
        for (kind, count) in &self.factors {
            match count {
                Cardinality::Finite(k) => parts.extend((0..*k).map(|_| kind.to_string())),
                Cardinality::Countable => parts.push(format!("{kind}^countable")),
            }
        }
        parts.join(",")
    }
}

/// Refines two composition series against each other, checks that the
/// refinements are the inputs themselves, and pairs their factors.
pub fn jordan_holder_check(first: &TransfiniteSeries, second: &TransfiniteSeries) -> Result<JordanHolderVerdict, SeriesError> {
    if !is_composition_series(first)?.is_composition {
        return Err(SeriesError::NotComposition("first"));
    }
    if !is_composition_series(second)?.is_composition {
        return Err(SeriesError::NotComposition("second"));
    }
    let result = schreier_refine(first, second)?;
    let refinements_fixed = same_terms(&result.refined_first, first) && same_terms(&result.refined_second, second);
    let pairing = series_isomorphic(first, second)?;
    let factors = match first {
        TransfiniteSeries::Perm(s) => finite::factor_multiset(s)?,
        TransfiniteSeries::Tower(s) => transfinite::factor_multiset(s)?,
    };
    let other = match second {
        TransfiniteSeries::Perm(s) => finite::factor_multiset(s)?,
        TransfiniteSeries::Tower(s) => transfinite::factor_multiset(s)?,
    };
    Ok(JordanHolderVerdict {
        isomorphic: pairing.is_some() && factors == other,
        pairing,
        factors,
        first_length: first.length(),
        second_length: second.length(),
        refinements_fixed,
    })
}

/// The two factors of `upper / lower` for a factor table entry.
pub(crate) fn factor_group(upper: &PermGroup, lower: &PermGroup) -> Result<FiniteGroup, SeriesError> {
    Ok(upper.quotient(lower)?.group)
}
