//! Exact series computations on finite permutation groups.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::indexset::{build_quotient, ConcordantQuotient, PairIndex, ProductOrder};
use crate::ordinal::Ordinal;
use crate::permgroup::{FactorDescriptor, FiniteGroup, PermGroup};
use crate::tower::Cardinality;

use super::{
    factor_group, Clause, CompositionReport, FactorEntry, FactorKind, FactorName, Pairing, RefinementResult,
    SeriesError, StepCertificate, TransfiniteSeries, Violation,
};

/// A finite chain of subgroups of one permutation group, listed from the
/// bottom. Terms share the group's ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermSeries {
    group: PermGroup,
    terms: Vec<PermGroup>,
}

impl PermSeries {
    /// Terms must be subgroups of `group`; the series conditions are
    /// checked by `validate`, not here.
    pub fn new(group: PermGroup, terms: Vec<PermGroup>) -> Result<PermSeries, SeriesError> {
        if terms.is_empty() {
            return Err(SeriesError::Invalid("a series needs at least one term".into()));
        }
        let mut rebased = Vec::with_capacity(terms.len());
        for (k, term) in terms.iter().enumerate() {
            let inside = term.is_subgroup_of(&group).unwrap_or(false);
            if !inside {
                return Err(SeriesError::NotSubgroup { index: k + 1 });
            }
            rebased.push(term.rebased_onto(&group)?);
        }
        Ok(PermSeries { group, terms: rebased })
    }

    /// `{1} < G`.
    pub fn trivial(group: PermGroup) -> PermSeries {
        let bottom = group.trivial_subgroup();
        let terms = if group.is_trivial() { vec![bottom] } else { vec![bottom, group.clone()] };
        PermSeries { group, terms }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn terms(&self) -> &[PermGroup] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The term at 1-based `index`.
    pub fn term(&self, index: usize) -> Option<&PermGroup> {
        index.checked_sub(1).and_then(|k| self.terms.get(k))
    }

    pub fn same_terms(&self, other: &PermSeries) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| a == b)
    }

    pub(crate) fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let at = |k: usize| Ordinal::from(k as u32);
        if !self.terms[0].is_trivial() {
            out.push(Violation::new(at(1), Clause::BottomNotTrivial));
        }
        let last = self.terms.len();
        if self.terms[last - 1] != self.group {
            out.push(Violation::new(at(last), Clause::TopNotWhole));
        }
        for (k, pair) in self.terms.windows(2).enumerate() {
            let (lower, upper) = (&pair[0], &pair[1]);
            if !lower.is_subgroup_of(upper).unwrap_or(false) || lower.order() == upper.order() {
                out.push(Violation::new(at(k + 1), Clause::NotStrict));
            } else if !lower.is_normal_in(upper).unwrap_or(false) {
                out.push(Violation::new(at(k + 1), Clause::NotNormal));
            }
        }
        out
    }

    fn require_valid(&self, which: &str) -> Result<(), SeriesError> {
        let violations = self.violations();
        if violations.is_empty() {
            return Ok(());
        }
        let parts: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Err(SeriesError::Invalid(format!("{which} series: {}", parts.join("; "))))
    }

    /// Factor `G_{i+1} / G_i` for 1-based `i`.
    pub fn factor(&self, i: usize) -> Result<FiniteGroup, SeriesError> {
        factor_group(&self.terms[i], &self.terms[i - 1])
    }
}

impl fmt::Display for PermSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.terms.iter().map(|t| t.order().to_string()).collect();
        write!(f, "orders {}", orders.join(" < "))
    }
}

/// Terms of the refinement of `a` by `b`, and the class structure of the
/// glued double family.
fn refine_terms(a: &PermSeries, b: &PermSeries) -> Result<(Vec<PermGroup>, ConcordantQuotient), SeriesError> {
    let (n, m) = (a.len(), b.len());
    let order = ProductOrder::new(Ordinal::from(n as u32), Ordinal::from(m as u32))?;
    // cells[i-1][j-1] = G_i (G_{i+1} ∩ H_j)
    let mut cells: Vec<Vec<PermGroup>> = Vec::with_capacity(n - 1);
    for i in 1..n {
        let (lower, upper) = (&a.terms[i - 1], &a.terms[i]);
        let row = b
            .terms
            .iter()
            .map(|h| Ok(lower.normal_product(&upper.intersect(h)?)))
            .collect::<Result<Vec<_>, SeriesError>>()?;
        cells.push(row);
    }
    let cell = |p: &PairIndex| {
        let i = p.major.as_natural().expect("finite") as usize;
        let j = p.minor.as_natural().expect("finite") as usize;
        &cells[i - 1][j - 1]
    };
    let quotient = build_quotient(&order, |p| cell(p).fingerprint().clone())?;
    let classes = quotient.class_count().expect("enumerated");
    let terms = (1..=classes)
        .map(|r| Ok(cell(&quotient.class_min(&Ordinal::from(r as u32))?).clone()))
        .collect::<Result<Vec<_>, SeriesError>>()?;
    Ok((terms, quotient))
}

fn same_group(a: &PermSeries, b: &PermSeries) -> Result<PermSeries, SeriesError> {
    if a.group != b.group {
        return Err(SeriesError::DifferentGroups);
    }
    PermSeries::new(a.group.clone(), b.terms.clone())
}

pub(super) fn schreier_refine(a: &PermSeries, b: &PermSeries) -> Result<RefinementResult, SeriesError> {
    a.require_valid("first")?;
    b.require_valid("second")?;
    let b = &same_group(a, b)?;
    if a.len() == 1 {
        return Ok(RefinementResult {
            refined_first: a.clone().into(),
            refined_second: b.clone().into(),
            first_quotient: None,
            second_quotient: None,
            pairing: Pairing::Explicit(Vec::new()),
            factor_table: Vec::new(),
        });
    }
    let (first_terms, first_quotient) = refine_terms(a, b)?;
    let (second_terms, second_quotient) = refine_terms(b, a)?;
    let refined_first = PermSeries {
        group: a.group.clone(),
        terms: first_terms,
    };
    let refined_second = PermSeries {
        group: a.group.clone(),
        terms: second_terms,
    };
    if refined_first.len() != refined_second.len() {
        return Err(SeriesError::Internal(format!(
            "refinements have lengths {} and {}",
            refined_first.len(),
            refined_second.len()
        )));
    }
    // Each class maximum (i, j) of the first family is paired with the
    // class of (j, i) in the second.
    let mut pairs = Vec::new();
    let mut factor_table = Vec::new();
    let mut used = HashSet::new();
    for rank in 1..refined_first.len() {
        let rank_ord = Ordinal::from(rank as u32);
        let top = first_quotient.class_max_of_rank(&rank_ord)?;
        let image = second_quotient.class_of(&top.swapped())?;
        let k = image.as_natural().expect("finite rank") as usize;
        if k >= refined_second.len() || !used.insert(k) {
            return Err(SeriesError::Internal(format!("pairing sends {rank} to {image}")));
        }
        let left = refined_first.factor(rank)?;
        let right = refined_second.factor(k)?;
        let descriptor = left.descriptor();
        if !factors_isomorphic(&left, &descriptor, &right, &right.descriptor())? {
            return Err(SeriesError::Internal(format!("factors {rank} and {k} differ")));
        }
        factor_table.push(FactorEntry {
            first: rank_ord.clone(),
            second: image.clone(),
            factor: FactorKind::Finite(FactorName::from(&descriptor)),
        });
        pairs.push((rank_ord, image));
    }
    Ok(RefinementResult {
        refined_first: refined_first.into(),
        refined_second: refined_second.into(),
        first_quotient: Some(first_quotient),
        second_quotient: Some(second_quotient),
        pairing: Pairing::Explicit(pairs),
        factor_table,
    })
}

fn factors_isomorphic(
    a: &FiniteGroup,
    da: &FactorDescriptor,
    b: &FiniteGroup,
    db: &FactorDescriptor,
) -> Result<bool, SeriesError> {
    if da.is_complete() && db.is_complete() {
        return Ok(da == db);
    }
    Ok(da.order == db.order
        && da.element_order_histogram == db.element_order_histogram
        && a.isomorphism(b)?.is_some())
}

struct FactorClass {
    descriptor: FactorDescriptor,
    representative: FiniteGroup,
    first: Vec<usize>,
    second: Vec<usize>,
}

pub(super) fn series_isomorphic(a: &PermSeries, b: &PermSeries) -> Result<Option<Pairing>, SeriesError> {
    if a.len() != b.len() {
        return Ok(None);
    }
    let mut classes: Vec<FactorClass> = Vec::new();
    for (series, side) in [(a, 0), (b, 1)] {
        for i in 1..series.len() {
            let factor = series.factor(i)?;
            let descriptor = factor.descriptor();
            let mut home = None;
            for (k, class) in classes.iter().enumerate() {
                if factors_isomorphic(&class.representative, &class.descriptor, &factor, &descriptor)? {
                    home = Some(k);
                    break;
                }
            }
            let k = match home {
                Some(k) => k,
                None => {
                    classes.push(FactorClass {
                        descriptor,
                        representative: factor,
                        first: Vec::new(),
                        second: Vec::new(),
                    });
                    classes.len() - 1
                }
            };
            if side == 0 {
                classes[k].first.push(i);
            } else {
                classes[k].second.push(i);
            }
        }
    }
    if classes.iter().any(|c| c.first.len() != c.second.len()) {
        return Ok(None);
    }
    let mut pairs: Vec<(Ordinal, Ordinal)> = classes
        .iter()
        .flat_map(|c| {
            c.first
                .iter()
                .zip(&c.second)
                .map(|(&x, &y)| (Ordinal::from(x as u32), Ordinal::from(y as u32)))
        })
        .collect();
    pairs.sort();
    Ok(Some(Pairing::Explicit(pairs)))
}

pub(super) fn composition_report(s: &PermSeries) -> Result<CompositionReport, SeriesError> {
    let mut steps = Vec::with_capacity(s.len().saturating_sub(1));
    for i in 1..s.len() {
        let factor = s.factor(i)?;
        steps.push(StepCertificate {
            index: Ordinal::from(i as u32),
            simple: factor.is_simple()?,
            factor: factor.descriptor().name(),
        });
    }
    Ok(CompositionReport {
        is_composition: steps.iter().all(|s| s.simple),
        steps,
    })
}

pub(super) fn factor_multiset(s: &PermSeries) -> Result<BTreeMap<FactorKind, Cardinality>, SeriesError> {
    let mut counts = BTreeMap::new();
    for i in 1..s.len() {
        let kind = FactorKind::Finite(FactorName::from(&s.factor(i)?.descriptor()));
        let slot = counts.entry(kind).or_insert(Cardinality::Finite(0));
        *slot = *slot + Cardinality::Finite(1);
    }
    Ok(counts)
}

pub(super) fn is_refinement(refined: &PermSeries, original: &PermSeries) -> Result<bool, SeriesError> {
    if refined.group != original.group {
        return Ok(false);
    }
    let refined = PermSeries::new(original.group.clone(), refined.terms.clone())?;
    let present: HashSet<_> = refined.terms.iter().map(|t| t.fingerprint().clone()).collect();
    Ok(original.terms.iter().all(|t| present.contains(t.fingerprint())))
}

pub(super) fn refinement_is_fixed(s: &PermSeries, t: &PermSeries) -> Result<bool, SeriesError> {
    s.require_valid("first")?;
    t.require_valid("second")?;
    let t = same_group(s, t)?;
    if s.len() == 1 {
        return Ok(true);
    }
    let (terms, _) = refine_terms(s, &t)?;
    Ok(terms.len() == s.len() && terms.iter().zip(&s.terms).all(|(x, y)| x.fingerprint() == y.fingerprint()))
}

/// The two isomorphic factors of the butterfly built from `small ⊴ big`
/// and `other_small ⊴ other_big`.
#[derive(Debug, Clone)]
pub struct ZassenhausResult {
    /// `G (G̃ ∩ H)`.
    pub lower1: PermGroup,
    /// `G (G̃ ∩ H̃)`.
    pub upper1: PermGroup,
    /// `H (H̃ ∩ G)`.
    pub lower2: PermGroup,
    /// `H (H̃ ∩ G̃)`.
    pub upper2: PermGroup,
    pub first_factor: FiniteGroup,
    pub second_factor: FiniteGroup,
    pub descriptor: FactorDescriptor,
    /// Isomorphism from the first factor to the second as an image table
    /// over coset labels.
    pub witness: Vec<u32>,
}

/// Zassenhaus's lemma: `upper1 / lower1 ≅ upper2 / lower2`, witnessed by
/// the map sending the coset of `x ∈ G̃ ∩ H̃` to the coset of `x`.
pub fn zassenhaus(
    big_g: &PermGroup,
    g: &PermGroup,
    big_h: &PermGroup,
    h: &PermGroup,
) -> Result<ZassenhausResult, SeriesError> {
    if !g.is_normal_in(big_g).unwrap_or(false) {
        return Err(SeriesError::NotNormal("first"));
    }
    if !h.is_normal_in(big_h).unwrap_or(false) {
        return Err(SeriesError::NotNormal("second"));
    }
    let middle = big_g.intersect(big_h)?;
    let upper1 = g.join(&middle)?;
    let lower1 = g.join(&big_g.intersect(h)?)?;
    let upper2 = h.join(&middle)?;
    let lower2 = h.join(&big_h.intersect(g)?)?;
    let q1 = upper1.quotient(&lower1)?;
    let q2 = upper2.quotient(&lower2)?;
    let mut witness = vec![u32::MAX; q1.group.order()];
    for x in middle.elements() {
        let (from, to) = match (q1.coset_of(&x), q2.coset_of(&x)) {
            (Some(from), Some(to)) => (from, to),
            _ => return Err(SeriesError::Internal(format!("{x} has no coset"))),
        };
        let slot = &mut witness[from as usize];
        if *slot != u32::MAX && *slot != to {
            return Err(SeriesError::Internal("coset map is not well defined".into()));
        }
        *slot = to;
    }
    if !q1.group.is_isomorphism(&q2.group, &witness) {
        return Err(SeriesError::Internal("coset map is not an isomorphism".into()));
    }
    Ok(ZassenhausResult {
        descriptor: q1.group.descriptor(),
        lower1,
        upper1,
        lower2,
        upper2,
        first_factor: q1.group,
        second_factor: q2.group,
        witness,
    })
}

impl TransfiniteSeries {
    /// Finite series from a group and its terms.
    pub fn perm(group: PermGroup, terms: Vec<PermGroup>) -> Result<TransfiniteSeries, SeriesError> {
        Ok(PermSeries::new(group, terms)?.into())
    }
}
