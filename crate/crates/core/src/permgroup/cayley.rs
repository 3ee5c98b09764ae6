//! Abstract finite groups given by multiplication tables.
//!
//! Factor groups `G/N` are materialised as a [`FiniteGroup`]; isomorphism
//! classes are described by a [`FactorDescriptor`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use super::algo::{self, ElementSet, Universe};
use super::GroupError;

/// Largest order accepted by [`FiniteGroup::isomorphism`].
pub const ISOMORPHISM_CAP: usize = 512;

/// Largest order for which a minimal-table certificate is attempted.
pub const CERTIFICATE_CAP: usize = 64;

// Leaves of the certificate search before giving up.
const CERTIFICATE_BUDGET: usize = 20_000;

/// A finite group on `0..order` with identity `0`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl Universe for FiniteGroup {
    fn size(&self) -> usize {
        self.order
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl FiniteGroup {
    pub fn trivial() -> FiniteGroup {
        FiniteGroup {
            order: 1,
            table: vec![0],
            inverse: vec![0],
        }
    }

    /// Builds a group from a row-major table, checking the group axioms
    /// with `0` as the identity.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<FiniteGroup, GroupError> {
        let bad = |why: &str| GroupError::InvalidTable(why.to_string());
        if order == 0 || table.len() != order * order {
            return Err(bad("table size does not match order"));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(bad("entry out of range"));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(bad("0 is not the identity"));
            }
        }
        let mut inverse = vec![u32::MAX; order];
        for (a, slot) in inverse.iter_mut().enumerate() {
            match (0..order).find(|&b| at(a, b) == 0) {
                Some(b) => *slot = b as u32,
                None => return Err(bad("missing inverse")),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            table,
            inverse,
        })
    }

    // For callers that construct tables known to satisfy the axioms.
    pub(crate) fn from_trusted_table(order: usize, table: Vec<u32>) -> FiniteGroup {
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == 0)
                    .expect("group table has inverses") as u32
            })
            .collect();
        FiniteGroup {
            order,
            table,
            inverse,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn multiply(&self, a: u32, b: u32) -> u32 {
        self.mul(a, b)
    }

    pub fn inverse_of(&self, a: u32) -> u32 {
        self.inv(a)
    }

    pub fn order_of(&self, a: u32) -> u64 {
        self.element_order(a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Number of elements of each element order.
    pub fn order_histogram(&self) -> BTreeMap<u64, usize> {
        let mut histogram = BTreeMap::new();
        for a in 0..self.order as u32 {
            *histogram.entry(self.element_order(a)).or_insert(0) += 1;
        }
        histogram
    }

    fn all(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    /// True iff the normal closure of every non-identity element is the
    /// whole group.
    pub fn is_simple(&self) -> Result<bool, GroupError> {
        if self.order < 2 {
            return Err(GroupError::TrivialGroup);
        }
        let all = self.all();
        let gens = algo::greedy_generators(self, &all);
        Ok(algo::proper_normal_witness(self, &all, &gens).is_none())
    }

    pub fn descriptor(&self) -> FactorDescriptor {
        let abelian = self.is_abelian();
        let histogram = self.order_histogram();
        let certificate = if abelian {
            Certificate::AbelianInvariants(abelian_invariants(self.order, &histogram))
        } else if self.order <= CERTIFICATE_CAP {
            self.minimal_table()
                .map_or(Certificate::Unavailable, Certificate::MinimalTable)
        } else {
            Certificate::Unavailable
        };
        FactorDescriptor {
            order: self.order,
            abelian,
            element_order_histogram: histogram,
            certificate,
        }
    }

    /// Lexicographically least multiplication table over all generating
    /// sequences in which each generator has least order among the elements
    /// outside the span of its predecessors. That family is preserved by
    /// isomorphisms, so the result is an isomorphism invariant.
    fn minimal_table(&self) -> Option<Vec<u32>> {
        let mut search = TableSearch {
            group: self,
            best: None,
            leaves: 0,
        };
        let span = ElementSet::identity_only(self.order);
        search.extend(&mut Vec::new(), &span).then_some(())?;
        search.best
    }

    /// Relabels the group by breadth-first search over words in `gens` and
    /// returns the table in the new labels (or `None` if `gens` does not
    /// generate).
    fn labelled_table(&self, gens: &[u32]) -> Option<Vec<u32>> {
        let n = self.order;
        let mut label = vec![u32::MAX; n];
        let mut list = vec![0u32];
        label[0] = 0;
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if label[y as usize] == u32::MAX {
                    label[y as usize] = list.len() as u32;
                    list.push(y);
                }
            }
        }
        if list.len() != n {
            return None;
        }
        let mut table = Vec::with_capacity(n * n);
        for &a in &list {
            for &b in &list {
                table.push(label[self.mul(a, b) as usize]);
            }
        }
        Some(table)
    }

    /// An isomorphism onto `other` as an image table, if one exists.
    pub fn isomorphism(&self, other: &FiniteGroup) -> Result<Option<Vec<u32>>, GroupError> {
        let largest = self.order.max(other.order);
        if largest > ISOMORPHISM_CAP {
            return Err(GroupError::CapExceeded {
                what: "isomorphism test",
                cap: ISOMORPHISM_CAP,
            });
        }
        if self.order != other.order
            || self.is_abelian() != other.is_abelian()
            || self.order_histogram() != other.order_histogram()
        {
            return Ok(None);
        }
        // Few generators of large order keep the backtracking shallow.
        let mut by_order: Vec<u32> = (0..self.order as u32).collect();
        by_order.sort_by_key(|&x| std::cmp::Reverse(self.element_order(x)));
        let mut gens = Vec::new();
        let mut span = ElementSet::identity_only(self.order);
        for x in by_order {
            if !span.contains(x) {
                gens.push(x);
                span = algo::close(self, span, &gens);
            }
        }
        let mut images = Vec::with_capacity(gens.len());
        Ok(self.extend_isomorphism(other, &gens, &mut images))
    }

    fn extend_isomorphism(&self, other: &FiniteGroup, gens: &[u32], images: &mut Vec<u32>) -> Option<Vec<u32>> {
        let depth = images.len();
        let map = self.homomorphism_on_span(other, &gens[..depth], images)?;
        if depth == gens.len() {
            return Some(map);
        }
        let wanted = self.element_order(gens[depth]);
        for candidate in 0..other.order as u32 {
            if other.element_order(candidate) != wanted {
                continue;
            }
            images.push(candidate);
            if let Some(found) = self.extend_isomorphism(other, gens, images) {
                return Some(found);
            }
            images.pop();
        }
        None
    }

    /// The injective homomorphism on `<gens>` sending `gens[k]` to
    /// `images[k]`, if that assignment defines one. Unreached entries of
    /// the returned table are `u32::MAX`.
    fn homomorphism_on_span(&self, other: &FiniteGroup, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
        let mut map = vec![u32::MAX; self.order];
        let mut used = ElementSet::empty(other.order);
        map[0] = 0;
        used.insert(0);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let image = other.mul(map[x as usize], h);
                match map[y as usize] {
                    u32::MAX => {
                        if !used.insert(image) {
                            return None;
                        }
                        map[y as usize] = image;
                        queue.push(y);
                    }
                    existing if existing != image => return None,
                    _ => {}
                }
            }
        }
        Some(map)
    }

    /// Checks that `map` is a bijective homomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FiniteGroup, map: &[u32]) -> bool {
        if self.order != other.order || map.len() != self.order {
            return false;
        }
        let mut hit = ElementSet::empty(other.order);
        if !map.iter().all(|&y| (y as usize) < other.order && hit.insert(y)) {
            return false;
        }
        (0..self.order as u32).all(|a| {
            (0..self.order as u32).all(|b| {
                map[self.mul(a, b) as usize] == other.mul(map[a as usize], map[b as usize])
            })
        })
    }
}

struct TableSearch<'a> {
    group: &'a FiniteGroup,
    best: Option<Vec<u32>>,
    leaves: usize,
}

impl TableSearch<'_> {
    /// Returns false once the budget is exhausted.
    fn extend(&mut self, gens: &mut Vec<u32>, span: &ElementSet) -> bool {
        let g = self.group;
        if span.len() == g.order {
            self.leaves += 1;
            if let Some(table) = g.labelled_table(gens) {
                if self.best.as_ref().is_none_or(|b| table < *b) {
                    self.best = Some(table);
                }
            }
            return self.leaves <= CERTIFICATE_BUDGET;
        }
        let outside: Vec<u32> = (0..g.order as u32).filter(|&x| !span.contains(x)).collect();
        let least = outside.iter().map(|&x| g.element_order(x)).min().expect("proper span");
        for x in outside {
            if g.element_order(x) != least {
                continue;
            }
            gens.push(x);
            let next = algo::close(g, span.clone(), gens);
            let within_budget = self.extend(gens, &next);
            gens.pop();
            if !within_budget {
                return false;
            }
        }
        true
    }
}

/// Invariant factors `d1 | d2 | ...` of an abelian group, recovered from
/// its element-order counts.
fn abelian_invariants(order: usize, histogram: &BTreeMap<u64, usize>) -> Vec<u64> {
    let mut factors: Vec<u64> = Vec::new();
    let mut rest = order as u64;
    let mut p = 2;
    while rest > 1 {
        if !rest.is_multiple_of(p) {
            p += 1;
            continue;
        }
        let mut top = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            top += 1;
        }
        // s_k = log_p #{x : x^(p^k) = 1}; the number of cyclic p-parts of
        // exponent >= k is s_k - s_(k-1).
        let log_count = |k: u32| -> u32 {
            let count: usize = histogram
                .iter()
                .filter(|(&o, _)| p.pow(k) % o == 0)
                .map(|(_, &c)| c)
                .sum();
            (count as f64).log(p as f64).round() as u32
        };
        let mut at_least: Vec<u32> = Vec::new();
        for k in 1..=top {
            let parts = log_count(k) - log_count(k - 1);
            if parts == 0 {
                break;
            }
            at_least.push(parts);
        }
        // Exponents of the cyclic p-parts, largest first.
        let width = at_least.first().copied().unwrap_or(0) as usize;
        let exponents: Vec<u32> = (0..width)
            .map(|r| at_least.iter().filter(|&&c| c as usize > r).count() as u32)
            .collect();
        if factors.len() < exponents.len() {
            factors.resize(exponents.len(), 1);
        }
        for (slot, e) in factors.iter_mut().zip(&exponents) {
            *slot *= p.pow(*e);
        }
    }
    factors.reverse();
    factors
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Invariant factors; complete for abelian groups.
    AbelianInvariants(Vec<u64>),
    /// Minimal relabelled multiplication table; complete.
    MinimalTable(Vec<u32>),
    /// Too large to certify; equality of descriptors is then inconclusive.
    Unavailable,
}

/// Isomorphism-invariant description of a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorDescriptor {
    pub order: usize,
    pub abelian: bool,
    pub element_order_histogram: BTreeMap<u64, usize>,
    pub certificate: Certificate,
}

impl FactorDescriptor {
    /// Whether equality with another complete descriptor decides
    /// isomorphism.
    pub fn is_complete(&self) -> bool {
        self.certificate != Certificate::Unavailable
    }

    /// Short name such as `C2`, `C2xC6`, `S3` or `A5`.
    pub fn name(&self) -> String {
        if let Certificate::AbelianInvariants(factors) = &self.certificate {
            if factors.is_empty() {
                return "C1".to_string();
            }
            let mut parts: Vec<String> = factors.iter().map(|d| format!("C{d}")).collect();
            parts.reverse();
            return parts.join("x");
        }
        known_names()
            .iter()
            .find(|(d, _)| d == self)
            .map(|(_, name)| name.clone())
            .unwrap_or_else(|| format!("G{}", self.order))
    }
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn known_names() -> &'static Vec<(FactorDescriptor, String)> {
    static NAMES: OnceLock<Vec<(FactorDescriptor, String)>> = OnceLock::new();
    NAMES.get_or_init(|| {
        let mut named: Vec<(FactorDescriptor, String)> = super::catalog::small_groups()
            .into_iter()
            .filter(|entry| !entry.group.to_finite_group().expect("small").is_abelian())
            .map(|entry| {
                let d = entry.group.to_finite_group().expect("small").descriptor();
                (d, entry.name.to_string())
            })
            .collect();
        let a5 = super::catalog::alternating(5).expect("A5");
        named.push((a5.to_finite_group().expect("A5").descriptor(), "A5".to_string()));
        named
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        FiniteGroup::from_table(n, table).unwrap()
    }

    fn klein() -> FiniteGroup {
        let table = (0..16).map(|k| ((k / 4) ^ (k % 4)) as u32).collect();
        FiniteGroup::from_table(4, table).unwrap()
    }

    fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (a.order(), b.order());
        let mut table = Vec::new();
        for x in 0..n * m {
            for y in 0..n * m {
                let (x1, x2) = ((x / m) as u32, (x % m) as u32);
                let (y1, y2) = ((y / m) as u32, (y % m) as u32);
                table.push(a.mul(x1, y1) * m as u32 + b.mul(x2, y2));
            }
        }
        FiniteGroup::from_table(n * m, table).unwrap()
    }

    #[test]
    fn table_axioms_are_checked() {
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 0]).is_ok());
    }

    #[test]
    fn z4_and_klein_are_not_isomorphic() {
        assert_eq!(cyclic(4).isomorphism(&klein()).unwrap(), None);
        assert_ne!(cyclic(4).descriptor(), klein().descriptor());
    }

    #[test]
    fn identity_is_a_self_isomorphism() {
        let g = product(&cyclic(2), &cyclic(6));
        let map = g.isomorphism(&g).unwrap().unwrap();
        assert!(g.is_isomorphism(&g, &map));
    }

    #[test]
    fn cyclic_products_by_crt() {
        let c6 = cyclic(6);
        let c2c3 = product(&cyclic(2), &cyclic(3));
        let map = c2c3.isomorphism(&c6).unwrap().unwrap();
        assert!(c2c3.is_isomorphism(&c6, &map));
        assert_eq!(c6.descriptor(), c2c3.descriptor());
        assert_eq!(c6.descriptor().name(), "C6");
    }

    #[test]
    fn abelian_invariants_from_histograms() {
        let c2c4 = product(&cyclic(2), &cyclic(4));
        assert_eq!(
            c2c4.descriptor().certificate,
            Certificate::AbelianInvariants(vec![2, 4])
        );
        assert_eq!(c2c4.descriptor().name(), "C4xC2");
        let g = product(&product(&cyclic(2), &cyclic(6)), &cyclic(4));
        assert_eq!(
            g.descriptor().certificate,
            Certificate::AbelianInvariants(vec![2, 2, 12])
        );
        assert_eq!(FiniteGroup::trivial().descriptor().name(), "C1");
    }

    #[test]
    fn simplicity() {
        assert_eq!(cyclic(5).is_simple(), Ok(true));
        assert_eq!(cyclic(6).is_simple(), Ok(false));
        assert_eq!(FiniteGroup::trivial().is_simple(), Err(GroupError::TrivialGroup));
    }

    #[test]
    fn isomorphism_cap() {
        let big = cyclic(513);
        assert!(matches!(
            big.isomorphism(&big),
            Err(GroupError::CapExceeded { .. })
        ));
    }
}
