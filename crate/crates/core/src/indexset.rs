//! Well-ordered index sets built from ordinals.
//!
//! A [`ProductOrder`] is the lexicographically ordered set of pairs
//! `(i, j)` with `1 <= i < n` and `1 <= j <= m`, extended by an adjoined
//! maximum `(n, 1)` exactly when `n` is a limit ordinal (otherwise
//! `(n-1, m)` is already the largest pair). A [`ConcordantQuotient`]
//! collapses such an order by an equivalence whose classes are convex
//! intervals; its classes are ranked `1, 2, ..., p` in order, so the
//! quotient is isomorphic to `{1, ..., p}` and `p` is its order type.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::ordinal::{self, Ordinal};

/// Largest product order [`build_quotient`] will enumerate.
pub const MAX_ENUMERATED_PAIRS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("pair {pair} lies outside {order}")]
    OutOfBounds { pair: PairIndex, order: String },
    #[error("pair {0} is the maximum and has no successor")]
    NoSuccessor(PairIndex),
    #[error("product order needs major bound >= 2 and minor bound >= 1, got ({0}, {1})")]
    EmptyOrder(Ordinal, Ordinal),
    /// Pairs `a < b < c` with `a ~ c` but not `a ~ b`.
    #[error("equivalence is not concordant: {} ~ {} but not {}", .0[0], .0[2], .0[1])]
    NotConcordant(Box<[PairIndex; 3]>),
    #[error("class rank {0} does not exist")]
    NoSuchClass(Ordinal),
    #[error("resource limit: {0}")]
    Resource(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairIndex {
    pub major: Ordinal,
    pub minor: Ordinal,
}

impl PairIndex {
    pub fn new(major: Ordinal, minor: Ordinal) -> PairIndex {
        PairIndex { major, minor }
    }

    /// The swap `(i, j) -> (j, i)` relating the two product orders of a
    /// refinement.
    pub fn swapped(&self) -> PairIndex {
        PairIndex::new(self.minor.clone(), self.major.clone())
    }
}

impl From<(u32, u32)> for PairIndex {
    fn from((major, minor): (u32, u32)) -> PairIndex {
        PairIndex::new(major.into(), minor.into())
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.major, self.minor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductOrder {
    major_bound: Ordinal,
    minor_bound: Ordinal,
    adjoined_max: Option<PairIndex>,
}

impl fmt::Display for ProductOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[1,{})x[1,{}]", self.major_bound, self.minor_bound)?;
        if let Some(top) = &self.adjoined_max {
            write!(f, "+{top}")?;
        }
        Ok(())
    }
}

impl ProductOrder {
    /// Majors range over `[1, major_bound)`, minors over `[1, minor_bound]`.
    pub fn new(major_bound: Ordinal, minor_bound: Ordinal) -> Result<ProductOrder, IndexError> {
        if major_bound < Ordinal::from(2) || minor_bound.is_zero() {
            return Err(IndexError::EmptyOrder(major_bound, minor_bound));
        }
        let adjoined_max = major_bound
            .is_limit()
            .then(|| PairIndex::new(major_bound.clone(), Ordinal::one()));
        Ok(ProductOrder {
            major_bound,
            minor_bound,
            adjoined_max,
        })
    }

    pub fn major_bound(&self) -> &Ordinal {
        &self.major_bound
    }

    pub fn minor_bound(&self) -> &Ordinal {
        &self.minor_bound
    }

    pub fn adjoined_max(&self) -> Option<&PairIndex> {
        self.adjoined_max.as_ref()
    }

    pub fn is_adjoined(&self, pair: &PairIndex) -> bool {
        self.adjoined_max.as_ref() == Some(pair)
    }

    pub fn contains(&self, pair: &PairIndex) -> bool {
        self.is_adjoined(pair)
            || (!pair.major.is_zero()
                && pair.major < self.major_bound
                && !pair.minor.is_zero()
                && pair.minor <= self.minor_bound)
    }

    fn check(&self, pair: &PairIndex) -> Result<(), IndexError> {
        if self.contains(pair) {
            Ok(())
        } else {
            Err(IndexError::OutOfBounds {
                pair: pair.clone(),
                order: self.to_string(),
            })
        }
    }

    pub fn min(&self) -> PairIndex {
        PairIndex::from((1, 1))
    }

    pub fn max(&self) -> PairIndex {
        match &self.adjoined_max {
            Some(top) => top.clone(),
            None => PairIndex::new(
                self.major_bound.predecessor().expect("non-limit major bound"),
                self.minor_bound.clone(),
            ),
        }
    }

    /// Lexicographic comparison; the adjoined maximum exceeds every pair.
    pub fn compare(&self, a: &PairIndex, b: &PairIndex) -> Result<Ordering, IndexError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self.is_adjoined(a), self.is_adjoined(b)) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => a.major.cmp(&b.major).then_with(|| a.minor.cmp(&b.minor)),
        })
    }

    // Bounds-unchecked comparison for pairs already known to be members.
    fn cmp_members(&self, a: &PairIndex, b: &PairIndex) -> Ordering {
        self.compare(a, b).expect("members of the order")
    }

    pub fn successor(&self, pair: &PairIndex) -> Result<PairIndex, IndexError> {
        self.check(pair)?;
        if self.is_adjoined(pair) || *pair == self.max() {
            return Err(IndexError::NoSuccessor(pair.clone()));
        }
        if pair.minor < self.minor_bound {
            Ok(PairIndex::new(pair.major.clone(), pair.minor.successor().map_err(resource)?))
        } else {
            Ok(PairIndex::new(pair.major.successor().map_err(resource)?, Ordinal::one()))
        }
    }

    /// The immediate predecessor, or `None` for the minimum and for limit
    /// elements.
    pub fn predecessor(&self, pair: &PairIndex) -> Result<Option<PairIndex>, IndexError> {
        self.check(pair)?;
        if self.is_adjoined(pair) {
            return Ok(None);
        }
        if pair.minor.is_successor() && pair.minor > Ordinal::one() {
            let minor = pair.minor.predecessor().expect("successor");
            return Ok(Some(PairIndex::new(pair.major.clone(), minor)));
        }
        if pair.minor == Ordinal::one() && pair.major.is_successor() && pair.major > Ordinal::one()
        {
            let major = pair.major.predecessor().expect("successor");
            return Ok(Some(PairIndex::new(major, self.minor_bound.clone())));
        }
        Ok(None)
    }

    /// Limit elements: `(i, 1)` with `i` a limit (including the adjoined
    /// maximum) and `(i, j)` with `j` a limit.
    pub fn is_limit(&self, pair: &PairIndex) -> Result<bool, IndexError> {
        self.check(pair)?;
        Ok((pair.minor == Ordinal::one() && pair.major.is_limit()) || pair.minor.is_limit())
    }

    /// Number of elements when both bounds are finite.
    pub fn len(&self) -> Option<usize> {
        let n = self.major_bound.as_natural()? as usize;
        let m = self.minor_bound.as_natural()? as usize;
        Some((n - 1) * m)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All elements in increasing order; `None` unless both bounds are finite.
    pub fn iter(&self) -> Option<impl Iterator<Item = PairIndex>> {
        let n = self.major_bound.as_natural()?;
        let m = self.minor_bound.as_natural()?;
        Some((1..n).flat_map(move |i| (1..=m).map(move |j| PairIndex::from((i, j)))))
    }

    /// A random member; every member has positive probability.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PairIndex {
        if let Some(top) = &self.adjoined_max {
            if rng.random_ratio(1, 32) {
                return top.clone();
            }
        }
        let positive_below = |bound: &Ordinal, rng: &mut R| loop {
            let x = ordinal::sample_below(bound, rng).expect("non-empty bound");
            if !x.is_zero() {
                break x;
            }
        };
        let major = positive_below(&self.major_bound, rng);
        let minor = positive_below(&(&self.minor_bound + &Ordinal::one()), rng);
        PairIndex::new(major, minor)
    }

    /// Least element of a non-empty subset.
    pub fn minimum<'a, I>(&self, subset: I) -> Result<Option<PairIndex>, IndexError>
    where
        I: IntoIterator<Item = &'a PairIndex>,
    {
        let mut best: Option<&PairIndex> = None;
        for pair in subset {
            self.check(pair)?;
            best = match best {
                Some(b) if self.cmp_members(b, pair) != Ordering::Greater => Some(b),
                _ => Some(pair),
            };
        }
        Ok(best.cloned())
    }
}

fn resource(err: ordinal::OrdinalError) -> IndexError {
    IndexError::Resource(err.to_string())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WellOrderReport {
    pub subsets_checked: usize,
    pub violations: Vec<String>,
}

impl WellOrderReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples random finite subsets and checks that comparison is a strict
/// total order on each and that each has a unique least element.
pub fn check_wellorder<R: Rng + ?Sized>(
    order: &ProductOrder,
    sample_budget: usize,
    rng: &mut R,
) -> WellOrderReport {
    let mut report = WellOrderReport::default();
    for _ in 0..sample_budget {
        let size = rng.random_range(1..=8);
        let mut subset: Vec<PairIndex> = (0..size).map(|_| order.sample(rng)).collect();
        subset.sort_by(|a, b| a.major.cmp(&b.major).then_with(|| a.minor.cmp(&b.minor)));
        subset.dedup();
        report.subsets_checked += 1;
        audit_subset(order, &subset, &mut report.violations);
    }
    report
}

fn audit_subset(order: &ProductOrder, subset: &[PairIndex], violations: &mut Vec<String>) {
    for a in subset {
        for b in subset {
            let ab = order.cmp_members(a, b);
            if ab != order.cmp_members(b, a).reverse() {
                violations.push(format!("antisymmetry fails for {a}, {b}"));
            }
            if (ab == Ordering::Equal) != (a == b) {
                violations.push(format!("distinct {a}, {b} compare equal"));
            }
            for c in subset {
                if ab == Ordering::Less
                    && order.cmp_members(b, c) == Ordering::Less
                    && order.cmp_members(a, c) != Ordering::Less
                {
                    violations.push(format!("transitivity fails for {a} < {b} < {c}"));
                }
            }
        }
    }
    let min = order.minimum(subset).expect("members").expect("non-empty");
    let below = subset
        .iter()
        .filter(|p| order.cmp_members(p, &min) != Ordering::Greater)
        .count();
    if below != 1 {
        violations.push(format!("minimum {min} is not unique"));
    }
}

/// Class structure of a quotient whose classes cannot be enumerated.
///
/// Ranks are 1-based ordinals; rank `r` is the `r`-th class in order.
pub trait ClassLocator: Send + Sync {
    fn class_of(&self, pair: &PairIndex) -> Ordinal;
    fn class_min(&self, rank: &Ordinal) -> Option<PairIndex>;
    fn class_max(&self, rank: &Ordinal) -> Option<PairIndex>;
    /// Rank of the top class.
    fn order_type(&self) -> Ordinal;
}

#[derive(Clone)]
enum Classes {
    Enumerated {
        minima: Vec<PairIndex>,
        maxima: Vec<PairIndex>,
    },
    Located(Arc<dyn ClassLocator>),
}

/// A product order collapsed by a concordant equivalence.
#[derive(Clone)]
pub struct ConcordantQuotient {
    order: ProductOrder,
    classes: Classes,
}

impl fmt::Debug for ConcordantQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConcordantQuotient")
            .field("order", &self.order.to_string())
            .field("order_type", &self.order_type().to_string())
            .finish()
    }
}

/// Enumerates a finite product order and collapses equal values.
///
/// Fails with the witnessing triple when some value reappears after a
/// different one, i.e. when equality of values is not concordant.
pub fn build_quotient<K, F>(order: &ProductOrder, mut value_of: F) -> Result<ConcordantQuotient, IndexError>
where
    K: Eq + Hash,
    F: FnMut(&PairIndex) -> K,
{
    let too_big = || IndexError::Resource(format!("{order} is not finitely enumerable"));
    let len = order.len().ok_or_else(too_big)?;
    if len > MAX_ENUMERATED_PAIRS {
        return Err(too_big());
    }
    let mut minima: Vec<PairIndex> = Vec::new();
    let mut maxima: Vec<PairIndex> = Vec::new();
    let mut first_seen: HashMap<K, PairIndex> = HashMap::new();
    let mut current: Option<K> = None;
    for pair in order.iter().ok_or_else(too_big)? {
        let value = value_of(&pair);
        if current.as_ref() == Some(&value) {
            *maxima.last_mut().expect("open class") = pair;
            continue;
        }
        if let Some(closed) = current.take() {
            first_seen.insert(closed, minima.last().expect("open class").clone());
        }
        if let Some(first) = first_seen.get(&value) {
            return Err(IndexError::NotConcordant(Box::new([
                first.clone(),
                minima.last().expect("an intervening class").clone(),
                pair,
            ])));
        }
        current = Some(value);
        minima.push(pair.clone());
        maxima.push(pair);
    }
    Ok(ConcordantQuotient {
        order: order.clone(),
        classes: Classes::Enumerated { minima, maxima },
    })
}

impl ConcordantQuotient {
    /// A quotient whose classes are described by a locator rather than
    /// enumerated.
    pub fn from_locator(order: ProductOrder, locator: Arc<dyn ClassLocator>) -> ConcordantQuotient {
        ConcordantQuotient {
            order,
            classes: Classes::Located(locator),
        }
    }

    pub fn order(&self) -> &ProductOrder {
        &self.order
    }

    /// Number of classes when they were enumerated.
    pub fn class_count(&self) -> Option<usize> {
        match &self.classes {
            Classes::Enumerated { minima, .. } => Some(minima.len()),
            Classes::Located(_) => None,
        }
    }

    /// The ordinal `p` with the quotient isomorphic to `{1, ..., p}`.
    pub fn order_type(&self) -> Ordinal {
        match &self.classes {
            Classes::Enumerated { minima, .. } => Ordinal::from(minima.len() as u32),
            Classes::Located(locator) => locator.order_type(),
        }
    }

    /// Rank of the class containing `pair`.
    pub fn class_of(&self, pair: &PairIndex) -> Result<Ordinal, IndexError> {
        self.order.check(pair)?;
        Ok(match &self.classes {
            Classes::Enumerated { minima, .. } => {
                let below = minima.partition_point(|m| self.order.cmp_members(m, pair) != Ordering::Greater);
                Ordinal::from(below as u32)
            }
            Classes::Located(locator) => locator.class_of(pair),
        })
    }

    fn check_rank(&self, rank: &Ordinal) -> Result<(), IndexError> {
        if rank.is_zero() || *rank > self.order_type() {
            Err(IndexError::NoSuchClass(rank.clone()))
        } else {
            Ok(())
        }
    }

    fn enumerated_slot(&self, rank: &Ordinal) -> Result<usize, IndexError> {
        self.check_rank(rank)?;
        Ok(rank.as_natural().expect("finite rank") as usize - 1)
    }

    pub fn class_min(&self, rank: &Ordinal) -> Result<PairIndex, IndexError> {
        match &self.classes {
            Classes::Enumerated { minima, .. } => Ok(minima[self.enumerated_slot(rank)?].clone()),
            Classes::Located(locator) => {
                self.check_rank(rank)?;
                locator
                    .class_min(rank)
                    .ok_or_else(|| IndexError::NoSuchClass(rank.clone()))
            }
        }
    }

    /// Maximal element of the class with the given rank.
    pub fn class_max_of_rank(&self, rank: &Ordinal) -> Result<PairIndex, IndexError> {
        match &self.classes {
            Classes::Enumerated { maxima, .. } => Ok(maxima[self.enumerated_slot(rank)?].clone()),
            Classes::Located(locator) => {
                self.check_rank(rank)?;
                locator.class_max(rank).ok_or_else(|| {
                    IndexError::Resource(format!("class {rank} has no reachable maximum"))
                })
            }
        }
    }

    /// Maximal element of the class containing `rep`.
    pub fn class_max(&self, rep: &PairIndex) -> Result<PairIndex, IndexError> {
        let rank = self.class_of(rep)?;
        self.class_max_of_rank(&rank)
    }

    /// Rank of the next class, `None` for the top class.
    pub fn class_successor(&self, rank: &Ordinal) -> Result<Option<Ordinal>, IndexError> {
        self.check_rank(rank)?;
        if *rank == self.order_type() {
            return Ok(None);
        }
        Ok(Some(rank.successor().map_err(resource)?))
    }
}

/// Samples triples `a < b < c` and reports the first one with
/// `value(a) = value(c) != value(b)`.
pub fn verify_concordance_sampled<K, F, R>(
    order: &ProductOrder,
    mut value_of: F,
    samples: usize,
    rng: &mut R,
) -> Result<(), IndexError>
where
    K: Eq,
    F: FnMut(&PairIndex) -> K,
    R: Rng + ?Sized,
{
    for _ in 0..samples {
        let mut triple = [order.sample(rng), order.sample(rng), order.sample(rng)];
        triple.sort_by(|a, b| order.cmp_members(a, b));
        let [a, b, c] = triple;
        let (va, vb, vc) = (value_of(&a), value_of(&b), value_of(&c));
        if va == vc && va != vb {
            return Err(IndexError::NotConcordant(Box::new([a, b, c])));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn pair(i: &str, j: &str) -> PairIndex {
        PairIndex::new(ord(i), ord(j))
    }

    fn finite(n: u32, m: u32) -> ProductOrder {
        ProductOrder::new(n.into(), m.into()).unwrap()
    }

    #[test]
    fn lex_compare_examples() {
        let order = finite(3, 2);
        assert_eq!(order.compare(&(1, 2).into(), &(2, 1).into()), Ok(Ordering::Less));
        assert_eq!(order.compare(&(2, 1).into(), &(2, 1).into()), Ok(Ordering::Equal));
        let limit = ProductOrder::new(ord("w"), ord("7")).unwrap();
        let top = pair("w", "1");
        assert_eq!(limit.adjoined_max(), Some(&top));
        assert_eq!(limit.compare(&top, &pair("5", "7")), Ok(Ordering::Greater));
        assert!(matches!(
            order.compare(&(3, 1).into(), &(1, 1).into()),
            Err(IndexError::OutOfBounds { .. })
        ));
        assert!(order.compare(&(0, 1).into(), &(1, 1).into()).is_err());
    }

    #[test]
    fn adjoined_max_only_for_limit_major_bound() {
        assert!(finite(3, 2).adjoined_max().is_none());
        assert_eq!(finite(3, 2).max(), PairIndex::from((2, 2)));
        let order = ProductOrder::new(ord("w+1"), ord("w")).unwrap();
        assert!(order.adjoined_max().is_none());
        assert_eq!(order.max(), pair("w", "w"));
        assert!(ProductOrder::new(ord("1"), ord("3")).is_err());
        assert!(ProductOrder::new(ord("3"), ord("0")).is_err());
    }

    #[test]
    fn successor_examples() {
        let order = finite(3, 2);
        assert_eq!(order.successor(&(1, 1).into()), Ok((1, 2).into()));
        assert_eq!(order.successor(&(1, 2).into()), Ok((2, 1).into()));
        assert_eq!(
            order.successor(&(2, 2).into()),
            Err(IndexError::NoSuccessor((2, 2).into()))
        );
        let limit = ProductOrder::new(ord("w"), ord("2")).unwrap();
        assert_eq!(limit.successor(&(5, 2).into()), Ok((6, 1).into()));
        assert!(limit.successor(&pair("w", "1")).is_err());
    }

    #[test]
    fn predecessor_inverts_successor() {
        let order = ProductOrder::new(ord("w*2"), ord("w+1")).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let p = order.sample(&mut rng);
            if let Ok(next) = order.successor(&p) {
                assert_eq!(order.predecessor(&next), Ok(Some(p.clone())));
            }
            let limit = order.is_limit(&p).unwrap();
            let has_pred = order.predecessor(&p).unwrap().is_some();
            assert_eq!(limit || p == order.min(), !has_pred, "{p}");
        }
    }

    #[test]
    fn limit_pairs() {
        let order = ProductOrder::new(ord("w*2"), ord("w+3")).unwrap();
        assert_eq!(order.is_limit(&pair("w", "1")), Ok(true));
        assert_eq!(order.is_limit(&pair("3", "w")), Ok(true));
        assert_eq!(order.is_limit(&pair("3", "4")), Ok(false));
        assert_eq!(order.is_limit(&pair("w", "2")), Ok(false));
        let top = ProductOrder::new(ord("w"), ord("2")).unwrap();
        assert_eq!(top.is_limit(&pair("w", "1")), Ok(true));
    }

    #[test]
    fn minimum_examples() {
        let order = finite(3, 2);
        let subset: Vec<PairIndex> = vec![(2, 1).into(), (1, 2).into()];
        assert_eq!(order.minimum(&subset), Ok(Some((1, 2).into())));
        let limit = ProductOrder::new(ord("w"), ord("2")).unwrap();
        let subset: Vec<PairIndex> = [3, 7, 9].iter().map(|&k| (k, 1).into()).collect();
        assert_eq!(limit.minimum(&subset), Ok(Some((3, 1).into())));
    }

    #[test]
    fn wellorder_sampling_finds_no_violation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let order = ProductOrder::new(ord("w*2"), ord("3")).unwrap();
        let report = check_wellorder(&order, 1000, &mut rng);
        assert_eq!(report.subsets_checked, 1000);
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn degenerate_quotients() {
        // Majors {1, 2}, minors {1, 2}: four pairs.
        let order = finite(3, 2);
        let single = build_quotient(&order, |_| 0u8).unwrap();
        assert_eq!(single.order_type(), Ordinal::one());
        assert_eq!(single.class_max(&(1, 1).into()), Ok((2, 2).into()));
        let injective = build_quotient(&order, |p| p.clone()).unwrap();
        assert_eq!(injective.order_type(), Ordinal::from(4));
        for p in order.iter().unwrap() {
            assert_eq!(injective.class_max(&p), Ok(p.clone()));
            assert_eq!(injective.class_min(&injective.class_of(&p).unwrap()), Ok(p));
        }
        assert_eq!(injective.class_successor(&4u32.into()), Ok(None));
        assert_eq!(injective.class_successor(&2u32.into()), Ok(Some(3u32.into())));
        assert!(injective.class_min(&5u32.into()).is_err());
        assert!(injective.class_min(&Ordinal::zero()).is_err());
    }

    #[test]
    fn non_concordant_values_are_rejected_with_witness() {
        let order = finite(3, 2);
        // (1,1)->a (1,2)->b (2,1)->a: a reappears after b.
        let err = build_quotient(&order, |p| {
            (p.minor == Ordinal::from(2) && p.major == Ordinal::one()) as u8
        })
        .unwrap_err();
        assert_eq!(
            err,
            IndexError::NotConcordant(Box::new([(1, 1).into(), (1, 2).into(), (2, 1).into()]))
        );
    }

    #[test]
    fn infinite_orders_are_not_enumerated() {
        let order = ProductOrder::new(ord("w"), ord("2")).unwrap();
        assert!(matches!(
            build_quotient(&order, |_| 0u8),
            Err(IndexError::Resource(_))
        ));
    }

    #[test]
    fn sampled_concordance_check() {
        let order = ProductOrder::new(ord("w*2"), ord("3")).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // Monotone in the major index: concordant.
        let monotone = |p: &PairIndex| p.major >= ord("w");
        assert!(verify_concordance_sampled(&order, monotone, 2000, &mut rng).is_ok());
        let parity = |p: &PairIndex| p.major.is_even();
        assert!(verify_concordance_sampled(&order, parity, 2000, &mut rng).is_err());
    }
}
