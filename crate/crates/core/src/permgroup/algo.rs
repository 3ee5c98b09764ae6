//! Group algorithms shared by the permutation and Cayley-table backends.
//!
//! Everything here works on element indices of some finite "universe"
//! group; a subgroup is an [`ElementSet`] of indices closed under the
//! universe's multiplication. Index 0 is always the identity.

use std::fmt;

/// Multiplication on a finite universe of indexed elements.
pub(crate) trait Universe {
    fn size(&self) -> usize;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;

    fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    fn element_order(&self, x: u32) -> u64 {
        let mut order = 1;
        let mut power = x;
        while power != 0 {
            power = self.mul(power, x);
            order += 1;
        }
        order
    }
}

/// Fixed-size bit set of element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> ElementSet {
        ElementSet {
            bits: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn identity_only(universe: usize) -> ElementSet {
        let mut set = ElementSet::empty(universe);
        set.insert(0);
        set
    }

    pub fn full(universe: usize) -> ElementSet {
        let mut set = ElementSet::empty(universe);
        for i in 0..universe {
            set.insert(i as u32);
        }
        set
    }

    pub fn insert(&mut self, i: u32) -> bool {
        let (word, bit) = (i as usize / 64, i % 64);
        let fresh = self.bits[word] & (1 << bit) == 0;
        self.bits[word] |= 1 << bit;
        fresh
    }

    pub fn contains(&self, i: u32) -> bool {
        self.bits
            .get(i as usize / 64)
            .is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter().enumerate().flat_map(|(k, &word)| {
            (0..64u32)
                .filter(move |bit| word & (1 << bit) != 0)
                .map(move |bit| k as u32 * 64 + bit)
        })
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Extends the already-closed `start` to the subgroup generated by it and
/// `gens`.
pub(crate) fn close<U: Universe + ?Sized>(u: &U, start: ElementSet, gens: &[u32]) -> ElementSet {
    let mut set = start;
    let mut queue: Vec<u32> = set.iter().collect();
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in gens {
            let y = u.mul(x, g);
            if set.insert(y) {
                queue.push(y);
            }
        }
    }
    set
}

pub(crate) fn generated<U: Universe + ?Sized>(u: &U, gens: &[u32]) -> ElementSet {
    close(u, ElementSet::identity_only(u.size()), gens)
}

/// A generating set of at most `log2 |members|` elements, chosen greedily
/// in index order.
pub(crate) fn greedy_generators<U: Universe + ?Sized>(u: &U, members: &ElementSet) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut span = ElementSet::identity_only(u.size());
    for x in members.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = close(u, span, &gens);
        }
    }
    gens
}

/// Smallest subgroup normal in the group generated by `ambient_gens` that
/// contains `seeds`.
pub(crate) fn normal_closure<U: Universe + ?Sized>(
    u: &U,
    ambient_gens: &[u32],
    seeds: &[u32],
) -> (ElementSet, Vec<u32>) {
    let mut gens: Vec<u32> = seeds.to_vec();
    let mut set = generated(u, &gens);
    let mut checked = 0;
    while checked < gens.len() {
        let n = gens[checked];
        checked += 1;
        for &g in ambient_gens {
            let c = u.conj(g, n);
            if !set.contains(c) {
                gens.push(c);
                set = close(u, set, &gens);
            }
        }
    }
    (set, gens)
}

/// Orbits of `members` under conjugation by `gens`.
pub(crate) fn conjugacy_classes<U: Universe + ?Sized>(
    u: &U,
    members: &ElementSet,
    gens: &[u32],
) -> Vec<Vec<u32>> {
    let mut seen = ElementSet::empty(u.size());
    let mut classes = Vec::new();
    for x in members.iter() {
        if seen.contains(x) {
            continue;
        }
        seen.insert(x);
        let mut class = vec![x];
        let mut head = 0;
        while head < class.len() {
            let y = class[head];
            head += 1;
            for &g in gens {
                let z = u.conj(g, y);
                if seen.insert(z) {
                    class.push(z);
                }
            }
        }
        classes.push(class);
    }
    classes
}

/// Whether `sub` is normalised by every generator of the group generated
/// by `gens`; checking the subgroup's generators suffices.
pub(crate) fn normalises<U: Universe + ?Sized>(
    u: &U,
    gens: &[u32],
    sub: &ElementSet,
    sub_gens: &[u32],
) -> bool {
    gens.iter()
        .all(|&g| sub_gens.iter().all(|&n| sub.contains(u.conj(g, n))))
}

/// A non-identity element whose normal closure is proper, if any.
pub(crate) fn proper_normal_witness<U: Universe + ?Sized>(
    u: &U,
    members: &ElementSet,
    gens: &[u32],
) -> Option<u32> {
    let order = members.len();
    conjugacy_classes(u, members, gens)
        .into_iter()
        .map(|class| class[0])
        .filter(|&x| x != 0)
        .find(|&x| normal_closure(u, gens, &[x]).0.len() < order)
}
