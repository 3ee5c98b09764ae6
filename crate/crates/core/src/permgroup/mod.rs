//! Finite permutation groups.
//!
//! Every [`PermGroup`] lives inside an *ambient* group whose elements are
//! materialised once, sorted, and indexed; subgroups of the same ambient
//! share it and are stored as bitsets of element indices. Groups built
//! from separate ambients are rebased onto a common one on demand, so
//! `join` and `intersect` work between any two groups of equal degree.
//!
//! Products compose left to right: `a * b` applies `a` first.

mod algo;
mod cayley;
pub mod catalog;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use algo::Universe;
pub use algo::ElementSet;
pub use cayley::{Certificate, FactorDescriptor, FiniteGroup, CERTIFICATE_CAP, ISOMORPHISM_CAP};

/// Default largest group order [`PermGroup::generate`] materialises.
pub const ELEMENT_CAP: usize = 20_160;

/// Largest order turned into a Cayley table.
pub const TABLE_CAP: usize = 2_520;

/// Largest number of subgroups [`PermGroup::subgroups`] will collect.
pub const SUBGROUP_CAP: usize = 10_000;

// Ambients up to this order get a full multiplication table.
const MUL_TABLE_CAP: usize = 1_024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("not a subgroup of the given group")]
    NotSubgroup,
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("the trivial group has no simplicity verdict")]
    TrivialGroup,
    #[error("invalid group table: {0}")]
    InvalidTable(String),
}

impl GroupError {
    pub fn is_resource(&self) -> bool {
        matches!(self, GroupError::CapExceeded { .. })
    }
}

/// A bijection of `{0, ..., degree - 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Permutation, GroupError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            match seen.get_mut(x as usize) {
                Some(slot) if !*slot => *slot = true,
                _ => {
                    return Err(GroupError::InvalidPermutation(format!(
                        "{images:?} is not a bijection"
                    )))
                }
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle text such as `(0 1 2)(3 4)` on `degree`
    /// points. Commas may separate points; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, GroupError> {
        let bad = |why: String| GroupError::InvalidPermutation(format!("{text:?}: {why}"));
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '('".into()))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle".into()))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map_err(|_| bad(format!("bad point {s:?}"))))
                .collect::<Result<Vec<u32>, _>>()?;
            for (k, &p) in points.iter().enumerate() {
                if p as usize >= degree {
                    return Err(bad(format!("point {p} outside degree {degree}")));
                }
                if std::mem::replace(&mut moved[p as usize], true) {
                    return Err(bad(format!("point {p} repeated")));
                }
                images[p as usize] = points[(k + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    fn extended(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u32..degree as u32);
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            let points: Vec<String> = cycle.iter().map(u32::to_string).collect();
            write!(f, "({})", points.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses cycle text on the smallest degree covering the points named.
impl FromStr for Permutation {
    type Err = GroupError;

    fn from_str(text: &str) -> Result<Permutation, GroupError> {
        let degree = text
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|s| s.parse::<usize>().ok())
            .max()
            .map_or(0, |m| m + 1);
        Permutation::parse_cycles(text, degree)
    }
}

struct Ambient {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
    gens: Vec<u32>,
}

impl Universe for Ambient {
    fn size(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(table) => table[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].then(&self.elements[b as usize])],
        }
    }

    fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }
}

impl Ambient {
    fn build(degree: usize, gens: &[Permutation], cap: usize) -> Result<Ambient, GroupError> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(g.degree(), degree));
            }
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
        let mut queue = vec![identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    if queue.len() == cap {
                        return Err(GroupError::CapExceeded {
                            what: "group order",
                            cap,
                        });
                    }
                    queue.push(y);
                }
            }
        }
        // The identity sorts first, so it gets index 0.
        let mut elements = queue;
        elements.sort();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= MUL_TABLE_CAP).then(|| {
            let mut table = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    table.push(index[&a.then(b)]);
                }
            }
            table
        });
        let mut gens: Vec<u32> = gens.iter().map(|g| index[g]).filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        Ok(Ambient {
            degree,
            elements,
            index,
            inverse,
            table,
            gens,
        })
    }

    fn element_permutations(&self, ids: &[u32]) -> Vec<Permutation> {
        ids.iter().map(|&i| self.elements[i as usize].clone()).collect()
    }
}

/// A finite group of permutations, materialised as a subgroup of some
/// ambient group.
#[derive(Clone)]
pub struct PermGroup {
    ambient: Arc<Ambient>,
    members: ElementSet,
    gens: Vec<u32>,
}

/// Factor group `G/N` with the coset of each ambient element of `G`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    coset_of: HashMap<Permutation, u32>,
}

impl Quotient {
    pub fn coset_of(&self, g: &Permutation) -> Option<u32> {
        self.coset_of.get(g).copied()
    }
}

impl PermGroup {
    /// The group generated by `gens` on `degree` points.
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<PermGroup, GroupError> {
        PermGroup::generate_with_cap(degree, gens, ELEMENT_CAP)
    }

    pub fn generate_with_cap(
        degree: usize,
        gens: &[Permutation],
        cap: usize,
    ) -> Result<PermGroup, GroupError> {
        let ambient = Ambient::build(degree, gens, cap)?;
        let members = ElementSet::full(ambient.size());
        let gens = ambient.gens.clone();
        Ok(PermGroup {
            ambient: Arc::new(ambient),
            members,
            gens,
        })
    }

    /// Parses each generator as cycle text on `degree` points.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<PermGroup, GroupError> {
        let gens = gens
            .iter()
            .map(|g| Permutation::parse_cycles(g, degree))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::generate(degree, &gens)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::generate(degree, &[]).expect("trivial group")
    }

    fn within(&self, members: ElementSet, gens: Vec<u32>) -> PermGroup {
        PermGroup {
            ambient: Arc::clone(&self.ambient),
            members,
            gens,
        }
    }

    /// The subgroup generated by elements of `self`.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<PermGroup, GroupError> {
        let mut ids = Vec::with_capacity(gens.len());
        for g in gens {
            let id = self.index_of(g).ok_or_else(|| GroupError::NotInGroup(g.to_string()))?;
            if id != 0 {
                ids.push(id);
            }
        }
        let members = algo::generated(&*self.ambient, &ids);
        Ok(self.within(members, ids))
    }

    /// The subgroup of `self` generated by the elements parsed from cycle
    /// text.
    pub fn subgroup_from_cycles(&self, gens: &[&str]) -> Result<PermGroup, GroupError> {
        let gens = gens
            .iter()
            .map(|g| Permutation::parse_cycles(g, self.degree()))
            .collect::<Result<Vec<_>, _>>()?;
        self.subgroup(&gens)
    }

    pub fn trivial_subgroup(&self) -> PermGroup {
        self.within(ElementSet::identity_only(self.ambient.size()), Vec::new())
    }

    fn index_of(&self, g: &Permutation) -> Option<u32> {
        let id = *self.ambient.index.get(g)?;
        self.members.contains(id).then_some(id)
    }

    pub fn degree(&self) -> usize {
        self.ambient.degree
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.ambient.element_permutations(&self.gens)
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let ids: Vec<u32> = self.members.iter().collect();
        self.ambient.element_permutations(&ids)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index_of(g).is_some()
    }

    /// Member set as ambient indices; equal fingerprints within one ambient
    /// mean equal subgroups.
    pub fn fingerprint(&self) -> &ElementSet {
        &self.members
    }

    pub fn shares_ambient(&self, other: &PermGroup) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool, GroupError> {
        let (a, b) = align(self, other)?;
        Ok(a.members.is_subset(&b.members))
    }

    /// The same subgroup expressed in the ambient of `host`.
    pub fn rebased_onto(&self, host: &PermGroup) -> Result<PermGroup, GroupError> {
        if self.shares_ambient(host) {
            return Ok(self.clone());
        }
        if self.degree() != host.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), host.degree()));
        }
        let mut members = ElementSet::empty(host.ambient.size());
        for id in self.members.iter() {
            let g = &self.ambient.elements[id as usize];
            let there = host.ambient.index.get(g).ok_or(GroupError::NotSubgroup)?;
            members.insert(*there);
        }
        let gens = self
            .gens
            .iter()
            .map(|&g| host.ambient.index[&self.ambient.elements[g as usize]])
            .collect();
        Ok(host.within(members, gens))
    }

    /// The smallest subgroup containing both.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup, GroupError> {
        let (a, b) = align(self, other)?;
        if b.members.is_subset(&a.members) {
            return Ok(a);
        }
        if a.members.is_subset(&b.members) {
            return Ok(b);
        }
        let mut gens = a.gens.clone();
        gens.extend(b.gens.iter().filter(|g| !a.members.contains(**g)));
        let members = algo::close(&*a.ambient, a.members.clone(), &gens);
        if gens.len() > 8 {
            gens = algo::greedy_generators(&*a.ambient, &members);
        }
        Ok(a.within(members, gens))
    }

    pub fn intersect(&self, other: &PermGroup) -> Result<PermGroup, GroupError> {
        let (a, b) = align(self, other)?;
        if a.members.is_subset(&b.members) {
            return Ok(a);
        }
        if b.members.is_subset(&a.members) {
            return Ok(b);
        }
        let members = a.members.intersection(&b.members);
        let gens = algo::greedy_generators(&*a.ambient, &members);
        Ok(a.within(members, gens))
    }

    /// Whether `self` is normal in `group`; `self` must be a subgroup.
    pub fn is_normal_in(&self, group: &PermGroup) -> Result<bool, GroupError> {
        let (n, g) = align(self, group)?;
        if !n.members.is_subset(&g.members) {
            return Err(GroupError::NotSubgroup);
        }
        Ok(algo::normalises(&*n.ambient, &g.gens, &n.members, &n.gens))
    }

    /// The factor group `self / normal`.
    pub fn quotient(&self, normal: &PermGroup) -> Result<Quotient, GroupError> {
        if !normal.is_normal_in(self)? {
            return Err(GroupError::NotNormal);
        }
        let normal = normal.rebased_onto(self)?;
        let index = self.order() / normal.order();
        if index > TABLE_CAP {
            return Err(GroupError::CapExceeded {
                what: "factor group order",
                cap: TABLE_CAP,
            });
        }
        let u = &*self.ambient;
        let mut coset = vec![u32::MAX; u.size()];
        let mut reps = Vec::with_capacity(index);
        for x in self.members.iter() {
            if coset[x as usize] != u32::MAX {
                continue;
            }
            let label = reps.len() as u32;
            reps.push(x);
            for n in normal.members.iter() {
                coset[u.mul(x, n) as usize] = label;
            }
        }
        let mut table = Vec::with_capacity(index * index);
        for &a in &reps {
            for &b in &reps {
                table.push(coset[u.mul(a, b) as usize]);
            }
        }
        let coset_of = self
            .members
            .iter()
            .map(|x| (u.elements[x as usize].clone(), coset[x as usize]))
            .collect();
        Ok(Quotient {
            group: FiniteGroup::from_trusted_table(index, table),
            coset_of,
        })
    }

    /// The group as an abstract multiplication table.
    pub fn to_finite_group(&self) -> Result<FiniteGroup, GroupError> {
        Ok(self.quotient(&self.trivial_subgroup())?.group)
    }

    pub fn is_simple(&self) -> Result<bool, GroupError> {
        if self.is_trivial() {
            return Err(GroupError::TrivialGroup);
        }
        Ok(algo::proper_normal_witness(&*self.ambient, &self.members, &self.gens).is_none())
    }

    pub fn is_abelian(&self) -> bool {
        let u = &*self.ambient;
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| u.mul(a, b) == u.mul(b, a)))
    }

    pub fn descriptor(&self) -> Result<FactorDescriptor, GroupError> {
        Ok(self.to_finite_group()?.descriptor())
    }

    /// Conjugacy classes of `self`.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Permutation>> {
        algo::conjugacy_classes(&*self.ambient, &self.members, &self.gens)
            .iter()
            .map(|class| self.ambient.element_permutations(class))
            .collect()
    }

    /// The normal closure of `seeds` in `self`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup, GroupError> {
        let ids = seeds
            .iter()
            .map(|g| self.index_of(g).ok_or_else(|| GroupError::NotInGroup(g.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let (members, gens) = algo::normal_closure(&*self.ambient, &self.gens, &ids);
        Ok(self.within(members, gens))
    }

    /// Every subgroup, sorted by order and then by member set.
    pub fn subgroups(&self) -> Result<Vec<PermGroup>, GroupError> {
        let u = &*self.ambient;
        let mut cyclic: Vec<(ElementSet, u32)> = Vec::new();
        let mut seen = HashSet::new();
        for x in self.members.iter() {
            let set = algo::generated(u, &[x]);
            if seen.insert(set.clone()) {
                cyclic.push((set, x));
            }
        }
        let mut found: HashMap<ElementSet, Vec<u32>> = HashMap::new();
        let mut frontier: Vec<(ElementSet, Vec<u32>)> = Vec::new();
        for (set, x) in &cyclic {
            let gens = if *x == 0 { Vec::new() } else { vec![*x] };
            found.insert(set.clone(), gens.clone());
            frontier.push((set.clone(), gens));
        }
        while let Some((set, gens)) = frontier.pop() {
            for (c, x) in &cyclic {
                if c.is_subset(&set) {
                    continue;
                }
                let mut next_gens = gens.clone();
                next_gens.push(*x);
                let next = algo::close(u, set.clone(), &next_gens);
                if found.contains_key(&next) {
                    continue;
                }
                if found.len() == SUBGROUP_CAP {
                    return Err(GroupError::CapExceeded {
                        what: "subgroup count",
                        cap: SUBGROUP_CAP,
                    });
                }
                found.insert(next.clone(), next_gens.clone());
                frontier.push((next, next_gens));
            }
        }
        Ok(self.sorted_groups(found))
    }

    /// Every normal subgroup, sorted by order and then by member set.
    pub fn normal_subgroups(&self) -> Vec<PermGroup> {
        let u = &*self.ambient;
        let closures: Vec<(ElementSet, Vec<u32>)> =
            algo::conjugacy_classes(u, &self.members, &self.gens)
                .into_iter()
                .map(|class| algo::normal_closure(u, &self.gens, &[class[0]]))
                .collect();
        let mut found: HashMap<ElementSet, Vec<u32>> = HashMap::new();
        let mut frontier = Vec::new();
        for (set, gens) in &closures {
            if !found.contains_key(set) {
                let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
                found.insert(set.clone(), gens.clone());
                frontier.push((set.clone(), gens));
            }
        }
        // Products of normal subgroups are normal, so joins suffice.
        while let Some((set, gens)) = frontier.pop() {
            for (other, other_gens) in &closures {
                if other.is_subset(&set) {
                    continue;
                }
                let mut next_gens = gens.clone();
                next_gens.extend(other_gens.iter().copied().filter(|&g| g != 0));
                let next = algo::close(u, set.clone(), &next_gens);
                if !found.contains_key(&next) {
                    found.insert(next.clone(), next_gens.clone());
                    frontier.push((next, next_gens));
                }
            }
        }
        self.sorted_groups(found)
    }

    /// Proper normal subgroups not contained in any other proper normal
    /// subgroup.
    pub fn maximal_normal_subgroups(&self) -> Vec<PermGroup> {
        let proper: Vec<PermGroup> = self
            .normal_subgroups()
            .into_iter()
            .filter(|n| n.order() < self.order())
            .collect();
        proper
            .iter()
            .filter(|n| {
                !proper
                    .iter()
                    .any(|m| m.order() > n.order() && n.members.is_subset(&m.members))
            })
            .cloned()
            .collect()
    }

    fn sorted_groups(&self, found: HashMap<ElementSet, Vec<u32>>) -> Vec<PermGroup> {
        let mut groups: Vec<PermGroup> = found
            .into_iter()
            .map(|(members, gens)| {
                let gens = if gens.len() > 4 {
                    algo::greedy_generators(&*self.ambient, &members)
                } else {
                    gens
                };
                self.within(members, gens)
            })
            .collect();
        groups.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members.cmp(&b.members))
        });
        groups
    }

    /// The product set `self * other` where `self` is normalised by
    /// `other`; both must share an ambient. Cheaper than `join` for the
    /// small groups refinement works with.
    pub(crate) fn normal_product(&self, other: &PermGroup) -> PermGroup {
        debug_assert!(self.shares_ambient(other));
        if other.members.is_subset(&self.members) {
            return self.clone();
        }
        if self.members.is_subset(&other.members) {
            return other.clone();
        }
        let u = &*self.ambient;
        let mut members = ElementSet::empty(u.size());
        for a in self.members.iter() {
            for b in other.members.iter() {
                members.insert(u.mul(a, b));
            }
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().filter(|g| !self.members.contains(**g)));
        self.within(members, gens)
    }

    /// Multiplies two elements of the group.
    pub fn multiply(&self, a: &Permutation, b: &Permutation) -> Result<Permutation, GroupError> {
        for g in [a, b] {
            if !self.contains(g) {
                return Err(GroupError::NotInGroup(g.to_string()));
            }
        }
        Ok(a.then(b))
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &PermGroup) -> bool {
        match align(self, other) {
            Ok((a, b)) => a.members == b.members,
            Err(_) => false,
        }
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "<{}> of order {}", gens.join(", "), self.order())
    }
}

/// Expresses both groups in one ambient.
fn align(a: &PermGroup, b: &PermGroup) -> Result<(PermGroup, PermGroup), GroupError> {
    if a.shares_ambient(b) {
        return Ok((a.clone(), b.clone()));
    }
    if a.degree() != b.degree() {
        return Err(GroupError::DegreeMismatch(a.degree(), b.degree()));
    }
    let contained = |x: &PermGroup, host: &PermGroup| {
        x.ambient
            .gens
            .iter()
            .all(|&g| host.ambient.index.contains_key(&x.ambient.elements[g as usize]))
    };
    if contained(b, a) {
        return Ok((a.clone(), b.rebased_onto(a)?));
    }
    if contained(a, b) {
        return Ok((a.rebased_onto(b)?, b.clone()));
    }
    let mut gens = a.ambient.element_permutations(&a.ambient.gens);
    gens.extend(b.ambient.element_permutations(&b.ambient.gens));
    let host = PermGroup::generate(a.degree(), &gens)?;
    Ok((a.rebased_onto(&host)?, b.rebased_onto(&host)?))
}

/// An isomorphism `a -> b` as an image table over element labels, if any.
pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Result<Option<Vec<u32>>, GroupError> {
    a.isomorphism(b)
}

/// Direct product acting on disjoint point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup, GroupError> {
    let degree = a.degree() + b.degree();
    let shift = a.degree() as u32;
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.extended(degree)).collect();
    for g in b.generators() {
        let mut images: Vec<u32> = (0..shift).collect();
        images.extend(g.images().iter().map(|&x| x + shift));
        gens.push(Permutation { images });
    }
    PermGroup::generate(degree, &gens)
}

/// The right regular representation of an abstract group.
pub fn regular_representation(group: &FiniteGroup) -> Result<PermGroup, GroupError> {
    let n = group.order();
    let all = ElementSet::full(n);
    let gens: Vec<Permutation> = algo::greedy_generators(group, &all)
        .into_iter()
        .map(|g| Permutation {
            images: (0..n as u32).map(|x| group.multiply(x, g)).collect(),
        })
        .collect();
    PermGroup::generate(n, &gens)
}
