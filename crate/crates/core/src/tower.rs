//! Tower groups: restricted direct sums of finite simple groups indexed by
//! the ordinals below a bound.
//!
//! A subgroup generated by whole coordinates is described by its support,
//! an [`IntervalSet`] of positions. Every such subgroup is normal, joins
//! are unions and intersections are intersections, so all lattice work is
//! interval arithmetic.
//!
//! A [`PositionBijection`] enumerates the positions as a sequence of slots
//! (its order type may exceed the bound). The induced series has length
//! `n = 1 + L` for slot length `L`; its term at index `α` is the image of
//! the slots below `σ(α)`, where `1 + σ(α) = α`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ordinal::{self, Ordinal, OrdinalError};
use crate::series::{Clause, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("interval syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("position {position} is not below the bound {bound}")]
    OutOfRange { position: Ordinal, bound: Ordinal },
    #[error("invalid bijection: {0}")]
    InvalidBijection(String),
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("index {index} is outside [1, {length}]")]
    IndexOutOfRange { index: Ordinal, length: Ordinal },
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

fn add(a: &Ordinal, b: &Ordinal) -> Result<Ordinal, TowerError> {
    Ok(a.checked_add(b)?)
}

fn length_of(lo: &Ordinal, hi: &Ordinal) -> Ordinal {
    hi.checked_sub_left(lo).unwrap_or_default()
}

/// Size of a countable set of positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinality {
    Finite(u64),
    Countable,
}

impl Cardinality {
    pub fn of(ordinal: &Ordinal) -> Cardinality {
        match ordinal.as_natural() {
            Some(n) => Cardinality::Finite(n as u64),
            None => Cardinality::Countable,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Cardinality::Finite(0)
    }
}

impl std::ops::Add for Cardinality {
    type Output = Cardinality;

    fn add(self, other: Cardinality) -> Cardinality {
        match (self, other) {
            (Cardinality::Finite(a), Cardinality::Finite(b)) => Cardinality::Finite(a + b),
            _ => Cardinality::Countable,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Countable => f.write_str("countable"),
        }
    }
}

/// A finite union of half-open ordinal intervals, kept sorted, disjoint and
/// non-adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    intervals: Vec<(Ordinal, Ordinal)>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet::default()
    }

    pub fn interval(lo: Ordinal, hi: Ordinal) -> IntervalSet {
        IntervalSet::new([(lo, hi)])
    }

    pub fn point(q: Ordinal) -> Result<IntervalSet, TowerError> {
        let next = q.successor()?;
        Ok(IntervalSet::interval(q, next))
    }

    /// Canonicalises arbitrary intervals; empty ones are dropped.
    pub fn new<I: IntoIterator<Item = (Ordinal, Ordinal)>>(intervals: I) -> IntervalSet {
        let mut raw: Vec<(Ordinal, Ordinal)> = intervals.into_iter().filter(|(lo, hi)| lo < hi).collect();
        raw.sort();
        let mut merged: Vec<(Ordinal, Ordinal)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        IntervalSet { intervals: merged }
    }

    pub fn intervals(&self) -> &[(Ordinal, Ordinal)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, q: &Ordinal) -> bool {
        let after = self.intervals.partition_point(|(lo, _)| lo <= q);
        after > 0 && self.intervals[after - 1].1 > *q
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::new(self.intervals.iter().chain(&other.intervals).cloned())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a_lo, a_hi) = &self.intervals[i];
            let (b_lo, b_hi) = &other.intervals[j];
            let lo = a_lo.max(b_lo);
            let hi = a_hi.min(b_hi);
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if a_hi < b_hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for (lo, hi) in &self.intervals {
            let mut cursor = lo.clone();
            for (b_lo, b_hi) in &other.intervals {
                if b_hi <= &cursor {
                    continue;
                }
                if b_lo >= hi {
                    break;
                }
                if *b_lo > cursor {
                    out.push((cursor.clone(), b_lo.clone()));
                }
                cursor = b_hi.clone();
            }
            if cursor < *hi {
                out.push((cursor, hi.clone()));
            }
        }
        IntervalSet::new(out)
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn cardinality(&self) -> Cardinality {
        self.intervals
            .iter()
            .map(|(lo, hi)| Cardinality::of(&length_of(lo, hi)))
            .fold(Cardinality::Finite(0), |a, b| a + b)
    }

    /// The single member, if there is exactly one.
    pub fn as_singleton(&self) -> Option<&Ordinal> {
        match self.intervals.as_slice() {
            [(lo, hi)] if length_of(lo, hi) == Ordinal::one() => Some(lo),
            _ => None,
        }
    }

    /// Least upper bound of the members (0 when empty).
    pub fn supremum(&self) -> Ordinal {
        self.intervals.last().map(|(_, hi)| hi.clone()).unwrap_or_default()
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (k, (lo, hi)) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "[{lo},{hi})")?;
        }
        Ok(())
    }
}

/// Parses `[lo,hi)` intervals separated by `u`, `∪` or `|`; `{}` is empty.
impl FromStr for IntervalSet {
    type Err = TowerError;

    fn from_str(text: &str) -> Result<IntervalSet, TowerError> {
        let syntax = |position: usize, message: &str| TowerError::Syntax {
            position,
            message: message.to_string(),
        };
        let mut intervals = Vec::new();
        let mut rest = text;
        let offset = |rest: &str| text.len() - rest.len();
        loop {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if intervals.is_empty() && rest.trim_end() == "{}" {
                return Ok(IntervalSet::empty());
            }
            if !intervals.is_empty() {
                let sep = ["u", "∪", "|", "U"]
                    .iter()
                    .find(|s| rest.starts_with(**s))
                    .ok_or_else(|| syntax(offset(rest), "expected a union separator"))?;
                rest = rest[sep.len()..].trim_start();
            }
            let start = offset(rest);
            let body = rest.strip_prefix('[').ok_or_else(|| syntax(start, "expected '['"))?;
            let close = body.find(')').ok_or_else(|| syntax(start, "unclosed interval"))?;
            let (lo, hi) = body[..close]
                .split_once(',')
                .ok_or_else(|| syntax(start + 1, "expected ','"))?;
            let parse = |s: &str, at: usize| {
                ordinal::parse(s.trim()).map_err(|e| syntax(at, &e.to_string()))
            };
            let lo = parse(lo, start + 1)?;
            let hi = parse(hi, start + 2 + body[..close].find(',').unwrap_or(0))?;
            if lo > hi {
                return Err(syntax(start, "interval bounds are reversed"));
            }
            intervals.push((lo, hi));
            rest = &body[close + 1..];
        }
        Ok(IntervalSet::new(intervals))
    }
}

/// A finite simple group from the fixed label catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleLabel {
    /// Cyclic of prime order.
    Cyclic(u32),
    A5,
}

impl SimpleLabel {
    pub fn cyclic(p: u32) -> Result<SimpleLabel, TowerError> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(TowerError::InvalidLabels(format!("{p} is not prime")));
        }
        Ok(SimpleLabel::Cyclic(p))
    }

    pub fn order(&self) -> u32 {
        match self {
            SimpleLabel::Cyclic(p) => *p,
            SimpleLabel::A5 => 60,
        }
    }
}

impl fmt::Display for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleLabel::Cyclic(p) => write!(f, "C{p}"),
            SimpleLabel::A5 => f.write_str("A5"),
        }
    }
}

impl FromStr for SimpleLabel {
    type Err = TowerError;

    fn from_str(text: &str) -> Result<SimpleLabel, TowerError> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("A5") {
            return Ok(SimpleLabel::A5);
        }
        let digits = text
            .strip_prefix(['C', 'Z', 'c', 'z'])
            .ok_or_else(|| TowerError::InvalidLabels(format!("unknown label {text:?}")))?;
        let p = digits
            .parse()
            .map_err(|_| TowerError::InvalidLabels(format!("unknown label {text:?}")))?;
        SimpleLabel::cyclic(p)
    }
}

/// Assignment of labels to positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelPattern {
    Constant(SimpleLabel),
    /// By parity of the finite part of the position.
    Parity { even: SimpleLabel, odd: SimpleLabel },
    /// Consecutive intervals covering `[0, bound)`.
    Piecewise(Vec<(Ordinal, Ordinal, SimpleLabel)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerGroup {
    bound: Ordinal,
    labels: LabelPattern,
}

impl TowerGroup {
    pub fn new(bound: Ordinal, labels: LabelPattern) -> Result<TowerGroup, TowerError> {
        if bound.is_zero() {
            return Err(TowerError::InvalidLabels("position bound must be positive".into()));
        }
        if let LabelPattern::Piecewise(pieces) = &labels {
            let mut cursor = Ordinal::zero();
            for (lo, hi, _) in pieces {
                if *lo != cursor || hi <= lo {
                    return Err(TowerError::InvalidLabels(format!(
                        "pieces must be consecutive non-empty intervals from 0; [{lo},{hi}) breaks this"
                    )));
                }
                cursor = hi.clone();
            }
            if cursor != bound {
                return Err(TowerError::InvalidLabels(format!("pieces end at {cursor}, not {bound}")));
            }
        }
        Ok(TowerGroup { bound, labels })
    }

    pub fn constant(bound: Ordinal, label: SimpleLabel) -> Result<TowerGroup, TowerError> {
        TowerGroup::new(bound, LabelPattern::Constant(label))
    }

    pub fn bound(&self) -> &Ordinal {
        &self.bound
    }

    pub fn labels(&self) -> &LabelPattern {
        &self.labels
    }

    pub fn whole(&self) -> IntervalSet {
        IntervalSet::interval(Ordinal::zero(), self.bound.clone())
    }

    fn check(&self, q: &Ordinal) -> Result<(), TowerError> {
        if *q < self.bound {
            Ok(())
        } else {
            Err(TowerError::OutOfRange {
                position: q.clone(),
                bound: self.bound.clone(),
            })
        }
    }

    pub fn label_of(&self, q: &Ordinal) -> Result<SimpleLabel, TowerError> {
        self.check(q)?;
        Ok(match &self.labels {
            LabelPattern::Constant(label) => *label,
            LabelPattern::Parity { even, odd } => {
                if q.is_even() {
                    *even
                } else {
                    *odd
                }
            }
            LabelPattern::Piecewise(pieces) => {
                pieces
                    .iter()
                    .find(|(lo, hi, _)| lo <= q && q < hi)
                    .expect("pieces cover the bound")
                    .2
            }
        })
    }

    /// How many positions of `set` carry each label.
    pub fn label_counts(&self, set: &IntervalSet) -> BTreeMap<SimpleLabel, Cardinality> {
        let set = set.intersect(&self.whole());
        let mut counts = BTreeMap::new();
        let mut bump = |label: SimpleLabel, c: Cardinality| {
            if !c.is_zero() {
                let slot = counts.entry(label).or_insert(Cardinality::Finite(0));
                *slot = *slot + c;
            }
        };
        match &self.labels {
            LabelPattern::Constant(label) => bump(*label, set.cardinality()),
            LabelPattern::Piecewise(pieces) => {
                for (lo, hi, label) in pieces {
                    let part = set.intersect(&IntervalSet::interval(lo.clone(), hi.clone()));
                    bump(*label, part.cardinality());
                }
            }
            LabelPattern::Parity { even, odd } => {
                for (lo, hi) in set.intervals() {
                    match length_of(lo, hi).as_natural() {
                        Some(d) => {
                            let d = d as u64;
                            let (first, second) = if lo.is_even() { (even, odd) } else { (odd, even) };
                            bump(*first, Cardinality::Finite(d.div_ceil(2)));
                            bump(*second, Cardinality::Finite(d / 2));
                        }
                        None => {
                            bump(*even, Cardinality::Countable);
                            bump(*odd, Cardinality::Countable);
                        }
                    }
                }
            }
        }
        counts
    }
}

impl fmt::Display for TowerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tower over [0,{}) with ", self.bound)?;
        match &self.labels {
            LabelPattern::Constant(label) => write!(f, "every factor {label}"),
            LabelPattern::Parity { even, odd } => write!(f, "even {even}, odd {odd}"),
            LabelPattern::Piecewise(pieces) => {
                let parts: Vec<String> = pieces.iter().map(|(lo, hi, l)| format!("[{lo},{hi}):{l}")).collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

/// An enumeration of the positions below a bound as consecutive blocks
/// of positions; slot `s` holds the `s`-th position enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionBijection {
    bound: Ordinal,
    blocks: Vec<(Ordinal, Ordinal)>,
    // Slot at which each block starts, plus the total slot length.
    starts: Vec<Ordinal>,
    length: Ordinal,
}

impl PositionBijection {
    pub fn identity(bound: Ordinal) -> PositionBijection {
        PositionBijection::from_blocks(bound.clone(), vec![(Ordinal::zero(), bound)])
            .expect("identity enumeration")
    }

    /// Blocks must be non-empty and partition `[0, bound)`.
    pub fn from_blocks(bound: Ordinal, blocks: Vec<(Ordinal, Ordinal)>) -> Result<PositionBijection, TowerError> {
        let bad = |why: String| TowerError::InvalidBijection(why);
        let mut sorted = blocks.clone();
        sorted.sort();
        let mut cursor = Ordinal::zero();
        for (lo, hi) in &sorted {
            if hi <= lo {
                return Err(bad(format!("block [{lo},{hi}) is empty")));
            }
            if *lo != cursor {
                return Err(bad(format!("blocks overlap or leave a gap at {cursor}")));
            }
            cursor = hi.clone();
        }
        if cursor != bound {
            return Err(bad(format!("blocks cover [0,{cursor}), not [0,{bound})")));
        }
        let blocks = merge_adjacent(blocks);
        let mut starts = Vec::with_capacity(blocks.len());
        let mut length = Ordinal::zero();
        for (lo, hi) in &blocks {
            starts.push(length.clone());
            length = add(&length, &length_of(lo, hi))?;
        }
        Ok(PositionBijection {
            bound,
            blocks,
            starts,
            length,
        })
    }

    pub fn bound(&self) -> &Ordinal {
        &self.bound
    }

    pub fn blocks(&self) -> &[(Ordinal, Ordinal)] {
        &self.blocks
    }

    /// Order type of the enumeration.
    pub fn length(&self) -> &Ordinal {
        &self.length
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Cuts the slots `[start, end)` and reinserts them before slot
    /// `insert_at` of what remains (`None` appends them).
    pub fn move_block(&self, start: &Ordinal, end: &Ordinal, insert_at: Option<&Ordinal>) -> Result<PositionBijection, TowerError> {
        if start >= end || *end > self.length {
            return Err(TowerError::InvalidBijection(format!(
                "cannot cut slots [{start},{end}) from an enumeration of length {}",
                self.length
            )));
        }
        let moved = self.slice(start, end)?;
        let mut rest = self.slice(&Ordinal::zero(), start)?;
        rest.extend(self.slice(end, &self.length)?);
        let blocks = match insert_at {
            None => {
                rest.extend(moved);
                rest
            }
            Some(at) => {
                let rest = PositionBijection::raw(self.bound.clone(), rest)?;
                if *at > rest.length {
                    return Err(TowerError::InvalidBijection(format!(
                        "insertion slot {at} exceeds the remaining length {}",
                        rest.length
                    )));
                }
                let mut blocks = rest.slice(&Ordinal::zero(), at)?;
                blocks.extend(moved);
                blocks.extend(rest.slice(at, &rest.length)?);
                blocks
            }
        };
        PositionBijection::from_blocks(self.bound.clone(), blocks)
    }

    // Partial enumerations used while moving blocks.
    fn raw(bound: Ordinal, blocks: Vec<(Ordinal, Ordinal)>) -> Result<PositionBijection, TowerError> {
        let mut starts = Vec::with_capacity(blocks.len());
        let mut length = Ordinal::zero();
        for (lo, hi) in &blocks {
            starts.push(length.clone());
            length = add(&length, &length_of(lo, hi))?;
        }
        Ok(PositionBijection {
            bound,
            blocks,
            starts,
            length,
        })
    }

    /// Position blocks enumerated by slots `[a, b)`, in slot order.
    fn slice(&self, a: &Ordinal, b: &Ordinal) -> Result<Vec<(Ordinal, Ordinal)>, TowerError> {
        let mut out = Vec::new();
        for ((lo, hi), start) in self.blocks.iter().zip(&self.starts) {
            let end = add(start, &length_of(lo, hi))?;
            let x = a.max(start);
            let y = b.min(&end);
            if x < y {
                let p = add(lo, &length_of(start, x))?;
                let q = add(lo, &length_of(start, y))?;
                out.push((p, q));
            }
        }
        Ok(out)
    }

    /// The position at slot `s`.
    pub fn apply(&self, s: &Ordinal) -> Result<Ordinal, TowerError> {
        let k = self.starts.partition_point(|start| start <= s);
        if k == 0 || *s >= self.length {
            return Err(TowerError::OutOfRange {
                position: s.clone(),
                bound: self.length.clone(),
            });
        }
        add(&self.blocks[k - 1].0, &length_of(&self.starts[k - 1], s))
    }

    /// The slot holding position `q`.
    pub fn slot_of(&self, q: &Ordinal) -> Result<Ordinal, TowerError> {
        for ((lo, hi), start) in self.blocks.iter().zip(&self.starts) {
            if lo <= q && q < hi {
                return add(start, &length_of(lo, q));
            }
        }
        Err(TowerError::OutOfRange {
            position: q.clone(),
            bound: self.bound.clone(),
        })
    }

    /// Positions enumerated by the slots `[a, b)`.
    pub fn image(&self, a: &Ordinal, b: &Ordinal) -> Result<IntervalSet, TowerError> {
        Ok(IntervalSet::new(self.slice(a, b)?))
    }

    /// Slots holding the positions of `set`.
    pub fn preimage(&self, set: &IntervalSet) -> Result<IntervalSet, TowerError> {
        let mut out = Vec::new();
        for ((lo, hi), start) in self.blocks.iter().zip(&self.starts) {
            let part = set.intersect(&IntervalSet::interval(lo.clone(), hi.clone()));
            for (p, q) in part.intervals() {
                out.push((add(start, &length_of(lo, p))?, add(start, &length_of(lo, q))?));
            }
        }
        Ok(IntervalSet::new(out))
    }
}

fn merge_adjacent(blocks: Vec<(Ordinal, Ordinal)>) -> Vec<(Ordinal, Ordinal)> {
    let mut out: Vec<(Ordinal, Ordinal)> = Vec::with_capacity(blocks.len());
    for (lo, hi) in blocks {
        match out.last_mut() {
            Some(last) if last.1 == lo => last.1 = hi,
            _ => out.push((lo, hi)),
        }
    }
    out
}

impl fmt::Display for PositionBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|(lo, hi)| format!("[{lo},{hi})")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Labels of the positions added at one step of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorLabels {
    pub counts: BTreeMap<SimpleLabel, Cardinality>,
    /// True when exactly one position is added, so the factor is simple.
    pub simple: bool,
}

impl fmt::Display for FactorLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(label, c)| match c {
                Cardinality::Finite(1) => label.to_string(),
                _ => format!("{label}^{c}"),
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum SeriesKind {
    Bijection(PositionBijection),
    Explicit(Vec<IntervalSet>),
}

/// A series of supports in a tower group, indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSeries {
    group: TowerGroup,
    kind: SeriesKind,
}

impl TowerSeries {
    pub fn from_bijection(group: TowerGroup, bijection: PositionBijection) -> Result<TowerSeries, TowerError> {
        if bijection.bound() != group.bound() {
            return Err(TowerError::InvalidBijection(format!(
                "bijection is on [0,{}) but the group has bound {}",
                bijection.bound(),
                group.bound()
            )));
        }
        Ok(TowerSeries {
            group,
            kind: SeriesKind::Bijection(bijection),
        })
    }

    /// A finite series listing every term; validity is checked by
    /// [`TowerSeries::violations`], not here.
    pub fn explicit(group: TowerGroup, supports: Vec<IntervalSet>) -> Result<TowerSeries, TowerError> {
        if supports.is_empty() {
            return Err(TowerError::InvalidSeries("a series needs at least one term".into()));
        }
        Ok(TowerSeries {
            group,
            kind: SeriesKind::Explicit(supports),
        })
    }

    pub fn group(&self) -> &TowerGroup {
        &self.group
    }

    pub fn bijection(&self) -> Option<&PositionBijection> {
        match &self.kind {
            SeriesKind::Bijection(pi) => Some(pi),
            SeriesKind::Explicit(_) => None,
        }
    }

    pub fn length(&self) -> Ordinal {
        match &self.kind {
            SeriesKind::Bijection(pi) => add(&Ordinal::one(), pi.length()).expect("length within caps"),
            SeriesKind::Explicit(supports) => Ordinal::from(supports.len() as u32),
        }
    }

    fn check_index(&self, index: &Ordinal) -> Result<(), TowerError> {
        let length = self.length();
        if index.is_zero() || *index > length {
            Err(TowerError::IndexOutOfRange {
                index: index.clone(),
                length,
            })
        } else {
            Ok(())
        }
    }

    /// Support of the term at `index`.
    pub fn support(&self, index: &Ordinal) -> Result<IntervalSet, TowerError> {
        self.check_index(index)?;
        match &self.kind {
            SeriesKind::Bijection(pi) => {
                let slots = index.checked_sub_left(&Ordinal::one()).expect("index >= 1");
                pi.image(&Ordinal::zero(), &slots)
            }
            SeriesKind::Explicit(supports) => {
                Ok(supports[index.as_natural().expect("finite index") as usize - 1].clone())
            }
        }
    }

    /// Least index whose term contains position `q`.
    pub fn threshold(&self, q: &Ordinal) -> Result<Ordinal, TowerError> {
        self.group.check(q)?;
        match &self.kind {
            SeriesKind::Bijection(pi) => {
                let slot = pi.slot_of(q)?;
                Ok(add(&Ordinal::one(), &slot)?.successor()?)
            }
            SeriesKind::Explicit(supports) => supports
                .iter()
                .position(|s| s.contains(q))
                .map(|k| Ordinal::from(k as u32 + 1))
                .ok_or_else(|| TowerError::InvalidSeries(format!("no term contains position {q}"))),
        }
    }

    /// Positions added between index `i` and `i + 1`.
    pub fn increment(&self, i: &Ordinal) -> Result<IntervalSet, TowerError> {
        let next = i.successor()?;
        self.check_index(&next)?;
        if let SeriesKind::Bijection(pi) = &self.kind {
            let slot = i.checked_sub_left(&Ordinal::one()).expect("index >= 1");
            return IntervalSet::point(pi.apply(&slot)?);
        }
        Ok(self.support(&next)?.difference(&self.support(i)?))
    }

    /// Labels of the factor between index `i` and `i + 1`.
    pub fn factor_label(&self, i: &Ordinal) -> Result<FactorLabels, TowerError> {
        let added = self.increment(i)?;
        Ok(FactorLabels {
            counts: self.group.label_counts(&added),
            simple: added.as_singleton().is_some(),
        })
    }

    /// Whether every step adds exactly one position.
    pub fn is_composition(&self) -> bool {
        match &self.kind {
            SeriesKind::Bijection(_) => true,
            SeriesKind::Explicit(supports) => supports
                .windows(2)
                .all(|w| w[1].difference(&w[0]).as_singleton().is_some() && w[0].is_subset(&w[1])),
        }
    }

    /// Label multiset over all factors; equals the label counts of the
    /// whole group for every valid series.
    pub fn factor_label_counts(&self) -> Result<BTreeMap<SimpleLabel, Cardinality>, TowerError> {
        match &self.kind {
            SeriesKind::Bijection(_) => Ok(self.group.label_counts(&self.group.whole())),
            SeriesKind::Explicit(supports) => {
                let mut total: BTreeMap<SimpleLabel, Cardinality> = BTreeMap::new();
                for w in supports.windows(2) {
                    for (label, c) in self.group.label_counts(&w[1].difference(&w[0])) {
                        let slot = total.entry(label).or_insert(Cardinality::Finite(0));
                        *slot = *slot + c;
                    }
                }
                Ok(total)
            }
        }
    }

    /// Limit indices worth checking: block boundaries, the top, and a
    /// deterministic sample.
    pub fn limit_indices(&self, samples: usize, seed: u64) -> Vec<Ordinal> {
        let SeriesKind::Bijection(pi) = &self.kind else {
            return Vec::new();
        };
        let length = self.length();
        let mut candidates: Vec<Ordinal> = pi
            .starts
            .iter()
            .chain(std::iter::once(pi.length()))
            .filter_map(|s| add(&Ordinal::one(), s).ok())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            if let Some(x) = ordinal::sample_below(&length, &mut rng) {
                candidates.push(x.limit_part());
            }
        }
        candidates.retain(|a| a.is_limit() && *a <= length);
        candidates.sort();
        candidates.dedup();
        candidates
    }

    /// Clause violations; limit indices are checked symbolically at the
    /// indices returned by [`TowerSeries::limit_indices`].
    pub fn violations(&self, samples: usize, seed: u64) -> Vec<Violation> {
        let mut out = Vec::new();
        let length = self.length();
        let whole = self.group.whole();
        let at = |k: &Ordinal| self.support(k).expect("index in range");
        if !at(&Ordinal::one()).is_empty() {
            out.push(Violation::new(Ordinal::one(), Clause::BottomNotTrivial));
        }
        if at(&length) != whole {
            out.push(Violation::new(length.clone(), Clause::TopNotWhole));
        }
        match &self.kind {
            SeriesKind::Explicit(supports) => {
                for (k, s) in supports.iter().enumerate() {
                    if !s.is_subset(&whole) {
                        out.push(Violation::new(Ordinal::from(k as u32 + 1), Clause::NotSubgroup));
                    }
                }
                for (k, w) in supports.windows(2).enumerate() {
                    if !(w[0].is_subset(&w[1]) && w[0] != w[1]) {
                        out.push(Violation::new(Ordinal::from(k as u32 + 1), Clause::NotStrict));
                    }
                }
            }
            SeriesKind::Bijection(pi) => {
                for alpha in self.limit_indices(samples, seed) {
                    if !self.limit_is_union(pi, &alpha).unwrap_or(false) {
                        out.push(Violation::new(alpha, Clause::LimitNotUnion));
                    }
                }
            }
        }
        out
    }

    /// Checks that the term at limit `alpha` is the union of the earlier
    /// terms by locating every member position's threshold below `alpha`.
    pub fn limit_is_union(&self, pi: &PositionBijection, alpha: &Ordinal) -> Result<bool, TowerError> {
        let term = self.support(alpha)?;
        let one = Ordinal::one();
        for (_, b) in pi.preimage(&term)?.intervals() {
            // Slots s < b enter at index 1 + s + 1.
            let entry = add(&one, b)?;
            let ok = if b.is_limit() { entry <= *alpha } else { entry < *alpha };
            if !ok {
                return Ok(false);
            }
        }
        // Earlier terms are images of shorter slot prefixes, hence inside.
        let slots = alpha.checked_sub_left(&one).expect("alpha >= 1");
        Ok(pi.image(&Ordinal::zero(), &slots)? == term)
    }
}

impl fmt::Display for TowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SeriesKind::Bijection(pi) => write!(f, "series of length {} enumerating {pi}", self.length()),
            SeriesKind::Explicit(supports) => {
                let parts: Vec<String> = supports.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", parts.join(" < "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(text: &str) -> Ordinal {
        text.parse().unwrap()
    }

    fn set(text: &str) -> IntervalSet {
        text.parse().unwrap()
    }

    fn moved_zero_to_end(bound: &str) -> PositionBijection {
        PositionBijection::identity(o(bound))
            .move_block(&o("0"), &o("1"), None)
            .unwrap()
    }

    #[test]
    fn interval_examples() {
        assert_eq!(set("[0,w)").union(&set("[w,w+2)")), set("[0,w+2)"));
        assert_eq!(set("[0,5)").intersect(&set("[3,w)")), set("[3,5)"));
        let diff = set("[0,w+1)").difference(&set("[2,4)"));
        assert_eq!(diff, set("[0,2) u [4,w+1)"));
        assert_eq!(diff.to_string(), "[0,2) u [4,w+1)");
        assert!(diff.contains(&o("w")));
        assert!(!diff.contains(&o("3")));
        assert_eq!(set("{}"), IntervalSet::empty());
        assert_eq!(set("[0,2) ∪ [2,3)"), set("[0,3)"));
    }

    #[test]
    fn interval_syntax_errors() {
        assert!(matches!("[0,2".parse::<IntervalSet>(), Err(TowerError::Syntax { .. })));
        assert!(matches!("[3,1)".parse::<IntervalSet>(), Err(TowerError::Syntax { .. })));
        assert!(matches!("[0,1) [2,3)".parse::<IntervalSet>(), Err(TowerError::Syntax { .. })));
    }

    #[test]
    fn cardinalities() {
        assert_eq!(set("[0,5) u [w,w+2)").cardinality(), Cardinality::Finite(7));
        assert_eq!(set("[3,w)").cardinality(), Cardinality::Countable);
        assert_eq!(set("[w,w+1)").as_singleton(), Some(&o("w")));
    }

    #[test]
    fn labels() {
        assert_eq!("C3".parse::<SimpleLabel>(), Ok(SimpleLabel::Cyclic(3)));
        assert!("C4".parse::<SimpleLabel>().is_err());
        let g = TowerGroup::new(
            o("w*2"),
            LabelPattern::Parity {
                even: SimpleLabel::Cyclic(2),
                odd: SimpleLabel::Cyclic(3),
            },
        )
        .unwrap();
        assert_eq!(g.label_of(&o("w+3")), Ok(SimpleLabel::Cyclic(3)));
        let counts = g.label_counts(&set("[1,4) u [w,w*2)"));
        assert_eq!(counts[&SimpleLabel::Cyclic(2)], Cardinality::Countable);
        let counts = g.label_counts(&set("[1,4)"));
        assert_eq!(counts[&SimpleLabel::Cyclic(2)], Cardinality::Finite(1));
        assert_eq!(counts[&SimpleLabel::Cyclic(3)], Cardinality::Finite(2));
        assert!(TowerGroup::new(
            o("w"),
            LabelPattern::Piecewise(vec![(o("0"), o("3"), SimpleLabel::A5)])
        )
        .is_err());
    }

    #[test]
    fn identity_series_on_omega() {
        let g = TowerGroup::constant(o("w"), SimpleLabel::Cyclic(2)).unwrap();
        let s = TowerSeries::from_bijection(g, PositionBijection::identity(o("w"))).unwrap();
        assert_eq!(s.length(), o("w"));
        assert_eq!(s.support(&o("4")).unwrap(), set("[0,3)"));
        assert!(s.support(&o("1")).unwrap().is_empty());
        assert_eq!(s.support(&o("w")).unwrap(), set("[0,w)"));
        assert_eq!(s.threshold(&o("3")), Ok(o("5")));
        assert!(s.threshold(&o("w")).is_err());
        assert!(s.violations(64, 1).is_empty());
        assert_eq!(s.factor_label(&o("7")).unwrap().to_string(), "C2");
    }

    #[test]
    fn moved_zero_series() {
        let g = TowerGroup::constant(o("w"), SimpleLabel::Cyclic(2)).unwrap();
        let pi = moved_zero_to_end("w");
        assert_eq!(pi.length(), &o("w+1"));
        let s = TowerSeries::from_bijection(g, pi).unwrap();
        assert_eq!(s.length(), o("w+1"));
        assert_eq!(s.threshold(&o("0")), Ok(o("w+1")));
        assert_eq!(s.threshold(&o("2")), Ok(o("3")));
        assert_eq!(s.support(&o("w")).unwrap(), set("[1,w)"));
        assert_eq!(s.increment(&o("w")).unwrap(), set("[0,1)"));
        assert!(s.violations(64, 1).is_empty());
    }

    #[test]
    fn omega_plus_one_demo_lengths() {
        let g = TowerGroup::constant(o("w+1"), SimpleLabel::Cyclic(2)).unwrap();
        let id = TowerSeries::from_bijection(g.clone(), PositionBijection::identity(o("w+1"))).unwrap();
        let moved = TowerSeries::from_bijection(g, moved_zero_to_end("w+1")).unwrap();
        assert_eq!(id.length(), o("w+1"));
        assert_eq!(moved.length(), o("w+2"));
        assert!(id.violations(64, 3).is_empty());
        assert!(moved.violations(64, 3).is_empty());
    }

    #[test]
    fn block_swap_on_six() {
        let pi = PositionBijection::identity(o("6"))
            .move_block(&o("0"), &o("2"), Some(&o("2")))
            .unwrap();
        let order: Vec<Ordinal> = (0..6).map(|s| pi.apply(&Ordinal::from(s)).unwrap()).collect();
        assert_eq!(order, [2, 3, 0, 1, 4, 5].map(Ordinal::from));
        let g = TowerGroup::constant(o("6"), SimpleLabel::Cyclic(5)).unwrap();
        let s = TowerSeries::from_bijection(g, pi).unwrap();
        let supports: Vec<IntervalSet> = (1..=7).map(|k| s.support(&Ordinal::from(k)).unwrap()).collect();
        assert_eq!(supports[2], set("[2,4)"));
        assert_eq!(supports[3], set("[0,1) u [2,4)"));
        for k in 1..6 {
            assert!(s.increment(&Ordinal::from(k)).unwrap().as_singleton().is_some());
        }
    }

    #[test]
    fn coarse_series_is_not_composition() {
        let g = TowerGroup::constant(o("w+1"), SimpleLabel::Cyclic(2)).unwrap();
        let s = TowerSeries::explicit(g, vec![set("{}"), set("[0,w)"), set("[0,w+1)")]).unwrap();
        assert!(s.violations(0, 0).is_empty());
        assert!(!s.is_composition());
        let f = s.factor_label(&o("1")).unwrap();
        assert!(!f.simple);
        assert_eq!(f.counts[&SimpleLabel::Cyclic(2)], Cardinality::Countable);
    }

    #[test]
    fn parity_factor_labels_follow_positions() {
        let g = TowerGroup::new(
            o("w"),
            LabelPattern::Parity {
                even: SimpleLabel::Cyclic(2),
                odd: SimpleLabel::Cyclic(3),
            },
        )
        .unwrap();
        let pi = PositionBijection::identity(o("w"))
            .move_block(&o("0"), &o("3"), Some(&o("5")))
            .unwrap();
        let s = TowerSeries::from_bijection(g.clone(), pi.clone()).unwrap();
        for i in 1..20u32 {
            let position = pi.apply(&Ordinal::from(i - 1)).unwrap();
            let label = g.label_of(&position).unwrap();
            let f = s.factor_label(&Ordinal::from(i)).unwrap();
            assert_eq!(f.counts.keys().copied().collect::<Vec<_>>(), vec![label]);
        }
    }

    #[test]
    fn limit_check_rejects_a_bad_term() {
        let pi = moved_zero_to_end("w");
        let g = TowerGroup::constant(o("w"), SimpleLabel::Cyclic(2)).unwrap();
        let s = TowerSeries::from_bijection(g, pi.clone()).unwrap();
        assert_eq!(s.limit_is_union(&pi, &o("w")), Ok(true));
        // Index w+1 holds every position, including 0 which enters only
        // at w+1 itself.
        assert_eq!(s.limit_is_union(&pi, &o("w+1")), Ok(false));
    }

    #[test]
    fn preimage_inverts_image() {
        let pi = PositionBijection::identity(o("w*2+3"))
            .move_block(&o("w"), &o("w+5"), Some(&o("2")))
            .unwrap();
        let slots = set("[1,w) u [w+2,w*2)");
        let image = IntervalSet::new(
            slots
                .intervals()
                .iter()
                .flat_map(|(a, b)| pi.image(a, b).unwrap().intervals().to_vec()),
        );
        assert_eq!(pi.preimage(&image).unwrap(), slots);
    }

    fn small_ordinal() -> impl Strategy<Value = Ordinal> {
        (0u32..3, 0u32..4).prop_map(|(a, b)| {
            Ordinal::from_terms([(Ordinal::one(), a), (Ordinal::zero(), b)]).unwrap()
        })
    }

    fn interval_set() -> impl Strategy<Value = IntervalSet> {
        prop::collection::vec((small_ordinal(), small_ordinal()), 0..4).prop_map(IntervalSet::new)
    }

    proptest! {
        #[test]
        fn boolean_algebra(a in interval_set(), b in interval_set(), c in interval_set()) {
            let top = set("[0,w*3)");
            let not = |x: &IntervalSet| top.difference(x);
            prop_assert_eq!(a.intersect(&b.union(&c)), a.intersect(&b).union(&a.intersect(&c)));
            prop_assert_eq!(a.union(&b.intersect(&c)), a.union(&b).intersect(&a.union(&c)));
            prop_assert_eq!(not(&a.union(&b)), not(&a).intersect(&not(&b)));
            prop_assert_eq!(not(&a.intersect(&b)), not(&a).union(&not(&b)));
            prop_assert_eq!(a.difference(&b), a.intersect(&not(&b)));
        }

        #[test]
        fn membership_matches_pointwise(a in interval_set(), b in interval_set(), q in small_ordinal()) {
            prop_assert_eq!(a.union(&b).contains(&q), a.contains(&q) || b.contains(&q));
            prop_assert_eq!(a.intersect(&b).contains(&q), a.contains(&q) && b.contains(&q));
            prop_assert_eq!(a.difference(&b).contains(&q), a.contains(&q) && !b.contains(&q));
        }

        #[test]
        fn moves_are_bijections(start in 0u32..6, len in 1u32..4, at in 0u32..4) {
            let pi = PositionBijection::identity(o("w+6"))
                .move_block(&Ordinal::from(start), &Ordinal::from(start + len), Some(&Ordinal::from(at)))
                .unwrap();
            for s in 0..12u32 {
                let s = Ordinal::from(s);
                prop_assert_eq!(pi.slot_of(&pi.apply(&s).unwrap()).unwrap(), s);
            }
            let w = o("w");
            prop_assert_eq!(pi.slot_of(&pi.apply(&w).unwrap()).unwrap(), w);
        }
    }
}
