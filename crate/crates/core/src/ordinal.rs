//! Ordinal numbers in Cantor normal form.
//!
//! An [`Ordinal`] is stored as a strictly decreasing sequence of terms
//! `ω^e·c` where every exponent `e` is itself an ordinal in the same form
//! and every coefficient `c` is a positive machine integer. The empty
//! sequence is `0`. Because the form is canonical, derived equality and
//! hashing coincide with equality of ordinals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

/// Deepest admissible nesting of exponents (`ω` has depth 1, `ω^ω` depth 2).
pub const MAX_DEPTH: usize = 8;

/// Largest admissible coefficient of a single term.
pub const MAX_COEFFICIENT: u64 = u32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ordinal {0} has no predecessor")]
    NoPredecessor(Ordinal),
    #[error("coefficient exceeds {}", MAX_COEFFICIENT)]
    CoefficientOverflow,
    #[error("exponent nesting deeper than {}", MAX_DEPTH)]
    DepthExceeded,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

impl OrdinalError {
    /// True for the errors raised by the representation caps.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            OrdinalError::CoefficientOverflow | OrdinalError::DepthExceeded
        )
    }
}

/// A single Cantor-normal-form term `ω^exponent · coefficient`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exponent: Ordinal,
    coefficient: u32,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> u32 {
        self.coefficient
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Ordinal {
        Ordinal::from(1u32)
    }

    pub fn omega() -> Ordinal {
        Ordinal {
            terms: vec![Term {
                exponent: Ordinal::one(),
                coefficient: 1,
            }],
        }
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Result<Ordinal, OrdinalError> {
        Ordinal::monomial(exponent, 1)
    }

    /// `ω^exponent · coefficient`; a zero coefficient yields `0`.
    pub fn monomial(exponent: Ordinal, coefficient: u32) -> Result<Ordinal, OrdinalError> {
        if coefficient == 0 {
            return Ok(Ordinal::zero());
        }
        let ordinal = Ordinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        };
        ordinal.check_depth()?;
        Ok(ordinal)
    }

    /// Sums `ω^e·c` for the given pairs in order, so non-canonical input
    /// (out-of-order or repeated exponents) is absorbed the ordinal way.
    pub fn from_terms<I>(terms: I) -> Result<Ordinal, OrdinalError>
    where
        I: IntoIterator<Item = (Ordinal, u32)>,
    {
        let mut acc = Ordinal::zero();
        for (exponent, coefficient) in terms {
            acc = acc.checked_add(&Ordinal::monomial(exponent, coefficient)?)?;
        }
        Ok(acc)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    pub fn as_natural(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    /// Coefficient of the `ω^0` term, i.e. the natural-number tail.
    pub fn finite_part(&self) -> u32 {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => t.coefficient,
            _ => 0,
        }
    }

    /// `self` without its natural-number tail: the largest limit (or zero)
    /// not above `self`.
    pub fn limit_part(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        if terms.last().is_some_and(|t| t.exponent.is_zero()) {
            terms.pop();
        }
        Ordinal { terms }
    }

    /// Positive and without a natural-number tail.
    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.finite_part() == 0
    }

    pub fn is_successor(&self) -> bool {
        self.finite_part() > 0
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    /// Exponent nesting depth: 0 for naturals, 1 below `ω^ω`, and so on.
    pub fn depth(&self) -> usize {
        if self.is_finite() {
            return 0;
        }
        1 + self
            .terms
            .iter()
            .map(|t| t.exponent.depth())
            .max()
            .unwrap_or(0)
    }

    fn check_depth(&self) -> Result<(), OrdinalError> {
        if self.depth() > MAX_DEPTH {
            Err(OrdinalError::DepthExceeded)
        } else {
            Ok(())
        }
    }

    pub fn successor(&self) -> Result<Ordinal, OrdinalError> {
        self.checked_add(&Ordinal::one())
    }

    pub fn predecessor(&self) -> Result<Ordinal, OrdinalError> {
        if !self.is_successor() {
            return Err(OrdinalError::NoPredecessor(self.clone()));
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor ordinals are non-zero");
        last.coefficient -= 1;
        if last.coefficient == 0 {
            terms.pop();
        }
        Ok(Ordinal { terms })
    }

    pub fn checked_add(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let Some(head) = rhs.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exponent > head.exponent)
            .cloned()
            .collect();
        let kept = terms.len();
        match self.terms.get(kept) {
            Some(t) if t.exponent == head.exponent => {
                let coefficient = t.coefficient as u64 + head.coefficient as u64;
                if coefficient > MAX_COEFFICIENT {
                    return Err(OrdinalError::CoefficientOverflow);
                }
                terms.push(Term {
                    exponent: head.exponent.clone(),
                    coefficient: coefficient as u32,
                });
                terms.extend(rhs.terms[1..].iter().cloned());
            }
            _ => terms.extend(rhs.terms.iter().cloned()),
        }
        Ok(Ordinal { terms })
    }

    pub fn checked_mul(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let Some(lead) = self.terms.first() else {
            return Ok(Ordinal::zero());
        };
        let mut acc = Ordinal::zero();
        for term in &rhs.terms {
            let piece = if term.exponent.is_zero() {
                // (ω^e·c + rest)·k = ω^e·(c·k) + rest
                let coefficient = lead.coefficient as u64 * term.coefficient as u64;
                if coefficient > MAX_COEFFICIENT {
                    return Err(OrdinalError::CoefficientOverflow);
                }
                let mut terms = self.terms.clone();
                terms[0].coefficient = coefficient as u32;
                Ordinal { terms }
            } else {
                let exponent = lead.exponent.checked_add(&term.exponent)?;
                Ordinal::monomial(exponent, term.coefficient)?
            };
            acc = acc.checked_add(&piece)?;
        }
        acc.check_depth()?;
        Ok(acc)
    }

    /// The unique `d` with `lower + d = self`, or `None` when `lower > self`.
    pub fn checked_sub_left(&self, lower: &Ordinal) -> Option<Ordinal> {
        if lower > self {
            return None;
        }
        for (k, (mine, theirs)) in self.terms.iter().zip(&lower.terms).enumerate() {
            if mine == theirs {
                continue;
            }
            let mut terms = Vec::with_capacity(self.terms.len() - k);
            if mine.exponent == theirs.exponent {
                terms.push(Term {
                    exponent: mine.exponent.clone(),
                    coefficient: mine.coefficient - theirs.coefficient,
                });
                terms.extend(self.terms[k + 1..].iter().cloned());
            } else {
                terms.extend(self.terms[k..].iter().cloned());
            }
            return Some(Ordinal { terms });
        }
        Some(Ordinal {
            terms: self.terms[lower.terms.len()..].to_vec(),
        })
    }

    /// Parity of the natural-number tail; limit ordinals are even.
    pub fn is_even(&self) -> bool {
        self.finite_part().is_multiple_of(2)
    }
}

impl From<u32> for Ordinal {
    fn from(n: u32) -> Ordinal {
        if n == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent: Ordinal::zero(),
                coefficient: n,
            }],
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Ordinal) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then(a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Ordinal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// The operator forms panic on cap overflow, mirroring integer overflow.
impl Add for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        self.checked_add(rhs).expect("ordinal addition overflowed")
    }
}

impl Add for Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: Ordinal) -> Ordinal {
        &self + &rhs
    }
}

impl Mul for &Ordinal {
    type Output = Ordinal;
    fn mul(self, rhs: &Ordinal) -> Ordinal {
        self.checked_mul(rhs).expect("ordinal multiplication overflowed")
    }
}

impl Mul for Ordinal {
    type Output = Ordinal;
    fn mul(self, rhs: Ordinal) -> Ordinal {
        &self * &rhs
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, term) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            let c = term.coefficient;
            if term.exponent.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            f.write_str("w")?;
            if term.exponent != Ordinal::one() {
                f.write_str("^")?;
                let bare = term.exponent.is_finite()
                    || matches!(term.exponent.terms.as_slice(), [t] if t.coefficient == 1);
                if bare {
                    write!(f, "{}", term.exponent)?;
                } else {
                    write!(f, "({})", term.exponent)?;
                }
            }
            if c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Ordinal, OrdinalError> {
        let mut parser = Parser {
            chars: s.chars().collect(),
            pos: 0,
        };
        let value = parser.sum()?;
        parser.skip_ws();
        if parser.pos < parser.chars.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(value)
    }
}

/// Parses an ordinal literal such as `w^2*3+w+4`.
pub fn parse(text: &str) -> Result<Ordinal, OrdinalError> {
    text.parse()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: &str) -> OrdinalError {
        OrdinalError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.term()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let next = self.term()?;
            acc = acc.checked_add(&next)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut value = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let factor = self.natural()?;
            value = value.checked_mul(&factor)?;
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.natural(),
            Some('w') | Some('ω') => {
                self.pos += 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let exponent = self.atom()?;
                    Ordinal::omega_pow(exponent)
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.error("expected a natural, 'w' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<Ordinal, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        match digits.parse::<u64>() {
            Ok(n) if n <= MAX_COEFFICIENT => Ok(Ordinal::from(n as u32)),
            _ => Err(OrdinalError::CoefficientOverflow),
        }
    }
}

/// Draws an ordinal strictly below `bound`, or `None` when `bound` is 0.
///
/// Every ordinal below the bound has positive probability; small
/// coefficients are favoured.
pub fn sample_below<R: Rng + ?Sized>(bound: &Ordinal, rng: &mut R) -> Option<Ordinal> {
    if bound.is_zero() {
        return None;
    }
    if let Some(n) = bound.as_natural() {
        return Some(Ordinal::from(rng.random_range(0..n)));
    }
    let k = rng.random_range(0..bound.terms.len());
    let pivot = &bound.terms[k];
    let mut terms = bound.terms[..k].to_vec();
    let coefficient = rng.random_range(0..pivot.coefficient.min(8));
    if coefficient > 0 {
        terms.push(Term {
            exponent: pivot.exponent.clone(),
            coefficient,
        });
    }
    terms.extend(sample_below_power(&pivot.exponent, rng).terms);
    Some(Ordinal { terms })
}

/// Draws an ordinal strictly below `ω^exponent`.
fn sample_below_power<R: Rng + ?Sized>(exponent: &Ordinal, rng: &mut R) -> Ordinal {
    let mut exponents: Vec<Ordinal> = (0..rng.random_range(0..=3))
        .filter_map(|_| sample_below(exponent, rng))
        .collect();
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    exponents.dedup();
    Ordinal {
        terms: exponents
            .into_iter()
            .map(|e| Term {
                exponent: e,
                coefficient: rng.random_range(1..=4),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(ord("w").cmp(&ord("w")), Ordering::Equal);
        assert_eq!(ord("w+1").cmp(&ord("w*2")), Ordering::Less);
        assert_eq!(ord("w^2").cmp(&ord("w*5+4")), Ordering::Greater);
    }

    #[test]
    fn successor_and_predecessor() {
        assert_eq!(Ordinal::from(4).successor().unwrap(), Ordinal::from(5));
        assert_eq!(ord("w").successor().unwrap(), ord("w+1"));
        assert_eq!(ord("w*2+1").predecessor().unwrap(), ord("w*2"));
        assert_eq!(
            Ordinal::zero().predecessor(),
            Err(OrdinalError::NoPredecessor(Ordinal::zero()))
        );
        let err = ord("w^2").predecessor().unwrap_err();
        assert!(err.to_string().contains("w^2"));
    }

    #[test]
    fn limit_classification() {
        assert!(ord("w").is_limit());
        assert!(!Ordinal::from(7).is_limit());
        assert!(ord("w^2+w*3").is_limit());
        assert!(!Ordinal::zero().is_limit());
        assert!(!Ordinal::zero().is_successor());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(Ordinal::one() + Ordinal::omega(), Ordinal::omega());
        assert_eq!(Ordinal::from(2) * Ordinal::omega(), Ordinal::omega());
        assert_eq!(Ordinal::omega() * Ordinal::from(2), ord("w*2"));
        assert_eq!(ord("w^2+1") * ord("w+2"), ord("w^3+w^2*2+1"));
        assert_eq!(ord("w+1") * ord("w"), ord("w^2"));
    }

    #[test]
    fn left_subtraction() {
        assert_eq!(ord("w*3").checked_sub_left(&ord("w+2")), Some(ord("w*2")));
        assert_eq!(ord("w+1").checked_sub_left(&Ordinal::one()), Some(ord("w+1")));
        assert_eq!(ord("w^2").checked_sub_left(&ord("w*7+3")), Some(ord("w^2")));
        assert_eq!(ord("5").checked_sub_left(&ord("w")), None);
        assert_eq!(ord("w+5").checked_sub_left(&ord("w+2")), Some(ord("3")));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(ord("w*2+3"), ord("w") * Ordinal::from(2) + Ordinal::from(3));
        assert_eq!(ord("w^2").to_string(), "w^2");
        assert_eq!(ord("w+w"), ord("w") + ord("w"));
        assert_eq!(ord(" w ^ 2 * 3 + w + 4 ").to_string(), "w^2*3+w+4");
        assert_eq!(ord("3+w"), ord("w"));
        assert_eq!(ord("ω^ω").to_string(), "w^w");
        assert_eq!(ord("w^(w+1)*2").to_string(), "w^(w+1)*2");
        assert_eq!(ord("w^w^2").to_string(), "w^w^2");
        assert_eq!(ord("w^(w*2)").to_string(), "w^(w*2)");
        assert_eq!(ord("0").to_string(), "0");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match "w+*2".parse::<Ordinal>() {
            Err(OrdinalError::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            "w^(2".parse::<Ordinal>(),
            Err(OrdinalError::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            "w w".parse::<Ordinal>(),
            Err(OrdinalError::Syntax { .. })
        ));
    }

    #[test]
    fn caps_are_enforced() {
        let big = Ordinal::from(u32::MAX);
        assert_eq!(
            big.checked_add(&Ordinal::one()),
            Err(OrdinalError::CoefficientOverflow)
        );
        assert!("99999999999".parse::<Ordinal>().unwrap_err().is_resource());
        let mut tower = Ordinal::omega();
        for _ in 1..MAX_DEPTH {
            tower = Ordinal::omega_pow(tower).unwrap();
        }
        assert_eq!(tower.depth(), MAX_DEPTH);
        assert_eq!(
            Ordinal::omega_pow(tower),
            Err(OrdinalError::DepthExceeded)
        );
    }

    #[test]
    fn samples_stay_below_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for bound in ["w*2", "w^2+3", "w^w", "1", "w^(w+1)*2+w"] {
            let bound = ord(bound);
            for _ in 0..500 {
                let x = sample_below(&bound, &mut rng).unwrap();
                assert!(x < bound, "{x} !< {bound}");
            }
        }
        assert_eq!(sample_below(&Ordinal::zero(), &mut rng), None);
    }
}
