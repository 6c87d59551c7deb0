//! The mod-2 Steenrod algebra in the Serre-Cartan (admissible) basis.
//!
//! A [`SteenrodMonomial`] `Sq^(i1, ..., ir)` acts by `Sq^ir` first. Elements
//! are sums of monomials with coefficients in F2; [`normalize`] rewrites
//! them into admissible monomials (`i_j >= 2 i_(j+1)`) using the Adem
//! relations.

mod adem;
mod decompose;
mod text;

pub use adem::{adem_expand, memo_cap, multiply, normalize, MEMO_CAP_ENV};
pub use decompose::{decompose, verify_witness, DecompositionWitness};

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ops::{Add, AddAssign};

use thiserror::Error;

/// Largest degree any operation accepts.
pub const MAX_DEGREE: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error("Sq^0 is not allowed as a factor of a monomial; use the empty monomial")]
    ZeroExponent,
    #[error("degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeTooLarge(u64),
    #[error("Adem relation requires 0 < a < 2b, got a = {a}, b = {b}")]
    AdmissiblePair { a: u32, b: u32 },
    #[error("n must be positive")]
    NonPositive,
    #[error("cannot parse Steenrod element {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A composite `Sq^(i1) ... Sq^(ir)` with every exponent positive.
/// The empty sequence is `Sq^0`, the identity.
///
/// Ordering is reverse lexicographic on the exponent sequence, so sets of
/// monomials iterate with the largest leading square first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SteenrodMonomial(Vec<u32>);

impl SteenrodMonomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self, SteenrodError> {
        if exponents.contains(&0) {
            return Err(SteenrodError::ZeroExponent);
        }
        let degree: u64 = exponents.iter().map(|&e| u64::from(e)).sum();
        if degree > MAX_DEGREE {
            return Err(SteenrodError::DegreeTooLarge(degree));
        }
        Ok(SteenrodMonomial(exponents))
    }

    /// Builds a monomial from factors, dropping `Sq^0` factors.
    pub fn from_factors(factors: impl IntoIterator<Item = u32>) -> Result<Self, SteenrodError> {
        Self::new(factors.into_iter().filter(|&e| e != 0).collect())
    }

    pub fn identity() -> Self {
        SteenrodMonomial(Vec::new())
    }

    /// The single square `Sq^i` (the identity when `i = 0`).
    pub fn square(i: u32) -> Self {
        if i == 0 {
            Self::identity()
        } else {
            SteenrodMonomial(vec![i])
        }
    }

    pub(crate) fn from_vec_unchecked(exponents: Vec<u32>) -> Self {
        debug_assert!(!exponents.contains(&0));
        SteenrodMonomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(self)
    }

    /// Composite `self . other` (apply `other` first).
    pub fn concat(&self, other: &SteenrodMonomial) -> Result<SteenrodMonomial, SteenrodError> {
        let degree = self.degree() + other.degree();
        if degree > MAX_DEGREE {
            return Err(SteenrodError::DegreeTooLarge(degree));
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Ok(SteenrodMonomial(v))
    }
}

impl Ord for SteenrodMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for SteenrodMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `i_j >= 2 i_(j+1)` for every adjacent pair.
pub fn is_admissible(m: &SteenrodMonomial) -> bool {
    m.0.windows(2).all(|w| u64::from(w[0]) >= 2 * u64::from(w[1]))
}

/// A finite sum of monomials over F2. Adding a monomial twice cancels it.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SteenrodElement {
    terms: BTreeSet<SteenrodMonomial>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from(SteenrodMonomial::identity())
    }

    pub fn square(i: u32) -> Self {
        Self::from(SteenrodMonomial::square(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &SteenrodMonomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &SteenrodMonomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds one monomial mod 2.
    pub fn toggle(&mut self, m: SteenrodMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// The common degree of all terms, `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<u64> {
        let mut it = self.terms.iter().map(SteenrodMonomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.iter().all(is_admissible)
    }
}

impl From<SteenrodMonomial> for SteenrodElement {
    fn from(m: SteenrodMonomial) -> Self {
        SteenrodElement { terms: BTreeSet::from([m]) }
    }
}

impl FromIterator<SteenrodMonomial> for SteenrodElement {
    fn from_iter<I: IntoIterator<Item = SteenrodMonomial>>(iter: I) -> Self {
        let mut e = SteenrodElement::zero();
        for m in iter {
            e.toggle(m);
        }
        e
    }
}

impl AddAssign<&SteenrodElement> for SteenrodElement {
    fn add_assign(&mut self, rhs: &SteenrodElement) {
        for m in &rhs.terms {
            self.toggle(m.clone());
        }
    }
}

impl Add<&SteenrodElement> for &SteenrodElement {
    type Output = SteenrodElement;
    fn add(self, rhs: &SteenrodElement) -> SteenrodElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> SteenrodMonomial {
        SteenrodMonomial::new(e.to_vec()).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&mono(&[3, 1])));
        assert!(!is_admissible(&mono(&[1, 2])));
        assert!(is_admissible(&SteenrodMonomial::identity()));
        assert!(is_admissible(&mono(&[8, 4, 2, 1])));
        assert!(!is_admissible(&mono(&[8, 4, 3])));
    }

    #[test]
    fn monomial_constructor_guards() {
        assert_eq!(SteenrodMonomial::new(vec![2, 0]), Err(SteenrodError::ZeroExponent));
        assert_eq!(SteenrodMonomial::new(vec![1 << 16, 1]), Err(SteenrodError::DegreeTooLarge((1 << 16) + 1)));
        assert_eq!(SteenrodMonomial::from_factors([0, 3, 0, 1]).unwrap(), mono(&[3, 1]));
    }

    #[test]
    fn addition_cancels_duplicates() {
        let a = SteenrodElement::from(mono(&[3, 1]));
        let b: SteenrodElement = [mono(&[3, 1]), mono(&[4])].into_iter().collect();
        let sum = &a + &b;
        assert_eq!(sum, SteenrodElement::square(4));
        assert!((&sum + &sum).is_zero());
    }

    #[test]
    fn degree_requires_homogeneity() {
        let e: SteenrodElement = [mono(&[3, 1]), mono(&[4])].into_iter().collect();
        assert_eq!(e.degree(), Some(4));
        let mixed: SteenrodElement = [mono(&[3, 1]), mono(&[5])].into_iter().collect();
        assert_eq!(mixed.degree(), None);
        assert!(!mixed.is_homogeneous());
        assert!(SteenrodElement::zero().is_homogeneous());
    }

    #[test]
    fn terms_iterate_largest_leading_square_first() {
        let e: SteenrodElement = [mono(&[4, 1]), mono(&[5]), SteenrodMonomial::identity()].into_iter().collect();
        let order: Vec<_> = e.terms().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(order, vec![vec![5], vec![4, 1], vec![]]);
    }
}
