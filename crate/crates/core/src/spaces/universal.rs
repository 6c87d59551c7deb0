//! `F2[w_1, ..., w_N]` truncated above degree `D`, with the Steenrod action
//! given on generators by the Wu formula and extended by Cartan.

use std::collections::BTreeSet;
use std::fmt;

use super::SpaceError;
use crate::f2core::wu_coefficient;

/// Largest monomial basis [`build_universal`] accepts.
pub const DEFAULT_BASIS_BOUND: u64 = 5_000_000;

/// A product of generators, stored as the sorted list of their indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SwMonomial(Vec<u32>);

impl SwMonomial {
    pub fn one() -> Self {
        SwMonomial(Vec::new())
    }

    pub fn new(mut indices: Vec<u32>) -> Self {
        indices.retain(|&j| j != 0);
        indices.sort_unstable();
        SwMonomial(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &SwMonomial) -> SwMonomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        SwMonomial(v)
    }
}

/// Writes `w_j` factors with exponents, e.g. `w_1^2 w_3`; the empty product is `1`.
pub(crate) fn write_powers<T: PartialEq>(
    f: &mut fmt::Formatter<'_>,
    items: &[T],
    mut one: impl FnMut(&mut fmt::Formatter<'_>, &T) -> fmt::Result,
) -> fmt::Result {
    if items.is_empty() {
        return write!(f, "1");
    }
    let mut i = 0;
    while i < items.len() {
        let run = items[i..].iter().take_while(|x| **x == items[i]).count();
        if i > 0 {
            write!(f, " ")?;
        }
        one(f, &items[i])?;
        if run > 1 {
            write!(f, "^{run}")?;
        }
        i += run;
    }
    Ok(())
}

impl fmt::Display for SwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_powers(f, &self.0, |f, j| write!(f, "w_{j}"))
    }
}

/// An F2 polynomial in the `w_j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SwPoly {
    terms: BTreeSet<SwMonomial>,
}

impl SwPoly {
    pub fn zero() -> Self {
        SwPoly::default()
    }

    pub fn one() -> Self {
        SwPoly::from(SwMonomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &SwMonomial> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn toggle(&mut self, m: SwMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// The common degree of the terms, `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(SwMonomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

impl From<SwMonomial> for SwPoly {
    fn from(m: SwMonomial) -> Self {
        SwPoly { terms: BTreeSet::from([m]) }
    }
}

impl std::ops::AddAssign<&SwPoly> for SwPoly {
    fn add_assign(&mut self, rhs: &SwPoly) {
        for m in &rhs.terms {
            self.toggle(m.clone());
        }
    }
}

impl fmt::Display for SwPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, m) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalSwRing {
    generators: u32,
    max_degree: u32,
}

/// Monomials of degree at most `max_degree` in generators of degree `1..=n`.
fn count_monomials(n: u32, max_degree: u32) -> u64 {
    let mut ways = vec![0u64; max_degree as usize + 1];
    ways[0] = 1;
    for j in 1..=n as usize {
        for d in j..ways.len() {
            ways[d] = ways[d].saturating_add(ways[d - j]);
        }
    }
    ways.iter().fold(0u64, |a, &b| a.saturating_add(b))
}

pub fn build_universal(n: u32, max_degree: u32) -> Result<UniversalSwRing, SpaceError> {
    UniversalSwRing::with_bound(n, max_degree, DEFAULT_BASIS_BOUND)
}

impl UniversalSwRing {
    pub fn with_bound(n: u32, max_degree: u32, bound: u64) -> Result<Self, SpaceError> {
        if n == 0 {
            return Err(SpaceError::Universal("need at least one generator".into()));
        }
        if max_degree < n {
            return Err(SpaceError::Universal(format!("degree cap {max_degree} is below the generator count {n}")));
        }
        let size = count_monomials(n, max_degree);
        if size > bound {
            return Err(SpaceError::Universal(format!("monomial basis has {size} elements, above the bound {bound}")));
        }
        Ok(UniversalSwRing { generators: n, max_degree })
    }

    pub fn generators(&self) -> u32 {
        self.generators
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn basis_size(&self) -> u64 {
        count_monomials(self.generators, self.max_degree)
    }

    /// Monomials of exactly `degree`, in increasing order.
    pub fn basis(&self, degree: u32) -> Vec<SwMonomial> {
        fn go(rest: u32, min: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<SwMonomial>) {
            if rest == 0 {
                out.push(SwMonomial(cur.clone()));
                return;
            }
            for j in min..=max.min(rest) {
                cur.push(j);
                go(rest - j, j, max, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if degree <= self.max_degree {
            go(degree, 1, self.generators, &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }

    /// `w_j`, with `w_0 = 1` and `w_j = 0` beyond the generators or the cap.
    pub fn w(&self, j: u32) -> SwPoly {
        if j == 0 {
            SwPoly::one()
        } else if j > self.generators || j > self.max_degree {
            SwPoly::zero()
        } else {
            SwPoly::from(SwMonomial(vec![j]))
        }
    }

    fn keep(&self, m: &SwMonomial) -> bool {
        m.degree() <= self.max_degree
    }

    pub fn mul(&self, x: &SwPoly, y: &SwPoly) -> SwPoly {
        let mut out = SwPoly::zero();
        for a in &x.terms {
            for b in &y.terms {
                if a.degree() + b.degree() <= self.max_degree {
                    out.toggle(a.mul(b));
                }
            }
        }
        out
    }

    /// `Sq^i(w_j) = sum_t C(j+t-i-1, t) w_(i-t) w_(j+t)` for `i <= j`; zero
    /// for `i > j`.
    pub fn sq_generator(&self, i: u32, j: u32) -> SwPoly {
        if j == 0 {
            return if i == 0 { SwPoly::one() } else { SwPoly::zero() };
        }
        if i > j || j > self.generators {
            return SwPoly::zero();
        }
        let mut out = SwPoly::zero();
        for t in 0..=i {
            if wu_coefficient(u64::from(i), u64::from(j), u64::from(t)) {
                out += &self.mul(&self.w(i - t), &self.w(j + t));
            }
        }
        out
    }

    /// `Sq^i` of a monomial by Cartan, factor by factor.
    pub fn sq_monomial(&self, i: u32, m: &SwMonomial) -> SwPoly {
        if m.degree() + i > self.max_degree {
            return SwPoly::zero();
        }
        // by_extra[e]: partial products whose squares so far add up to e
        let mut by_extra = vec![SwPoly::zero(); i as usize + 1];
        by_extra[0] = SwPoly::one();
        for &j in &m.0 {
            let mut next = vec![SwPoly::zero(); i as usize + 1];
            for (e, p) in by_extra.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                for a in 0..=j.min(i - e as u32) {
                    let s = self.sq_generator(a, j);
                    if !s.is_zero() {
                        next[e + a as usize] += &self.mul(p, &s);
                    }
                }
            }
            by_extra = next;
        }
        let mut out = by_extra.pop().expect("non-empty");
        out.terms.retain(|t| self.keep(t));
        out
    }

    pub fn sq(&self, i: u32, x: &SwPoly) -> SwPoly {
        let mut out = SwPoly::zero();
        for m in &x.terms {
            out += &self.sq_monomial(i, m);
        }
        out
    }
}
