//! Rewriting `w_n` through squares of the classes `w_(2^j)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::universal::write_powers;
use super::{SwPoly, UniversalSwRing};
use crate::f2core::wu_coefficient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SwAtom {
    /// `Sq^i(w_j)`
    Sq(u32, u32),
    /// `w_j`
    W(u32),
}

impl SwAtom {
    pub fn index(self) -> u32 {
        match self {
            SwAtom::Sq(_, j) | SwAtom::W(j) => j,
        }
    }

    pub fn degree(self) -> u32 {
        match self {
            SwAtom::Sq(i, j) => i + j,
            SwAtom::W(j) => j,
        }
    }
}

impl fmt::Display for SwAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwAtom::Sq(i, j) => write!(f, "Sq^{i}(w_{j})"),
            SwAtom::W(j) => write!(f, "w_{j}"),
        }
    }
}

/// A product of atoms, sorted; empty is `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SwTerm(Vec<SwAtom>);

impl SwTerm {
    pub fn atoms(&self) -> &[SwAtom] {
        &self.0
    }

    fn mul(&self, other: &SwTerm) -> SwTerm {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        SwTerm(v)
    }
}

impl fmt::Display for SwTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_powers(f, &self.0, |f, a| write!(f, "{a}"))
    }
}

/// A sum of products of atoms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SwExpression(BTreeSet<SwTerm>);

impl SwExpression {
    pub fn atom(a: SwAtom) -> Self {
        SwExpression(BTreeSet::from([SwTerm(vec![a])]))
    }

    pub fn terms(&self) -> impl Iterator<Item = &SwTerm> {
        self.0.iter()
    }

    pub fn atoms(&self) -> impl Iterator<Item = SwAtom> + '_ {
        self.0.iter().flat_map(|t| t.0.iter().copied())
    }

    pub fn max_index(&self) -> u32 {
        self.atoms().map(SwAtom::index).max().unwrap_or(0)
    }

    /// Whether every generator mentioned has a power-of-two index.
    pub fn only_power_of_two_indices(&self) -> bool {
        self.atoms().all(|a| a.index().is_power_of_two())
    }

    fn add(&mut self, other: &SwExpression) {
        for t in &other.0 {
            if !self.0.remove(t) {
                self.0.insert(t.clone());
            }
        }
    }

    fn mul(&self, other: &SwExpression) -> SwExpression {
        let mut out = SwExpression::default();
        for a in &self.0 {
            for b in &other.0 {
                let t = a.mul(b);
                if !out.0.remove(&t) {
                    out.0.insert(t);
                }
            }
        }
        out
    }

    pub fn evaluate(&self, ring: &UniversalSwRing) -> SwPoly {
        let mut out = SwPoly::zero();
        for t in &self.0 {
            let mut p = SwPoly::one();
            for &a in &t.0 {
                let v = match a {
                    SwAtom::Sq(i, j) => ring.sq_generator(i, j),
                    SwAtom::W(j) => ring.w(j),
                };
                p = ring.mul(&p, &v);
            }
            out += &p;
        }
        out
    }
}

impl fmt::Display for SwExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (n, t) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `w_n` in terms of `w_(2^j)` and their squares.
///
/// For `n = 2^k + i` with `0 < i < 2^k`, the Wu formula for `Sq^i(w_(2^k))`
/// has top term `C(2^k - 1, i) w_n = w_n`, so
/// `w_n = Sq^i(w_(2^k)) + sum_(t<i) C(2^k+t-i-1, t) w_(i-t) w_(2^k+t)`,
/// and every index on the right is below `n`.
///
/// # Panics
/// If `n == 0`.
pub fn express_top_sw(n: u32) -> SwExpression {
    assert!(n >= 1, "w_0 = 1 needs no expression");
    let mut memo = BTreeMap::new();
    express(n, &mut memo)
}

fn express(n: u32, memo: &mut BTreeMap<u32, SwExpression>) -> SwExpression {
    if let Some(e) = memo.get(&n) {
        return e.clone();
    }
    let out = if n.is_power_of_two() {
        SwExpression::atom(SwAtom::W(n))
    } else {
        let j = 1u32 << (31 - n.leading_zeros());
        let i = n - j;
        let mut acc = SwExpression::atom(SwAtom::Sq(i, j));
        for t in 0..i {
            if wu_coefficient(u64::from(i), u64::from(j), u64::from(t)) {
                let lower = express(i - t, memo).mul(&express(j + t, memo));
                acc.add(&lower);
            }
        }
        acc
    };
    memo.insert(n, out.clone());
    out
}
