//! Steenrod action on classes, Wu classes, Stiefel-Whitney classes and the
//! invariants derived from them.

use serde::Serialize;

use super::{ClassVector, PoincareComplex, PoincareError, TotalClass};
use crate::f2core::{F2Matrix, F2Vector};
use crate::steenrod::SteenrodElement;

/// `Sq^i x`; zero (of length 0) when the target degree is above the top.
pub fn sq(m: &PoincareComplex, i: usize, x: &ClassVector) -> ClassVector {
    m.ring().sq(i, x)
}

/// Applies a homogeneous element of the Steenrod algebra to `x`, composites
/// acting right to left.
pub fn apply_element(m: &PoincareComplex, e: &SteenrodElement, x: &ClassVector) -> Result<ClassVector, PoincareError> {
    if e.is_zero() {
        return Ok(ClassVector::zero(m.ring(), x.degree));
    }
    let degree = e.degree().ok_or(PoincareError::Inhomogeneous)? as usize;
    let target = x.degree + degree;
    let mut acc = F2Vector::zeros(m.ring().dim(target));
    for mono in e.terms() {
        let mut v = x.clone();
        for &i in mono.exponents().iter().rev() {
            v = m.ring().sq(i as usize, &v);
            if v.is_zero() {
                break;
            }
        }
        if !v.is_zero() {
            acc ^= &v.coords;
        }
    }
    Ok(ClassVector::new(target, acc))
}

/// The class `v_k` with `<v_k * x, mu> = <Sq^k x, mu>` for all `x` of degree `n - k`.
pub fn wu_class(m: &PoincareComplex, k: usize) -> Result<ClassVector, PoincareError> {
    let n = m.dimension();
    if k > n {
        return Err(PoincareError::DegreeOutOfRange { degree: k, top: n });
    }
    let r = m.ring();
    let pairing = m.pairing_matrix(k);
    if !pairing.is_square() || pairing.rank() != pairing.rows() {
        return Err(PoincareError::SingularPairing { degree: k });
    }
    // row j: <e_a * x_j, mu> over a, right side <Sq^k x_j, mu>
    let system = pairing.transpose();
    let rhs = F2Vector::from_bits(
        &(0..r.dim(n - k))
            .map(|j| {
                let x = ClassVector::basis(r, super::BasisRef::new(n - k, j));
                m.evaluate(&r.sq(k, &x))
            })
            .collect::<Vec<_>>(),
    );
    let coords = system
        .solve(&rhs)
        .expect("pairing system has matching dimensions")
        .ok_or(PoincareError::SingularPairing { degree: k })?;
    Ok(ClassVector::new(k, coords))
}

pub fn total_wu(m: &PoincareComplex) -> Result<TotalClass, PoincareError> {
    let components = (0..=m.dimension()).map(|k| wu_class(m, k)).collect::<Result<_, _>>()?;
    Ok(TotalClass { components })
}

/// `w = Sq(v)`, so `w_i = sum_j Sq^j v_(i-j)`.
pub fn sw_classes(m: &PoincareComplex) -> Result<TotalClass, PoincareError> {
    let v = total_wu(m)?;
    let r = m.ring();
    let components = (0..=m.dimension())
        .map(|i| {
            let mut acc = F2Vector::zeros(r.dim(i));
            for j in 0..=i / 2 {
                let s = r.sq(j, &v.components[i - j]);
                acc ^= &s.coords;
            }
            ClassVector::new(i, acc)
        })
        .collect();
    Ok(TotalClass { components })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Orientability {
    /// Largest `k` with `w_i = 0` for `0 < i < 2^k`; when every positive
    /// class vanishes, the least `k` with `2^k > n`.
    pub k: u32,
    /// Whether every `w_i`, `0 < i <= n`, vanishes (k-orientable for all k).
    pub all_vanish: bool,
}

fn floor_log2(n: usize) -> u32 {
    usize::BITS - 1 - n.leading_zeros()
}

/// Least `k` with `2^k > n`.
pub(crate) fn orientability_cap(n: usize) -> u32 {
    floor_log2(n.max(1)) + 1 - u32::from(n == 0)
}

pub fn orientability_order(m: &PoincareComplex) -> Result<Orientability, PoincareError> {
    let w = sw_classes(m)?;
    Ok(match w.lowest_nonzero() {
        Some(i) => Orientability { k: floor_log2(i), all_vanish: false },
        None => Orientability { k: orientability_cap(m.dimension()), all_vanish: true },
    })
}

/// Alternating sum of the dimensions.
pub fn euler_characteristic(m: &PoincareComplex) -> i64 {
    m.ring().dims().iter().enumerate().map(|(d, &k)| if d % 2 == 0 { k as i64 } else { -(k as i64) }).sum()
}

/// `omega(x, y) = <x * y, mu>` on the middle degree.
pub fn middle_form(m: &PoincareComplex) -> Result<F2Matrix, PoincareError> {
    let n = m.dimension();
    if n % 2 == 1 {
        return Err(PoincareError::OddDimension(n));
    }
    Ok(m.pairing_matrix(n / 2))
}
