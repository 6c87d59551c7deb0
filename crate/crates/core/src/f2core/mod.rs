//! Linear algebra over F2 and binomial coefficients modulo 2.

mod matrix;

pub use matrix::{F2Matrix, F2Vector};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not alternating: entry ({row}, {col}) violates zero diagonal or symmetry")]
    NotAlternating { row: usize, col: usize },
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// `C(a, b) mod 2`, by Lucas: odd exactly when every binary digit of `b`
/// is dominated by the corresponding digit of `a`. Zero when `b > a`.
#[inline]
pub fn binom_mod2(a: u64, b: u64) -> bool {
    a & b == b
}

/// Coefficient `C(j + t - i - 1, t) mod 2` of the Wu formula for `Sq^i(w_j)`.
///
/// Only defined for `i <= j`, where the upper index can be negative only at
/// `t = 0` (and `i = j`); that coefficient is taken to be 1.
pub fn wu_coefficient(i: u64, j: u64, t: u64) -> bool {
    assert!(i <= j, "Wu formula coefficient requested outside i <= j");
    if t == 0 {
        return true;
    }
    binom_mod2(j + t - i - 1, t)
}

/// Checks `C(2^k m - 1, b) = 1 mod 2` for every `0 <= b <= 2^(k-1)`.
pub fn check_lemma_claim(k: u32, m: u64) -> Result<bool, F2Error> {
    if k == 0 || m == 0 {
        return Err(F2Error::InvalidArgument(format!("lemma requires k >= 1 and m >= 1, got k = {k}, m = {m}")));
    }
    if k > 63 {
        return Err(F2Error::Overflow("2^k"));
    }
    let top = (1u64 << k).checked_mul(m).filter(|&v| v <= i64::MAX as u64).ok_or(F2Error::Overflow("2^k * m"))? - 1;
    let half = 1u64 << (k - 1);
    Ok((0..=half).all(|b| binom_mod2(top, b)))
}

pub fn rank(m: &F2Matrix) -> usize {
    m.rank()
}

/// Solves `m * x = b`; `Ok(None)` marks an inconsistent system.
pub fn solve(m: &F2Matrix, b: &F2Vector) -> Result<Option<F2Vector>, F2Error> {
    m.solve(b)
}

/// Determinant mod 2 of a symmetric matrix with vanishing diagonal.
///
/// Odd side length always gives `false`; that is a consequence of the input
/// shape and is checked by the tests rather than short-circuited here.
pub fn alternating_det_mod2(m: &F2Matrix) -> Result<bool, F2Error> {
    if !m.is_square() {
        return Err(F2Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    for r in 0..m.rows() {
        if m.get(r, r) {
            return Err(F2Error::NotAlternating { row: r, col: r });
        }
        for c in r + 1..m.cols() {
            if m.get(r, c) != m.get(c, r) {
                return Err(F2Error::NotAlternating { row: r, col: c });
            }
        }
    }
    Ok(m.rank() == m.rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Leibniz expansion over all permutations; over F2 the signs vanish.
    fn det_by_permutations(m: &F2Matrix) -> bool {
        fn rec(m: &F2Matrix, row: usize, used: &mut Vec<bool>) -> bool {
            let n = m.rows();
            if row == n {
                return true;
            }
            let mut acc = false;
            for c in 0..n {
                if !used[c] && m.get(row, c) {
                    used[c] = true;
                    acc ^= rec(m, row + 1, used);
                    used[c] = false;
                }
            }
            acc
        }
        rec(m, 0, &mut vec![false; m.rows()])
    }

    fn alternating_from_bits(n: usize, bits: u64) -> F2Matrix {
        let mut m = F2Matrix::zeros(n, n);
        let mut k = 0;
        for r in 0..n {
            for c in r + 1..n {
                if (bits >> k) & 1 == 1 {
                    m.set(r, c, true);
                    m.set(c, r, true);
                }
                k += 1;
            }
        }
        m
    }

    fn exact_binomial(n: u128, k: u128) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn binom_examples() {
        assert!(binom_mod2(15, 4));
        assert!(binom_mod2(12345, 0));
        assert!(!binom_mod2(4, 2));
        assert!(binom_mod2(6, 2));
        assert!(!binom_mod2(3, 5));
    }

    #[test]
    fn binom_matches_pascal_oracle() {
        let limit = 512usize;
        let mut row = vec![1u8];
        for a in 0..=limit {
            for (b, &bit) in row.iter().enumerate() {
                assert_eq!(binom_mod2(a as u64, b as u64), bit == 1, "C({a}, {b})");
            }
            assert!(!binom_mod2(a as u64, a as u64 + 1));
            let mut next = vec![1u8; a + 2];
            for b in 1..=a {
                next[b] = row[b - 1] ^ row[b];
            }
            row = next;
        }
    }

    #[test]
    fn lemma_claim_examples() {
        assert_eq!(check_lemma_claim(3, 2), Ok(true));
        assert_eq!(check_lemma_claim(1, 1), Ok(true));
        assert_eq!(check_lemma_claim(5, 7), Ok(true));
        // independent: exact binomials C(223, b) for b <= 16
        for b in 0..=16u128 {
            assert_eq!(exact_binomial(223, b) % 2, 1, "C(223, {b})");
        }
    }

    #[test]
    fn lemma_claim_errors() {
        assert!(matches!(check_lemma_claim(0, 3), Err(F2Error::InvalidArgument(_))));
        assert!(matches!(check_lemma_claim(2, 0), Err(F2Error::InvalidArgument(_))));
        assert!(matches!(check_lemma_claim(62, 4), Err(F2Error::Overflow(_))));
        assert!(matches!(check_lemma_claim(64, 1), Err(F2Error::Overflow(_))));
    }

    #[test]
    fn wu_coefficient_convention() {
        // Sq^j(w_j) = w_j^2: only the t = 0 coefficient survives
        for j in 1..10 {
            assert!(wu_coefficient(j, j, 0));
            for t in 1..=j {
                assert!(!wu_coefficient(j, j, t));
            }
        }
        // Sq^1(w_2) = w_1 w_2 + w_3
        assert!(wu_coefficient(1, 2, 0));
        assert!(wu_coefficient(1, 2, 1));
    }

    #[test]
    fn alternating_det_examples() {
        let hyperbolic = F2Matrix::from_rows(&[[0u8, 1], [1, 0]]);
        assert_eq!(alternating_det_mod2(&hyperbolic), Ok(true));
        for bits in 0..8 {
            assert_eq!(alternating_det_mod2(&alternating_from_bits(3, bits)), Ok(false));
        }
    }

    #[test]
    fn alternating_det_rejects_invalid_input() {
        let diag = F2Matrix::from_rows(&[[1u8, 0], [0, 0]]);
        assert_eq!(alternating_det_mod2(&diag), Err(F2Error::NotAlternating { row: 0, col: 0 }));
        let asym = F2Matrix::from_rows(&[[0u8, 1], [0, 0]]);
        assert_eq!(alternating_det_mod2(&asym), Err(F2Error::NotAlternating { row: 0, col: 1 }));
        assert!(matches!(alternating_det_mod2(&F2Matrix::zeros(2, 3)), Err(F2Error::NotSquare { .. })));
    }

    #[test]
    fn odd_alternating_matrices_are_singular_exhaustively() {
        for n in [1usize, 3, 5] {
            let free = n * (n - 1) / 2;
            for bits in 0..(1u64 << free) {
                let m = alternating_from_bits(n, bits);
                assert!(!det_by_permutations(&m));
                assert_eq!(alternating_det_mod2(&m), Ok(false));
            }
        }
    }

    #[test]
    fn even_alternating_matrices_agree_with_leibniz() {
        for n in [2usize, 4] {
            let free = n * (n - 1) / 2;
            for bits in 0..(1u64 << free) {
                let m = alternating_from_bits(n, bits);
                assert_eq!(alternating_det_mod2(&m), Ok(det_by_permutations(&m)));
            }
        }
    }

    #[test]
    fn hyperbolic_block_sums_are_nondegenerate() {
        for half in 1..=3 {
            let n = 2 * half;
            let mut m = F2Matrix::zeros(n, n);
            for b in 0..half {
                m.set(2 * b, 2 * b + 1, true);
                m.set(2 * b + 1, 2 * b, true);
            }
            assert_eq!(alternating_det_mod2(&m), Ok(true));
        }
    }

    fn arb_matrix() -> impl Strategy<Value = F2Matrix> {
        (1usize..12, 1usize..12).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let mut m = F2Matrix::zeros(r, c);
                for (i, b) in bits.into_iter().enumerate() {
                    m.set(i / c, i % c, b);
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn binom_is_digit_domination(a in 0u64..1 << 40, b in 0u64..1 << 40) {
            prop_assert_eq!(binom_mod2(a, b), (a & b) == b);
        }

        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= m.rows().min(m.cols()));
        }

        #[test]
        fn solve_of_image_recovers_consistent_solution(m in arb_matrix(), seed in any::<u64>()) {
            let x = F2Vector::from_bits(&(0..m.cols()).map(|i| (seed >> (i % 64)) & 1 == 1).collect::<Vec<_>>());
            let b = m.mul_vec(&x);
            let sol = m.solve(&b).unwrap().expect("b is in the column space");
            prop_assert_eq!(m.mul_vec(&sol), b);
        }

        #[test]
        fn odd_size_seven_is_singular(bits in 0u64..(1 << 21)) {
            prop_assert_eq!(alternating_det_mod2(&alternating_from_bits(7, bits)), Ok(false));
        }
    }
}
