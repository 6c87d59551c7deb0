//! Dense bit vectors and bit matrices over the two-element field.
//!
//! Rows are packed into `u64` words, so row operations during elimination
//! are word-wide XORs.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use super::F2Error;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over F2 of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector { len, words: vec![0; words_for(len)] }
    }

    /// The `index`-th standard basis vector.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with ones at `indices` (repeated indices cancel).
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the nonzero entries, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    /// Standard dot product mod 2.
    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "dot product of vectors of different length");
        self.words.iter().zip(&other.words).fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl BitXorAssign<&F2Vector> for F2Vector {
    fn bitxor_assign(&mut self, rhs: &F2Vector) {
        assert_eq!(self.len, rhs.len, "adding vectors of different length");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&F2Vector> for &F2Vector {
    type Output = F2Vector;
    fn bitxor(self, rhs: &F2Vector) -> F2Vector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// A dense `rows x cols` matrix over F2, stored row-major with packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        F2Matrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows. All rows must have the same length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &bit) in row.iter().enumerate() {
                m.set(r, c, bit & 1 == 1);
            }
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors (all of length `cols`).
    pub fn from_row_vectors(cols: usize, rows: &[F2Vector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            m.set_row(r, v);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[F2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows, "column of wrong length");
            for r in v.ones() {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        let mask = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    pub fn row(&self, r: usize) -> F2Vector {
        F2Vector { len: self.cols, words: self.row_words(r).to_vec() }
    }

    pub fn set_row(&mut self, r: usize, v: &F2Vector) {
        assert_eq!(v.len(), self.cols, "row of wrong length");
        self.row_words_mut(r).copy_from_slice(v.words());
    }

    pub fn column(&self, c: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// `self * v`.
    pub fn mul_vec(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = F2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self.row_words(r).iter().zip(v.words()).fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = F2Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in self.row(r).ones() {
                let src = rhs.row_words(k);
                for (d, s) in out.row_words_mut(r).iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &F2Matrix) -> F2Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix sum dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a ^= b;
        }
        out
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let stride = self.stride;
        let (lo, hi) = if src < dst {
            let (a, b) = self.data.split_at_mut(dst * stride);
            (&a[src * stride..(src + 1) * stride], &mut b[..stride])
        } else {
            let (a, b) = self.data.split_at_mut(src * stride);
            (&b[..stride], &mut a[dst * stride..(dst + 1) * stride])
        };
        for (d, s) in hi.iter_mut().zip(lo) {
            *d ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Reduces to reduced row echelon form in place, returning the pivot columns.
    fn row_reduce(&mut self, max_col: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..max_col {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(p, next);
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_row_into(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.row_reduce(self.cols).len()
    }

    /// Solves `self * x = b`. Returns `None` when `b` is outside the column space.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &F2Vector) -> Result<Option<F2Vector>, F2Error> {
        if b.len() != self.rows {
            return Err(F2Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = F2Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                aug.set(r, c, true);
            }
            if b.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.row_reduce(self.cols);
        if (pivots.len()..self.rows).any(|r| aug.get(r, self.cols)) {
            return Ok(None);
        }
        let mut x = F2Vector::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            if aug.get(r, self.cols) {
                x.set(c, true);
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<F2Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = F2Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in self.row(r).ones() {
                aug.set(r, c, true);
            }
            aug.set(r, n + r, true);
        }
        if aug.row_reduce(n).len() < n {
            return None;
        }
        let mut inv = F2Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if aug.get(r, n + c) {
                    inv.set(r, c, true);
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force rank: size of the span of the rows, enumerated.
    fn rank_by_span(m: &F2Matrix) -> usize {
        let mut span = std::collections::HashSet::new();
        span.insert(F2Vector::zeros(m.cols()));
        for r in 0..m.rows() {
            let row = m.row(r);
            let extra: Vec<_> = span.iter().map(|v| v ^ &row).collect();
            span.extend(extra);
        }
        span.len().trailing_zeros() as usize
    }

    #[test]
    fn rank_examples() {
        assert_eq!(F2Matrix::identity(7).rank(), 7);
        assert_eq!(F2Matrix::zeros(4, 9).rank(), 0);
        assert_eq!(F2Matrix::from_rows(&[[0u8, 1], [1, 0]]).rank(), 2);
    }

    #[test]
    fn rank_matches_span_enumeration_for_all_2x2() {
        for bits in 0u8..16 {
            let m = F2Matrix::from_rows(&[[bits & 1, (bits >> 1) & 1], [(bits >> 2) & 1, (bits >> 3) & 1]]);
            assert_eq!(m.rank(), rank_by_span(&m), "{m:?}");
        }
    }

    #[test]
    fn solve_examples() {
        let b = F2Vector::from_bits(&[true, false, true]);
        assert_eq!(F2Matrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(F2Matrix::zeros(3, 3).solve(&b).unwrap(), None);

        let m = F2Matrix::from_rows(&[[1u8, 1], [0, 1]]);
        let rhs = F2Vector::from_bits(&[true, false]);
        // exhaustive over the four candidates
        let candidates: Vec<_> =
            (0u8..4).map(|x| F2Vector::from_bits(&[x & 1 == 1, x & 2 == 2])).filter(|x| m.mul_vec(x) == rhs).collect();
        assert_eq!(candidates, vec![F2Vector::from_bits(&[true, false])]);
        assert_eq!(m.solve(&rhs).unwrap(), Some(candidates[0].clone()));
        // [1, 1] solves the transposed system x^T M = b
        assert_eq!(m.transpose().solve(&rhs).unwrap(), Some(F2Vector::from_bits(&[true, true])));
    }

    #[test]
    fn solve_rejects_length_mismatch() {
        let err = F2Matrix::identity(2).solve(&F2Vector::zeros(3)).unwrap_err();
        assert!(matches!(err, F2Error::DimensionMismatch { .. }));
    }

    #[test]
    fn solve_underdetermined_returns_some_solution() {
        let m = F2Matrix::from_rows(&[[1u8, 1, 0, 1]]);
        let rhs = F2Vector::from_bits(&[true]);
        let x = m.solve(&rhs).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), rhs);
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 150;
        let mut m = F2Matrix::identity(n);
        m.set(0, 149, true);
        m.set(70, 3, true);
        assert_eq!(m.rank(), n);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), F2Matrix::identity(n));
        let v = F2Vector::from_indices(n, [1, 64, 128, 149]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![1, 64, 128, 149]);
        let x = m.solve(&v).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), v);
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(F2Matrix::from_rows(&[[1u8, 1], [1, 1]]).inverse().is_none());
    }
}
