//! Kunneth tensor product of two rings.
//!
//! The basis of degree `k` lists `a (x) b` for `|a| + |b| = k`, ordered by
//! the degree of `a` (highest first), then by `a`, then by `b`.

use crate::f2core::{F2Matrix, F2Vector};
use crate::poincare::{BasisRef, ClassVector, CohomologyRing, PoincareError};

struct Layout {
    da: Vec<usize>,
    db: Vec<usize>,
    // offset[k][p]: start of the (p, k - p) block in degree k
    offset: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl Layout {
    fn new(da: Vec<usize>, db: Vec<usize>) -> Self {
        let top = da.len() + db.len() - 2;
        let mut offset = Vec::with_capacity(top + 1);
        let mut dims = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut row = vec![0; k + 1];
            let mut acc = 0;
            for p in (0..=k).rev() {
                row[p] = acc;
                acc += da.get(p).copied().unwrap_or(0) * db.get(k - p).copied().unwrap_or(0);
            }
            offset.push(row);
            dims.push(acc);
        }
        Layout { da, db, offset, dims }
    }

    fn index(&self, p: usize, i: usize, q: usize, j: usize) -> BasisRef {
        BasisRef::new(p + q, self.offset[p + q][p] + i * self.db[q] + j)
    }

    /// Inverse of `index` on the basis of degree `k`.
    fn split(&self, k: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.dims[k]);
        for p in (0..=k).rev() {
            let q = k - p;
            let (Some(&a), Some(&b)) = (self.da.get(p), self.db.get(q)) else {
                continue;
            };
            for i in 0..a {
                for j in 0..b {
                    out.push((p, i, q, j));
                }
            }
        }
        out
    }

    /// `u (x) v` for `u` in degree `p` of the first factor and `v` in degree `q`.
    fn tensor(&self, p: usize, u: &F2Vector, q: usize, v: &F2Vector, out: &mut F2Vector) {
        if u.is_empty() || v.is_empty() {
            return;
        }
        for a in u.ones() {
            for b in v.ones() {
                out.flip(self.index(p, a, q, b).index);
            }
        }
    }
}

/// Position of `e_(p,i) (x) f_(q,j)` for factors with the given dimensions.
pub fn tensor_index(dims_a: &[usize], dims_b: &[usize], p: usize, i: usize, q: usize, j: usize) -> BasisRef {
    Layout::new(dims_a.to_vec(), dims_b.to_vec()).index(p, i, q, j)
}

/// The class `x (x) y` in the tensor product of `a` and `b`.
pub fn tensor_class(a: &CohomologyRing, b: &CohomologyRing, x: &ClassVector, y: &ClassVector) -> ClassVector {
    let l = Layout::new(a.dims(), b.dims());
    let k = x.degree + y.degree;
    let mut out = F2Vector::zeros(l.dims.get(k).copied().unwrap_or(0));
    if k < l.dims.len() {
        l.tensor(x.degree, &x.coords, y.degree, &y.coords, &mut out);
    }
    ClassVector::new(k, out)
}

fn join_names(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", _) => b.to_string(),
        (_, "1") => a.to_string(),
        _ => format!("{a}*{b}"),
    }
}

/// `a (x) b` with factor-wise products, `Sq^k(x (x) y) = sum Sq^i x (x) Sq^(k-i) y`,
/// and generators `g (x) 1`, `1 (x) h`. Basis names must not collide.
pub fn tensor_rings(a: &CohomologyRing, b: &CohomologyRing) -> Result<CohomologyRing, PoincareError> {
    let l = Layout::new(a.dims(), b.dims());
    let top = a.top_degree() + b.top_degree();
    let splits: Vec<_> = (0..=top).map(|k| l.split(k)).collect();

    let names: Vec<Vec<String>> = splits
        .iter()
        .map(|s| {
            s.iter().map(|&(p, i, q, j)| join_names(a.name(BasisRef::new(p, i)), b.name(BasisRef::new(q, j)))).collect()
        })
        .collect();

    let mut cup = Vec::with_capacity(top + 1);
    for k1 in 0..=top {
        let mut row = Vec::with_capacity(top + 1 - k1);
        for k2 in 0..=top - k1 {
            let k = k1 + k2;
            let mut m = F2Matrix::zeros(l.dims[k1] * l.dims[k2], l.dims[k]);
            for (r1, &(p, i, q, j)) in splits[k1].iter().enumerate() {
                for (r2, &(p2, i2, q2, j2)) in splits[k2].iter().enumerate() {
                    if p + p2 > a.top_degree() || q + q2 > b.top_degree() {
                        continue;
                    }
                    let u = a.cup_basis(BasisRef::new(p, i), BasisRef::new(p2, i2));
                    let v = b.cup_basis(BasisRef::new(q, j), BasisRef::new(q2, j2));
                    let mut out = F2Vector::zeros(l.dims[k]);
                    l.tensor(p + p2, &u, q + q2, &v, &mut out);
                    m.set_row(r1 * l.dims[k2] + r2, &out);
                }
            }
            row.push(m);
        }
        cup.push(row);
    }

    let mut sq = Vec::with_capacity(top + 1);
    for s in 0..=top {
        let mut row = Vec::with_capacity(top + 1 - s);
        for d in 0..=top - s {
            let cols: Vec<F2Vector> = splits[d]
                .iter()
                .map(|&(p, i, q, j)| {
                    let x = ClassVector::basis(a, BasisRef::new(p, i));
                    let y = ClassVector::basis(b, BasisRef::new(q, j));
                    let mut out = F2Vector::zeros(l.dims[d + s]);
                    for t in 0..=s {
                        if p + t > a.top_degree() || q + s - t > b.top_degree() {
                            continue;
                        }
                        let u = a.sq(t, &x);
                        let v = b.sq(s - t, &y);
                        l.tensor(p + t, &u.coords, q + s - t, &v.coords, &mut out);
                    }
                    out
                })
                .collect();
            row.push(F2Matrix::from_columns(l.dims[d + s], &cols));
        }
        sq.push(row);
    }

    let mut generators: Vec<BasisRef> = a.generators().iter().map(|g| l.index(g.degree, g.index, 0, 0)).collect();
    generators.extend(b.generators().iter().map(|h| l.index(0, 0, h.degree, h.index)));
    CohomologyRing::from_tables(names, cup, sq, generators, a.is_formal() || b.is_formal())
}
