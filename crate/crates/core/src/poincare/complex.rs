use super::{BasisRef, ClassVector, CohomologyRing, PoincareError, Report};
use crate::f2core::{F2Matrix, F2Vector};
use crate::steenrod::adem_expand;

/// A connected graded F2 algebra whose top degree is one-dimensional; the
/// fundamental class reads off the top coefficient.
///
/// Construction only checks the dimensions; [`validate`] checks the axioms
/// and duality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareComplex {
    ring: CohomologyRing,
}

impl PoincareComplex {
    pub fn new(ring: CohomologyRing) -> Result<Self, PoincareError> {
        if ring.dim(0) != 1 {
            return Err(PoincareError::Disconnected(ring.dim(0)));
        }
        let top = ring.dim(ring.top_degree());
        if top != 1 {
            return Err(PoincareError::NoFundamentalClass(top));
        }
        Ok(PoincareComplex { ring })
    }

    pub fn ring(&self) -> &CohomologyRing {
        &self.ring
    }

    /// Mutable access for fault injection.
    pub fn ring_mut(&mut self) -> &mut CohomologyRing {
        &mut self.ring
    }

    pub fn dimension(&self) -> usize {
        self.ring.top_degree()
    }

    /// `<x, mu>`: the top coefficient of `x`, zero for other degrees.
    pub fn evaluate(&self, x: &ClassVector) -> bool {
        x.degree == self.dimension() && x.coords.get(0)
    }

    /// `P[a][b] = <e_a * f_b, mu>` for `e_a` in degree `k`, `f_b` in degree `n - k`.
    pub fn pairing_matrix(&self, k: usize) -> F2Matrix {
        let n = self.dimension();
        assert!(k <= n, "pairing degree {k} above dimension {n}");
        let (rows, cols) = (self.ring.dim(k), self.ring.dim(n - k));
        let mut m = F2Matrix::zeros(rows, cols);
        for a in 0..rows {
            for b in 0..cols {
                let v = self.ring.cup_basis(BasisRef::new(k, a), BasisRef::new(n - k, b));
                if v.get(0) {
                    m.set(a, b, true);
                }
            }
        }
        m
    }
}

/// Squares of every basis element: `out[d][j][i] = Sq^i e_{d,j}`.
fn basis_squares(r: &CohomologyRing) -> Vec<Vec<Vec<ClassVector>>> {
    let top = r.top_degree();
    (0..=top)
        .map(|d| {
            (0..r.dim(d))
                .map(|j| {
                    let x = ClassVector::basis(r, BasisRef::new(d, j));
                    (0..=top - d).map(|i| r.sq(i, &x)).collect()
                })
                .collect()
        })
        .collect()
}

/// Checks the algebra and Steenrod axioms on every basis element, pair and
/// triple, plus every Adem relation on every degree.
///
/// Cartan is checked on pairs `x <= y` in basis order; the other order
/// follows once commutativity holds, which is checked separately.
pub fn validate_ring(r: &CohomologyRing) -> Report {
    let mut rep = Report::new("validate");
    let top = r.top_degree();
    let unit = BasisRef::new(0, 0);
    if r.dim(0) != 1 {
        rep.fail("connected", format!("degree 0 has dimension {}", r.dim(0)));
        return rep;
    }
    let basis: Vec<BasisRef> = r.basis().collect();
    let positive: Vec<BasisRef> = basis.iter().copied().filter(|b| b.degree > 0).collect();
    let name = |b: BasisRef| r.name(b).to_string();

    for &b in &basis {
        let e = F2Vector::unit(r.dim(b.degree), b.index);
        rep.expect(r.cup_basis(unit, b) == e && r.cup_basis(b, unit) == e, "unit", || {
            format!("1 * {0} or {0} * 1 differs from {0}", name(b))
        });
    }

    for (i, &x) in positive.iter().enumerate() {
        for &y in &positive[i + 1..] {
            if x.degree + y.degree > top {
                continue;
            }
            rep.expect(r.cup_basis(x, y) == r.cup_basis(y, x), "commutativity", || {
                format!("{} * {} != {} * {}", name(x), name(y), name(y), name(x))
            });
        }
    }

    let cup_row = |a: BasisRef, v: &F2Vector, deg: usize, first: bool| -> F2Vector {
        // a * v (first) or v * a, with v a vector in degree `deg`
        let mut out = F2Vector::zeros(r.dim(a.degree + deg));
        for c in v.ones() {
            let cb = BasisRef::new(deg, c);
            out ^= &if first { r.cup_basis(a, cb) } else { r.cup_basis(cb, a) };
        }
        out
    };
    for &x in &positive {
        for &y in &positive {
            if x.degree + y.degree > top {
                continue;
            }
            let xy = r.cup_basis(x, y);
            for &z in &positive {
                let d = x.degree + y.degree + z.degree;
                if d > top {
                    continue;
                }
                let left = cup_row(z, &xy, x.degree + y.degree, false);
                let yz = r.cup_basis(y, z);
                let right = cup_row(x, &yz, y.degree + z.degree, true);
                rep.expect(left == right, "associativity", || {
                    format!("({} * {}) * {} != {} * ({} * {})", name(x), name(y), name(z), name(x), name(y), name(z))
                });
            }
        }
    }

    for d in 0..=top {
        let m = r.sq_matrix(0, d).expect("Sq^0 is always in range");
        rep.expect(*m == F2Matrix::identity(r.dim(d)), "sq0-identity", || {
            format!("Sq^0 is not the identity in degree {d}")
        });
        for i in d + 1..=top - d {
            let m = r.sq_matrix(i, d).expect("in range");
            for j in 0..r.dim(d) {
                rep.expect(m.column(j).is_zero(), "instability", || {
                    format!("Sq^{i} {} != 0 although {i} > {d}", name(BasisRef::new(d, j)))
                });
            }
        }
        if d > 0 && 2 * d <= top {
            let m = r.sq_matrix(d, d).expect("in range");
            for j in 0..r.dim(d) {
                let b = BasisRef::new(d, j);
                rep.expect(m.column(j) == r.cup_basis(b, b), "square", || format!("Sq^{d} {0} != {0} * {0}", name(b)));
            }
        }
    }

    let squares = basis_squares(r);
    for (i, &x) in basis.iter().enumerate() {
        for &y in &basis[i..] {
            let deg = x.degree + y.degree;
            if deg > top {
                continue;
            }
            let xy = ClassVector::new(deg, r.cup_basis(x, y));
            let sx = &squares[x.degree][x.index];
            let sy = &squares[y.degree][y.index];
            for k in 0..=top - deg {
                let lhs = r.sq(k, &xy);
                let mut rhs = F2Vector::zeros(r.dim(deg + k));
                for a in 0..=k {
                    rhs ^= &r.cup(&sx[a], &sy[k - a]).coords;
                }
                rep.expect(lhs.coords == rhs, "cartan", || {
                    format!("Sq^{k}({} * {}) disagrees with the Cartan sum", name(x), name(y))
                });
            }
        }
    }

    for d in 0..=top {
        for b in 1..=top - d {
            for a in 1..(2 * b).min(top - d - b + 1) {
                let lhs = r.sq_matrix(a, d + b).unwrap().mul(r.sq_matrix(b, d).unwrap());
                let mut rhs = F2Matrix::zeros(r.dim(d + a + b), r.dim(d));
                let relation = adem_expand(a as u32, b as u32).expect("a < 2b");
                for m in relation.terms() {
                    let ex = m.exponents();
                    let term = match *ex {
                        [x] => r.sq_matrix(x as usize, d).unwrap().clone(),
                        [x, y] => {
                            r.sq_matrix(x as usize, d + y as usize).unwrap().mul(r.sq_matrix(y as usize, d).unwrap())
                        }
                        _ => unreachable!("Adem terms have length at most two"),
                    };
                    rhs = rhs.add(&term);
                }
                rep.expect(lhs == rhs, "adem", || format!("Sq^{a} Sq^{b} on degree {d} differs from {relation}"));
            }
        }
    }
    rep
}

/// Ring axioms plus Poincare duality of the top pairing.
pub fn validate(m: &PoincareComplex) -> Report {
    let mut rep = validate_ring(m.ring());
    let n = m.dimension();
    let r = m.ring();
    rep.expect(r.dim(n) == 1, "connected", || format!("top degree has dimension {}", r.dim(n)));
    for k in 0..=n {
        let p = m.pairing_matrix(k);
        let ok = p.is_square() && p.rank() == p.rows();
        rep.expect(ok, "duality", || {
            format!("pairing H^{k} x H^{} -> F2 ({}x{}) is degenerate", n - k, p.rows(), p.cols())
        });
    }
    if n % 2 == 0 {
        let chi = super::euler_characteristic(m);
        rep.expect(chi.rem_euclid(2) as usize == r.dim(n / 2) % 2, "euler-parity", || {
            format!("chi = {chi} but the middle dimension is {}", r.dim(n / 2))
        });
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poincare::RingBuilder;

    fn names(spec: &[&[&str]]) -> Vec<Vec<String>> {
        spec.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    }

    /// F2[x]/(x^5), |x| = 1.
    fn rp4() -> PoincareComplex {
        let mut b = RingBuilder::new(names(&[&["1"], &["x"], &["x^2"], &["x^3"], &["x^4"]]));
        for i in 1..=4 {
            for j in 1..=4 - i {
                b.cup(BasisRef::new(i, 0), BasisRef::new(j, 0), F2Vector::unit(1, 0)).unwrap();
            }
        }
        b.generator(BasisRef::new(1, 0)).unwrap();
        PoincareComplex::new(b.build().unwrap()).unwrap()
    }

    #[test]
    fn rp4_is_valid() {
        let rep = validate(&rp4());
        assert!(rep.passed(), "{rep}");
        assert!(rep.checked > 50);
    }

    #[test]
    fn tampered_sq1_is_caught() {
        let mut m = rp4();
        // Sq^1 x = x^2 becomes 0
        m.ring_mut().flip_sq_entry(1, 1, 0, 0);
        let rep = validate(&m);
        assert!(!rep.passed());
        assert!(rep.has_rule("square"));
        // Sq^1 x^2 = 0 becomes x^3
        let mut m = rp4();
        m.ring_mut().flip_sq_entry(1, 2, 0, 0);
        let rep = validate(&m);
        assert!(rep.has_rule("cartan") || rep.has_rule("adem"), "{rep}");
    }

    #[test]
    fn tampered_cup_is_caught() {
        let mut m = rp4();
        m.ring_mut().flip_cup_entry(BasisRef::new(1, 0), BasisRef::new(2, 0), 0);
        let rep = validate(&m);
        assert!(rep.has_rule("commutativity"), "{rep}");
    }

    #[test]
    fn missing_top_product_breaks_duality() {
        // F2[x, y]/(x^2, y^2) with the product x * y forgotten
        let mut b = RingBuilder::new(names(&[&["1"], &["x", "y"], &["xy"]]));
        b.generator(BasisRef::new(1, 0)).unwrap();
        b.generator(BasisRef::new(1, 1)).unwrap();
        b.generator(BasisRef::new(2, 0)).unwrap();
        let m = PoincareComplex::new(b.build().unwrap()).unwrap();
        let rep = validate(&m);
        assert!(rep.has_rule("duality"), "{rep}");
        assert!(!rep.has_rule("cartan"));
    }

    #[test]
    fn constructor_rejects_missing_fundamental_class() {
        let mut b = RingBuilder::new(names(&[&["1"], &["x", "y"]]));
        b.generator(BasisRef::new(1, 0)).unwrap();
        b.generator(BasisRef::new(1, 1)).unwrap();
        assert_eq!(PoincareComplex::new(b.build().unwrap()).unwrap_err(), PoincareError::NoFundamentalClass(2));
    }
}
