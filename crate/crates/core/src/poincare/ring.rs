//! Structure constants of a finite graded F2 algebra with a Steenrod action.
//!
//! Cup products are stored per degree pair `(p, q)` as a matrix whose row
//! `a * dim(q) + b` is the product of basis elements `a` and `b`. The square
//! `Sq^i` on degree `d` is a `dim(d + i) x dim(d)` matrix acting on columns.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use super::{ClassVector, PoincareError, TotalClass};
use crate::f2core::{F2Matrix, F2Vector};

/// A basis element, addressed by degree and position within that degree.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisRef {
    pub degree: usize,
    pub index: usize,
}

impl BasisRef {
    pub fn new(degree: usize, index: usize) -> Self {
        BasisRef { degree, index }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CohomologyRing {
    top: usize,
    names: Vec<Vec<String>>,
    cup: Vec<Vec<F2Matrix>>,
    sq: Vec<Vec<F2Matrix>>,
    generators: Vec<BasisRef>,
    formal: bool,
}

impl fmt::Debug for CohomologyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CohomologyRing")
            .field("top", &self.top)
            .field("dims", &self.dims())
            .field("generators", &self.generators)
            .field("formal", &self.formal)
            .finish_non_exhaustive()
    }
}

fn check_names(names: &[Vec<String>]) -> Result<(), PoincareError> {
    if names.is_empty() {
        return Err(PoincareError::Structure("no degrees given".into()));
    }
    let mut seen = HashSet::new();
    for (d, row) in names.iter().enumerate() {
        for n in row {
            if n.is_empty() || n.contains('+') || n.trim() != n || n == "0" {
                return Err(PoincareError::Structure(format!("basis name {n:?} in degree {d} is not a valid name")));
            }
            if !seen.insert(n.as_str()) {
                return Err(PoincareError::Structure(format!("duplicate basis name {n:?}")));
            }
        }
    }
    Ok(())
}

impl CohomologyRing {
    /// Assembles a ring from complete tables without checking any axiom.
    ///
    /// `cup[p][q]` must exist for `p + q <= top` and `sq[i][d]` for
    /// `i + d <= top`, with the shapes described in the module docs.
    pub fn from_tables(
        names: Vec<Vec<String>>,
        cup: Vec<Vec<F2Matrix>>,
        sq: Vec<Vec<F2Matrix>>,
        generators: Vec<BasisRef>,
        formal: bool,
    ) -> Result<Self, PoincareError> {
        check_names(&names)?;
        let top = names.len() - 1;
        let dim = |d: usize| names[d].len();
        let shape_err = |what: String| PoincareError::Structure(what);
        if cup.len() != top + 1 || sq.len() != top + 1 {
            return Err(shape_err("table count does not match the top degree".into()));
        }
        for p in 0..=top {
            if cup[p].len() != top + 1 - p {
                return Err(shape_err(format!("cup table for degree {p} has wrong length")));
            }
            for q in 0..=top - p {
                let m = &cup[p][q];
                if m.rows() != dim(p) * dim(q) || m.cols() != dim(p + q) {
                    return Err(shape_err(format!("cup block ({p}, {q}) has wrong shape")));
                }
            }
        }
        for i in 0..=top {
            if sq[i].len() != top + 1 - i {
                return Err(shape_err(format!("Sq^{i} table has wrong length")));
            }
            for d in 0..=top - i {
                let m = &sq[i][d];
                if m.rows() != dim(d + i) || m.cols() != dim(d) {
                    return Err(shape_err(format!("Sq^{i} on degree {d} has wrong shape")));
                }
            }
        }
        for g in &generators {
            if g.degree > top || g.index >= dim(g.degree) {
                return Err(shape_err(format!("generator {g:?} out of range")));
            }
        }
        Ok(CohomologyRing { top, names, cup, sq, generators, formal })
    }

    pub fn top_degree(&self) -> usize {
        self.top
    }

    /// Dimension in degree `d`; zero above the top degree.
    pub fn dim(&self, d: usize) -> usize {
        self.names.get(d).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.names.iter().map(Vec::len).sum()
    }

    pub fn names(&self, d: usize) -> &[String] {
        self.names.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn name(&self, b: BasisRef) -> &str {
        &self.names[b.degree][b.index]
    }

    pub fn basis(&self) -> impl Iterator<Item = BasisRef> + '_ {
        self.names.iter().enumerate().flat_map(|(d, row)| (0..row.len()).map(move |i| BasisRef::new(d, i)))
    }

    pub fn find(&self, name: &str) -> Option<BasisRef> {
        self.names
            .iter()
            .enumerate()
            .find_map(|(d, row)| row.iter().position(|n| n == name).map(|i| BasisRef::new(d, i)))
    }

    /// Multiplicative generators the Steenrod action was specified on.
    pub fn generators(&self) -> &[BasisRef] {
        &self.generators
    }

    /// Marks rings whose existence as a space is not claimed.
    pub fn is_formal(&self) -> bool {
        self.formal
    }

    /// Product of two basis elements; empty vector above the top degree.
    pub fn cup_basis(&self, a: BasisRef, b: BasisRef) -> F2Vector {
        let d = a.degree + b.degree;
        if d > self.top {
            return F2Vector::zeros(0);
        }
        self.cup[a.degree][b.degree].row(a.index * self.dim(b.degree) + b.index)
    }

    pub fn cup(&self, x: &ClassVector, y: &ClassVector) -> ClassVector {
        let d = x.degree + y.degree;
        let mut out = F2Vector::zeros(self.dim(d));
        if d <= self.top {
            let block = &self.cup[x.degree][y.degree];
            let qd = self.dim(y.degree);
            for a in x.coords.ones() {
                for b in y.coords.ones() {
                    out ^= &block.row(a * qd + b);
                }
            }
        }
        ClassVector::new(d, out)
    }

    /// Matrix of `Sq^i` from degree `d`, `None` when `d + i` exceeds the top.
    pub fn sq_matrix(&self, i: usize, d: usize) -> Option<&F2Matrix> {
        if d + i > self.top {
            None
        } else {
            Some(&self.sq[i][d])
        }
    }

    pub fn sq(&self, i: usize, x: &ClassVector) -> ClassVector {
        match self.sq_matrix(i, x.degree) {
            Some(m) => ClassVector::new(x.degree + i, m.mul_vec(&x.coords)),
            None => ClassVector::new(x.degree + i, F2Vector::zeros(0)),
        }
    }

    /// Total square `Sq(x) = sum_i Sq^i x`, graded.
    pub fn total_sq(&self, x: &ClassVector) -> Vec<ClassVector> {
        (0..=self.top.saturating_sub(x.degree)).map(|i| self.sq(i, x)).collect()
    }

    /// Flips one entry of `Sq^i` on degree `d`: the coefficient of basis
    /// `target` in `Sq^i(source)`. Used to inject faults.
    pub fn flip_sq_entry(&mut self, i: usize, d: usize, target: usize, source: usize) {
        self.sq[i][d].flip(target, source);
    }

    /// Flips the coefficient of basis `target` in `a * b` (one ordered entry only).
    pub fn flip_cup_entry(&mut self, a: BasisRef, b: BasisRef, target: usize) {
        let qd = self.dim(b.degree);
        self.cup[a.degree][b.degree].flip(a.index * qd + b.index, target);
    }

    /// Basis names joined by `+`, or `0`.
    pub fn format_class(&self, x: &ClassVector) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.coords.ones().map(|i| self.names[x.degree][i].as_str()).collect::<Vec<_>>().join(" + ")
    }

    pub fn format_total(&self, t: &TotalClass) -> String {
        let parts: Vec<String> = t.components.iter().filter(|c| !c.is_zero()).map(|c| self.format_class(c)).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Parses `name + name + ...` or `0` into a class of the given degree.
    pub fn parse_class(&self, degree: usize, text: &str) -> Result<ClassVector, PoincareError> {
        let mut coords = F2Vector::zeros(self.dim(degree));
        let text = text.trim();
        if text == "0" || text.is_empty() {
            return Ok(ClassVector::new(degree, coords));
        }
        for part in text.split('+') {
            let part = part.trim();
            let b =
                self.find(part).ok_or_else(|| PoincareError::Structure(format!("unknown basis element {part:?}")))?;
            if b.degree != degree {
                return Err(PoincareError::Structure(format!("{part:?} has degree {}, expected {degree}", b.degree)));
            }
            coords.flip(b.index);
        }
        Ok(ClassVector::new(degree, coords))
    }
}

/// Assembles a ring from a partial multiplication table and the Steenrod
/// action on generators, extending the action to every basis element with
/// the Cartan formula.
///
/// Products with the unit are filled in; a product given for `(a, b)` is
/// mirrored to `(b, a)` unless that order is given too. On a generator `g`,
/// `Sq^0 g = g` and `Sq^|g| g = g * g` unless explicitly overridden; other
/// unspecified squares are zero.
#[derive(Debug, Clone)]
pub struct RingBuilder {
    names: Vec<Vec<String>>,
    cup: HashMap<(BasisRef, BasisRef), F2Vector>,
    generators: Vec<BasisRef>,
    actions: BTreeMap<(BasisRef, usize), F2Vector>,
    formal: bool,
}

impl RingBuilder {
    pub fn new(names: Vec<Vec<String>>) -> Self {
        RingBuilder { names, cup: HashMap::new(), generators: Vec::new(), actions: BTreeMap::new(), formal: false }
    }

    fn dim(&self, d: usize) -> usize {
        self.names.get(d).map_or(0, Vec::len)
    }

    fn check_ref(&self, b: BasisRef) -> Result<(), PoincareError> {
        if b.index < self.dim(b.degree) {
            Ok(())
        } else {
            Err(PoincareError::Structure(format!("basis element {b:?} out of range")))
        }
    }

    pub fn cup(&mut self, a: BasisRef, b: BasisRef, product: F2Vector) -> Result<&mut Self, PoincareError> {
        self.check_ref(a)?;
        self.check_ref(b)?;
        let d = a.degree + b.degree;
        if d >= self.names.len() {
            return Err(PoincareError::Structure(format!("product of {a:?} and {b:?} lies above the top degree")));
        }
        if product.len() != self.dim(d) {
            return Err(PoincareError::Structure(format!("product of {a:?} and {b:?} has the wrong length")));
        }
        self.cup.insert((a, b), product);
        Ok(self)
    }

    pub fn generator(&mut self, g: BasisRef) -> Result<&mut Self, PoincareError> {
        self.check_ref(g)?;
        if g.degree == 0 {
            return Err(PoincareError::Structure("generators must have positive degree".into()));
        }
        if !self.generators.contains(&g) {
            self.generators.push(g);
        }
        Ok(self)
    }

    /// Sets `Sq^i g` for a generator `g`.
    pub fn action(&mut self, i: usize, g: BasisRef, image: F2Vector) -> Result<&mut Self, PoincareError> {
        self.generator(g)?;
        if image.len() != self.dim(g.degree + i) {
            return Err(PoincareError::Structure(format!("Sq^{i} of {g:?} has the wrong length")));
        }
        if g.degree + i >= self.names.len() {
            if image.is_zero() {
                return Ok(self);
            }
            return Err(PoincareError::Structure(format!("Sq^{i} of {g:?} lies above the top degree")));
        }
        self.actions.insert((g, i), image);
        Ok(self)
    }

    pub fn formal(&mut self, formal: bool) -> &mut Self {
        self.formal = formal;
        self
    }

    pub fn build(&self) -> Result<CohomologyRing, PoincareError> {
        check_names(&self.names)?;
        let top = self.names.len() - 1;
        if self.dim(0) != 1 {
            return Err(PoincareError::Disconnected(self.dim(0)));
        }
        let unit = BasisRef::new(0, 0);

        let mut cup: Vec<Vec<F2Matrix>> = Vec::with_capacity(top + 1);
        for p in 0..=top {
            let mut row = Vec::with_capacity(top + 1 - p);
            for q in 0..=top - p {
                let mut m = F2Matrix::zeros(self.dim(p) * self.dim(q), self.dim(p + q));
                for a in 0..self.dim(p) {
                    for b in 0..self.dim(q) {
                        let (ra, rb) = (BasisRef::new(p, a), BasisRef::new(q, b));
                        let r = a * self.dim(q) + b;
                        let product = if ra == unit {
                            Some(F2Vector::unit(self.dim(q), b))
                        } else if rb == unit {
                            Some(F2Vector::unit(self.dim(p), a))
                        } else {
                            self.cup.get(&(ra, rb)).or_else(|| self.cup.get(&(rb, ra))).cloned()
                        };
                        if let Some(v) = product {
                            m.set_row(r, &v);
                        }
                    }
                }
                row.push(m);
            }
            cup.push(row);
        }

        let sq = self.extend_action(top, &cup)?;
        CohomologyRing::from_tables(self.names.clone(), cup, sq, self.generators.clone(), self.formal)
    }

    fn extend_action(&self, top: usize, cup: &[Vec<F2Matrix>]) -> Result<Vec<Vec<F2Matrix>>, PoincareError> {
        let dim = |d: usize| self.dim(d);
        let cup_vec = |p: usize, u: &F2Vector, q: usize, v: &F2Vector| -> F2Vector {
            let mut out = F2Vector::zeros(dim(p + q));
            if p + q <= top {
                for a in u.ones() {
                    for b in v.ones() {
                        out ^= &cup[p][q].row(a * dim(q) + b);
                    }
                }
            }
            out
        };

        // images[d][j][i] = Sq^i of basis j in degree d, for i <= top - d
        let mut images: Vec<Vec<Vec<F2Vector>>> = Vec::with_capacity(top + 1);
        images.push(vec![(0..=top)
            .map(|i| if i == 0 { F2Vector::unit(1, 0) } else { F2Vector::zeros(dim(i)) })
            .collect()]);

        for d in 1..=top {
            let width = top - d + 1;
            // rows of a reduced echelon system: (vector, its squares)
            let mut pivots: Vec<(usize, F2Vector, Vec<F2Vector>)> = Vec::new();
            let mut offer = |mut v: F2Vector, mut imgs: Vec<F2Vector>| {
                for (bit, pv, pimgs) in pivots.iter() {
                    if v.get(*bit) {
                        v ^= pv;
                        for (x, y) in imgs.iter_mut().zip(pimgs) {
                            *x ^= y;
                        }
                    }
                }
                let Some(bit) = v.ones().next() else { return };
                for (_, pv, pimgs) in pivots.iter_mut() {
                    if pv.get(bit) {
                        *pv ^= &v;
                        for (x, y) in pimgs.iter_mut().zip(&imgs) {
                            *x ^= y;
                        }
                    }
                }
                pivots.push((bit, v, imgs));
            };

            for &g in self.generators.iter().filter(|g| g.degree == d) {
                let own = F2Vector::unit(dim(d), g.index);
                let imgs = (0..width)
                    .map(|i| {
                        if let Some(v) = self.actions.get(&(g, i)) {
                            v.clone()
                        } else if i == 0 {
                            own.clone()
                        } else if i == d {
                            cup_vec(d, &own, d, &own)
                        } else {
                            F2Vector::zeros(dim(d + i))
                        }
                    })
                    .collect();
                offer(own, imgs);
            }
            for &g in self.generators.iter().filter(|g| g.degree < d) {
                let e = g.degree;
                let gv = F2Vector::unit(dim(e), g.index);
                let g_sq: Vec<F2Vector> = (0..=top - e)
                    .map(|a| {
                        self.actions.get(&(g, a)).cloned().unwrap_or_else(|| {
                            if a == 0 {
                                gv.clone()
                            } else if a == e {
                                cup_vec(e, &gv, e, &gv)
                            } else {
                                F2Vector::zeros(dim(e + a))
                            }
                        })
                    })
                    .collect();
                for y in 0..dim(d - e) {
                    let yv = F2Vector::unit(dim(d - e), y);
                    let v = cup_vec(e, &gv, d - e, &yv);
                    if v.is_zero() {
                        continue;
                    }
                    let y_sq = &images[d - e][y];
                    let imgs = (0..width)
                        .map(|i| {
                            let mut acc = F2Vector::zeros(dim(d + i));
                            for a in 0..=i {
                                acc ^= &cup_vec(e + a, &g_sq[a], d - e + i - a, &y_sq[i - a]);
                            }
                            acc
                        })
                        .collect();
                    offer(v, imgs);
                }
            }

            if pivots.len() < dim(d) {
                return Err(PoincareError::NotGenerated { degree: d });
            }
            pivots.sort_by_key(|p| p.0);
            images.push(pivots.into_iter().map(|(_, _, imgs)| imgs).collect());
        }

        let mut sq = Vec::with_capacity(top + 1);
        for i in 0..=top {
            let mut row = Vec::with_capacity(top + 1 - i);
            for d in 0..=top - i {
                let cols: Vec<F2Vector> = images[d].iter().map(|imgs| imgs[i].clone()).collect();
                row.push(F2Matrix::from_columns(dim(d + i), &cols));
            }
            sq.push(row);
        }
        Ok(sq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(spec: &[&[&str]]) -> Vec<Vec<String>> {
        spec.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    }

    /// F2[x]/(x^4) with |x| = 1.
    fn rp3() -> CohomologyRing {
        let mut b = RingBuilder::new(names(&[&["1"], &["x"], &["x^2"], &["x^3"]]));
        let x = BasisRef::new(1, 0);
        let x2 = BasisRef::new(2, 0);
        b.cup(x, x, F2Vector::unit(1, 0)).unwrap();
        b.cup(x, x2, F2Vector::unit(1, 0)).unwrap();
        b.generator(x).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn cartan_extension_reproduces_binomial_action() {
        let r = rp3();
        let x2 = ClassVector::basis(&r, BasisRef::new(2, 0));
        // Sq^1 x^2 = 2 x^3 = 0
        assert!(r.sq(1, &x2).is_zero());
        let x = ClassVector::basis(&r, BasisRef::new(1, 0));
        assert_eq!(r.sq(1, &x), x2);
        assert_eq!(r.format_class(&r.sq(1, &x)), "x^2");
        assert!(r.sq(2, &x2).coords.is_empty());
    }

    #[test]
    fn unit_and_mirror_products() {
        let r = rp3();
        let x = BasisRef::new(1, 0);
        let x2 = BasisRef::new(2, 0);
        assert_eq!(r.cup_basis(x2, x), F2Vector::unit(1, 0));
        assert_eq!(r.cup_basis(BasisRef::new(0, 0), x2), F2Vector::unit(1, 0));
        assert_eq!(r.cup_basis(x2, x2).len(), 0);
    }

    #[test]
    fn builder_errors() {
        let mut b = RingBuilder::new(names(&[&["1"], &["x"], &["y"]]));
        b.generator(BasisRef::new(1, 0)).unwrap();
        // y is neither a generator nor a product
        assert_eq!(b.build().unwrap_err(), PoincareError::NotGenerated { degree: 2 });

        let b = RingBuilder::new(names(&[&["1", "e"], &["x"]]));
        assert_eq!(b.build().unwrap_err(), PoincareError::Disconnected(2));

        let b = RingBuilder::new(names(&[&["1"], &["x", "x"]]));
        assert!(matches!(b.build(), Err(PoincareError::Structure(_))));

        let mut b = RingBuilder::new(names(&[&["1"], &["x"]]));
        assert!(b.cup(BasisRef::new(1, 0), BasisRef::new(1, 0), F2Vector::zeros(0)).is_err());
        assert!(b.generator(BasisRef::new(0, 0)).is_err());
    }

    #[test]
    fn parse_and_format_classes() {
        let r = rp3();
        let c = r.parse_class(2, "x^2").unwrap();
        assert_eq!(r.format_class(&c), "x^2");
        assert!(r.parse_class(2, "0").unwrap().is_zero());
        assert!(r.parse_class(2, "x").is_err());
        assert!(r.parse_class(2, "z").is_err());
    }
}
