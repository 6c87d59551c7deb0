//! JSON description of a complex.
//!
//! ```json
//! {
//!   "name": "RP(2)",
//!   "dimension": 2,
//!   "formal": false,
//!   "basis": [["1"], ["x"], ["x^2"]],
//!   "generators": ["x"],
//!   "cup": [["x", "x", "x^2"]],
//!   "steenrod": [[1, "x", "x^2"]]
//! }
//! ```
//!
//! `basis[d]` names the basis of degree `d`. Each `cup` triple `[a, b, c]`
//! gives `a * b = c`, where `c` is `0` or basis names joined by `+`;
//! products with the unit are implicit and an entry for `(a, b)` is mirrored
//! to `(b, a)` unless that is listed too. Each `steenrod` triple `[i, g, c]`
//! gives `Sq^i g = c` on a generator; the action on other classes follows
//! from the Cartan formula.

use serde::{Deserialize, Serialize};

use super::{ClassVector, CohomologyRing, PoincareComplex, PoincareError, RingBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    #[serde(default)]
    pub formal: bool,
    pub basis: Vec<Vec<String>>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub cup: Vec<(String, String, String)>,
    #[serde(default)]
    pub steenrod: Vec<(usize, String, String)>,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self, PoincareError> {
        serde_json::from_str(text).map_err(|e| PoincareError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex files always serialize")
    }

    /// Builds the ring (extending the action by Cartan) and checks the
    /// fundamental class. Axioms are not validated here.
    pub fn to_complex(&self) -> Result<PoincareComplex, PoincareError> {
        if self.basis.len() != self.dimension + 1 {
            return Err(PoincareError::Json(format!(
                "dimension {} but {} basis degrees",
                self.dimension,
                self.basis.len()
            )));
        }
        let mut builder = RingBuilder::new(self.basis.clone());
        // a skeleton ring only to resolve names and expressions
        let lookup = CohomologyRing::from_tables(
            self.basis.clone(),
            skeleton_cup(&self.basis),
            skeleton_sq(&self.basis),
            Vec::new(),
            self.formal,
        )?;
        let find = |n: &str| lookup.find(n).ok_or_else(|| PoincareError::Json(format!("unknown basis element {n:?}")));
        for g in &self.generators {
            builder.generator(find(g)?)?;
        }
        for (a, b, c) in &self.cup {
            let (ra, rb) = (find(a)?, find(b)?);
            let d = ra.degree + rb.degree;
            if d > self.dimension {
                return Err(PoincareError::Json(format!("{a} * {b} lies above the top degree")));
            }
            let product = lookup.parse_class(d, c)?;
            builder.cup(ra, rb, product.coords)?;
        }
        for (i, g, c) in &self.steenrod {
            let rg = find(g)?;
            if !self.generators.contains(g) {
                return Err(PoincareError::Json(format!("Sq^{i} given on {g:?}, which is not a generator")));
            }
            let d = rg.degree + i;
            let image = if d > self.dimension {
                let z = lookup.parse_class(d, c)?;
                if !z.is_zero() {
                    return Err(PoincareError::Json(format!("Sq^{i} {g} lies above the top degree")));
                }
                z
            } else {
                lookup.parse_class(d, c)?
            };
            builder.action(*i, rg, image.coords)?;
        }
        builder.formal(self.formal);
        PoincareComplex::new(builder.build()?)
    }

    /// Describes `m` by its full product table and the action on its generators.
    pub fn from_complex(m: &PoincareComplex, name: Option<&str>) -> Self {
        let r = m.ring();
        let top = r.top_degree();
        let basis: Vec<Vec<String>> = (0..=top).map(|d| r.names(d).to_vec()).collect();
        let mut cup = Vec::new();
        for x in r.basis().filter(|b| b.degree > 0) {
            for y in r.basis().filter(|b| b.degree > 0) {
                if x.degree + y.degree > top {
                    continue;
                }
                let v = ClassVector::new(x.degree + y.degree, r.cup_basis(x, y));
                if !v.is_zero() {
                    cup.push((r.name(x).to_string(), r.name(y).to_string(), r.format_class(&v)));
                }
            }
        }
        let mut steenrod = Vec::new();
        for &g in r.generators() {
            let gv = ClassVector::basis(r, g);
            for i in 1..=top - g.degree {
                let s = r.sq(i, &gv);
                if !s.is_zero() {
                    steenrod.push((i, r.name(g).to_string(), r.format_class(&s)));
                }
            }
        }
        ComplexFile {
            name: name.map(str::to_string),
            dimension: top,
            formal: r.is_formal(),
            basis,
            generators: r.generators().iter().map(|&g| r.name(g).to_string()).collect(),
            cup,
            steenrod,
        }
    }
}

fn skeleton_cup(basis: &[Vec<String>]) -> Vec<Vec<crate::f2core::F2Matrix>> {
    let top = basis.len() - 1;
    (0..=top)
        .map(|p| {
            (0..=top - p)
                .map(|q| crate::f2core::F2Matrix::zeros(basis[p].len() * basis[q].len(), basis[p + q].len()))
                .collect()
        })
        .collect()
}

fn skeleton_sq(basis: &[Vec<String>]) -> Vec<Vec<crate::f2core::F2Matrix>> {
    let top = basis.len() - 1;
    (0..=top)
        .map(|i| (0..=top - i).map(|d| crate::f2core::F2Matrix::zeros(basis[d + i].len(), basis[d].len())).collect())
        .collect()
}

/// Parses and builds a complex from JSON text.
pub fn load_complex(text: &str) -> Result<PoincareComplex, PoincareError> {
    ComplexFile::parse(text)?.to_complex()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poincare::validate;

    const RP2: &str = r#"{
        "name": "RP(2)",
        "dimension": 2,
        "basis": [["1"], ["x"], ["x^2"]],
        "generators": ["x"],
        "cup": [["x", "x", "x^2"]],
        "steenrod": [[1, "x", "x^2"]]
    }"#;

    #[test]
    fn loads_rp2() {
        let m = load_complex(RP2).unwrap();
        assert_eq!(m.ring().dims(), vec![1, 1, 1]);
        assert!(validate(&m).passed());
        let f = ComplexFile::from_complex(&m, Some("RP(2)"));
        assert_eq!(f, ComplexFile::parse(RP2).unwrap());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(load_complex("{"), Err(PoincareError::Json(_))));
        let unknown = RP2.replace(r#"["x", "x", "x^2"]"#, r#"["x", "y", "x^2"]"#);
        assert!(load_complex(&unknown).is_err());
        let wrong_dim = RP2.replace(r#""dimension": 2"#, r#""dimension": 3"#);
        assert!(load_complex(&wrong_dim).is_err());
        let not_generator = RP2.replace(r#"[1, "x", "x^2"]"#, r#"[1, "x^2", "0"]"#);
        assert!(load_complex(&not_generator).is_err());
    }

    #[test]
    fn tampered_action_loads_but_fails_validation() {
        // Sq^1 x = 0 contradicts Sq^1 x = x * x
        let text = RP2.replace(r#"[1, "x", "x^2"]"#, r#"[1, "x", "0"]"#);
        let m = load_complex(&text).unwrap();
        let rep = validate(&m);
        assert!(rep.has_rule("square"), "{rep}");
    }
}
