//! Truncated polynomial rings of the projective spaces, their products, and
//! the universal ring of Stiefel-Whitney classes.

mod expr;
mod power2;
mod tensor;
mod universal;

pub use expr::SpaceExpr;
pub use power2::{express_top_sw, SwAtom, SwExpression, SwTerm};
pub use tensor::{tensor_class, tensor_index, tensor_rings};
pub use universal::{build_universal, SwMonomial, SwPoly, UniversalSwRing, DEFAULT_BASIS_BOUND};

use rayon::prelude::*;
use thiserror::Error;

use crate::f2core::F2Vector;
use crate::poincare::{validate, BasisRef, CohomologyRing, PoincareComplex, PoincareError, Report, RingBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("Proj({d}, {e}) is not a projective space: need d in {{1, 2, 4, 8}} and e >= 1")]
    InvalidProj { d: u32, e: u32 },
    #[error("OP({e}) with e > 2 has no underlying space; pass the formal-ring flag to build it anyway")]
    FormalRequired { e: u32 },
    #[error("cannot parse space name: {0}")]
    Parse(String),
    #[error("universal ring: {0}")]
    Universal(String),
    #[error(transparent)]
    Ring(#[from] PoincareError),
    #[error("{name} failed validation:\n{report}")]
    Invalid { name: String, report: Box<Report> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Allow `OP(e)` for `e > 2`; the result is labeled formal.
    pub formal_op: bool,
    /// Run the full axiom and duality validation on the result.
    pub validate: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { formal_op: false, validate: true }
    }
}

/// Builds and validates the cohomology of `expr`.
pub fn build(expr: &SpaceExpr) -> Result<PoincareComplex, SpaceError> {
    build_with(expr, BuildOptions::default())
}

pub fn build_with(expr: &SpaceExpr, opts: BuildOptions) -> Result<PoincareComplex, SpaceError> {
    if let Some(&(_, e)) = expr.leaves().iter().find(|&&(d, e)| d == 8 && e > 2) {
        if !opts.formal_op {
            return Err(SpaceError::FormalRequired { e });
        }
    }
    let single = matches!(expr, SpaceExpr::Proj { .. });
    let mut next = 1;
    let ring = build_ring(expr, single, &mut next)?;
    let m = PoincareComplex::new(ring)?;
    if opts.validate {
        let report = validate(&m);
        if !report.passed() {
            return Err(SpaceError::Invalid { name: expr.to_string(), report: Box::new(report) });
        }
    }
    Ok(m)
}

fn build_ring(expr: &SpaceExpr, single: bool, next: &mut usize) -> Result<CohomologyRing, SpaceError> {
    match *expr {
        SpaceExpr::Proj { d, e } => {
            let g = if single { "x".to_string() } else { format!("x{next}") };
            *next += 1;
            truncated_polynomial(&g, d as usize, e as usize)
        }
        SpaceExpr::Product(ref a, ref b) => {
            let ra = build_ring(a, single, next)?;
            let rb = build_ring(b, single, next)?;
            Ok(tensor_rings(&ra, &rb)?)
        }
    }
}

fn power_name(g: &str, i: usize) -> String {
    match i {
        0 => "1".into(),
        1 => g.into(),
        _ => format!("{g}^{i}"),
    }
}

/// `F2[g]/(g^(e+1))` with `|g| = d`.
///
/// The whole action is forced. The ring vanishes outside multiples of `d`,
/// so `Sq^i` with `d` not dividing `i` lands in a zero group; `Sq^d g = g^2`
/// and the higher `Sq^i g` are zero by instability, and Cartan then gives
/// `Sq^(dj)(g^i) = C(i, j) g^(i+j)`. The vacancy is checked, not assumed.
fn truncated_polynomial(g: &str, d: usize, e: usize) -> Result<CohomologyRing, SpaceError> {
    let top = d * e;
    let names: Vec<Vec<String>> =
        (0..=top).map(|deg| if deg % d == 0 { vec![power_name(g, deg / d)] } else { Vec::new() }).collect();
    let mut b = RingBuilder::new(names);
    for i in 1..e {
        for j in 1..=e - i {
            b.cup(BasisRef::new(d * i, 0), BasisRef::new(d * j, 0), F2Vector::unit(1, 0))?;
        }
    }
    b.generator(BasisRef::new(d, 0))?;
    let formal = d == 8 && e > 2;
    b.formal(formal);
    let ring = b.build()?;
    assert_degree_vacancy(&ring, d)?;
    Ok(ring)
}

/// Every `Sq^i` with `d` not dividing `i` must have a zero target group
/// wherever its source is nonzero.
fn assert_degree_vacancy(r: &CohomologyRing, d: usize) -> Result<(), SpaceError> {
    let top = r.top_degree();
    for i in (1..=top).filter(|i| i % d != 0) {
        for deg in (0..=top - i).filter(|&deg| r.dim(deg) > 0) {
            if r.dim(deg + i) != 0 {
                return Err(
                    PoincareError::Structure(format!("Sq^{i} from degree {deg} has a nonzero target group")).into()
                );
            }
        }
    }
    Ok(())
}

/// Every `Proj` of dimension at most `max_dim` in family order (RP, CP, HP,
/// OP) then by exponent, followed by the unordered products of two of them
/// that fit. `OP(e)` stops at `e = 2`.
pub fn catalog_exprs(max_dim: u32) -> Vec<SpaceExpr> {
    catalog_exprs_with(max_dim, false)
}

/// As [`catalog_exprs`]; with `formal_op` the formal `OP(e)`, `e > 2`, are included too.
pub fn catalog_exprs_with(max_dim: u32, formal_op: bool) -> Vec<SpaceExpr> {
    let mut leaves = Vec::new();
    for d in [1u32, 2, 4, 8] {
        let emax = if d == 8 && !formal_op { 2 } else { u32::MAX };
        for e in (1..=emax).take_while(|e| d * e <= max_dim) {
            leaves.push(SpaceExpr::Proj { d, e });
        }
    }
    let mut out = leaves.clone();
    for (i, a) in leaves.iter().enumerate() {
        for b in &leaves[i..] {
            if a.dimension() + b.dimension() <= max_dim {
                out.push(SpaceExpr::product(a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Builds the catalog in parallel (order preserved). Each entry is validated;
/// a failure is a bug in the builders and panics with the report.
pub fn catalog(max_dim: u32) -> Vec<(String, PoincareComplex)> {
    catalog_with(max_dim, BuildOptions::default())
}

pub fn catalog_with(max_dim: u32, opts: BuildOptions) -> Vec<(String, PoincareComplex)> {
    catalog_exprs_with(max_dim, opts.formal_op)
        .par_iter()
        .map(|e| {
            let m = build_with(e, opts).unwrap_or_else(|err| panic!("catalog entry {e}: {err}"));
            (e.to_string(), m)
        })
        .collect()
}
