//! Finite graded F2 algebras with a Steenrod action, Poincare duality, and
//! the characteristic classes computed from them.

mod classes;
mod complex;
pub mod json;
mod report;
mod ring;
mod theorems;

pub use classes::{
    apply_element, euler_characteristic, middle_form, orientability_order, sq, sw_classes, total_wu, wu_class,
    Orientability,
};
pub use complex::{validate, validate_ring, PoincareComplex};
pub use report::{Failure, Report};
pub use ring::{BasisRef, CohomologyRing, RingBuilder};
pub use theorems::{
    check_euler_theorem, check_lowest_class_agreement, check_middle_form, check_orientable_wu_equiv, check_wu_formula,
    check_wu_vanishing,
};

use thiserror::Error;

use crate::f2core::F2Vector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoincareError {
    #[error("degree 0 has dimension {0}; only connected complexes are supported")]
    Disconnected(usize),
    #[error("top degree has dimension {0}; a single fundamental class is required")]
    NoFundamentalClass(usize),
    #[error("duality pairing in degree {degree} is singular")]
    SingularPairing { degree: usize },
    #[error("degree {degree} is outside 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("dimension {0} is odd; the middle form needs an even dimension")]
    OddDimension(usize),
    #[error("Steenrod element is not homogeneous")]
    Inhomogeneous,
    #[error("degree {degree} is not spanned by the generators and their products")]
    NotGenerated { degree: usize },
    #[error("malformed ring data: {0}")]
    Structure(String),
    #[error("invalid JSON complex: {0}")]
    Json(String),
}

/// A cohomology class of a single degree, in the basis of that degree.
///
/// Zero classes compare equal regardless of degree.
#[derive(Clone, Debug, Eq)]
pub struct ClassVector {
    pub degree: usize,
    pub coords: F2Vector,
}

impl ClassVector {
    pub fn new(degree: usize, coords: F2Vector) -> Self {
        ClassVector { degree, coords }
    }

    pub fn zero(ring: &CohomologyRing, degree: usize) -> Self {
        ClassVector::new(degree, F2Vector::zeros(ring.dim(degree)))
    }

    pub fn basis(ring: &CohomologyRing, b: BasisRef) -> Self {
        ClassVector::new(b.degree, F2Vector::unit(ring.dim(b.degree), b.index))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

impl PartialEq for ClassVector {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.degree == other.degree && self.coords == other.coords
    }
}

/// A sum `1 + c_1 + ... + c_n` with one component per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalClass {
    pub components: Vec<ClassVector>,
}

impl TotalClass {
    pub fn component(&self, degree: usize) -> Option<&ClassVector> {
        self.components.get(degree)
    }

    /// Whether the class at `degree` vanishes; degrees past the top count as zero.
    pub fn vanishes(&self, degree: usize) -> bool {
        self.components.get(degree).is_none_or(ClassVector::is_zero)
    }

    /// True when every positive-degree component is zero.
    pub fn is_one(&self) -> bool {
        self.components.iter().skip(1).all(ClassVector::is_zero)
    }

    /// Smallest positive degree with a nonzero component.
    pub fn lowest_nonzero(&self) -> Option<usize> {
        (1..self.components.len()).find(|&d| !self.components[d].is_zero())
    }
}
