//! Exact computations in the mod-2 Steenrod algebra and on finite Poincare
//! complexes: Adem normalization, decompositions of single squares, Wu and
//! Stiefel-Whitney classes, k-orientability and Euler characteristic parity.

pub mod cli;
pub mod f2core;
pub mod poincare;
pub mod spaces;
pub mod steenrod;
