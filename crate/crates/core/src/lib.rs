//! Finite-field geometry toolkit for linear sets, Rédei-type point sets and
//! the projective codes they define.

pub mod codes;
pub mod equivalence;
pub mod families;
pub mod field;
pub mod geometry;
pub mod linsets;
pub mod pointsets;
pub mod qpoly;

pub use field::{FieldContext, Gf};
pub use qpoly::QPolynomial;
