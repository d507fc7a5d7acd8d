//! Exact integer linear algebra: determinants, characteristic polynomials,
//! Smith normal form with transforms, and matrix powers.

mod charpoly;
mod matrix;
mod poly;
mod snf;

pub use charpoly::{char_poly, char_poly_with};
pub use matrix::{det_exact, mat_pow, IntMatrix};
pub use poly::IntPoly;
pub use snf::{smith_normal_form, smith_normal_form_with, SnfDecomposition};
