//! Exact scalars, dense polynomials, matrices and the fraction-free
//! determinant kernel shared by every other module.

mod matrix;
mod poly;
mod rational;
mod resultant;

pub use matrix::ExactMatrix;
pub use poly::{interpolate, MonicPoly, Poly};
pub use rational::{format_rational, integer, parse_rational, powi, ratio, Rational};
pub use resultant::{sylvester_matrix, sylvester_resultant};
