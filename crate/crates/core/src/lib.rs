//! Exact cyclic resultants `r_m = Res(f, x^m − 1)` of monic polynomials,
//! Toeplitz-determinant recurrence tools for the sequences they form,
//! checkers for the determinant factorizations behind them, and
//! closed-form reconstruction of low-degree polynomials from a few terms.
//!
//! Everything is computed over the rationals with no rounding anywhere.

pub mod cli;
pub mod cyclic;
pub mod error;
pub mod exact_core;
pub mod identities;
pub mod reconstruct;
pub mod recurrence_lab;
pub mod sampling;

pub use cyclic::{
    cyclic_resultant, cyclic_resultant_oracle, cyclic_sequence, CheckMode, ExactSequence,
};
pub use error::{Error, Result};
pub use exact_core::{ExactMatrix, MonicPoly, Poly, Rational};
