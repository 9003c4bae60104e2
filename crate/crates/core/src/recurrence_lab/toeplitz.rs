use num_traits::One;

use crate::cyclic::ExactSequence;
use crate::error::Result;
use crate::exact_core::{ExactMatrix, Rational};

/// `ell x ell` matrix with `(i, j)` entry `term(n − i + j)` (1-based i, j):
/// `a_n` on the diagonal, `a_{n+ell−1}` top right, `a_{n−ell+1}` bottom left.
pub fn toeplitz_matrix(ell: usize, n: i64, mut term: impl FnMut(i64) -> Rational) -> ExactMatrix {
    ExactMatrix::from_fn(ell, ell, |i, j| term(n - i as i64 + j as i64))
}

/// The window `A_{ell,n}` of a sequence.
pub fn toeplitz_window(seq: &ExactSequence, ell: usize, n: i64) -> Result<ExactMatrix> {
    let span = ell as i64 - 1;
    // report whichever end is missing
    seq.get(n - span)?;
    seq.get(n + span)?;
    Ok(toeplitz_matrix(ell, n, |k| {
        seq.get(k).expect("range checked").clone()
    }))
}

/// `det A_{ell,n}`, with the empty determinant equal to 1.
pub fn toeplitz_det(seq: &ExactSequence, ell: usize, n: i64) -> Result<Rational> {
    if ell == 0 {
        return Ok(Rational::one());
    }
    toeplitz_window(seq, ell, n)?.determinant()
}
