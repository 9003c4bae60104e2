use num_traits::One;

use super::matrix::ExactMatrix;
use super::poly::Poly;
use super::rational::{powi, Rational};
use crate::error::{Error, Result};

/// The `(m+n) x (m+n)` Sylvester matrix of `f` (degree m) and `g`
/// (degree n): n shifted rows of f's coefficients followed by m shifted
/// rows of g's.
pub fn sylvester_matrix(f: &Poly, g: &Poly) -> Result<ExactMatrix> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(Error::UndefinedResultant);
    };
    let size = m + n;
    if size == 0 {
        return Err(Error::Precondition(
            "Sylvester matrix of two constants is empty".into(),
        ));
    }
    let mut s = ExactMatrix::zeros(size, size);
    for row in 0..n {
        for (k, c) in f.coeffs().iter().enumerate() {
            s.set(row, row + k, c.clone());
        }
    }
    for row in 0..m {
        for (k, c) in g.coeffs().iter().enumerate() {
            s.set(n + row, row + k, c.clone());
        }
    }
    Ok(s)
}

/// `Res(f, g)` as the Sylvester determinant. For monic f this is
/// `∏ g(λ_i)` over the roots of f.
pub fn sylvester_resultant(f: &Poly, g: &Poly) -> Result<Rational> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(Error::UndefinedResultant);
    };
    match (m, n) {
        (0, 0) => Ok(Rational::one()),
        (0, _) => powi(&f.coeffs()[0], n as i64),
        (_, 0) => powi(&g.coeffs()[0], m as i64),
        _ => sylvester_matrix(f, g)?.determinant(),
    }
}
