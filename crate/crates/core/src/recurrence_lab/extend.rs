use num_traits::Zero;

use super::toeplitz::{toeplitz_det, toeplitz_matrix};
use crate::cyclic::ExactSequence;
use crate::error::{Error, Result};
use crate::exact_core::Rational;

/// Appends `count` terms, each the unique value that makes the newest
/// `(ell+1) x (ell+1)` window singular.
///
/// The unknown `a_t` sits alone in the top-right corner of `A_{ell+1,t−ell}`.
/// Expanding along the top row, the determinant is
/// `(−1)^ell · det A_{ell,t−ell−1} · a_t + rest`, where `rest` is the
/// determinant with the corner set to zero; the cofactor must not vanish.
pub fn extend_sequence(prefix: &ExactSequence, ell: usize, count: usize) -> Result<ExactSequence> {
    if ell == 0 {
        return Err(Error::Precondition("window order must be positive".into()));
    }
    let needed = 2 * ell;
    if prefix.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            got: prefix.len(),
        });
    }
    let mut seq = prefix.clone();
    let span = ell as i64;
    for _ in 0..count {
        let target = seq.last() + 1;
        let n = target - span;
        let minor = toeplitz_det(&seq, ell, n - 1)?;
        if minor.is_zero() {
            return Err(Error::SingularCofactor { index: target });
        }
        let cofactor = if ell.is_multiple_of(2) { minor } else { -minor };
        let with_zero_corner = toeplitz_matrix(ell + 1, n, |k| {
            if k == target {
                Rational::zero()
            } else {
                seq.get(k).expect("window lies inside the prefix").clone()
            }
        });
        let rest = with_zero_corner.determinant()?;
        seq.push(-rest / cofactor);
    }
    Ok(seq)
}
