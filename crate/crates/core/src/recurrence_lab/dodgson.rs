use super::toeplitz::toeplitz_det;
use crate::cyclic::ExactSequence;
use crate::error::{Error, Result};
use crate::exact_core::Rational;

/// The five determinants of the Toeplitz condensation identity
/// `det A_{ℓ,m} · det A_{ℓ−2,m} = (det A_{ℓ−1,m})² − det A_{ℓ−1,m−1} · det A_{ℓ−1,m+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DodgsonWitness {
    pub full: Rational,
    pub inner: Rational,
    pub center: Rational,
    pub before: Rational,
    pub after: Rational,
}

impl DodgsonWitness {
    pub fn lhs(&self) -> Rational {
        &self.full * &self.inner
    }

    pub fn rhs(&self) -> Rational {
        &self.center * &self.center - &self.before * &self.after
    }

    pub fn holds(&self) -> bool {
        self.lhs() == self.rhs()
    }
}

/// Evaluates both sides at `(ell, m)`; `det A_{0,m} = 1`.
pub fn dodgson_check(seq: &ExactSequence, ell: usize, m: i64) -> Result<DodgsonWitness> {
    if ell < 2 {
        return Err(Error::Precondition(format!(
            "window size must be at least 2, got {ell}"
        )));
    }
    Ok(DodgsonWitness {
        full: toeplitz_det(seq, ell, m)?,
        inner: toeplitz_det(seq, ell - 2, m)?,
        center: toeplitz_det(seq, ell - 1, m)?,
        before: toeplitz_det(seq, ell - 1, m - 1)?,
        after: toeplitz_det(seq, ell - 1, m + 1)?,
    })
}
