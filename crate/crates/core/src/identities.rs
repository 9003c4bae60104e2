//! Exact checks of closed-form determinant factorizations: Toeplitz
//! windows of exponential sums, generalized Vandermonde determinants, the
//! constant Toeplitz determinant of a shifted polynomial, the Toeplitz
//! windows of cyclic resultants, and the ratio law those windows obey.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclic::{cyclic_sequence, resultant_from_roots, CheckMode};
use crate::error::{Error, Result};
use crate::exact_core::{integer, interpolate, powi, ExactMatrix, MonicPoly, Poly, Rational};
use crate::recurrence_lab::{toeplitz_det, toeplitz_matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Match {
    Exact,
    Negated,
    Mismatch,
}

/// A computed determinant next to its closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationWitness {
    pub lhs: Rational,
    pub rhs: Rational,
    pub verdict: Match,
}

impl FactorizationWitness {
    pub fn new(lhs: Rational, rhs: Rational) -> Self {
        let verdict = if lhs == rhs {
            Match::Exact
        } else if lhs == -rhs.clone() {
            Match::Negated
        } else {
            Match::Mismatch
        };
        FactorizationWitness { lhs, rhs, verdict }
    }

    pub fn is_exact(&self) -> bool {
        self.verdict == Match::Exact
    }
}

fn vandermonde_product(points: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            acc *= &points[i] - &points[j];
        }
    }
    acc
}

fn require_distinct_nonzero(values: &[Rational], what: &str) -> Result<()> {
    if values.iter().any(Zero::is_zero) {
        return Err(Error::Precondition(format!("{what} must be nonzero")));
    }
    let unique: HashSet<&Rational> = values.iter().collect();
    if unique.len() != values.len() {
        return Err(Error::Precondition(format!("{what} must be distinct")));
    }
    Ok(())
}

/// For `a_k = Σ c_i μ_i^k`, compares `det A_{ℓ,n}` with
/// `(−1)^{ℓ(ℓ−1)/2} ∏c_i (∏μ_i)^{n−ℓ+1} ∏_{i<j} (μ_i − μ_j)²`.
pub fn verify_toeplitz_factorization(
    coeffs: &[Rational],
    bases: &[Rational],
    n: i64,
) -> Result<FactorizationWitness> {
    let ell = coeffs.len();
    if ell == 0 || bases.len() != ell {
        return Err(Error::Precondition(format!(
            "need equally many coefficients and bases, got {} and {}",
            ell,
            bases.len()
        )));
    }
    if coeffs.iter().any(Zero::is_zero) {
        return Err(Error::Precondition("coefficients must be nonzero".into()));
    }
    require_distinct_nonzero(bases, "bases")?;
    let term = |k: i64| -> Rational {
        coeffs
            .iter()
            .zip(bases)
            .map(|(c, mu)| c * powi(mu, k).expect("nonzero base"))
            .sum()
    };
    let lhs = toeplitz_matrix(ell, n, term).determinant()?;
    let sign = if (ell * (ell - 1) / 2).is_multiple_of(2) {
        integer(1)
    } else {
        integer(-1)
    };
    let c_product: Rational = coeffs.iter().product();
    let mu_product: Rational = bases.iter().product();
    let vandermonde = vandermonde_product(bases);
    let rhs =
        sign * c_product * powi(&mu_product, n - ell as i64 + 1)? * &vandermonde * &vandermonde;
    Ok(FactorizationWitness::new(lhs, rhs))
}

/// `det(p_j(y_i))_{i,j=0..ℓ}` against `a_0⋯a_ℓ ∏_{i<j} (y_i − y_j)` for a
/// family with `deg p_j = ℓ − j` and leading coefficients `a_j`.
pub fn verify_generalized_vandermonde(
    leading: &[Rational],
    polys: &[Poly],
    ys: &[Rational],
) -> Result<FactorizationWitness> {
    let size = polys.len();
    if size == 0 || leading.len() != size || ys.len() != size {
        return Err(Error::Precondition(format!(
            "need ℓ+1 leading coefficients, polynomials and points, got {}, {} and {}",
            leading.len(),
            size,
            ys.len()
        )));
    }
    let ell = size - 1;
    for (j, (p, a)) in polys.iter().zip(leading).enumerate() {
        if p.degree() != Some(ell - j) {
            return Err(Error::Precondition(format!(
                "p_{j} must have degree {}, got {:?}",
                ell - j,
                p.degree()
            )));
        }
        if p.leading() != Some(a) {
            return Err(Error::Precondition(format!(
                "p_{j} does not have the stated leading coefficient"
            )));
        }
    }
    let m = ExactMatrix::from_fn(size, size, |i, j| polys[j].eval(&ys[i]));
    let lhs = m.determinant()?;
    let rhs = leading.iter().product::<Rational>() * vandermonde_product(ys);
    Ok(FactorizationWitness::new(lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantToeplitzReport {
    pub ell: usize,
    /// `Δ(x)` recovered by interpolation.
    pub delta: Poly,
    /// `ℓ!^{ℓ+1}`.
    pub expected: Rational,
}

impl ConstantToeplitzReport {
    pub fn holds(&self) -> bool {
        self.delta == Poly::constant(self.expected.clone())
    }
}

pub fn factorial_power(ell: usize) -> Rational {
    let factorial: BigInt = (1..=ell).map(BigInt::from).product();
    Rational::from_integer(num_traits::pow::Pow::pow(&factorial, ell as u32 + 1))
}

/// Recovers `Δ(x) = det(p(x − i + j))_{i,j=0..ℓ}` for monic `p` of degree ℓ
/// by evaluating at `x = 0, …, N` and interpolating. Entries have degree ℓ,
/// so `Δ` has degree at most `ℓ(ℓ+1)`; N is the larger of that bound and `ℓ³`.
pub fn verify_constant_toeplitz(p: &Poly) -> Result<ConstantToeplitzReport> {
    let Some(ell) = p.degree().filter(|&d| d >= 1) else {
        return Err(Error::Precondition(
            "polynomial must have degree at least 1".into(),
        ));
    };
    if !p.leading().is_some_and(One::is_one) {
        return Err(Error::Precondition("polynomial must be monic".into()));
    }
    let top = (ell * ell * ell).max(ell * (ell + 1)) as i64;
    let points = (0..=top)
        .map(|x| {
            let det = toeplitz_matrix(ell + 1, x, |k| p.eval(&integer(k))).determinant()?;
            Ok((integer(x), det))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConstantToeplitzReport {
        ell,
        delta: interpolate(&points)?,
        expected: factorial_power(ell),
    })
}

/// Subset products `λ_S`, indexed by bitmask.
fn subset_products(roots: &[Rational]) -> Vec<Rational> {
    (0..1usize << roots.len())
        .map(|mask| {
            roots
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, r)| r.clone())
                .product()
        })
        .collect()
}

fn require_generic_products(roots: &[Rational]) -> Result<Vec<Rational>> {
    if roots.iter().any(Zero::is_zero) {
        return Err(Error::Precondition("roots must be nonzero".into()));
    }
    let products = subset_products(roots);
    let unique: HashSet<&Rational> = products.iter().collect();
    if unique.len() != products.len() {
        return Err(Error::NonGeneric("coinciding subset products".into()));
    }
    Ok(products)
}

/// `det R_n` for the `2^d x 2^d` window `(r_{n−i+j})` against
/// `(λ_1⋯λ_d)^{2^{d−1}(n−2^{d−1})} ∏_{(S,T)} (λ_S − λ_T)^{2^{d−|S∪T|}}` over
/// ordered disjoint pairs, not both empty. Terms with index `<= 0` use the
/// continuation `∏ (λ_i^k − 1)`. The verdict records the sign relation
/// rather than asserting one.
pub fn verify_rn_factorization(roots: &[Rational], n: i64) -> Result<FactorizationWitness> {
    let d = roots.len();
    if d == 0 || d > 4 {
        return Err(Error::Precondition(format!("need 1 to 4 roots, got {d}")));
    }
    let products = require_generic_products(roots)?;
    let size = 1usize << d;
    let span = size as i64 - 1;
    let f = MonicPoly::from_roots(roots)?;
    let last = n + span;
    let positive = if last >= 1 {
        cyclic_sequence(&f, last as usize, CheckMode::Fast)?
            .terms()
            .to_vec()
    } else {
        Vec::new()
    };
    let mut terms = Vec::with_capacity(2 * size - 1);
    for k in n - span..=last {
        terms.push(if k >= 1 {
            positive[(k - 1) as usize].clone()
        } else {
            resultant_from_roots(roots, k)?
        });
    }
    let lhs =
        toeplitz_matrix(size, n, |k| terms[(k - (n - span)) as usize].clone()).determinant()?;

    let half = 1i64 << (d - 1);
    let root_product: Rational = roots.iter().product();
    let mut rhs = powi(&root_product, half * (n - half))?;
    for s in 0..size {
        for t in 0..size {
            if s & t != 0 || (s == 0 && t == 0) {
                continue;
            }
            let union = (s | t).count_ones() as usize;
            let factor = &products[s] - &products[t];
            rhs *= num_traits::pow::Pow::pow(&factor, 1u32 << (d - union));
        }
    }
    Ok(FactorizationWitness::new(lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetRatioReport {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl DetRatioReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `det R_n = (det R_{N+1})^{n−N} / (det R_N)^{n−N−1}` with `N = 2^d`,
/// all windows `(r_{n−i+j})` of size N over the cyclic resultants of `f`.
pub fn verify_det_ratio(f: &MonicPoly, n: i64) -> Result<DetRatioReport> {
    let d = f.degree();
    if d > 3 {
        return Err(Error::Precondition(format!(
            "degree must be at most 3, got {d}"
        )));
    }
    let size = 1usize << d;
    let big_n = size as i64;
    if n < big_n {
        return Err(Error::Precondition(format!(
            "n must be at least {big_n}, got {n}"
        )));
    }
    let top = n.max(big_n + 1) + big_n - 1;
    let seq = cyclic_sequence(f, top as usize, CheckMode::Fast)?;
    let base = toeplitz_det(&seq, size, big_n)?;
    if base.is_zero() {
        return Err(Error::NonGeneric(format!("det R_{big_n} vanishes")));
    }
    let next = toeplitz_det(&seq, size, big_n + 1)?;
    let lhs = toeplitz_det(&seq, size, n)?;
    let rhs = powi(&next, n - big_n)? / powi(&base, n - big_n - 1)?;
    Ok(DetRatioReport { lhs, rhs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCensus {
    pub d: usize,
    /// `M(d) = Σ_{S,T} max(|S|, |T|)`, the degree of `det R_{2^d}` in the roots.
    pub reduced_degree: u64,
    /// `d · 4^d`, the degree of every term of the naive expansion.
    pub naive_degree: u64,
}

impl DegreeCensus {
    pub fn ratio(&self) -> Rational {
        Rational::new(self.reduced_degree.into(), self.naive_degree.into())
    }
}

pub fn degree_census(d: usize) -> Result<DegreeCensus> {
    if !(1..=4).contains(&d) {
        return Err(Error::Precondition(format!(
            "d must be between 1 and 4, got {d}"
        )));
    }
    let subsets = 1u32 << d;
    let mut reduced = 0u64;
    for s in 0..subsets {
        for t in 0..subsets {
            reduced += u64::from(s.count_ones().max(t.count_ones()));
        }
    }
    Ok(DegreeCensus {
        d,
        reduced_degree: reduced,
        naive_degree: d as u64 * 4u64.pow(d as u32),
    })
}

/// Total degree of `det R_{2^d}` measured directly: with roots `ν_i · t`
/// the determinant is a polynomial in t, interpolated from `d·4^d + 1`
/// samples. `multipliers` must give distinct nonzero subset products.
pub fn observed_degree(multipliers: &[Rational]) -> Result<usize> {
    let d = multipliers.len();
    require_generic_products(multipliers)?;
    let size = 1usize << d;
    let samples = d * 4usize.pow(d as u32) + 1;
    let points = (1..=samples as i64)
        .map(|t| {
            let t = integer(t);
            let roots: Vec<Rational> = multipliers.iter().map(|nu| nu * &t).collect();
            let det = toeplitz_matrix(size, size as i64, |k| {
                resultant_from_roots(&roots, k).expect("positive index")
            })
            .determinant()?;
            Ok((t, det))
        })
        .collect::<Result<Vec<_>>>()?;
    let delta = interpolate(&points)?;
    delta
        .degree()
        .ok_or_else(|| Error::Degenerate("determinant vanishes identically".into()))
}
