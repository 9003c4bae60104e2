use std::fmt;

use num_traits::{One, Zero};

use super::matrix::ExactMatrix;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial with exact coefficients, highest degree
/// first. Leading zeros are trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let first = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(coeffs.len());
        Poly {
            coeffs: coeffs[first..].to_vec(),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::integer(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x^m - 1`.
    pub fn cyclic(m: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); m + 1];
        coeffs[0] = Rational::one();
        coeffs[m] = -Rational::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Coefficient of `x^power`.
    pub fn coeff(&self, power: usize) -> Rational {
        match self.degree() {
            Some(d) if power <= d => self.coeffs[d - power].clone(),
            _ => Rational::zero(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .rev()
            .map(|power| self.coeff(power) + other.coeff(power))
            .collect();
        Poly::new(out)
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let joined: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        if joined.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", joined.join(","))
        }
    }
}

/// Monic polynomial of degree at least one, optionally carrying its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicPoly {
    poly: Poly,
    roots: Option<Vec<Rational>>,
}

impl MonicPoly {
    /// Coefficients highest degree first; the first must be exactly 1.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Precondition(
                "monic polynomial needs degree >= 1".into(),
            ));
        }
        if !coeffs[0].is_one() {
            return Err(Error::Precondition(format!(
                "leading coefficient must be 1, got {}",
                format_rational(&coeffs[0])
            )));
        }
        Ok(MonicPoly {
            poly: Poly::new(coeffs),
            roots: None,
        })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| super::integer(c)).collect())
    }

    /// `∏ (x − λ_i)`, keeping the roots.
    pub fn from_roots(roots: &[Rational]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::Precondition("at least one root required".into()));
        }
        let poly = roots
            .iter()
            .fold(Poly::constant(Rational::one()), |acc, r| {
                acc.mul(&Poly::new(vec![Rational::one(), -r.clone()]))
            });
        Ok(MonicPoly {
            poly,
            roots: Some(roots.to_vec()),
        })
    }

    /// Attaches roots after checking that they expand to these coefficients.
    pub fn with_roots(self, roots: &[Rational]) -> Result<Self> {
        let expanded = Self::from_roots(roots)?;
        if expanded.poly != self.poly {
            return Err(Error::Precondition(format!(
                "roots expand to {} but coefficients are {}",
                expanded.poly, self.poly
            )));
        }
        Ok(expanded)
    }

    pub fn degree(&self) -> usize {
        self.poly.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.poly.coeffs
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn roots(&self) -> Option<&[Rational]> {
        self.roots.as_deref()
    }

    /// Companion matrix: ones on the subdiagonal, last column `−c_d, …, −c_1`.
    /// Its characteristic polynomial is `self`.
    pub fn companion(&self) -> ExactMatrix {
        let d = self.degree();
        let mut m = ExactMatrix::zeros(d, d);
        for i in 1..d {
            m.set(i, i - 1, Rational::one());
        }
        for i in 0..d {
            // row i of the last column holds −(coefficient of x^i)
            m.set(i, d - 1, -self.poly.coeff(i));
        }
        m
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Newton interpolation through `(x_i, y_i)` with distinct abscissae.
pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Poly> {
    let n = points.len();
    let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
    let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = xs[i] - xs[i - level];
            if dx.is_zero() {
                return Err(Error::Precondition(
                    "interpolation nodes must be distinct".into(),
                ));
            }
            table[i] = (&table[i] - &table[i - 1]) / dx;
        }
    }
    // Horner on the Newton form, innermost first.
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        let factor = Poly::new(vec![Rational::one(), -xs[i].clone()]);
        acc = acc.mul(&factor).add(&Poly::constant(table[i].clone()));
    }
    Ok(acc)
}
