use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclic::ExactSequence;
use crate::error::{Error, Result};
use crate::exact_core::{format_rational, ExactMatrix, Rational};

/// Surplus windows demanded beyond the number of unknown coefficients.
const SURPLUS_WINDOWS: usize = 4;

/// Polynomial `P(x_1, …, x_L)` vanishing on windows `(a_n, …, a_{n+L−1})`.
/// Terms are kept in descending graded-lex order, leading term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRelation {
    window: usize,
    total_degree: usize,
    terms: Vec<(Vec<u32>, Rational)>,
}

fn grlex_key(e: &[u32]) -> (u32, &[u32]) {
    (e.iter().sum(), e)
}

impl PolyRelation {
    pub fn new(window: usize, terms: Vec<(Vec<u32>, Rational)>) -> Result<Self> {
        if window == 0 {
            return Err(Error::Precondition("window must be positive".into()));
        }
        let mut seen = HashSet::new();
        for (e, _) in &terms {
            if e.len() != window {
                return Err(Error::Precondition(format!(
                    "exponent vector {e:?} does not have length {window}"
                )));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::Precondition(format!("repeated monomial {e:?}")));
            }
        }
        let mut terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Err(Error::Precondition(
                "relation has no nonzero coefficient".into(),
            ));
        }
        terms.sort_by(|a, b| grlex_key(&b.0).cmp(&grlex_key(&a.0)));
        let total_degree = terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0);
        Ok(PolyRelation {
            window,
            total_degree,
            terms,
        })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn total_degree(&self) -> usize {
        self.total_degree
    }

    pub fn terms(&self) -> &[(Vec<u32>, Rational)] {
        &self.terms
    }

    pub fn leading(&self) -> &(Vec<u32>, Rational) {
        &self.terms[0]
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e == exponents)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| c * monomial_value(e, point))
            .sum()
    }

    /// `c · P` for a nonzero rational c.
    pub fn scaled(&self, factor: &Rational) -> Self {
        PolyRelation {
            window: self.window,
            total_degree: self.total_degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    /// Same zero set up to a nonzero constant factor.
    pub fn is_proportional_to(&self, other: &PolyRelation) -> bool {
        if self.window != other.window || self.terms.len() != other.terms.len() {
            return false;
        }
        let factor = &other.leading().1 / &self.leading().1;
        self.scaled(&factor) == *other
    }
}

impl fmt::Display for PolyRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{p}", i + 1)
                    }
                })
                .collect();
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if vars.is_empty() {
                write!(f, "{}", format_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&magnitude), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

fn monomial_value(exponents: &[u32], point: &[Rational]) -> Rational {
    exponents
        .iter()
        .zip(point)
        .filter(|(&p, _)| p > 0)
        .map(|(&p, x)| num_traits::pow::Pow::pow(x, p))
        .product()
}

/// Exponent vectors of every monomial of total degree `<= max_degree` in
/// `vars` variables, ascending in graded-lex order (`x_1 > x_2 > …`).
pub fn monomials(vars: usize, max_degree: usize) -> Vec<Vec<u32>> {
    fn fill(prefix: &mut Vec<u32>, vars: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == vars {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for p in 0..=remaining {
            prefix.push(p);
            fill(prefix, vars, remaining - p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for degree in 0..=max_degree as u32 {
        // lexicographically ascending within the degree
        fill(&mut Vec::new(), vars, degree, &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVerdict {
    pub windows_checked: usize,
    /// Start index n of every window where P does not vanish.
    pub violations: Vec<i64>,
}

impl PolyVerdict {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact evaluation of `P` on every window of `seq`.
pub fn verify_poly_relation(relation: &PolyRelation, seq: &ExactSequence) -> Result<PolyVerdict> {
    let l = relation.window();
    if seq.len() < l {
        return Err(Error::InsufficientData {
            needed: l,
            got: seq.len(),
        });
    }
    let terms = seq.terms();
    let mut violations = Vec::new();
    for (offset, window) in terms.windows(l).enumerate() {
        if !relation.eval(window).is_zero() {
            violations.push(seq.start() + offset as i64);
        }
    }
    Ok(PolyVerdict {
        windows_checked: terms.len() + 1 - l,
        violations,
    })
}

/// Rescales to coprime integer coefficients with a positive leading one.
fn normalize(coeffs: &mut [Rational], leading: usize) {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let flip = ints[leading].is_negative();
    for (c, v) in coeffs.iter_mut().zip(ints) {
        let v = v / &gcd;
        *c = Rational::from_integer(if flip { -v } else { v });
    }
}

/// Searches for `P` of total degree `<= degree` vanishing on every
/// length-`window` window of `seq`, as a kernel vector of the matrix of
/// monomial values. Among kernel basis vectors the one with the largest
/// leading monomial is returned, with coprime integer coefficients. The
/// search is bounded: `None` says nothing about higher degrees.
pub fn find_polynomial_recurrence(
    seq: &ExactSequence,
    window: usize,
    degree: usize,
) -> Result<Option<PolyRelation>> {
    if window == 0 || degree == 0 {
        return Err(Error::Precondition(
            "window and degree must be positive".into(),
        ));
    }
    let mons = monomials(window, degree);
    let needed = mons.len() + SURPLUS_WINDOWS;
    let available = (seq.len() + 1).saturating_sub(window);
    if available < needed {
        return Err(Error::InsufficientWindows {
            needed,
            got: available,
        });
    }
    let rows: Vec<Vec<Rational>> = seq
        .terms()
        .windows(window)
        .map(|w| mons.iter().map(|e| monomial_value(e, w)).collect())
        .collect();
    let basis = ExactMatrix::from_rows(rows)?.nullspace();
    let Some(mut v) = basis.into_iter().last() else {
        return Ok(None);
    };
    let leading = v
        .iter()
        .rposition(|c| !c.is_zero())
        .expect("kernel vectors are nonzero");
    normalize(&mut v, leading);
    let relation = PolyRelation::new(window, mons.into_iter().zip(v).collect())?;
    let verdict = verify_poly_relation(&relation, seq)?;
    if !verdict.holds() {
        return Err(Error::Degenerate(format!(
            "kernel relation fails re-verification at {:?}",
            verdict.violations
        )));
    }
    Ok(Some(relation))
}
