//! Recovering monic quadratics and cubics from their leading cyclic
//! resultants, and the explicit short polynomial recurrences satisfied by
//! the resultants of linear and quadratic polynomials.

use num_traits::{One, Zero};

use crate::cyclic::{cyclic_sequence, CheckMode, ExactSequence};
use crate::error::{Error, Result};
use crate::exact_core::{integer, MonicPoly, Rational};
use crate::recurrence_lab::{extend_sequence, PolyRelation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionResult {
    pub degree: usize,
    /// Non-leading coefficients, highest degree first: `(a, b)` for
    /// `x² + ax + b`, `(a, b, c)` for `x³ + ax² + bx + c`.
    pub coefficients: Vec<Rational>,
    /// Regenerated resultants reproduce the inputs exactly.
    pub residual_ok: bool,
}

impl ReconstructionResult {
    pub fn poly(&self) -> MonicPoly {
        let mut coeffs = vec![Rational::one()];
        coeffs.extend(self.coefficients.iter().cloned());
        MonicPoly::new(coeffs).expect("leading coefficient is one")
    }
}

fn residual(coefficients: &[Rational], inputs: &[Rational]) -> Result<bool> {
    let mut coeffs = vec![Rational::one()];
    coeffs.extend_from_slice(coefficients);
    let f = MonicPoly::new(coeffs)?;
    Ok(cyclic_sequence(&f, inputs.len(), CheckMode::Fast)?.terms() == inputs)
}

/// `a = (r_1² − r_2)/(2r_1)`, `b = (r_1² − 2r_1 + r_2)/(2r_1)`.
pub fn invert_quadratic(r1: &Rational, r2: &Rational) -> Result<ReconstructionResult> {
    if r1.is_zero() {
        return Err(Error::Degenerate("r_1 vanishes".into()));
    }
    let two_r1 = integer(2) * r1;
    let r1_sq = r1 * r1;
    let a = (&r1_sq - r2) / &two_r1;
    let b = (&r1_sq - integer(2) * r1 + r2) / &two_r1;
    let coefficients = vec![a, b];
    let residual_ok = residual(&coefficients, &[r1.clone(), r2.clone()])?;
    Ok(ReconstructionResult {
        degree: 2,
        coefficients,
        residual_ok,
    })
}

/// Closed-form inversion for `x³ + ax² + bx + c` from `r_1, …, r_4`.
pub fn invert_cubic(r: [&Rational; 4]) -> Result<ReconstructionResult> {
    let [r1, r2, r3, r4] = r;
    if r1.is_zero() {
        return Err(Error::Degenerate("r_1 vanishes".into()));
    }
    if r2.is_zero() {
        return Err(Error::Degenerate("r_2 vanishes".into()));
    }
    let r1_2 = r1 * r1;
    let r1_3 = &r1_2 * r1;
    let r1_4 = &r1_3 * r1;
    let r2_2 = r2 * r2;
    let r2_3 = &r2_2 * r2;
    let denom = integer(24) * r2 * &r1_2;
    // shared tail: −3r_2³ + r_2r_1⁴ + 8r_2r_1r_3 − 6r_1²r_4
    let tail =
        -integer(3) * &r2_3 + r2 * &r1_4 + integer(8) * r2 * r1 * r3 - integer(6) * &r1_2 * r4;
    let a = (-integer(12) * r2 * &r1_3 - integer(12) * r1 * &r2_2 - &tail) / &denom;
    let b = (-&r1_2 - integer(2) * r1 + r2) / (integer(2) * r1);
    let c = tail / &denom;
    let coefficients = vec![a, b, c];
    let residual_ok = residual(
        &coefficients,
        &[r1.clone(), r2.clone(), r3.clone(), r4.clone()],
    )?;
    Ok(ReconstructionResult {
        degree: 3,
        coefficients,
        residual_ok,
    })
}

/// Outcome of checking a recurrence at each position of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceCheck {
    pub positions_checked: usize,
    pub first_failure: Option<i64>,
}

impl RecurrenceCheck {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `r_{n+1} = −a·r_n − a − 1` for the resultants of `x + a`.
pub fn check_d1_recurrence(a: &Rational, seq: &ExactSequence) -> RecurrenceCheck {
    let terms = seq.terms();
    let first_failure = terms
        .windows(2)
        .position(|w| w[1] != -(a * &w[0]) - a - Rational::one())
        .map(|offset| seq.start() + offset as i64);
    RecurrenceCheck {
        positions_checked: terms.len().saturating_sub(1),
        first_failure,
    }
}

/// Both sides of the length-3 recurrence for the resultants of
/// `x² + ax + b`, evaluated at `(r_n, r_{n+1}, r_{n+2})`.
pub fn d2_recurrence_sides(a: &Rational, b: &Rational, r: [&Rational; 3]) -> (Rational, Rational) {
    let [r0, r1, r2] = r;
    let one = Rational::one();
    let s = a + b + &one; // a + b + 1
    let t = a - b - &one; // a − b − 1
    let u = a - integer(2) * b; // a − 2b
    let v = a - integer(2); // a − 2
    let lhs = &s * (&v * r2 + a * &t * r1 + &u * b * r0 - &t * &s);
    let rhs = -(r2 * r2) - &u * r1 * r2 + a * b * r0 * r2 + &t * b * r1 * r1
        - &v * b * b * r0 * r1
        - b * b * b * r0 * r0;
    (lhs, rhs)
}

pub fn check_d2_recurrence(a: &Rational, b: &Rational, seq: &ExactSequence) -> RecurrenceCheck {
    let terms = seq.terms();
    let first_failure = terms
        .windows(3)
        .position(|w| {
            let (lhs, rhs) = d2_recurrence_sides(a, b, [&w[0], &w[1], &w[2]]);
            lhs != rhs
        })
        .map(|offset| seq.start() + offset as i64);
    RecurrenceCheck {
        positions_checked: terms.len().saturating_sub(2),
        first_failure,
    }
}

/// `x_2 + a·x_1 + a + 1`.
pub fn d1_relation(a: &Rational) -> PolyRelation {
    PolyRelation::new(
        2,
        vec![
            (vec![0, 1], Rational::one()),
            (vec![1, 0], a.clone()),
            (vec![0, 0], a + Rational::one()),
        ],
    )
    .expect("x_2 has coefficient one")
}

/// The quadratic recurrence as `lhs − rhs` in `x_1 = r_n, x_2 = r_{n+1}, x_3 = r_{n+2}`.
pub fn d2_relation(a: &Rational, b: &Rational) -> PolyRelation {
    let one = Rational::one();
    let s = a + b + &one;
    let t = a - b - &one;
    let u = a - integer(2) * b;
    let v = a - integer(2);
    let term = |e: [u32; 3], c: Rational| (e.to_vec(), c);
    PolyRelation::new(
        3,
        vec![
            term([0, 0, 2], one.clone()),
            term([0, 1, 1], u.clone()),
            term([1, 0, 1], -(a * b)),
            term([0, 2, 0], -(&t * b)),
            term([1, 1, 0], &v * b * b),
            term([2, 0, 0], b * b * b),
            term([0, 0, 1], &s * &v),
            term([0, 1, 0], &s * a * &t),
            term([1, 0, 0], &s * &u * b),
            term([0, 0, 0], -(&s * &s * &t)),
        ],
    )
    .expect("x_3² has coefficient one")
}

/// The extension step of the pipeline: the term after the prefix as
/// forced by vanishing Toeplitz determinants, next to the term the
/// recovered polynomial produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCheck {
    pub index: i64,
    pub extended: Rational,
    pub regenerated: Rational,
}

impl ExtensionCheck {
    pub fn matches(&self) -> bool {
        self.extended == self.regenerated
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineResult {
    pub reconstruction: ReconstructionResult,
    /// Present when the prefix holds at least `2^{d+1}` terms.
    pub extension: Option<ExtensionCheck>,
}

impl PipelineResult {
    pub fn ok(&self) -> bool {
        self.reconstruction.residual_ok
            && self.extension.as_ref().is_none_or(ExtensionCheck::matches)
    }
}

/// Recovers a monic quadratic or cubic from `r_1, r_2, …`. With at least
/// `2^{d+1}` terms the prefix is first extended by one term through the
/// order-`2^d` Toeplitz recurrence, which fails on non-generic prefixes.
/// The residual check regenerates the whole supplied prefix.
pub fn reconstruct_pipeline(prefix: &ExactSequence, d: usize) -> Result<PipelineResult> {
    let needed = match d {
        2 => 2,
        3 => 4,
        4 => {
            return Err(Error::Precondition(
                "quartic reconstruction has no closed form here; degree must be 2 or 3".into(),
            ))
        }
        _ => {
            return Err(Error::Precondition(format!(
                "degree must be 2 or 3, got {d}"
            )))
        }
    };
    if prefix.start() != 1 {
        return Err(Error::Precondition("prefix must start at r_1".into()));
    }
    if prefix.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            got: prefix.len(),
        });
    }
    let order = 1usize << d;
    let extended = if prefix.len() >= 2 * order {
        let seq = extend_sequence(prefix, order, 1)?;
        Some(seq.get(seq.last())?.clone())
    } else {
        None
    };
    let r = prefix.terms();
    let mut reconstruction = match d {
        2 => invert_quadratic(&r[0], &r[1])?,
        _ => invert_cubic([&r[0], &r[1], &r[2], &r[3]])?,
    };
    let f = reconstruction.poly();
    let regenerated = cyclic_sequence(&f, prefix.len() + 1, CheckMode::Fast)?;
    reconstruction.residual_ok = &regenerated.terms()[..prefix.len()] == r;
    let extension = extended.map(|extended| ExtensionCheck {
        index: prefix.last() + 1,
        extended,
        regenerated: regenerated.terms()[prefix.len()].clone(),
    });
    Ok(PipelineResult {
        reconstruction,
        extension,
    })
}
