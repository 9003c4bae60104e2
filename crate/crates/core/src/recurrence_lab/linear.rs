use std::ops::RangeInclusive;

use num_traits::{One, Zero};

use super::toeplitz::toeplitz_det;
use crate::cyclic::ExactSequence;
use crate::error::{Error, Result};
use crate::exact_core::{ExactMatrix, Rational};

/// Determinants of every admissible window of one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowEvidence {
    pub size: usize,
    /// `(n, det A_{size,n})` for each admissible n.
    pub determinants: Vec<(i64, Rational)>,
}

impl WindowEvidence {
    pub fn all_zero(&self) -> bool {
        self.determinants.iter().all(|(_, d)| d.is_zero())
    }
}

/// A linear recurrence `Σ_j coefficients[j] · a_{n+order−j} = 0` in
/// characteristic-polynomial form (`coefficients[0] = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    /// Number of prior terms each term depends on.
    pub order: usize,
    pub coefficients: Vec<Rational>,
    /// Term indices the recurrence was checked against.
    pub verified_range: RangeInclusive<i64>,
    /// Toeplitz determinants consulted, smallest window first. Empty when
    /// the report came from the minimal-recurrence finder.
    pub evidence: Vec<WindowEvidence>,
}

impl RecurrenceReport {
    /// Whether the recurrence holds at every position of `seq`.
    pub fn holds_on(&self, seq: &ExactSequence) -> bool {
        (seq.start()..=seq.last() - self.order as i64).all(|n| {
            let residual: Rational = self
                .coefficients
                .iter()
                .enumerate()
                .map(|(j, c)| c * seq.get(n + (self.order - j) as i64).expect("in range"))
                .sum();
            residual.is_zero()
        })
    }

    /// Next term after the last `order` values of `tail` (oldest first).
    pub fn next_term(&self, tail: &[Rational]) -> Rational {
        let k = self.order;
        -(1..=k)
            .map(|j| &self.coefficients[j] * &tail[tail.len() - j])
            .sum::<Rational>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detection {
    Found(RecurrenceReport),
    /// No recurrence of order `<= max_order` fits the data.
    NoneUpTo {
        max_order: usize,
        evidence: Vec<WindowEvidence>,
    },
}

/// Smallest monic recurrence of exactly `order` satisfied on all of `seq`,
/// solved from the kernel of the shifted-row matrix.
fn solve_monic(seq: &ExactSequence, order: usize) -> Option<Vec<Rational>> {
    let first = seq.start();
    let last = seq.last() - order as i64;
    if last < first {
        return None;
    }
    let rows: Vec<Vec<Rational>> = (first..=last)
        .map(|n| {
            (0..=order)
                .map(|j| seq.get(n + (order - j) as i64).expect("in range").clone())
                .collect()
        })
        .collect();
    let m = ExactMatrix::from_rows(rows).ok()?;
    let v = m.nullspace().into_iter().find(|v| !v[0].is_zero())?;
    let lead = v[0].clone();
    Some(v.into_iter().map(|c| c / &lead).collect())
}

/// Detection by vanishing Toeplitz determinants: for `k = 0, 1, …` every
/// admissible `det A_{k+1,n}` is evaluated, and the first `k` where all of
/// them vanish (and a monic order-k recurrence fits the data) is reported.
/// A finite sequence can only support a semi-decision: the report states
/// the index range it was verified on.
pub fn detect_linear_recurrence(seq: &ExactSequence, max_order: usize) -> Result<Detection> {
    if max_order == 0 {
        return Err(Error::Precondition("max_order must be positive".into()));
    }
    let needed = 2 * max_order + 1;
    if seq.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            got: seq.len(),
        });
    }
    let mut evidence = Vec::new();
    for order in 0..=max_order {
        let size = order + 1;
        let span = order as i64;
        let ns = seq.start() + span..=seq.last() - span;
        let determinants = ns
            .map(|n| Ok((n, toeplitz_det(seq, size, n)?)))
            .collect::<Result<Vec<_>>>()?;
        let window = WindowEvidence { size, determinants };
        let vanishes = window.all_zero();
        evidence.push(window);
        if !vanishes {
            continue;
        }
        if let Some(coefficients) = solve_monic(seq, order) {
            return Ok(Detection::Found(RecurrenceReport {
                order,
                coefficients,
                verified_range: seq.start()..=seq.last(),
                evidence,
            }));
        }
    }
    Ok(Detection::NoneUpTo {
        max_order,
        evidence,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalRecurrence {
    Found(RecurrenceReport),
    /// Fewer than `2 · order` terms: the shortest recurrence is not
    /// pinned down by the data. The candidate is consistent but not unique.
    Indeterminate(RecurrenceReport),
}

impl MinimalRecurrence {
    pub fn report(&self) -> &RecurrenceReport {
        match self {
            MinimalRecurrence::Found(r) | MinimalRecurrence::Indeterminate(r) => r,
        }
    }
}

/// Berlekamp–Massey over the rationals: shortest `C(x) = 1 + c_1 x + …
/// + c_L x^L` with `Σ_j c_j a_{n−j} = 0` for every n past the first L terms.
pub fn minimal_recurrence(seq: &ExactSequence) -> MinimalRecurrence {
    let s = seq.terms();
    let mut c = vec![Rational::one()];
    let mut b = vec![Rational::one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last_discrepancy = Rational::one();
    for n in 0..s.len() {
        let discrepancy: Rational = (0..=len)
            .filter(|&i| i < c.len())
            .map(|i| &c[i] * &s[n - i])
            .sum();
        if discrepancy.is_zero() {
            shift += 1;
            continue;
        }
        let factor = &discrepancy / &last_discrepancy;
        let previous = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] -= &factor * bi;
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = previous;
            last_discrepancy = discrepancy;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(len + 1, Rational::zero());
    let report = RecurrenceReport {
        order: len,
        coefficients: c,
        verified_range: seq.start()..=seq.last(),
        evidence: Vec::new(),
    };
    if 2 * len > s.len() {
        MinimalRecurrence::Indeterminate(report)
    } else {
        MinimalRecurrence::Found(report)
    }
}
