//! `cycres verify`: single instances and seeded random campaigns.
//!
//! A campaign draws one seed per trial from the master seed, so trial `i`
//! is the same regardless of how many threads evaluate it.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    load_sequence, parse_list, parse_monic, parse_poly, usage, CliResult, Failure, EXIT_OK,
    EXIT_VERIFICATION,
};
use crate::cyclic::{cyclic_sequence, CheckMode, ExactSequence};
use crate::error::{Error, Result};
use crate::exact_core::{format_rational, integer, MonicPoly, Poly, Rational};
use crate::identities::{
    verify_constant_toeplitz, verify_det_ratio, verify_generalized_vandermonde,
    verify_rn_factorization, verify_toeplitz_factorization, FactorizationWitness, Match,
};
use crate::reconstruct::{check_d1_recurrence, check_d2_recurrence};
use crate::recurrence_lab::{
    dodgson_check, find_polynomial_recurrence, verify_poly_relation, PolyRelation,
};
use crate::sampling::Sampler;

const DEFAULT_TRIALS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    /// Toeplitz windows of an exponential sum.
    ToeplitzFactor,
    /// Generalized Vandermonde determinant.
    Vandermonde,
    /// Constant Toeplitz determinant of a shifted monic polynomial.
    ConstantToeplitz,
    /// Closed form of the 2^d window of cyclic resultants.
    RnFactor,
    /// Ratio law for windows of size 2^d.
    DetRatio,
    /// Desnanot–Jacobi identity for Toeplitz windows.
    Dodgson,
    /// Recurrence for the resultants of a linear polynomial.
    D1Rec,
    /// Recurrence for the resultants of a quadratic.
    D2Rec,
    /// Quartic relation on consecutive Fibonacci numbers.
    Fibonacci,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    identity: Identity,
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    bases: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    roots: Option<String>,
    /// Polynomials separated by `;`, each as comma-separated coefficients.
    #[arg(long, allow_hyphen_values = true)]
    polys: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    ys: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    seq: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long)]
    count: Option<usize>,
    /// Run a random campaign of this many trials.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bound on numerators and denominators of sampled values.
    #[arg(long, default_value_t = 9)]
    bound: i64,
}

impl VerifyArgs {
    fn has_instance(&self) -> bool {
        [
            &self.coeffs,
            &self.bases,
            &self.poly,
            &self.roots,
            &self.polys,
            &self.ys,
            &self.seq,
            &self.a,
            &self.b,
        ]
        .iter()
        .any(|o| o.is_some())
            || self.n.is_some()
            || self.ell.is_some()
            || self.m.is_some()
            || self.count.is_some()
    }
}

/// One evaluated instance.
#[derive(Clone, Debug)]
struct Outcome {
    label: String,
    lhs: Rational,
    rhs: Rational,
    verdict: Match,
    /// Degree group for identities whose sign law depends on it.
    group: Option<usize>,
}

impl Outcome {
    fn new(label: String, lhs: Rational, rhs: Rational) -> Self {
        let verdict = FactorizationWitness::new(lhs.clone(), rhs.clone()).verdict;
        Outcome {
            label,
            lhs,
            rhs,
            verdict,
            group: None,
        }
    }

    fn from_witness(label: String, w: FactorizationWitness) -> Self {
        Outcome {
            label,
            lhs: w.lhs,
            rhs: w.rhs,
            verdict: w.verdict,
            group: None,
        }
    }
}

fn verbose() -> bool {
    std::env::var("CYCRES_VERBOSE").is_ok_and(|v| !v.is_empty() && v != "0")
}

fn required<T: Clone>(value: &Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    value
        .clone()
        .ok_or_else(|| usage(format!("missing --{flag}")))
}

fn parse_scalar(text: &str) -> std::result::Result<Rational, Failure> {
    Ok(crate::exact_core::parse_rational(text.trim())?)
}

pub(super) fn run(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    if args.identity == Identity::Fibonacci {
        return fibonacci(args.count.unwrap_or(30), out);
    }
    if args.trials.is_none() && args.has_instance() {
        let outcome = single(args)?;
        writeln!(out, "lhs = {}", format_rational(&outcome.lhs))?;
        writeln!(out, "rhs = {}", format_rational(&outcome.rhs))?;
        writeln!(out, "match: {}", verdict_name(outcome.verdict))?;
        return Ok(if accepted(args.identity, outcome.verdict) {
            EXIT_OK
        } else {
            EXIT_VERIFICATION
        });
    }
    if args.bound < 2 {
        return Err(usage("--bound must be at least 2"));
    }
    campaign(args, args.trials.unwrap_or(DEFAULT_TRIALS), out, err)
}

fn verdict_name(m: Match) -> &'static str {
    match m {
        Match::Exact => "exact",
        Match::Negated => "negated",
        Match::Mismatch => "mismatch",
    }
}

/// The resultant-window closed form is checked up to a sign fixed per degree.
fn accepted(identity: Identity, m: Match) -> bool {
    match identity {
        Identity::RnFactor => m != Match::Mismatch,
        _ => m == Match::Exact,
    }
}

fn single(args: &VerifyArgs) -> std::result::Result<Outcome, Failure> {
    let outcome = match args.identity {
        Identity::ToeplitzFactor => {
            let coeffs = parse_list(&required(&args.coeffs, "coeffs")?)?;
            let bases = parse_list(&required(&args.bases, "bases")?)?;
            let n = required(&args.n, "n")?;
            Outcome::from_witness(
                String::new(),
                verify_toeplitz_factorization(&coeffs, &bases, n)?,
            )
        }
        Identity::Vandermonde => {
            let polys = required(&args.polys, "polys")?
                .split(';')
                .map(parse_poly)
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let leading: Vec<Rational> = polys
                .iter()
                .map(|p| {
                    p.leading()
                        .cloned()
                        .ok_or_else(|| usage("zero polynomial in --polys"))
                })
                .collect::<std::result::Result<_, _>>()?;
            let ys = parse_list(&required(&args.ys, "ys")?)?;
            Outcome::from_witness(
                String::new(),
                verify_generalized_vandermonde(&leading, &polys, &ys)?,
            )
        }
        Identity::ConstantToeplitz => {
            let p = parse_poly(&required(&args.poly, "poly")?)?;
            let report = verify_constant_toeplitz(&p)?;
            let lhs = match report.delta.degree() {
                Some(0) | None => report.delta.coeff(0),
                _ => return Ok(mismatch_poly(&report.delta, report.expected)),
            };
            Outcome::new(String::new(), lhs, report.expected)
        }
        Identity::RnFactor => {
            let roots = parse_list(&required(&args.roots, "roots")?)?;
            let n = required(&args.n, "n")?;
            Outcome::from_witness(String::new(), verify_rn_factorization(&roots, n)?)
        }
        Identity::DetRatio => {
            let f = parse_monic(&required(&args.poly, "poly")?)?;
            let n = required(&args.n, "n")?;
            let report = verify_det_ratio(&f, n)?;
            Outcome::new(String::new(), report.lhs, report.rhs)
        }
        Identity::Dodgson => {
            let seq = load_sequence(&required(&args.seq, "seq")?)?;
            let w = dodgson_check(&seq, required(&args.ell, "ell")?, required(&args.m, "m")?)?;
            Outcome::new(String::new(), w.lhs(), w.rhs())
        }
        Identity::D1Rec => {
            let a = parse_scalar(&required(&args.a, "a")?)?;
            d1_outcome(&a, args.count.unwrap_or(50))?
        }
        Identity::D2Rec => {
            let a = parse_scalar(&required(&args.a, "a")?)?;
            let b = parse_scalar(&required(&args.b, "b")?)?;
            d2_outcome(&a, &b, args.count.unwrap_or(50))?
        }
        Identity::Fibonacci => unreachable!("handled before dispatch"),
    };
    Ok(outcome)
}

/// A non-constant Δ is reported through its leading coefficient, which
/// cannot equal the constant it is compared with.
fn mismatch_poly(delta: &Poly, expected: Rational) -> Outcome {
    Outcome {
        label: format!("delta = {delta}"),
        lhs: delta.leading().cloned().unwrap_or_default(),
        rhs: expected,
        verdict: Match::Mismatch,
        group: None,
    }
}

/// Recurrence checks report the number of positions checked on both sides
/// when they hold, and the failing index against the count otherwise.
fn recurrence_outcome(label: String, checked: usize, failure: Option<i64>) -> Outcome {
    let checked = integer(checked as i64);
    match failure {
        None => Outcome::new(label, checked.clone(), checked),
        Some(index) => Outcome {
            label: format!("{label} fails at n = {index}"),
            lhs: integer(index),
            rhs: checked,
            verdict: Match::Mismatch,
            group: None,
        },
    }
}

fn d1_outcome(a: &Rational, count: usize) -> Result<Outcome> {
    let f = MonicPoly::new(vec![integer(1), a.clone()])?;
    let seq = cyclic_sequence(&f, count.max(2), CheckMode::Fast)?;
    let check = check_d1_recurrence(a, &seq);
    Ok(recurrence_outcome(
        format!("a = {}", format_rational(a)),
        check.positions_checked,
        check.first_failure,
    ))
}

fn d2_outcome(a: &Rational, b: &Rational, count: usize) -> Result<Outcome> {
    let f = MonicPoly::new(vec![integer(1), a.clone(), b.clone()])?;
    let seq = cyclic_sequence(&f, count.max(3), CheckMode::Fast)?;
    let check = check_d2_recurrence(a, b, &seq);
    Ok(recurrence_outcome(
        format!("a = {}, b = {}", format_rational(a), format_rational(b)),
        check.positions_checked,
        check.first_failure,
    ))
}

/// Draws a random instance and evaluates it, redrawing when the sample
/// violates a precondition of the identity.
fn random_trial(identity: Identity, sampler: Sampler, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    loop {
        match random_attempt(identity, sampler, rng) {
            Err(Error::NonGeneric(_)) | Err(Error::Degenerate(_)) => continue,
            other => return other,
        }
    }
}

fn random_attempt(identity: Identity, s: Sampler, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    match identity {
        Identity::ToeplitzFactor => {
            let ell = rng.gen_range(1..=5);
            let coeffs: Vec<Rational> = (0..ell).map(|_| s.nonzero(rng)).collect();
            let bases = s.distinct_nonzero(rng, ell);
            let n = rng.gen_range(-4..=12);
            let label = format!("ell = {ell}, n = {n}");
            Ok(Outcome::from_witness(
                label,
                verify_toeplitz_factorization(&coeffs, &bases, n)?,
            ))
        }
        Identity::Vandermonde => {
            let ell = rng.gen_range(0..=4);
            let leading: Vec<Rational> = (0..=ell).map(|_| s.nonzero(rng)).collect();
            let polys: Vec<Poly> = leading
                .iter()
                .enumerate()
                .map(|(j, a)| s.poly_with_leading(rng, a.clone(), ell - j))
                .collect();
            let ys = s.distinct_nonzero(rng, ell + 1);
            let label = format!("ell = {ell}");
            Ok(Outcome::from_witness(
                label,
                verify_generalized_vandermonde(&leading, &polys, &ys)?,
            ))
        }
        Identity::ConstantToeplitz => {
            let ell = rng.gen_range(1..=5);
            constant_toeplitz_outcome(s.monic(rng, ell).as_poly())
        }
        Identity::RnFactor => {
            let d = rng.gen_range(1..=3);
            let roots = s.generic_roots(rng, d);
            let half = 1i64 << (d - 1);
            let n = rng.gen_range(half + 1..=half + 8);
            let mut o = Outcome::from_witness(
                format!("d = {d}, n = {n}"),
                verify_rn_factorization(&roots, n)?,
            );
            o.group = Some(d);
            Ok(o)
        }
        Identity::DetRatio => {
            let d = rng.gen_range(1..=3);
            let f = MonicPoly::from_roots(&s.generic_roots(rng, d))?;
            let big_n = 1i64 << d;
            let n = rng.gen_range(big_n..=big_n + 10);
            let report = verify_det_ratio(&f, n)?;
            Ok(Outcome::new(
                format!("d = {d}, n = {n}"),
                report.lhs,
                report.rhs,
            ))
        }
        Identity::Dodgson => {
            let ell = rng.gen_range(2..=5);
            let len = 15;
            let seq = ExactSequence::from_terms(s.integer_sequence(rng, len))?;
            let m = rng.gen_range(ell as i64..=(len - ell + 1) as i64);
            let w = dodgson_check(&seq, ell, m)?;
            Ok(Outcome::new(
                format!("ell = {ell}, m = {m}"),
                w.lhs(),
                w.rhs(),
            ))
        }
        Identity::D1Rec => d1_outcome(&s.rational(rng), 50),
        Identity::D2Rec => d2_outcome(&s.rational(rng), &s.rational(rng), 50),
        Identity::Fibonacci => unreachable!("no random instances"),
    }
}

fn constant_toeplitz_outcome(p: &Poly) -> Result<Outcome> {
    let report = verify_constant_toeplitz(p)?;
    let label = format!("ell = {}", report.ell);
    if report.delta.degree().unwrap_or(0) > 0 {
        let mut o = mismatch_poly(&report.delta, report.expected);
        o.label = format!("{label}, {}", o.label);
        return Ok(o);
    }
    Ok(Outcome::new(label, report.delta.coeff(0), report.expected))
}

fn campaign(
    args: &VerifyArgs,
    trials: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let sampler = Sampler::new(args.bound);
    let mut master = ChaCha8Rng::seed_from_u64(args.seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.gen()).collect();
    let identity = args.identity;
    let outcomes = seeds
        .par_iter()
        .map(|&seed| random_trial(identity, sampler, &mut ChaCha8Rng::seed_from_u64(seed)))
        .collect::<Result<Vec<_>>>()?;

    if verbose() {
        for (i, o) in outcomes.iter().enumerate() {
            writeln!(
                err,
                "trial {i}: {}: {} (lhs = {}, rhs = {})",
                o.label,
                verdict_name(o.verdict),
                format_rational(&o.lhs),
                format_rational(&o.rhs)
            )?;
        }
    }

    if identity == Identity::RnFactor {
        return rn_summary(&outcomes, out);
    }
    let exact = outcomes
        .iter()
        .filter(|o| o.verdict == Match::Exact)
        .count();
    writeln!(out, "{exact}/{trials} exact")?;
    for (i, o) in outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| o.verdict != Match::Exact)
    {
        writeln!(out, "trial {i} ({}): {}", o.label, verdict_name(o.verdict))?;
    }
    Ok(if exact == trials {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

/// Counts agreement up to sign and reports the sign seen for each degree.
fn rn_summary(outcomes: &[Outcome], out: &mut dyn Write) -> CliResult {
    let total = outcomes.len();
    let up_to_sign = outcomes
        .iter()
        .filter(|o| o.verdict != Match::Mismatch)
        .count();
    writeln!(out, "{up_to_sign}/{total} equal up to sign")?;
    let mut signs: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for o in outcomes {
        let entry = signs.entry(o.group.unwrap_or(0)).or_default();
        match o.verdict {
            Match::Exact => entry.0 += 1,
            Match::Negated => entry.1 += 1,
            Match::Mismatch => {}
        }
    }
    let mut consistent = true;
    for (d, (plus, minus)) in &signs {
        let line = match (plus, minus) {
            (_, 0) => "sign +1".to_string(),
            (0, _) => "sign -1".to_string(),
            _ => {
                consistent = false;
                format!("sign varies ({plus} exact, {minus} negated)")
            }
        };
        writeln!(out, "d = {d}: {line}")?;
    }
    Ok(if up_to_sign == total && consistent {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

/// `(x2² − x1·x2 − x1²)² − 1` on windows of consecutive Fibonacci numbers,
/// plus a blind search at window 2, degree 4 that must find a multiple.
fn fibonacci_relation() -> PolyRelation {
    let t = |e: [u32; 2], c: i64| (e.to_vec(), integer(c));
    PolyRelation::new(
        2,
        vec![
            t([0, 4], 1),
            t([1, 3], -2),
            t([2, 2], -1),
            t([3, 1], 2),
            t([4, 0], 1),
            t([0, 0], -1),
        ],
    )
    .expect("valid relation")
}

fn fibonacci(count: usize, out: &mut dyn Write) -> CliResult {
    if count < 2 {
        return Err(usage("--count must be at least 2"));
    }
    let mut terms = vec![integer(1), integer(1)];
    while terms.len() < count {
        let next = &terms[terms.len() - 1] + &terms[terms.len() - 2];
        terms.push(next);
    }
    terms.truncate(count);
    let seq = ExactSequence::from_terms(terms)?;
    let relation = fibonacci_relation();
    let verdict = verify_poly_relation(&relation, &seq)?;
    writeln!(out, "relation: {relation}")?;
    writeln!(
        out,
        "windows: {}/{} satisfied",
        verdict.windows_checked - verdict.violations.len(),
        verdict.windows_checked
    )?;
    let search_ok = match find_polynomial_recurrence(&seq, 2, 4) {
        Ok(Some(found)) => {
            let same = found.is_proportional_to(&relation);
            writeln!(
                out,
                "search: {found} ({})",
                if same { "matches" } else { "differs" }
            )?;
            same
        }
        Ok(None) => {
            writeln!(out, "search: none")?;
            false
        }
        Err(Error::InsufficientWindows { needed, got }) => {
            writeln!(out, "search: skipped, needs {needed} windows, have {got}")?;
            true
        }
        Err(e) => return Err(e.into()),
    };
    Ok(if verdict.holds() && search_ok {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}
