//! `cycres` command-line surface.
//!
//! Exit codes: 0 success, 1 a checked identity or residual failed, 2 usage
//! or parse error, 3 precondition failure (non-generic input, vanishing
//! denominator, too little data).
//!
//! All numbers are printed exactly: integers in decimal, everything else
//! as `p/q`. Setting `CYCRES_VERBOSE` to a non-empty value other than `0`
//! prints per-trial detail for `verify` campaigns on stderr.

mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand};

use crate::cyclic::{cyclic_sequence, CheckMode, ExactSequence};
use crate::error::Error;
use crate::exact_core::{format_rational, parse_rational, MonicPoly, Poly, Rational};
use crate::identities::degree_census;
use crate::reconstruct::reconstruct_pipeline;
use crate::recurrence_lab::{
    detect_linear_recurrence, extend_sequence, find_polynomial_recurrence, Detection,
};

pub use verify::Identity;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cycres",
    version,
    about = "Exact cyclic resultants and Toeplitz recurrence tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print r_1..r_N for a monic polynomial.
    Resultants {
        /// Coefficients, highest degree first, starting with 1.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        count: usize,
        /// Roots; must expand to --poly.
        #[arg(long, allow_hyphen_values = true)]
        roots: Option<String>,
        /// Cross-check every term against the Sylvester resultant.
        #[arg(long)]
        check: bool,
        /// Emit the structured JSON sequence document.
        #[arg(long)]
        json: bool,
    },
    /// Detect the smallest linear recurrence by vanishing Toeplitz determinants.
    Detect {
        /// Sequence file or inline comma-separated terms.
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long = "max-order")]
        max_order: usize,
    },
    /// Append terms forced by an order-L Toeplitz recurrence.
    Extend {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        count: usize,
    },
    /// Recover a monic quadratic or cubic from its leading resultants.
    Reconstruct {
        #[arg(long)]
        degree: usize,
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Search for a polynomial relation on length-L windows.
    Polyrec {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long)]
        window: usize,
        /// Total degree bound; defaults to twice the window.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Run one of the identity checkers.
    Verify(Box<verify::VerifyArgs>),
    /// Degree of the cyclic-resultant Toeplitz determinant against the naive bound.
    Census {
        #[arg(long)]
        d: usize,
    },
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub(crate) struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_USAGE,
            Error::PathDisagreement { .. } => EXIT_VERIFICATION,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("i/o error: {e}"),
        }
    }
}

pub(crate) type CliResult = std::result::Result<i32, Failure>;

pub(crate) fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Resultants {
            poly,
            count,
            roots,
            check,
            json,
        } => resultants(&poly, count, roots.as_deref(), check, json, out),
        Command::Detect { seq, max_order } => detect(&load_sequence(&seq)?, max_order, out),
        Command::Extend { seq, order, count } => {
            let prefix = load_sequence(&seq)?;
            let extended = extend_sequence(&prefix, order, count)?;
            for t in &extended.terms()[prefix.len()..] {
                writeln!(out, "{}", format_rational(t))?;
            }
            Ok(EXIT_OK)
        }
        Command::Reconstruct { degree, seq } => reconstruct(&load_sequence(&seq)?, degree, out),
        Command::Polyrec {
            seq,
            window,
            degree,
        } => {
            let seq = load_sequence(&seq)?;
            let degree = degree.unwrap_or(2 * window);
            match find_polynomial_recurrence(&seq, window, degree)? {
                Some(p) => writeln!(out, "{p}")?,
                None => writeln!(out, "none at degree {degree}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => verify::run(&args, out, err),
        Command::Census { d } => {
            let c = degree_census(d)?;
            writeln!(out, "d = {}", c.d)?;
            writeln!(out, "M(d) = {}", c.reduced_degree)?;
            writeln!(out, "naive degree = {}", c.naive_degree)?;
            writeln!(out, "ratio = {}", format_rational(&c.ratio()))?;
            Ok(EXIT_OK)
        }
    }
}

pub(crate) fn parse_list(text: &str) -> std::result::Result<Vec<Rational>, Failure> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_rational)
        .collect::<crate::Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(usage(format!("empty list: {text:?}")));
    }
    Ok(values)
}

/// Monic coefficients; a non-monic leading entry is a usage error.
pub(crate) fn parse_monic(text: &str) -> std::result::Result<MonicPoly, Failure> {
    let coeffs = parse_list(text)?;
    MonicPoly::new(coeffs).map_err(|e| usage(e.to_string()))
}

pub(crate) fn parse_poly(text: &str) -> std::result::Result<Poly, Failure> {
    Ok(Poly::new(parse_list(text)?))
}

/// A path to a sequence file, or the sequence written inline.
pub(crate) fn load_sequence(arg: &str) -> std::result::Result<ExactSequence, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return Ok(ExactSequence::parse(&text)?);
    }
    Ok(ExactSequence::parse(arg)?)
}

fn resultants(
    poly: &str,
    count: usize,
    roots: Option<&str>,
    check: bool,
    json: bool,
    out: &mut dyn Write,
) -> CliResult {
    let mut f = parse_monic(poly)?;
    if let Some(roots) = roots {
        f = f
            .with_roots(&parse_list(roots)?)
            .map_err(|e| usage(e.to_string()))?;
    }
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let mode = if check {
        CheckMode::Dual
    } else {
        CheckMode::Fast
    };
    let seq = cyclic_sequence(&f, count, mode)?;
    if json {
        writeln!(out, "{}", seq.to_json())?;
    } else {
        write!(out, "{}", seq.to_lines())?;
    }
    Ok(EXIT_OK)
}

fn detect(seq: &ExactSequence, max_order: usize, out: &mut dyn Write) -> CliResult {
    let evidence = match detect_linear_recurrence(seq, max_order)? {
        Detection::Found(r) => {
            writeln!(out, "order: {}", r.order)?;
            let coeffs: Vec<String> = r.coefficients.iter().map(format_rational).collect();
            writeln!(out, "coefficients: {}", coeffs.join(", "))?;
            writeln!(
                out,
                "verified: {}..={}",
                r.verified_range.start(),
                r.verified_range.end()
            )?;
            r.evidence
        }
        Detection::NoneUpTo {
            max_order,
            evidence,
        } => {
            writeln!(out, "none up to order {max_order}")?;
            evidence
        }
    };
    for w in evidence {
        let zeros = w
            .determinants
            .iter()
            .filter(|(_, d)| num_traits::Zero::is_zero(d))
            .count();
        writeln!(
            out,
            "window {}: {} of {} determinants vanish",
            w.size,
            zeros,
            w.determinants.len()
        )?;
    }
    Ok(EXIT_OK)
}

fn reconstruct(seq: &ExactSequence, degree: usize, out: &mut dyn Write) -> CliResult {
    let result = reconstruct_pipeline(seq, degree)?;
    for (name, value) in ["a", "b", "c"]
        .iter()
        .zip(&result.reconstruction.coefficients)
    {
        writeln!(out, "{name} = {}", format_rational(value))?;
    }
    let residual = if result.reconstruction.residual_ok {
        "ok"
    } else {
        "mismatch"
    };
    writeln!(out, "residual: {residual}")?;
    if let Some(ext) = &result.extension {
        writeln!(
            out,
            "extension: r_{} = {} ({})",
            ext.index,
            format_rational(&ext.extended),
            if ext.matches() { "ok" } else { "mismatch" }
        )?;
    }
    Ok(if result.ok() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}
