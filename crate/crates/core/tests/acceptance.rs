//! Acceptance suite: one exact check per criterion, one PASS/FAIL line each.
//! Run with `cargo test --test acceptance`; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use cyclic_resultants::cyclic::{cyclic_resultant, cyclic_resultant_oracle, ExponentialSum};
use cyclic_resultants::exact_core::integer;
use cyclic_resultants::identities::{
    factorial_power, verify_constant_toeplitz, verify_det_ratio, verify_rn_factorization,
    verify_toeplitz_factorization, Match,
};
use cyclic_resultants::reconstruct::{
    check_d1_recurrence, check_d2_recurrence, d1_relation, d2_recurrence_sides, d2_relation,
    invert_cubic, invert_quadratic,
};
use cyclic_resultants::recurrence_lab::{
    detect_linear_recurrence, dodgson_check, extend_sequence, find_polynomial_recurrence,
    verify_poly_relation, Detection, PolyRelation,
};
use cyclic_resultants::sampling::Sampler;
use cyclic_resultants::{cyclic_sequence, CheckMode, ExactSequence, MonicPoly, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn monic_from_roots(roots: &[Rational]) -> MonicPoly {
    MonicPoly::from_roots(roots).expect("nonempty roots")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_cycres"))
        .args(["resultants", "--poly", "1,-2", "--count", "64"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(output.status.success(), || {
        format!("exit status {}", output.status)
    })?;
    let text = String::from_utf8(output.stdout).map_err(|e| e.to_string())?;
    let lines: Vec<&str> = text.lines().collect();
    ensure(lines.len() == 64, || format!("{} lines", lines.len()))?;
    for (m, line) in (1u32..).zip(&lines) {
        let expected = ((1u128 << m) - 1).to_string();
        ensure(*line == expected, || {
            format!("r_{m} = {line}, expected {expected}")
        })?;
    }
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("64/64 terms equal 2^m - 1 in {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let s = Sampler::default();
    let mut r = rng(2);
    for trial in 0..100 {
        let d = r.gen_range(1..=4);
        let f = s.monic(&mut r, d);
        for m in 1..=12u64 {
            let fast = cyclic_resultant(&f, m).map_err(|e| e.to_string())?;
            let oracle = cyclic_resultant_oracle(&f, m).map_err(|e| e.to_string())?;
            ensure(fast == oracle, || {
                format!(
                    "trial {trial}, f = {}, m = {m}: {fast} vs {oracle}",
                    f.as_poly()
                )
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("100/100 polynomials, m = 1..12, in {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let s = Sampler::default();
    let mut r = rng(3);
    let max_order = 6;
    for trial in 0..100 {
        let k = r.gen_range(1..=5);
        let bases = s.distinct_nonzero(&mut r, k);
        let pairs = bases
            .into_iter()
            .map(|mu| (s.nonzero(&mut r), mu))
            .collect();
        let seq = ExponentialSum::new(pairs)
            .and_then(|e| e.sequence(1, 2 * max_order + 1))
            .map_err(|e| e.to_string())?;
        let report = match detect_linear_recurrence(&seq, max_order).map_err(|e| e.to_string())? {
            Detection::Found(report) => report,
            Detection::NoneUpTo { .. } => {
                return Err(format!("trial {trial}: nothing detected for k = {k}"))
            }
        };
        ensure(report.order == k, || {
            format!("trial {trial}: order {} for k = {k}", report.order)
        })?;
        let above = &report.evidence[k];
        ensure(above.size == k + 1 && above.all_zero(), || {
            format!("trial {trial}: size {} window nonzero", k + 1)
        })?;
        let at = &report.evidence[k - 1];
        ensure(at.determinants.iter().any(|(_, d)| !d.is_zero()), || {
            format!("trial {trial}: every size-{k} determinant vanishes")
        })?;
    }
    Ok("100/100 orders equal the number of bases".into())
}

fn criterion_4() -> Outcome {
    let s = Sampler::default();
    let mut r = rng(4);
    for trial in 0..200 {
        let ell = r.gen_range(1..=5);
        let coeffs: Vec<Rational> = (0..ell).map(|_| s.nonzero(&mut r)).collect();
        let bases = s.distinct_nonzero(&mut r, ell);
        let n = r.gen_range(-4..=12);
        let w = verify_toeplitz_factorization(&coeffs, &bases, n).map_err(|e| e.to_string())?;
        ensure(w.is_exact(), || {
            format!(
                "trial {trial}: ell = {ell}, n = {n}: {} vs {}",
                w.lhs, w.rhs
            )
        })?;
    }
    Ok("200/200 exact".into())
}

fn criterion_5() -> Outcome {
    let s = Sampler::default();
    let mut r = rng(5);
    ensure(factorial_power(3) == integer(1296), || {
        "3!^4 is not 1296".into()
    })?;
    for ell in 1..=5 {
        for trial in 0..20 {
            let p = s.monic(&mut r, ell);
            let report = verify_constant_toeplitz(p.as_poly()).map_err(|e| e.to_string())?;
            ensure(report.holds(), || {
                format!("ell = {ell}, trial {trial}: delta = {}", report.delta)
            })?;
            if ell == 3 {
                ensure(report.delta.coeff(0) == integer(1296), || {
                    format!("ell = 3: delta = {}", report.delta)
                })?;
            }
        }
    }
    Ok("100/100 constant (20 per ell), ell = 3 gives 1296".into())
}

fn criterion_6() -> Outcome {
    let anchor = verify_rn_factorization(&[integer(2)], 2).map_err(|e| e.to_string())?;
    ensure(anchor.lhs == integer(2), || {
        format!("det R_2 = {} for root 2", anchor.lhs)
    })?;
    let s = Sampler::default();
    let mut r = rng(6);
    let mut signs = BTreeMap::new();
    let mut checked = 0;
    for d in 1..=3usize {
        let half = 1i64 << (d - 1);
        let mut seen = Vec::new();
        for _ in 0..5 {
            let roots = s.generic_roots(&mut r, d);
            for n in half + 1..=half + 8 {
                let w = verify_rn_factorization(&roots, n).map_err(|e| e.to_string())?;
                ensure(w.verdict != Match::Mismatch, || {
                    format!("d = {d}, n = {n}: {} vs {}", w.lhs, w.rhs)
                })?;
                seen.push(w.verdict);
                checked += 1;
            }
        }
        seen.dedup();
        ensure(seen.len() == 1, || format!("d = {d}: sign varies"))?;
        signs.insert(d, if seen[0] == Match::Exact { "+1" } else { "-1" });
    }
    let sign_text: Vec<String> = signs.iter().map(|(d, s)| format!("d = {d}: {s}")).collect();
    Ok(format!(
        "{checked}/{checked} equal in absolute value; signs {}; det R_2 = +2 for root 2",
        sign_text.join(", ")
    ))
}

fn criterion_7() -> Outcome {
    let s = Sampler::default();
    let mut r = rng(7);
    let mut checked = 0;
    for d in 1..=3usize {
        let big_n = 1i64 << d;
        for trial in 0..20 {
            let f = monic_from_roots(&s.generic_roots(&mut r, d));
            for n in big_n..=big_n + 10 {
                let report = verify_det_ratio(&f, n).map_err(|e| e.to_string())?;
                ensure(report.holds(), || {
                    format!("d = {d}, trial {trial}, n = {n}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked}/{checked} exact (20 polynomials per d)"))
}

fn criterion_8() -> Outcome {
    let f = MonicPoly::from_i64(&[1, -5, 6]).map_err(|e| e.to_string())?;
    let prefix = cyclic_sequence(&f, 8, CheckMode::Fast).map_err(|e| e.to_string())?;
    let r9 = extend_sequence(&prefix, 4, 1).map_err(|e| e.to_string())?;
    ensure(
        r9.get(9).map_err(|e| e.to_string())? == &integer(10057502),
        || "r_9 differs from 10057502".into(),
    )?;

    let s = Sampler::new(5);
    let mut r = rng(8);
    for d in [2usize, 3] {
        let known = 1usize << (d + 1);
        for trial in 0..50 {
            let f = monic_from_roots(&s.generic_roots(&mut r, d));
            let direct =
                cyclic_sequence(&f, known + 20, CheckMode::Fast).map_err(|e| e.to_string())?;
            let prefix = direct.slice(1, known as i64).map_err(|e| e.to_string())?;
            let extended = extend_sequence(&prefix, 1 << d, 20).map_err(|e| e.to_string())?;
            ensure(extended == direct, || {
                format!("d = {d}, trial {trial}: extension differs")
            })?;
        }
    }
    Ok("50/50 for d = 2 and 50/50 for d = 3, 20 terms each; r_9 = 10057502".into())
}

fn criterion_9() -> Outcome {
    let quad = invert_quadratic(&integer(2), &integer(24)).map_err(|e| e.to_string())?;
    ensure(
        quad.coefficients == [integer(-5), integer(6)] && quad.residual_ok,
        || "(2, 24) does not give (-5, 6)".into(),
    )?;
    let cubic = invert_cubic([
        &integer(8),
        &integer(576),
        &integer(22568),
        &integer(748800),
    ])
    .map_err(|e| e.to_string())?;
    ensure(
        cubic.coefficients == [integer(-10), integer(31), integer(-30)] && cubic.residual_ok,
        || "(8, 576, 22568, 748800) does not give (-10, 31, -30)".into(),
    )?;

    let s = Sampler::default();
    let mut r = rng(9);
    for (d, label) in [(2usize, "quadratic"), (3, "cubic")] {
        let mut done = 0;
        while done < 100 {
            let f = s.monic(&mut r, d);
            let terms = cyclic_sequence(&f, if d == 2 { 2 } else { 4 }, CheckMode::Fast)
                .map_err(|e| e.to_string())?;
            let t = terms.terms();
            if t[..d - 1].iter().any(Zero::is_zero) {
                continue;
            }
            let result = if d == 2 {
                invert_quadratic(&t[0], &t[1])
            } else {
                invert_cubic([&t[0], &t[1], &t[2], &t[3]])
            }
            .map_err(|e| e.to_string())?;
            ensure(result.poly() == f && result.residual_ok, || {
                format!("{label} round trip failed for {}", f.as_poly())
            })?;
            done += 1;
        }
    }
    Ok("quadratic 100/100, cubic 100/100, worked instances recovered".into())
}

fn criterion_10() -> Outcome {
    let (lhs, rhs) = d2_recurrence_sides(
        &integer(-5),
        &integer(6),
        [&integer(2), &integer(24), &integer(182)],
    );
    ensure(lhs == integer(-28) && rhs == integer(-28), || {
        format!("anchor sides {lhs}, {rhs}")
    })?;
    let s = Sampler::default();
    let mut r = rng(10);
    for trial in 0..100 {
        let a = s.rational(&mut r);
        let f = MonicPoly::new(vec![integer(1), a.clone()]).map_err(|e| e.to_string())?;
        let seq = cyclic_sequence(&f, 50, CheckMode::Fast).map_err(|e| e.to_string())?;
        let check = check_d1_recurrence(&a, &seq);
        ensure(check.holds(), || {
            format!("d = 1, trial {trial}: fails at {:?}", check.first_failure)
        })?;

        let (a, b) = (s.rational(&mut r), s.rational(&mut r));
        let f =
            MonicPoly::new(vec![integer(1), a.clone(), b.clone()]).map_err(|e| e.to_string())?;
        let seq = cyclic_sequence(&f, 50, CheckMode::Fast).map_err(|e| e.to_string())?;
        let check = check_d2_recurrence(&a, &b, &seq);
        ensure(check.holds(), || {
            format!("d = 2, trial {trial}: fails at {:?}", check.first_failure)
        })?;
    }
    Ok("d = 1 100/100, d = 2 100/100 on 50 terms; anchor sides both -28".into())
}

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

fn criterion_11() -> Outcome {
    let s = Sampler::default();
    let mut r = rng(11);
    for trial in 0..20 {
        let roots = s.generic_roots(&mut r, 1);
        let f = monic_from_roots(&roots);
        let a = f.coeffs()[1].clone();
        let seq = cyclic_sequence(&f, 30, CheckMode::Fast).map_err(|e| e.to_string())?;
        let found = find_polynomial_recurrence(&seq, 2, 1)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("d = 1, trial {trial}: nothing found"))?;
        ensure(found.is_proportional_to(&d1_relation(&a)), || {
            format!("d = 1, trial {trial}: found {found}")
        })?;

        let roots = s.generic_roots(&mut r, 2);
        let f = monic_from_roots(&roots);
        let (a, b) = (f.coeffs()[1].clone(), f.coeffs()[2].clone());
        let seq = cyclic_sequence(&f, 30, CheckMode::Fast).map_err(|e| e.to_string())?;
        let found = find_polynomial_recurrence(&seq, 3, 2)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("d = 2, trial {trial}: nothing found"))?;
        ensure(found.is_proportional_to(&d2_relation(&a, &b)), || {
            format!("d = 2, trial {trial}: found {found}")
        })?;
    }
    let mut fib = vec![1i64, 1];
    while fib.len() < 30 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    let seq = ExactSequence::from_i64(&fib).map_err(|e| e.to_string())?;
    let verdict = verify_poly_relation(&fibonacci_relation(), &seq).map_err(|e| e.to_string())?;
    ensure(verdict.holds() && verdict.windows_checked == 29, || {
        format!("fibonacci violations {:?}", verdict.violations)
    })?;
    Ok("d = 1 20/20 and d = 2 20/20 match the explicit relations; Fibonacci relation holds on 30 terms".into())
}

fn criterion_12() -> Outcome {
    let s = Sampler::default();
    let mut r = rng(12);
    let len = 15;
    let mut checked = 0;
    for trial in 0..200 {
        let seq = ExactSequence::from_terms(s.integer_sequence(&mut r, len))
            .map_err(|e| e.to_string())?;
        let ell = r.gen_range(2..=5);
        for m in ell as i64..=(len - ell + 1) as i64 {
            let w = dodgson_check(&seq, ell, m).map_err(|e| e.to_string())?;
            ensure(w.holds(), || format!("trial {trial}: ell = {ell}, m = {m}"))?;
            checked += 1;
        }
    }
    Ok(format!(
        "200/200 sequences, {checked} window positions exact"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Mersenne reproduction through the CLI", criterion_1),
        ("companion and Sylvester resultants agree", criterion_2),
        (
            "recurrence order detected by vanishing windows",
            criterion_3,
        ),
        ("Toeplitz windows of exponential sums factor", criterion_4),
        (
            "constant Toeplitz determinant of a shifted polynomial",
            criterion_5,
        ),
        (
            "closed form of the 2^d resultant window up to sign",
            criterion_6,
        ),
        ("determinant ratio law", criterion_7),
        ("extension from the first 2^(d+1) resultants", criterion_8),
        ("quadratic and cubic reconstruction", criterion_9),
        ("explicit recurrences for d = 1 and d = 2", criterion_10),
        ("polynomial recurrence search", criterion_11),
        ("Dodgson condensation on Toeplitz windows", criterion_12),
    ];
    let suite = Instant::now();
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "[PASS] criterion {}: {name}: {detail} ({elapsed:.2?})",
                i + 1
            ),
            Err(reason) => {
                failures += 1;
                println!(
                    "[FAIL] criterion {}: {name}: {reason} ({elapsed:.2?})",
                    i + 1
                );
            }
        }
    }
    println!(
        "{}/12 criteria passed in {:.2?}",
        12 - failures,
        suite.elapsed()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
