//! Acceptance suite: one PASS/FAIL line per criterion, each under its time
//! bound. Exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{class_sum_brute, class_sum_plain_brute, gaussian_product, poly, qbinom_product, repunit};
use qfleck_core::flecksums::{fleck_sum_int, nonalternating_class_sum, q_sum, residual_r, SumSpec};
use qfleck_core::qbinomial::{int_binom, qbinom};
use qfleck_core::verify::{
    check_alt_poly, check_closed_form, check_euler, check_integer_congruences, check_prop_restated, check_q_lucas,
    check_qbinomial_identities, check_recursions, check_theorem_fleck, check_theorem_main, sharpness_scan,
    table1_report, table1_rows, IntegerRanges, NRange, SweepGrid, VerifyReport,
};
use qfleck_core::Poly;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    bound: Option<Duration>,
    run: fn() -> Outcome,
}

fn from_report(r: VerifyReport) -> Outcome {
    let summary = format!("{} cases", r.cases_run);
    if r.passed() {
        Ok(summary)
    } else {
        Err(r.to_string().trim_end().to_string())
    }
}

fn all(reports: Vec<VerifyReport>) -> Outcome {
    let cases: usize = reports.iter().map(|r| r.cases_run).sum();
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.to_string()).collect();
    if failed.is_empty() {
        Ok(format!("{cases} cases"))
    } else {
        Err(failed.join("").trim_end().to_string())
    }
}

fn exact_values() -> Outcome {
    let mut problems = Vec::new();
    let phi4 = poly("q^2+1");
    let phi7 = repunit(7);
    let spec = SumSpec::unit(4, 7).with_class(1).map_err(|e| e.to_string())?;
    let fleck = fleck_sum_int(&spec).map_err(|e| e.to_string())?;
    let expected_fleck = (&phi4 * &phi7).shift(2);
    if fleck != class_sum_brute(4, 1, 7) {
        problems.push(format!("class sum disagrees with term-by-term oracle: {fleck}"));
    }
    if fleck != expected_fleck {
        let note = if fleck == -expected_fleck.clone() { " (differs by the unit -1)" } else { "" };
        problems.push(format!("class sum c=4 j=1 n=7 is {fleck}, expected {expected_fleck}{note}"));
    }
    let plain = nonalternating_class_sum(4, 1, 7).map_err(|e| e.to_string())?;
    let expected_plain = -(&phi7 * &poly("q^4+q^2+2"));
    if plain != expected_plain || plain != class_sum_plain_brute(4, 1, 7) {
        problems.push(format!("(-1)^m class sum is {plain}, expected {expected_plain}"));
    }
    if problems.is_empty() {
        Ok("both values bit-exact".into())
    } else {
        Err(problems.join("; "))
    }
}

fn table1() -> Outcome {
    let rows = table1_rows().map_err(|e| e.to_string())?;
    for row in &rows {
        let (c, j, n) = (row.spec.c(), row.spec.class_j.unwrap_or(0), row.spec.n);
        if row.report.reconstruct() != class_sum_brute(c, j, n) {
            return Err(format!("factorization of c={c} j={j} n={n} does not reconstruct the sum"));
        }
    }
    from_report(table1_report())
}

fn gaussian() -> Outcome {
    for n in 1..=40 {
        let s = q_sum(&SumSpec::unit(1, n)).and_then(|s| s.to_bigpoly()).map_err(|e| e.to_string())?;
        if s != gaussian_product(n) {
            return Err(format!("n={n}: {s}"));
        }
    }
    Ok("n = 1..40".into())
}

fn main_sweep() -> Outcome {
    from_report(check_theorem_main(&SweepGrid::default()))
}

fn fleck_sweep() -> Outcome {
    from_report(check_theorem_fleck(&SweepGrid::default()))
}

fn prop_restated() -> Outcome {
    from_report(check_prop_restated(&SweepGrid::default().with_n(NRange::Explicit((0..=40).collect()))))
}

fn identities() -> Outcome {
    let seed = SweepGrid::default().seed;
    all(vec![
        check_qbinomial_identities(30, 60),
        check_recursions(seed),
        check_q_lucas(&[2, 3, 5, 7], 40),
        check_euler(15),
        check_alt_poly(15, 5, seed),
    ])
}

fn integer() -> Outcome {
    from_report(check_integer_congruences(&IntegerRanges::default()))
}

fn closed_form() -> Outcome {
    for n in 0..=40usize {
        let r = residual_r(&SumSpec::unit(1, n)).and_then(|r| r.to_bigpoly()).map_err(|e| e.to_string())?;
        let expected = match (n % 2, (n / 2) % 2) {
            (1, _) => Poly::zero(),
            (_, 0) => Poly::one(),
            _ => Poly::constant(-1),
        };
        if r != expected {
            return Err(format!("n={n}: residual {r}, expected {expected}"));
        }
    }
    from_report(check_closed_form(40, 3, 24))
}

fn oracle_equivalence() -> Outcome {
    for n in 0..=30 {
        for m in 0..=n {
            if qbinom(n, m as i64) != qbinom_product(n, m) {
                return Err(format!("[{n},{m}] differs from the product formula"));
            }
            if int_binom(n, m as i64) != common::binom(n as u64, m as u64)
                || int_binom(n, m as i64) != qbinom(n, m as i64).eval_i64(1)
            {
                return Err(format!("C({n},{m}) mismatch"));
            }
        }
    }
    Ok("0 <= m <= n <= 30".into())
}

fn sharpness() -> Outcome {
    let (report, rows) = sharpness_scan(7, 50);
    let rows_run = rows.len();
    from_report(report).map(|s| format!("{s}, {rows_run} rows with witnesses"))
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { id: 1, name: "exact class sum values", bound: Some(secs(1)), run: exact_values },
        Criterion { id: 2, name: "tabulated residuals", bound: Some(secs(10)), run: table1 },
        Criterion { id: 3, name: "Gaussian formula", bound: Some(secs(5)), run: gaussian },
        Criterion { id: 4, name: "full-sum divisibility sweep", bound: Some(secs(300)), run: main_sweep },
        Criterion { id: 5, name: "class-sum divisibility sweep", bound: Some(secs(300)), run: fleck_sweep },
        Criterion { id: 6, name: "predicted product divides", bound: None, run: prop_restated },
        Criterion { id: 7, name: "identity suite", bound: Some(secs(600)), run: identities },
        Criterion { id: 8, name: "integer congruences", bound: Some(secs(60)), run: integer },
        Criterion { id: 9, name: "residual closed form and recursion", bound: None, run: closed_form },
        Criterion { id: 10, name: "q-binomial oracle equivalence", bound: None, run: oracle_equivalence },
        Criterion { id: 11, name: "sharpness witnesses", bound: None, run: sharpness },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.bound) {
            (Ok(_), Some(bound)) if elapsed > bound => {
                Err(format!("took {:.2}s, bound {}s", elapsed.as_secs_f64(), bound.as_secs()))
            }
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.clone())
            }
        };
        println!("[{tag}] criterion {:>2}: {} ({:.2}s) {detail}", c.id, c.name, elapsed.as_secs_f64());
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
