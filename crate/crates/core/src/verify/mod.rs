//! Parameter sweeps that check the divisibility theorems, the identities
//! they rest on, and the integer congruences they refine.
//!
//! Every check returns a [`VerifyReport`]. Cases inside a sweep run on the
//! rayon pool and are merged back in grid order, so two runs over the same
//! grid produce the same report apart from `elapsed_ms`.

mod grid;
mod identities;
mod integer;
mod sharpness;
mod table1;
mod theorems;

pub use grid::{random_xpoly, threshold, Case, NRange, SweepGrid};
pub use identities::{
    check_alt_poly, check_euler, check_gaussian, check_q_lucas, check_qbinomial_identities, check_recursions,
};
pub use integer::{check_integer_congruences, IntegerRanges};
pub use sharpness::{sharpness_scan, SharpnessRow};
pub use table1::{table1_report, table1_rows, Table1Row, TABLE1_SPECS};
pub use theorems::{check_closed_form, check_prop_restated, check_theorem_fleck, check_theorem_main};

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

/// Version of the JSON report layout.
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub spec: Value,
    pub required: String,
    pub observed: String,
}

impl Failure {
    pub fn new(spec: impl Serialize, required: impl fmt::Display, observed: impl fmt::Display) -> Self {
        Failure {
            spec: serde_json::to_value(spec).unwrap_or(Value::Null),
            required: required.to_string(),
            observed: observed.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub version: u32,
    pub check_id: String,
    pub grid: Value,
    pub cases_run: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub info: Vec<Value>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &VerifyReport) -> bool {
        VerifyReport { elapsed_ms: 0, ..self.clone() } == VerifyReport { elapsed_ms: 0, ..other.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{}: {verdict} ({} cases, {} failures, {} ms)",
            self.check_id,
            self.cases_run,
            self.failures.len(),
            self.elapsed_ms
        )?;
        for fail in self.failures.iter().take(20) {
            writeln!(f, "  {} required {} observed {}", fail.spec, fail.required, fail.observed)?;
        }
        if self.failures.len() > 20 {
            writeln!(f, "  ... {} more", self.failures.len() - 20)?;
        }
        Ok(())
    }
}

/// What one case contributes to a report.
#[derive(Default)]
pub(crate) struct CaseResult {
    pub failures: Vec<Failure>,
    pub info: Option<Value>,
}

impl CaseResult {
    pub fn pass() -> Self {
        CaseResult::default()
    }

    pub fn fail(f: Failure) -> Self {
        CaseResult { failures: vec![f], info: None }
    }

    pub fn check(ok: bool, spec: impl Serialize, required: impl fmt::Display, observed: impl fmt::Display) -> Self {
        if ok {
            CaseResult::pass()
        } else {
            CaseResult::fail(Failure::new(spec, required, observed))
        }
    }

    pub fn with_info(mut self, info: Value) -> Self {
        self.info = Some(info);
        self
    }
}

/// Evaluates `cases` in parallel and assembles the report in input order.
pub(crate) fn run_cases<C, F>(check_id: &str, grid: Value, cases: &[C], eval: F) -> VerifyReport
where
    C: Sync,
    F: Fn(&C) -> CaseResult + Sync,
{
    let start = Instant::now();
    let results: Vec<CaseResult> = cases.par_iter().map(&eval).collect();
    let mut failures = Vec::new();
    let mut info = Vec::new();
    for r in results {
        failures.extend(r.failures);
        info.extend(r.info);
    }
    VerifyReport {
        version: REPORT_VERSION,
        check_id: check_id.to_string(),
        grid,
        cases_run: cases.len(),
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        info,
    }
}

/// Names accepted by [`run_check`].
pub const CHECK_IDS: &[&str] = &[
    "main",
    "fleck",
    "prop",
    "gaussian",
    "euler",
    "alt-poly",
    "recursions",
    "qbinomial",
    "q-lucas",
    "integer",
    "closed-form",
    "table1",
    "sharpness",
];

/// Options shared by the named checks.
#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub grid: SweepGrid,
    pub n_max: Option<usize>,
    pub p_max: Option<usize>,
    pub exhaustive: bool,
}

/// Runs a check by name, or `None` for an unknown id.
pub fn run_check(id: &str, opts: &CheckOptions) -> Option<VerifyReport> {
    let seed = opts.grid.seed;
    let report = match id {
        "main" => check_theorem_main(&opts.grid),
        "fleck" => check_theorem_fleck(&opts.grid),
        "prop" => check_prop_restated(&opts.grid),
        "gaussian" => check_gaussian(opts.n_max.unwrap_or(40)),
        "euler" => check_euler(opts.n_max.unwrap_or(15)),
        "alt-poly" => check_alt_poly(opts.n_max.unwrap_or(15), 5, seed),
        "recursions" => check_recursions(seed),
        "qbinomial" => check_qbinomial_identities(opts.n_max.unwrap_or(30), opts.n_max.unwrap_or(60)),
        "q-lucas" => {
            let primes = primes_up_to(opts.p_max.unwrap_or(7));
            check_q_lucas(&primes, opts.n_max.unwrap_or(40))
        }
        "integer" => check_integer_congruences(&IntegerRanges::default()),
        "closed-form" => check_closed_form(opts.n_max.unwrap_or(40), 3, 24),
        "table1" => table1_report(),
        "sharpness" => {
            let n_max = opts.n_max.unwrap_or(if opts.exhaustive { 100 } else { 50 });
            sharpness_scan(opts.p_max.unwrap_or(7), n_max).0
        }
        _ => return None,
    };
    Some(report)
}

pub(crate) fn primes_up_to(n: usize) -> Vec<usize> {
    (2..=n).filter(|&p| crate::cyclotomic::is_prime(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runner_keeps_input_order() {
        let cases: Vec<usize> = (0..200).collect();
        let report =
            run_cases("order", Value::Null, &cases, |&i| CaseResult::check(i % 7 != 3, i, "not 3 mod 7", i % 7));
        assert_eq!(report.cases_run, 200);
        let specs: Vec<_> = report.failures.iter().map(|f| f.spec.as_u64().unwrap()).collect();
        assert_eq!(specs, (0..200).filter(|i| i % 7 == 3).collect::<Vec<_>>());
        assert!(!report.passed());
    }

    #[test]
    fn report_json_shape() {
        let report = run_cases("shape", serde_json::json!({"n": [1, 2]}), &[1u8], |_| CaseResult::pass());
        let v: Value = serde_json::from_str(&report.to_json()).unwrap();
        for key in ["version", "check_id", "grid", "cases_run", "failures", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["failures"], serde_json::json!([]));
    }

    #[test]
    fn unknown_check_id() {
        assert!(run_check("nope", &CheckOptions::default()).is_none());
        assert_eq!(primes_up_to(12), vec![2, 3, 5, 7, 11]);
    }
}
