use serde::Serialize;
use serde_json::json;

use super::{primes_up_to, run_cases, CaseResult, Failure, VerifyReport};
use crate::flecksums::{epsilon, fleck_sum, SumSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerRecord {
    pub t: u32,
    pub modulus: usize,
    pub predicted: u32,
    pub observed: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub j: usize,
    /// The class sum vanished, so it witnesses nothing.
    pub zero: bool,
    pub powers: Vec<PowerRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpnessRow {
    pub p: usize,
    pub n: usize,
    pub witnesses: Vec<usize>,
    pub classes: Vec<ClassRecord>,
}

/// Powers `p^t <= n` whose odd cofactor `p^(t-1)` makes `Phi_(p^t)` a
/// predicted factor of the class sum mod `p`; for `p = 2` only `t = 1`.
fn applicable_powers(p: usize, n: usize) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    let mut power = p;
    let mut t = 1;
    while power <= n {
        if p != 2 || t == 1 {
            out.push((t, power));
        }
        power *= p;
        t += 1;
    }
    out
}

fn scan_row(p: usize, n: usize) -> crate::error::Result<SharpnessRow> {
    let powers = applicable_powers(p, n);
    let mut classes = Vec::with_capacity(p);
    for j in 0..p {
        let sum = fleck_sum(&SumSpec::unit(p, n).with_class(j)?)?;
        let zero = sum.is_zero();
        let mut records = Vec::new();
        if !zero {
            for &(t, modulus) in &powers {
                records.push(PowerRecord {
                    t,
                    modulus,
                    predicted: epsilon(modulus, 0, 0, n),
                    observed: sum.phi_valuation(modulus)?,
                });
            }
        }
        classes.push(ClassRecord { j, zero, powers: records });
    }
    let witnesses =
        classes.iter().filter(|c| !c.zero && c.powers.iter().all(|r| r.predicted == r.observed)).map(|c| c.j).collect();
    Ok(SharpnessRow { p, n, witnesses, classes })
}

/// For each prime `p <= p_max` and `p <= n <= n_max`, finds the classes `j`
/// whose `Phi_(p^t)` multiplicities equal the predicted ones for every
/// applicable `t`. A row without a witness is a failure.
pub fn sharpness_scan(p_max: usize, n_max: usize) -> (VerifyReport, Vec<SharpnessRow>) {
    let start = std::time::Instant::now();
    let cases: Vec<(usize, usize)> =
        primes_up_to(p_max).into_iter().flat_map(|p| (p..=n_max).map(move |n| (p, n))).collect();
    let rows: Vec<_> = {
        use rayon::prelude::*;
        cases.par_iter().map(|&(p, n)| scan_row(p, n)).collect()
    };
    let mut report = run_cases("sharpness", json!({"p_max": p_max, "n_max": n_max}), &rows, |row| match row {
        Err(e) => CaseResult::fail(Failure::new(json!(null), "computable row", e)),
        Ok(row) => {
            let info = json!({"p": row.p, "n": row.n, "witnesses": row.witnesses});
            CaseResult::check(!row.witnesses.is_empty(), json!({"p": row.p, "n": row.n}), "some witnessing j", "none")
                .with_info(info)
        }
    });
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    (report, rows.into_iter().filter_map(Result::ok).collect())
}
