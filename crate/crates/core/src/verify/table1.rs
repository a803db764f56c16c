use serde::Serialize;
use serde_json::json;

use super::{run_cases, CaseResult, Failure, VerifyReport};
use crate::bigpoly::Poly;
use crate::error::Result;
use crate::flecksums::{factor_report, fleck_sum_int, predicted_exponents, FactorReport, SumSpec};

/// `(c, j, n)` for each tabulated class sum with `P = 1`, `z = l = 0`.
pub const TABLE1_SPECS: [(usize, usize, usize); 3] = [(3, 1, 8), (5, 1, 21), (7, 3, 23)];

const GOLDEN: [&str; 3] = [
    include_str!("../../golden/table1_row1.txt"),
    include_str!("../../golden/table1_row2.txt"),
    include_str!("../../golden/table1_row3.txt"),
];

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub spec: SumSpec,
    pub report: FactorReport<Poly>,
    /// Tabulated non-cyclotomic part, normalized to positive leading
    /// coefficient and no factor of `q`.
    pub golden: Poly,
    pub matches: bool,
}

/// Product of the factors listed one per line.
fn parse_golden(text: &str) -> Result<Poly> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .try_fold(Poly::one(), |acc, line| Ok(&acc * &line.parse::<Poly>()?))
}

fn normalize(p: &Poly) -> Poly {
    let shift = p.low_degree().unwrap_or(0);
    let p = p.unshift(shift).unwrap_or_default();
    if p.leading_sign() < 0 {
        -p
    } else {
        p
    }
}

/// Recomputes each tabulated sum and factors it.
pub fn table1_rows() -> Result<Vec<Table1Row>> {
    TABLE1_SPECS
        .iter()
        .zip(GOLDEN)
        .map(|(&(c, j, n), text)| {
            let spec = SumSpec::unit(c, n).with_class(j)?;
            let sum = fleck_sum_int(&spec)?;
            let report = factor_report(&sum, &predicted_exponents(c, 0, 0, n))?;
            let golden = normalize(&parse_golden(text)?);
            let matches = normalize(&report.residual) == golden;
            Ok(Table1Row { spec, report, golden, matches })
        })
        .collect()
}

/// Residual of each tabulated sum against the transcribed polynomial, up to
/// sign and a power of `q`.
pub fn table1_report() -> VerifyReport {
    let start = std::time::Instant::now();
    let rows = table1_rows();
    let idx: Vec<usize> = (0..TABLE1_SPECS.len()).collect();
    let mut report = run_cases("table1", json!({"rows": TABLE1_SPECS}), &idx, |&i| {
        let (c, j, n) = TABLE1_SPECS[i];
        let label = json!({"c": c, "j": j, "n": n});
        match &rows {
            Err(e) => CaseResult::fail(Failure::new(label, "computable row", e)),
            Ok(rows) => {
                let row = &rows[i];
                let info = json!({
                    "row": i + 1,
                    "factored": row.report.to_string(),
                    "meets_prediction": row.report.meets_prediction(),
                });
                CaseResult::check(row.matches, label, &row.golden, &row.report.residual).with_info(info)
            }
        }
    });
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}
