use std::collections::BTreeMap;

use num_rational::Ratio;
use serde_json::json;

use super::grid::{Case, NRange, SweepGrid};
use super::{run_cases, CaseResult, Failure, VerifyReport};
use crate::bigpoly::Poly;
use crate::cycring::{CycPoly, RingCtx};
use crate::error::Result;
use crate::flecksums::{alpha, beta, evaluate, product_of_powers, residual_r, round_nearest, SumSpec, XPoly};

/// `Phi_m`-adic valuation, `None` standing for the zero polynomial.
fn valuation(p: &CycPoly, m: usize) -> Result<Option<u32>> {
    if p.is_zero() {
        return Ok(None);
    }
    p.phi_valuation(m).map(Some)
}

fn show(v: Option<u32>) -> String {
    v.map_or_else(|| "inf".to_string(), |e| e.to_string())
}

fn spec_of(case: &Case, j: Option<usize>) -> SumSpec {
    SumSpec { p: case.p.clone(), l: case.l, z: case.z, n: case.n, class_j: j }
}

/// Checks `Phi_kc^(d+1)` divides one sum; returns the failure, if any, and
/// the observed valuation.
fn divisibility(case: &Case, j: Option<usize>) -> (Option<Failure>, Option<u32>) {
    let mut record = serde_json::to_value(case).expect("case serializes");
    record["j"] = json!(j);
    let required = format!("v_Phi{} >= {}", case.kc(), case.d + 1);
    match evaluate(&spec_of(case, j)).and_then(|s| valuation(&s, case.kc())) {
        Ok(v) if v.is_none_or(|e| e > case.d as u32) => (None, v),
        Ok(v) => (Some(Failure::new(record, required, show(v))), v),
        Err(e) => (Some(Failure::new(record, required, e)), None),
    }
}

fn theorem_sweep(id: &str, grid: &SweepGrid, classes: bool) -> VerifyReport {
    let (cases, probes) = match (grid.cases(), grid.probe_cases()) {
        (Ok(c), Ok(p)) => (c, p),
        (Err(e), _) | (_, Err(e)) => {
            let fail = Failure::new(grid.to_value(), "valid grid", e);
            return run_cases(id, grid.to_value(), &[()], |_| CaseResult::fail(fail.clone()));
        }
    };
    let js = |case: &Case| -> Vec<Option<usize>> {
        if classes {
            grid.classes(case.c).into_iter().map(Some).collect()
        } else {
            vec![None]
        }
    };
    let mut report = run_cases(id, grid.to_value(), &cases, |case| {
        let mut out = CaseResult::pass();
        let mut observed = Vec::new();
        for j in js(case) {
            let (fail, v) = divisibility(case, j);
            out.failures.extend(fail);
            observed.push(json!({"j": j, "valuation": v}));
        }
        out.with_info(
            json!({"c": case.c, "k": case.k, "l": case.l, "d": case.d, "z": case.z, "n": case.n, "observed": observed}),
        )
    });
    // Below the threshold the theorems claim nothing; tally how often the
    // conclusion holds anyway.
    let tallies: Vec<(usize, usize)> = {
        use rayon::prelude::*;
        probes
            .par_iter()
            .map(|case| {
                let js = js(case);
                let held = js.iter().filter(|&&j| divisibility(case, j).0.is_none()).count();
                (js.len(), held)
            })
            .collect()
    };
    let (total, held) = tallies.iter().fold((0, 0), |(t, h), (a, b)| (t + a, h + b));
    report.info.push(json!({"below_threshold": {"sums": total, "conclusion_held": held}}));
    report
}

/// Divisibility of the full sum by `Phi_kc^(d+1)` over the grid.
pub fn check_theorem_main(grid: &SweepGrid) -> VerifyReport {
    theorem_sweep("main", grid, false)
}

/// Divisibility of every class sum by `Phi_kc^(d+1)` over the grid.
pub fn check_theorem_fleck(grid: &SweepGrid) -> VerifyReport {
    theorem_sweep("fleck", grid, true)
}

#[derive(serde::Serialize)]
struct PropCase {
    c: usize,
    l: usize,
    z: usize,
    n: usize,
    #[serde(rename = "P", serialize_with = "xpoly_text")]
    p: XPoly,
}

fn xpoly_text<S: serde::Serializer>(p: &XPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// Exact division of the full sum and every class sum by the predicted
/// cyclotomic product, for every `n` of the grid including sub-threshold ones.
pub fn check_prop_restated(grid: &SweepGrid) -> VerifyReport {
    let ns: Vec<usize> = match &grid.n {
        NRange::Threshold { cap, .. } => (0..=*cap).collect(),
        NRange::Explicit(ns) => ns.clone(),
    };
    let mut cases = Vec::new();
    let mut bad_weight = None;
    for &c in &grid.c {
        let ctx = RingCtx::new(c);
        for &l in &grid.l {
            for &z in &grid.z {
                let degs: Vec<usize> = if grid.p_override.is_some() { vec![0] } else { grid.deg_p.clone() };
                for &deg in &degs {
                    for &n in &ns {
                        match grid.weight(&ctx, deg, &[c, l, z, deg, n, 0x9]) {
                            Ok(p) => cases.push(PropCase { c, l, z, n, p }),
                            Err(e) => bad_weight = Some(e),
                        }
                    }
                }
            }
        }
    }
    if let Some(cap) = grid.case_cap {
        cases.truncate(cap);
    }
    let mut report = run_cases("prop", grid.to_value(), &cases, |case| {
        let mut out = CaseResult::pass();
        let base = SumSpec { p: case.p.clone(), l: case.l, z: case.z, n: case.n, class_j: None };
        let specs = std::iter::once(None).chain(grid.classes(case.c).into_iter().map(Some));
        for j in specs {
            let spec = SumSpec { class_j: j, ..base.clone() };
            if let Err(e) = residual_r(&spec) {
                out.failures.push(Failure::new(&spec, "divisible by predicted product", e));
            }
        }
        out
    });
    if let Some(e) = bad_weight {
        report.failures.push(Failure::new(grid.to_value(), "valid weight", e));
    }
    report
}

enum ClosedCase {
    Residual(usize),
    Recursion { c: usize, n: usize },
    Indicators { kc: usize, n_max: usize },
}

fn residual_unit(c: usize, n: usize) -> Result<CycPoly> {
    residual_r(&SumSpec::unit(c, n))
}

fn odd_multiple_product(c: usize, n: usize, f: impl Fn(usize) -> u32) -> Poly {
    let exps: BTreeMap<usize, u32> = (1..)
        .step_by(2)
        .map(|k| k * c)
        .take_while(|&kc| kc <= n)
        .map(|kc| (kc, f(kc)))
        .filter(|&(_, e)| e > 0)
        .collect();
    product_of_powers(&exps)
}

fn recursion_balances(c: usize, n: usize) -> Result<bool> {
    let ctx = RingCtx::new(c);
    let zeta = ctx.zeta_pow(1);
    let lhs = residual_unit(c, n)?.mul_int_poly(&odd_multiple_product(c, n, |kc| alpha(kc, n)));
    let one_plus_zeta = ctx.elem_add(&ctx.elem_one(), &zeta)?;
    let first = residual_unit(c, n - 1)?
        .mul_int_poly(&odd_multiple_product(c, n, |kc| beta(kc, n)))
        .mul_elem(&one_plus_zeta)?;
    let second = residual_unit(c, n - 2)?.mul_int_poly(&Poly::one_minus_q_pow(n - 1)).mul_elem(&zeta)?;
    Ok(lhs == ctx.cpoly_sub(&first, &second)?)
}

/// The `c = 1` residual closed form, the residual recursion for small `c`,
/// and the rounding form of the recursion's indicators.
pub fn check_closed_form(n_max: usize, c_max: usize, rec_n_max: usize) -> VerifyReport {
    let mut cases: Vec<ClosedCase> = (0..=n_max).map(ClosedCase::Residual).collect();
    for c in 1..=c_max {
        cases.extend((3..=rec_n_max).map(|n| ClosedCase::Recursion { c, n }));
    }
    cases.extend((1..=30).map(|kc| ClosedCase::Indicators { kc, n_max: 100 }));
    let grid = json!({"residual_n_max": n_max, "recursion_c_max": c_max, "recursion_n_max": rec_n_max, "indicator_kc_max": 30, "indicator_n_max": 100});
    run_cases("closed-form", grid, &cases, |case| match *case {
        ClosedCase::Residual(n) => {
            let expected = match n % 2 {
                0 if (n / 2) % 2 == 0 => Poly::one(),
                0 => Poly::constant(-1),
                _ => Poly::zero(),
            };
            let spec = json!({"c": 1, "n": n});
            match residual_unit(1, n).and_then(|r| r.to_bigpoly()) {
                Ok(r) => CaseResult::check(r == expected, spec, &expected, r),
                Err(e) => CaseResult::fail(Failure::new(spec, &expected, e)),
            }
        }
        ClosedCase::Recursion { c, n } => {
            let spec = json!({"c": c, "n": n, "identity": "residual recursion"});
            match recursion_balances(c, n) {
                Ok(ok) => CaseResult::check(ok, spec, "balanced", "unbalanced"),
                Err(e) => CaseResult::fail(Failure::new(spec, "balanced", e)),
            }
        }
        ClosedCase::Indicators { kc, n_max } => {
            let rn = |num: i64| round_nearest(Ratio::new(num, 2 * kc as i64)) as i64;
            let mut out = CaseResult::pass();
            for n in 0..=n_max {
                let ni = n as i64;
                let a = rn(ni) - rn(ni - 2);
                let b = rn(ni - 1) - rn(ni - 2);
                if a != alpha(kc, n) as i64 || b != beta(kc, n) as i64 {
                    out.failures.push(Failure::new(
                        json!({"kc": kc, "n": n}),
                        format!("alpha={a} beta={b}"),
                        format!("alpha={} beta={}", alpha(kc, n), beta(kc, n)),
                    ));
                }
            }
            out
        }
    })
}
