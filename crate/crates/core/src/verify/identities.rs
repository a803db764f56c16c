use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rand::Rng;
use serde_json::json;

use super::grid::{random_xpoly, tuple_rng};
use super::{run_cases, CaseResult, Failure, VerifyReport};
use crate::bigpoly::Poly;
use crate::cyclotomic::cyclotomic_shared;
use crate::cycring::{CycPoly, RingCtx};
use crate::error::Result;
use crate::flecksums::{fleck_sum, g_sum, gaussian_closed_form, make_rj, q_sum, SumSpec, XPoly};
use crate::qbinomial::{int_binom, qbinom_shared};

/// Full sum `Q^(l)_c(P, z, n)` for a weight already bound to a context.
fn q(p: &XPoly, l: usize, z: usize, n: usize) -> Result<CycPoly> {
    q_sum(&SumSpec::new(p.clone(), l, z, n))
}

/// Full sum with `P = 1` against the product `prod_{k odd} (1 - q^k)`.
pub fn check_gaussian(n_max: usize) -> VerifyReport {
    let ns: Vec<usize> = (1..=n_max).collect();
    run_cases("gaussian", json!({"n_max": n_max}), &ns, |&n| {
        let expected = gaussian_closed_form(n);
        match q_sum(&SumSpec::unit(1, n)).and_then(|s| s.to_bigpoly()) {
            Ok(s) => CaseResult::check(s == expected, json!({"n": n}), &expected, s),
            Err(e) => CaseResult::fail(Failure::new(json!({"n": n}), &expected, e)),
        }
    })
}

/// `sum (-1)^m C(n, m) m^l` is zero for `l < n` and `(-1)^n n!` for `l = n`.
pub fn check_euler(n_max: usize) -> VerifyReport {
    let cases: Vec<(usize, usize)> = (0..=n_max).flat_map(|n| (0..=n).map(move |l| (n, l))).collect();
    run_cases("euler", json!({"n_max": n_max}), &cases, |&(n, l)| {
        let mut sum = BigInt::zero();
        for m in 0..=n {
            let term = int_binom(n, m as i64) * Pow::pow(BigInt::from(m), l as u32);
            if m % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let expected = if l < n {
            BigInt::zero()
        } else {
            let fact: BigInt = (1..=n).map(BigInt::from).product();
            if n % 2 == 0 {
                fact
            } else {
                -fact
            }
        };
        CaseResult::check(sum == expected, json!({"n": n, "l": l}), &expected, &sum)
    })
}

/// `sum (-1)^m P(m) C(n, m) = 0` for random integer `P` with `deg P < n`.
pub fn check_alt_poly(n_max: usize, per_n: usize, seed: u64) -> VerifyReport {
    let cases: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (0..per_n).map(move |i| (n, i))).collect();
    run_cases("alt-poly", json!({"n_max": n_max, "per_n": per_n, "seed": seed}), &cases, |&(n, i)| {
        let mut rng = tuple_rng(seed, &[n, i, 0xa1]);
        let deg = rng.gen_range(0..n);
        let mut coeffs: Vec<BigInt> = (0..=deg).map(|_| rng.gen_range(-9i64..=9).into()).collect();
        if coeffs[deg].is_zero() {
            coeffs[deg] = BigInt::one();
        }
        let p = Poly::from_coeffs(coeffs);
        let mut sum = BigInt::zero();
        for m in 0..=n {
            let term = p.eval_i64(m as i64) * int_binom(n, m as i64);
            if m % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        CaseResult::check(sum.is_zero(), json!({"n": n, "P": p.to_string_in("x")}), 0, &sum)
    })
}

/// Pascal rule, absorption rule, `Phi_n | 1 - q^m iff n | m`, and
/// `Phi_n | [n, m]` for `0 < m < n`.
pub fn check_qbinomial_identities(n_max_rules: usize, n_max_divisibility: usize) -> VerifyReport {
    enum Id {
        Rules(usize),
        Divisibility(usize),
    }
    let mut cases: Vec<Id> = (0..=n_max_rules).map(Id::Rules).collect();
    cases.extend((2..=n_max_divisibility).map(Id::Divisibility));
    let grid = json!({"rules_n_max": n_max_rules, "divisibility_n_max": n_max_divisibility});
    run_cases("qbinomial", grid, &cases, |case| {
        let mut out = CaseResult::pass();
        match *case {
            Id::Rules(n) => {
                for m in 0..=n + 1 {
                    let lhs = qbinom_shared(n + 1, m as i64);
                    let rhs = &qbinom_shared(n, m as i64).shift(m) + &qbinom_shared(n, m as i64 - 1);
                    if *lhs != rhs {
                        out.failures.push(Failure::new(json!({"rule": "pascal", "n": n, "m": m}), &rhs, &lhs));
                    }
                }
                for m in 1..=n {
                    let lhs = &Poly::one_minus_q_pow(m) * &qbinom_shared(n, m as i64);
                    let rhs = &Poly::one_minus_q_pow(n) * &qbinom_shared(n - 1, m as i64 - 1);
                    if lhs != rhs {
                        out.failures.push(Failure::new(json!({"rule": "absorption", "n": n, "m": m}), &rhs, &lhs));
                    }
                }
                if n >= 1 {
                    for m in 1..=n_max_rules {
                        let divides = Poly::one_minus_q_pow(m)
                            .divmod_monic(&cyclotomic_shared(n))
                            .is_ok_and(|(_, r)| r.is_zero());
                        if divides != (m % n == 0) {
                            out.failures.push(Failure::new(
                                json!({"rule": "cyclotomic divides 1-q^m", "n": n, "m": m}),
                                m % n == 0,
                                divides,
                            ));
                        }
                    }
                }
            }
            Id::Divisibility(n) => {
                let phi = cyclotomic_shared(n);
                for m in 1..n {
                    let rem = qbinom_shared(n, m as i64).divmod_monic(&phi).map(|(_, r)| r);
                    if !rem.as_ref().is_ok_and(Poly::is_zero) {
                        out.failures.push(Failure::new(
                            json!({"rule": "Phi_n | [n,m]", "n": n, "m": m}),
                            0,
                            format!("{rem:?}"),
                        ));
                    }
                }
            }
        }
        out
    })
}

/// `[n, m] = C(n div p, m div p) [n mod p, m mod p] (mod Phi_p)`.
pub fn check_q_lucas(primes: &[usize], n_max: usize) -> VerifyReport {
    let cases: Vec<(usize, usize)> = primes.iter().flat_map(|&p| (0..=n_max).map(move |n| (p, n))).collect();
    run_cases("q-lucas", json!({"primes": primes, "n_max": n_max}), &cases, |&(p, n)| {
        let phi = cyclotomic_shared(p);
        let mut out = CaseResult::pass();
        for m in 0..=n {
            let reduced = qbinom_shared(n % p, (m % p) as i64).scale(&int_binom(n / p, (m / p) as i64));
            let diff = &*qbinom_shared(n, m as i64) - &reduced;
            let rem = diff.divmod_monic(&phi).map(|(_, r)| r);
            if !rem.as_ref().is_ok_and(Poly::is_zero) {
                out.failures.push(Failure::new(json!({"p": p, "n": n, "m": m}), "remainder 0", format!("{rem:?}")));
            }
        }
        out
    })
}

enum Recursion {
    /// `n` lowered by one through the `P(x+1)` shift.
    StepN { c: usize, deg: usize, n: usize },
    /// `z + 1` expressed through `z`, with the derivative correction terms.
    StepZ { c: usize, deg: usize, l: usize, z: usize, n: usize },
    /// Splitting `n = t + (n - t)`.
    Split { c: usize, deg: usize, n: usize, t: usize },
    /// Class sum recovered from the twisted full sums.
    Filter { c: usize, deg: usize, l: usize, z: usize, n: usize, j: usize },
}

impl Recursion {
    fn label(&self) -> serde_json::Value {
        match *self {
            Recursion::StepN { c, deg, n } => json!({"identity": "n-step", "c": c, "degP": deg, "n": n}),
            Recursion::StepZ { c, deg, l, z, n } => {
                json!({"identity": "z-step", "c": c, "degP": deg, "l": l, "z": z, "n": n})
            }
            Recursion::Split { c, deg, n, t } => json!({"identity": "split", "c": c, "degP": deg, "n": n, "t": t}),
            Recursion::Filter { c, deg, l, z, n, j } => {
                json!({"identity": "filter", "c": c, "degP": deg, "l": l, "z": z, "n": n, "j": j})
            }
        }
    }

    fn tuple(&self) -> Vec<usize> {
        match *self {
            Recursion::StepN { c, deg, n } => vec![1, c, deg, n],
            Recursion::StepZ { c, deg, l, z, n } => vec![2, c, deg, l, z, n],
            Recursion::Split { c, deg, n, .. } => vec![3, c, deg, n],
            Recursion::Filter { c, deg, l, z, n, .. } => vec![4, c, deg, l, z, n],
        }
    }

    fn ctx(&self) -> RingCtx {
        let c = match *self {
            Recursion::StepN { c, .. }
            | Recursion::StepZ { c, .. }
            | Recursion::Split { c, .. }
            | Recursion::Filter { c, .. } => c,
        };
        RingCtx::new(c)
    }

    fn deg(&self) -> usize {
        match *self {
            Recursion::StepN { deg, .. }
            | Recursion::StepZ { deg, .. }
            | Recursion::Split { deg, .. }
            | Recursion::Filter { deg, .. } => deg,
        }
    }

    /// Both sides of the identity.
    fn sides(&self, seed: u64) -> Result<(CycPoly, CycPoly)> {
        let ctx = self.ctx();
        let p = random_xpoly(&ctx, self.deg(), &mut tuple_rng(seed, &self.tuple()));
        let zeta = ctx.zeta_pow(1);
        match *self {
            Recursion::StepN { n, .. } => {
                let p1 = p.shift(1);
                let lhs = q(&p, 0, 0, n)?;
                let a = q(&p, 0, 0, n - 1)?;
                let b = q(&p1, 0, 0, n - 1)?.mul_elem(&zeta)?;
                let c = q(&p1, 0, 0, n - 2)?.mul_int_poly(&Poly::one_minus_q_pow(n - 1)).mul_elem(&zeta)?;
                Ok((lhs, ctx.cpoly_sub(&ctx.cpoly_add(&a, &b)?, &c)?))
            }
            Recursion::StepZ { l, z, n, .. } => {
                let mut lhs = q(&p, l, z + 1, n)?;
                for j in 1..=l {
                    let weight = p.mul(&make_rj(&ctx, l, j)?)?;
                    let term = q(&weight, l - j, z + 1, n)?;
                    let lowered = term.unshift(j).ok_or_else(|| {
                        crate::error::Error::NotDivisible(format!("correction term {j} is not divisible by q^{j}"))
                    })?;
                    lhs = ctx.cpoly_add(&lhs, &lowered)?;
                }
                let a = q(&p, l, z, n + 1)?;
                let b = q(&p.shift(1), l, z, n)?.shift(z).mul_elem(&zeta)?;
                Ok((lhs, ctx.cpoly_sub(&a, &b)?))
            }
            Recursion::Split { n, t, .. } => {
                let lhs = q(&p, 0, 0, n)?;
                let mut rhs = ctx.cpoly_zero();
                for m in 0..=n - t {
                    for j in 0..=t {
                        let w = ctx.elem_mul(&ctx.zeta_pow((m + t - j) as i64), &p.eval((m + t - j) as i64))?;
                        let prod = &*qbinom_shared(t, j as i64) * &qbinom_shared(n - t, m as i64);
                        rhs.add_elem_times(&w, &prod, j * m)?;
                    }
                }
                Ok((lhs, rhs))
            }
            Recursion::Filter { l, z, n, j, .. } => {
                let c = ctx.c();
                let mut lhs = ctx.cpoly_zero();
                for h in 0..c {
                    let twist = ctx.zeta_pow(-2 * (j * h) as i64);
                    lhs = ctx.cpoly_add(&lhs, &g_sum(&ctx, h, &p, z, l, n)?.mul_elem(&twist)?)?;
                }
                let class = fleck_sum(&SumSpec::new(p, l, z, n).with_class(j)?)?;
                let rhs = class.mul_elem(&ctx.zeta_pow(j as i64))?.scale_int(&BigInt::from(c));
                Ok((lhs, rhs))
            }
        }
    }
}

/// The recursions behind the divisibility proofs, each as an exact
/// polynomial identity over a fixed grid with seeded random weights.
pub fn check_recursions(seed: u64) -> VerifyReport {
    let mut cases = Vec::new();
    for c in 1..=4 {
        for deg in 0..=2 {
            cases.extend((2..=20).map(|n| Recursion::StepN { c, deg, n }));
        }
        for deg in 0..=1 {
            for l in 0..=2 {
                for z in 0..=3 {
                    cases.extend((0..=16).map(|n| Recursion::StepZ { c, deg, l, z, n }));
                }
            }
            for n in 0..=12 {
                cases.extend((0..=n).map(|t| Recursion::Split { c, deg, n, t }));
            }
            for l in 0..=1 {
                for z in 0..=1 {
                    for n in 0..=14 {
                        cases.extend((0..c).map(|j| Recursion::Filter { c, deg, l, z, n, j }));
                    }
                }
            }
        }
    }
    let grid = json!({
        "seed": seed,
        "n-step": {"c_max": 4, "degP_max": 2, "n": "2..20"},
        "z-step": {"c_max": 4, "degP_max": 1, "l_max": 2, "z_max": 3, "n_max": 16},
        "split": {"c_max": 4, "degP_max": 1, "n_max": 12},
        "filter": {"c_max": 4, "degP_max": 1, "l_max": 1, "z_max": 1, "n_max": 14},
    });
    run_cases("recursions", grid, &cases, |case| match case.sides(seed) {
        Ok((lhs, rhs)) => CaseResult::check(lhs == rhs, case.label(), &rhs, &lhs),
        Err(e) => CaseResult::fail(Failure::new(case.label(), "balanced identity", e)),
    })
}
