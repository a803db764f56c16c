use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Pow, Zero};
use serde::Serialize;
use serde_json::json;

use super::{run_cases, CaseResult, VerifyReport};
use crate::cyclotomic::euler_phi;
use crate::flecksums::round_nearest;
use crate::qbinomial::int_binom;

/// Parameter ranges for the integer congruence families.
#[derive(Clone, Debug, Serialize)]
pub struct IntegerRanges {
    pub fleck_primes: Vec<usize>,
    pub fleck_n_max: usize,
    pub prime_power_primes: Vec<usize>,
    pub prime_power_alpha_max: u32,
    pub prime_power_n_max: usize,
    pub two_power_alpha_max: u32,
    pub two_power_n_max: usize,
}

impl Default for IntegerRanges {
    fn default() -> Self {
        IntegerRanges {
            fleck_primes: vec![2, 3, 5, 7],
            fleck_n_max: 60,
            prime_power_primes: vec![2, 3, 5],
            prime_power_alpha_max: 2,
            prime_power_n_max: 60,
            two_power_alpha_max: 3,
            two_power_n_max: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Family {
    /// `p^floor((n-1)/(p-1))`, sign `(-1)^m`, modulus `p`.
    Fleck,
    /// `p^(floor(n/phi(p^a)) - 1)`, sign `(-1)^m`.
    Weisman,
    /// `p^floor((n - p^(a-1))/phi(p^a))`, sign `(-1)^m`.
    Sun,
    /// Sum of rounded `n / (2 p^(a+i))`, sign `(-1)^((m-j)/p^a)`.
    Alternating,
    /// `2^floor(n/2^a)`, sign `(-1)^((m-j)/2^a)`.
    TwoPower,
}

#[derive(Clone, Copy, Debug, Serialize)]
struct IntCase {
    family: Family,
    p: usize,
    alpha: u32,
    n: usize,
}

/// `sum_{m = j mod modulus} sign(m) C(n, m)`.
fn class_sum(n: usize, modulus: usize, j: usize, alternating: bool) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, m) in (j..=n).step_by(modulus).enumerate() {
        let negative = if alternating { i % 2 == 1 } else { m % 2 == 1 };
        let b = int_binom(n, m as i64);
        if negative {
            acc -= b;
        } else {
            acc += b;
        }
    }
    acc
}

fn exponent(case: &IntCase) -> u64 {
    let IntCase { family, p, alpha, n } = *case;
    let (p, n) = (p as i64, n as i64);
    let pa = p.pow(alpha);
    let phi = euler_phi(pa as usize) as i64;
    let e = match family {
        Family::Fleck => (n - 1).div_euclid(p - 1),
        Family::Weisman => n.div_euclid(phi) - 1,
        Family::Sun => (n - p.pow(alpha - 1)).div_euclid(phi),
        Family::Alternating if p == 2 => round_nearest(Ratio::new(n, 2 * pa)) as i64,
        Family::Alternating => {
            let mut total = 0;
            let mut power = pa;
            while power <= n {
                total += round_nearest(Ratio::new(n, 2 * power)) as i64;
                power *= p;
            }
            total
        }
        Family::TwoPower => n.div_euclid(pa),
    };
    e.max(0) as u64
}

/// Divisibility of integer alternating class sums by the prime powers of
/// Fleck, Weisman, Sun, and their alternating-sign refinements.
pub fn check_integer_congruences(ranges: &IntegerRanges) -> VerifyReport {
    let mut cases = Vec::new();
    for &p in &ranges.fleck_primes {
        cases.extend((0..=ranges.fleck_n_max).map(|n| IntCase { family: Family::Fleck, p, alpha: 1, n }));
    }
    for family in [Family::Weisman, Family::Sun, Family::Alternating] {
        for &p in &ranges.prime_power_primes {
            for alpha in 1..=ranges.prime_power_alpha_max {
                cases.extend((0..=ranges.prime_power_n_max).map(|n| IntCase { family, p, alpha, n }));
            }
        }
    }
    for alpha in 1..=ranges.two_power_alpha_max {
        cases.extend((0..=ranges.two_power_n_max).map(|n| IntCase { family: Family::TwoPower, p: 2, alpha, n }));
    }
    let grid = serde_json::to_value(ranges).expect("ranges serialize");
    run_cases("integer", grid, &cases, |case| {
        let modulus = case.p.pow(case.alpha);
        let alternating = matches!(case.family, Family::Alternating | Family::TwoPower);
        let e = exponent(case);
        let divisor: BigInt = Pow::pow(BigInt::from(case.p), e);
        let mut out = CaseResult::pass();
        for j in 0..modulus {
            let sum = class_sum(case.n, modulus, j, alternating);
            if !(&sum % &divisor).is_zero() {
                let mut spec = serde_json::to_value(case).expect("case serializes");
                spec["j"] = json!(j);
                out.failures.push(super::Failure::new(spec, format!("divisible by {}^{e}", case.p), sum));
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(family: Family, p: usize, alpha: u32, n: usize) -> IntCase {
        IntCase { family, p, alpha, n }
    }

    #[test]
    fn hand_examples() {
        assert_eq!(class_sum(5, 3, 0, false), BigInt::from(-9));
        assert_eq!(exponent(&case(Family::Fleck, 3, 1, 5)), 2);
        assert_eq!(class_sum(4, 2, 0, true), BigInt::from(-4));
        assert_eq!(exponent(&case(Family::TwoPower, 2, 1, 4)), 2);
        assert_eq!(exponent(&case(Family::Alternating, 2, 1, 8)), 2);
        assert_eq!(class_sum(8, 2, 0, true), BigInt::from(16));
    }

    #[test]
    fn exponents_clamp_at_zero() {
        assert_eq!(exponent(&case(Family::Fleck, 5, 1, 0)), 0);
        assert_eq!(exponent(&case(Family::Weisman, 3, 2, 3)), 0);
        assert_eq!(exponent(&case(Family::Sun, 5, 2, 2)), 0);
        assert_eq!(exponent(&case(Family::Sun, 3, 2, 9)), 1);
        // n/6 + n/18 rounded, n = 20: 3 + 1
        assert_eq!(exponent(&case(Family::Alternating, 3, 1, 20)), 4);
    }

    #[test]
    fn small_ranges_pass() {
        let ranges =
            IntegerRanges { fleck_n_max: 20, prime_power_n_max: 20, two_power_n_max: 20, ..IntegerRanges::default() };
        let report = check_integer_congruences(&ranges);
        assert!(report.passed(), "{report}");
    }
}
