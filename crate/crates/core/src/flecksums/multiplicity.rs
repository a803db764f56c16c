//! Predicted cyclotomic multiplicities.
//!
//! Everything here is exact rational arithmetic: the half-integer tie rule of
//! the rounding function decides several multiplicities.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;

use crate::bigpoly::Poly;
use crate::cyclotomic::cyclotomic_shared;

/// The nonnegative integer nearest to `x`: 0 below 1/2, halves round up.
pub fn round_nearest(x: Ratio<i64>) -> u64 {
    if x < Ratio::new(1, 2) {
        return 0;
    }
    (x + Ratio::new(1, 2)).floor().to_integer() as u64
}

/// `round_nearest(n / (2 kc) - deg_p / 2 - l)`.
pub fn epsilon(kc: usize, l: usize, deg_p: usize, n: usize) -> u32 {
    assert!(kc >= 1);
    let x = Ratio::new(n as i64, 2 * kc as i64) - Ratio::new(deg_p as i64, 2) - Ratio::from(l as i64);
    round_nearest(x) as u32
}

/// 1 if `n = i kc` or `n = i kc + 1` for some odd `i`.
pub fn alpha(kc: usize, n: usize) -> u32 {
    let odd_multiple = |v: usize| v > 0 && v.is_multiple_of(kc) && (v / kc).is_odd();
    (odd_multiple(n) || (n >= 1 && odd_multiple(n - 1))) as u32
}

/// 1 if `n = i kc + 1` for some odd `i`.
pub fn beta(kc: usize, n: usize) -> u32 {
    (n >= 1 && n - 1 > 0 && (n - 1).is_multiple_of(kc) && ((n - 1) / kc).is_odd()) as u32
}

/// Nonzero exponents `kc -> epsilon(kc, ...)` over odd `k`.
pub fn predicted_exponents(c: usize, l: usize, deg_p: usize, n: usize) -> BTreeMap<usize, u32> {
    (1..)
        .step_by(2)
        .map(|k| k * c)
        .take_while(|&kc| kc <= n)
        .map(|kc| (kc, epsilon(kc, l, deg_p, n)))
        .filter(|&(_, e)| e > 0)
        .collect()
}

/// `prod_{k odd} Phi_{kc}(q)^epsilon(kc, l, deg_p, n)`; the empty product is 1.
pub fn predicted_product(c: usize, l: usize, deg_p: usize, n: usize) -> Poly {
    product_of_powers(&predicted_exponents(c, l, deg_p, n))
}

pub fn product_of_powers(exponents: &BTreeMap<usize, u32>) -> Poly {
    exponents.iter().fold(Poly::one(), |acc, (&m, &e)| &acc * &cyclotomic_shared(m).pow(e))
}
