//! Independent reference computations for the integration and acceptance tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use qfleck_core::Poly;

/// `[n, m]_q` from the product formula by exact division.
pub fn qbinom_product(n: usize, m: usize) -> Poly {
    if m > n {
        return Poly::zero();
    }
    let num = (0..m).fold(Poly::one(), |acc, i| &acc * &Poly::one_minus_q_pow(n - i));
    let den = (1..=m).fold(Poly::one(), |acc, i| &acc * &Poly::one_minus_q_pow(i));
    num.divexact(&den).expect("product formula divides")
}

/// Class sum with sign `(-1)^((m-j)/c)`, summed term by term from product-formula binomials.
pub fn class_sum_brute(c: usize, j: usize, n: usize) -> Poly {
    let mut acc = Poly::zero();
    for (i, m) in (j..=n).step_by(c).enumerate() {
        let term = qbinom_product(n, m);
        acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Class sum with sign `(-1)^m`.
pub fn class_sum_plain_brute(c: usize, j: usize, n: usize) -> Poly {
    let mut acc = Poly::zero();
    for m in (j..=n).step_by(c) {
        let term = qbinom_product(n, m);
        acc = if m % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `prod_{k odd <= n} (1 - q^k)` for even `n`, else zero.
pub fn gaussian_product(n: usize) -> Poly {
    if n % 2 == 1 {
        return Poly::zero();
    }
    (1..=n).step_by(2).fold(Poly::one(), |acc, k| &acc * &Poly::one_minus_q_pow(k))
}

/// `1 + q + ... + q^(n-1)`.
pub fn repunit(n: usize) -> Poly {
    Poly::from_i64(&vec![1; n])
}

/// Binomial coefficient by the multiplicative formula.
pub fn binom(n: u64, m: u64) -> BigInt {
    if m > n {
        return BigInt::from(0);
    }
    (0..m).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

pub fn poly(s: &str) -> Poly {
    s.parse().expect("valid polynomial text")
}
