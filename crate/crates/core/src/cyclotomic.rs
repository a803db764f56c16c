//! Cyclotomic polynomials and Phi-adic valuations.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::bigpoly::Poly;
use crate::error::{Error, Result};

/// Append-only memo of `Phi_n(q)`, safe for concurrent readers.
#[derive(Default)]
pub struct CyclotomicCache {
    table: RwLock<HashMap<usize, Arc<Poly>>>,
}

impl CyclotomicCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Phi_n(q)`, built as `(q^n - 1)` divided down by `Phi_d` for every
    /// proper divisor `d` of `n`.
    pub fn get(&self, n: usize) -> Arc<Poly> {
        assert!(n >= 1, "cyclotomic index must be positive");
        if let Some(p) = self.table.read().unwrap().get(&n) {
            return Arc::clone(p);
        }
        let mut acc = Poly::q_pow_minus_one(n);
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let phi_d = self.get(d);
            let (quot, rem) = acc.divmod_monic(&phi_d).expect("cyclotomic polynomials are monic");
            debug_assert!(rem.is_zero());
            acc = quot;
        }
        let acc = Arc::new(acc);
        let mut table = self.table.write().unwrap();
        Arc::clone(table.entry(n).or_insert(acc))
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn global() -> &'static CyclotomicCache {
    static CACHE: OnceLock<CyclotomicCache> = OnceLock::new();
    CACHE.get_or_init(CyclotomicCache::new)
}

/// The monic `n`-th cyclotomic polynomial in `q`.
pub fn cyclotomic(n: usize) -> Poly {
    global().get(n).as_ref().clone()
}

/// Shared handle to `Phi_n(q)` from the process-wide cache.
pub fn cyclotomic_shared(n: usize) -> Arc<Poly> {
    global().get(n)
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient by trial factorization.
pub fn euler_phi(n: usize) -> usize {
    assert!(n >= 1, "euler_phi needs n >= 1");
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Largest `e` with `Phi_m(q)^e | p`.
pub fn phi_valuation(p: &Poly, m: usize) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let phi = cyclotomic_shared(m);
    let dphi = phi.degree().unwrap_or(0);
    let mut cur = p.clone();
    let mut e = 0;
    while cur.degree().is_some_and(|d| d >= dphi) {
        let (quot, rem) = cur.divmod_monic(&phi)?;
        if !rem.is_zero() {
            break;
        }
        cur = quot;
        e += 1;
    }
    Ok(e)
}
