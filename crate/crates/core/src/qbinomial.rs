//! Gaussian binomial coefficients, their derivatives, and ordinary binomials.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bigpoly::Poly;

/// Memo of q-binomials built row by row with the Pascal recursion
/// `[n, m] = q^m [n-1, m] + [n-1, m-1]`.
///
/// Row `n` stores only `m <= n/2`; the other half is recovered by symmetry.
#[derive(Default)]
pub struct QBinomTable {
    rows: RwLock<Vec<Vec<Arc<Poly>>>>,
}

impl QBinomTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `[n, m]_q`, zero when `m < 0` or `m > n`.
    pub fn get(&self, n: usize, m: i64) -> Arc<Poly> {
        if m < 0 || m as usize > n {
            return Arc::new(Poly::zero());
        }
        let m = m as usize;
        let k = m.min(n - m);
        if let Some(row) = self.rows.read().unwrap().get(n) {
            return Arc::clone(&row[k]);
        }
        let mut rows = self.rows.write().unwrap();
        if rows.is_empty() {
            rows.push(vec![Arc::new(Poly::one())]);
        }
        while rows.len() <= n {
            let prev = rows.last().unwrap();
            let row_n = rows.len();
            let prev_get = |j: usize| -> &Poly {
                let j = j.min(row_n - 1 - j);
                &prev[j]
            };
            let mut row = Vec::with_capacity(row_n / 2 + 1);
            row.push(Arc::new(Poly::one()));
            for j in 1..=row_n / 2 {
                let mut entry = prev_get(j).shift(j);
                entry += prev_get(j - 1);
                row.push(Arc::new(entry));
            }
            rows.push(row);
        }
        Arc::clone(&rows[n][k])
    }

    pub fn rows_cached(&self) -> usize {
        self.rows.read().unwrap().len()
    }
}

fn global() -> &'static QBinomTable {
    static TABLE: OnceLock<QBinomTable> = OnceLock::new();
    TABLE.get_or_init(QBinomTable::new)
}

/// Shared handle to `[n, m]_q` from the process-wide table.
pub fn qbinom_shared(n: usize, m: i64) -> Arc<Poly> {
    global().get(n, m)
}

/// The Gaussian binomial `[n, m]_q`.
pub fn qbinom(n: usize, m: i64) -> Poly {
    qbinom_shared(n, m).as_ref().clone()
}

/// `d^l/dq^l [n, m]_q`.
pub fn qbinom_deriv(n: usize, m: i64, l: usize) -> Poly {
    qbinom_shared(n, m).derivative(l)
}

/// Ordinary binomial coefficient by the integer Pascal recursion; zero out of range.
pub fn int_binom(n: usize, m: i64) -> BigInt {
    if m < 0 || m as usize > n {
        return BigInt::zero();
    }
    let m = (m as usize).min(n - m as usize);
    let mut row = vec![BigInt::zero(); m + 1];
    row[0] = BigInt::one();
    for i in 1..=n {
        for j in (1..=m.min(i)).rev() {
            let prev = row[j - 1].clone();
            row[j] += prev;
        }
    }
    row[m].clone()
}
