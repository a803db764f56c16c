//! Alternating q-binomial sums over `Z[zeta_2c][q]` and their Fleck-type
//! residue-class pieces.
//!
//! The full sum is
//!
//! ```text
//! Q^(l)_c(P, z, n) = sum_{m=0}^{n} zeta_2c^m P(m) q^(z m) d^l/dq^l [n, m]_q
//! ```
//!
//! and the class sum for `0 <= j < c` replaces `zeta_2c^m` by the sign
//! `(-1)^((m-j)/c)` and keeps only `m = j (mod c)`.

mod factor;
mod multiplicity;
mod xpoly;

pub use factor::{factor_report, factor_report_cyc, FactorReport};
pub use multiplicity::{
    alpha, beta, epsilon, predicted_exponents, predicted_product, product_of_powers, round_nearest,
};
pub use xpoly::{make_rj, XPoly};

use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::bigpoly::Poly;
use crate::cycring::{CycElem, CycPoly, RingCtx};
use crate::error::{Error, Result};
use crate::qbinomial::qbinom_shared;

/// Parameters naming one sum: the full sum when `class_j` is `None`, the
/// Fleck class sum for residue `j` otherwise.
#[derive(Clone, PartialEq, Eq)]
pub struct SumSpec {
    pub p: XPoly,
    pub l: usize,
    pub z: usize,
    pub n: usize,
    pub class_j: Option<usize>,
}

impl SumSpec {
    pub fn new(p: XPoly, l: usize, z: usize, n: usize) -> Self {
        SumSpec { p, l, z, n, class_j: None }
    }

    /// `P = 1`, `l = z = 0`.
    pub fn unit(c: usize, n: usize) -> Self {
        SumSpec::new(XPoly::one(&RingCtx::new(c)), 0, 0, n)
    }

    pub fn with_class(mut self, j: usize) -> Result<Self> {
        if j >= self.c() {
            return Err(Error::InvalidArgument(format!("class j={j} must be below c={}", self.c())));
        }
        self.class_j = Some(j);
        Ok(self)
    }

    pub fn with_l(mut self, l: usize) -> Self {
        self.l = l;
        self
    }

    pub fn with_z(mut self, z: usize) -> Self {
        self.z = z;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_p(mut self, p: XPoly) -> Self {
        self.p = p;
        self
    }

    pub fn ctx(&self) -> &RingCtx {
        self.p.ctx()
    }

    pub fn c(&self) -> usize {
        self.ctx().c()
    }

    pub fn deg_p(&self) -> usize {
        self.p.degree_or_zero()
    }
}

impl fmt::Display for SumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c={}", self.c())?;
        if let Some(j) = self.class_j {
            write!(f, " j={j}")?;
        }
        write!(f, " l={} z={} n={} P={}", self.l, self.z, self.n, self.p)
    }
}

impl fmt::Debug for SumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SumSpec({self})")
    }
}

impl Serialize for SumSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SumSpec", 6)?;
        st.serialize_field("c", &self.c())?;
        st.serialize_field("j", &self.class_j)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("z", &self.z)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("P", &self.p.to_string())?;
        st.end()
    }
}

/// `sum_m w(m) P(m) q^(z m) d^l [n, m]_q` over the `m` where `weight` is defined.
fn weighted_sum(
    ctx: &RingCtx,
    p: &XPoly,
    l: usize,
    z: usize,
    n: usize,
    weight: impl Fn(usize) -> Option<CycElem>,
) -> Result<CycPoly> {
    let mut acc = ctx.cpoly_zero();
    for m in 0..=n {
        let Some(w) = weight(m) else { continue };
        let coeff = ctx.elem_mul(&w, &p.eval(m as i64))?;
        if coeff.is_zero() {
            continue;
        }
        let binom = qbinom_shared(n, m as i64);
        if l == 0 {
            acc.add_elem_times(&coeff, &binom, z * m)?;
        } else {
            acc.add_elem_times(&coeff, &binom.derivative(l), z * m)?;
        }
    }
    Ok(acc)
}

/// The full sum `Q^(l)_c(P, z, n)`.
pub fn q_sum(spec: &SumSpec) -> Result<CycPoly> {
    if spec.class_j.is_some() {
        return Err(Error::InvalidArgument("q_sum takes a spec without a class".into()));
    }
    let ctx = spec.ctx();
    weighted_sum(ctx, &spec.p, spec.l, spec.z, spec.n, |m| Some(ctx.zeta_pow(m as i64)))
}

/// The class sum `sum_{m = j mod c} (-1)^((m-j)/c) P(m) q^(z m) d^l [n, m]_q`.
pub fn fleck_sum(spec: &SumSpec) -> Result<CycPoly> {
    let j = spec.class_j.ok_or_else(|| Error::InvalidArgument("fleck_sum needs a class j".into()))?;
    let c = spec.c();
    if j >= c {
        return Err(Error::InvalidArgument(format!("class j={j} must be below c={c}")));
    }
    let ctx = spec.ctx();
    weighted_sum(ctx, &spec.p, spec.l, spec.z, spec.n, |m| {
        (m >= j && (m - j) % c == 0).then(|| {
            let sign = if ((m - j) / c).is_multiple_of(2) { 1 } else { -1 };
            ctx.elem_int(sign)
        })
    })
}

/// Class sum for an integer weight, returned in `Z[q]`.
pub fn fleck_sum_int(spec: &SumSpec) -> Result<Poly> {
    fleck_sum(spec)?.to_bigpoly()
}

/// Dispatches on `class_j`.
pub fn evaluate(spec: &SumSpec) -> Result<CycPoly> {
    match spec.class_j {
        None => q_sum(spec),
        Some(_) => fleck_sum(spec),
    }
}

/// `G_h`: the full sum with `zeta_2c` replaced by `zeta_2c^(1+2h)`.
pub fn g_sum(ctx: &RingCtx, h: usize, p: &XPoly, z: usize, l: usize, n: usize) -> Result<CycPoly> {
    if h >= ctx.c() {
        return Err(Error::InvalidArgument(format!("h={h} must be below c={}", ctx.c())));
    }
    let step = (1 + 2 * h) as i64;
    weighted_sum(ctx, p, l, z, n, |m| Some(ctx.zeta_pow(step * m as i64)))
}

/// `sum_{m = j mod c} (-1)^m [n, m]_q`, the ordinary sign convention.
pub fn nonalternating_class_sum(c: usize, j: usize, n: usize) -> Result<Poly> {
    if c == 0 || j >= c {
        return Err(Error::InvalidArgument(format!("need 0 <= j < c, got j={j}, c={c}")));
    }
    let mut acc = Poly::zero();
    for m in (j..=n).step_by(c) {
        let sign = BigInt::from(if m % 2 == 0 { 1 } else { -1 });
        acc.add_scaled_shifted(&sign, &qbinom_shared(n, m as i64), 0);
    }
    Ok(acc)
}

/// `prod_{k odd, k <= n} (1 - q^k)` for even `n`, zero for odd `n`.
pub fn gaussian_closed_form(n: usize) -> Poly {
    if n % 2 == 1 {
        return Poly::zero();
    }
    (1..=n).step_by(2).fold(Poly::one(), |acc, k| &acc * &Poly::one_minus_q_pow(k))
}

/// `R^(l)_c(P, z, n)`: the sum divided by its predicted cyclotomic product.
///
/// A `NotDivisible` error here contradicts the multiplicity prediction.
pub fn residual_r(spec: &SumSpec) -> Result<CycPoly> {
    let sum = evaluate(spec)?;
    let product = predicted_product(spec.c(), spec.l, spec.deg_p(), spec.n);
    sum.divexact_int(&product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic;
    use crate::qbinomial::qbinom;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn gaussian_initial_values() {
        assert_eq!(q_sum(&SumSpec::unit(1, 2)).unwrap().to_bigpoly().unwrap(), p("1-q"));
        assert!(q_sum(&SumSpec::unit(1, 1)).unwrap().is_zero());
    }

    #[test]
    fn gaussian_integers_at_n_two() {
        let s = q_sum(&SumSpec::unit(2, 2)).unwrap();
        assert_eq!(s, RingCtx::new(2).parse_cpoly("z+z*q").unwrap());
    }

    #[test]
    fn fleck_four_one_seven() {
        let spec = SumSpec::unit(4, 7).with_class(1).unwrap();
        let sum = fleck_sum_int(&spec).unwrap();
        // only m = 1 and m = 5 contribute: [7,1] - [7,5], which is 7 - 21 at q = 1
        assert_eq!(sum, &qbinom(7, 1) - &qbinom(7, 5));
        assert_eq!(sum.eval_i64(1), BigInt::from(-14));
        assert_eq!(sum, -(&cyclotomic(4) * &cyclotomic(7)).shift(2));
    }

    #[test]
    fn single_class_matches_full_sum() {
        for n in 0..=12 {
            let full = q_sum(&SumSpec::unit(1, n)).unwrap();
            let class = fleck_sum(&SumSpec::unit(1, n).with_class(0).unwrap()).unwrap();
            assert_eq!(full, class);
        }
    }

    #[test]
    fn nonalternating_examples() {
        let expected = -(&cyclotomic(7) * &p("q^4+q^2+2"));
        assert_eq!(nonalternating_class_sum(4, 1, 7).unwrap(), expected);
        let gauss4 = &Poly::one_minus_q_pow(1) * &Poly::one_minus_q_pow(3);
        assert_eq!(nonalternating_class_sum(1, 0, 4).unwrap(), gauss4);
        // m in {0, 2}: [2,0] + [2,2]
        assert_eq!(nonalternating_class_sum(2, 0, 2).unwrap(), p("2"));
        assert!(nonalternating_class_sum(2, 2, 2).is_err());
    }

    #[test]
    fn closed_form() {
        assert_eq!(gaussian_closed_form(2), p("1-q"));
        assert_eq!(gaussian_closed_form(4), &p("1-q") * &p("1-q^3"));
        assert_eq!(gaussian_closed_form(7), Poly::zero());
    }

    #[test]
    fn g_sums() {
        let c1 = RingCtx::new(1);
        let one = XPoly::one(&c1);
        assert_eq!(g_sum(&c1, 0, &one, 0, 0, 2).unwrap().to_bigpoly().unwrap(), p("1-q"));
        let c2 = RingCtx::new(2);
        let one = XPoly::one(&c2);
        let g1 = g_sum(&c2, 1, &one, 0, 0, 2).unwrap();
        assert_eq!(g1, c2.parse_cpoly("-z-z*q").unwrap());
        let spec = SumSpec::new(XPoly::parse(&c2, "z*x+1").unwrap(), 1, 2, 6);
        assert_eq!(g_sum(&c2, 0, &spec.p, 2, 1, 6).unwrap(), q_sum(&spec).unwrap());
        assert!(g_sum(&c2, 2, &one, 0, 0, 2).is_err());
    }

    #[test]
    fn residual_closed_form_small() {
        let r = |n| residual_r(&SumSpec::unit(1, n)).unwrap().to_bigpoly().unwrap();
        assert_eq!(r(4), Poly::one());
        assert_eq!(r(2), p("-1"));
        assert_eq!(r(7), Poly::zero());
    }

    #[test]
    fn spec_validation() {
        assert!(SumSpec::unit(3, 5).with_class(3).is_err());
        assert!(q_sum(&SumSpec::unit(3, 5).with_class(1).unwrap()).is_err());
        assert!(fleck_sum(&SumSpec::unit(3, 5)).is_err());
        let json = serde_json::to_value(SumSpec::unit(3, 8).with_class(1).unwrap()).unwrap();
        assert_eq!(json["c"], 3);
        assert_eq!(json["j"], 1);
        assert_eq!(json["P"], "1");
    }
}
