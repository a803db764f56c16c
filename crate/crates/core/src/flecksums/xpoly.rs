use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bigpoly::Poly;
use crate::cycring::{CycElem, RingCtx};
use crate::error::{Error, Result};
use crate::qbinomial::int_binom;
use crate::text;

/// A polynomial in `x` with coefficients in `Z[zeta_2c]`: the weight `P(x)`.
#[derive(Clone, PartialEq, Eq)]
pub struct XPoly {
    ctx: RingCtx,
    coeffs: Vec<CycElem>,
}

impl XPoly {
    pub fn new(ctx: &RingCtx, mut coeffs: Vec<CycElem>) -> Result<Self> {
        for c in &coeffs {
            if !c.ctx().same(ctx) {
                return Err(Error::CtxMismatch { left: ctx.c(), right: c.ctx().c() });
            }
        }
        while coeffs.last().is_some_and(CycElem::is_zero) {
            coeffs.pop();
        }
        Ok(XPoly { ctx: ctx.clone(), coeffs })
    }

    pub fn one(ctx: &RingCtx) -> Self {
        XPoly { ctx: ctx.clone(), coeffs: vec![ctx.elem_one()] }
    }

    pub fn from_int_poly(ctx: &RingCtx, p: &Poly) -> Self {
        let coeffs = p.coeffs().iter().map(|c| ctx.elem_int(c.clone())).collect();
        XPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn from_i64(ctx: &RingCtx, coeffs: &[i64]) -> Self {
        XPoly::from_int_poly(ctx, &Poly::from_i64(coeffs))
    }

    /// Parses e.g. `x^2+3*x+1` or `(1+z)*x - 2`.
    pub fn parse(ctx: &RingCtx, s: &str) -> Result<Self> {
        let zcoeffs = text::parse(s, 'x', true)?;
        let coeffs = zcoeffs.iter().map(|z| ctx.elem_from_zeta_poly(z)).collect();
        XPoly::new(ctx, coeffs)
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[CycElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree used by the multiplicity predictor; the zero polynomial counts as 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_integer().is_some())
    }

    /// `P(m)` by Horner's rule.
    pub fn eval(&self, m: i64) -> CycElem {
        let m = BigInt::from(m);
        let dim = self.ctx.dim();
        let mut acc = vec![BigInt::zero(); dim];
        for c in self.coeffs.iter().rev() {
            for (a, v) in acc.iter_mut().zip(c.coords()) {
                *a = &*a * &m + v;
            }
        }
        self.ctx.elem_from_coords(acc).expect("dimension matches")
    }

    /// The substituted polynomial `x -> P(x + t)`.
    pub fn shift(&self, t: i64) -> XPoly {
        if t == 0 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let t = BigInt::from(t);
        let dim = self.ctx.dim();
        let mut out = vec![vec![BigInt::zero(); dim]; self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            // a * (x + t)^i = sum_k C(i, k) t^(i-k) a x^k
            let mut tpow = BigInt::one();
            for k in (0..=i).rev() {
                let w = int_binom(i, k as i64) * &tpow;
                for (o, v) in out[k].iter_mut().zip(a.coords()) {
                    *o += v * &w;
                }
                tpow *= &t;
            }
        }
        let coeffs = out.into_iter().map(|c| self.ctx.elem_from_coords(c).expect("dim")).collect();
        XPoly::new(&self.ctx, coeffs).expect("same ctx")
    }

    pub fn mul(&self, other: &XPoly) -> Result<XPoly> {
        if !self.ctx.same(&other.ctx) {
            return Err(Error::CtxMismatch { left: self.ctx.c(), right: other.ctx.c() });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(XPoly { ctx: self.ctx.clone(), coeffs: Vec::new() });
        }
        let mut out = vec![self.ctx.elem_zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let ab = self.ctx.elem_mul(a, b)?;
                out[i + j] = self.ctx.elem_add(&out[i + j], &ab)?;
            }
        }
        XPoly::new(&self.ctx, out)
    }

    pub fn add(&self, other: &XPoly) -> Result<XPoly> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &XPoly) -> Result<XPoly> {
        self.combine(other, true)
    }

    fn combine(&self, other: &XPoly, negate: bool) -> Result<XPoly> {
        if !self.ctx.same(&other.ctx) {
            return Err(Error::CtxMismatch { left: self.ctx.c(), right: other.ctx.c() });
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = self.ctx.elem_zero();
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            out.push(if negate { self.ctx.elem_sub(a, b)? } else { self.ctx.elem_add(a, b)? });
        }
        XPoly::new(&self.ctx, out)
    }

    /// Coefficients as polynomials in zeta, for printing.
    fn zeta_coeffs(&self) -> Vec<Poly> {
        self.coeffs.iter().map(|c| Poly::from_coeffs(c.coords().to_vec())).collect()
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_zeta_poly(&self.zeta_coeffs(), "x"))
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPoly[c={}]({self})", self.ctx.c())
    }
}

/// `R_j(x) = C(l, j) x (x-1) ... (x-j+1)`, the product-rule helper for
/// higher derivatives.
pub fn make_rj(ctx: &RingCtx, l: usize, j: usize) -> Result<XPoly> {
    if j == 0 || j > l {
        return Err(Error::InvalidArgument(format!("R_j needs 1 <= j <= l, got j={j}, l={l}")));
    }
    let mut falling = Poly::one();
    for k in 0..j {
        falling = &falling * &Poly::from_i64(&[-(k as i64), 1]);
    }
    Ok(XPoly::from_int_poly(ctx, &falling.scale(&int_binom(l, j as i64))))
}
