//! Arithmetic in `Z[zeta_2c] = Z[x]/Phi_2c(x)` and in `Z[zeta_2c][q]`.
//!
//! A [`CycPoly`] is stored coordinate-major: `sum_i zeta^i * part_i(q)` with
//! one integer polynomial per power of zeta below `dim = phi(2c)`. Because
//! `1, zeta, ..., zeta^(dim-1)` is a basis of `Z[zeta][q]` over `Z[q]`, dividing
//! by an integer polynomial acts part by part.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bigpoly::Poly;
use crate::cyclotomic::{cyclotomic, euler_phi};
use crate::error::{Error, Result};
use crate::text;

/// Shared description of `Z[zeta_2c]`.
#[derive(Clone)]
pub struct RingCtx(Arc<CtxInner>);

struct CtxInner {
    c: usize,
    dim: usize,
    reduction: Poly,
    /// Coordinates of `zeta^e` for `0 <= e < 2c`.
    zeta_powers: Vec<Vec<BigInt>>,
}

impl RingCtx {
    pub fn new(c: usize) -> Self {
        assert!(c >= 1, "ring context needs c >= 1");
        let reduction = cyclotomic(2 * c);
        let dim = euler_phi(2 * c);
        debug_assert_eq!(reduction.degree(), Some(dim));
        let zeta_powers = (0..2 * c)
            .map(|e| {
                let (_, r) = Poly::monomial(1, e).divmod_monic(&reduction).expect("monic");
                let mut coords = r.into_coeffs();
                coords.resize(dim, BigInt::zero());
                coords
            })
            .collect();
        RingCtx(Arc::new(CtxInner { c, dim, reduction, zeta_powers }))
    }

    pub fn c(&self) -> usize {
        self.0.c
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// `Phi_2c(x)`.
    pub fn reduction(&self) -> &Poly {
        &self.0.reduction
    }

    pub fn same(&self, other: &RingCtx) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.c() == other.c()
    }

    fn check(&self, other: &RingCtx) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::CtxMismatch { left: self.c(), right: other.c() })
        }
    }

    fn zeta_coords(&self, e: usize) -> &[BigInt] {
        &self.0.zeta_powers[e % (2 * self.c())]
    }

    pub fn elem_zero(&self) -> CycElem {
        CycElem { ctx: self.clone(), coords: vec![BigInt::zero(); self.dim()] }
    }

    pub fn elem_one(&self) -> CycElem {
        self.elem_int(BigInt::one())
    }

    pub fn elem_int(&self, v: impl Into<BigInt>) -> CycElem {
        let mut e = self.elem_zero();
        e.coords[0] = v.into();
        e
    }

    pub fn elem_from_coords(&self, coords: Vec<BigInt>) -> Result<CycElem> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidArgument(format!("expected {} coordinates, got {}", self.dim(), coords.len())));
        }
        Ok(CycElem { ctx: self.clone(), coords })
    }

    /// Reduces an integer polynomial in zeta modulo `Phi_2c`.
    pub fn elem_from_zeta_poly(&self, p: &Poly) -> CycElem {
        let (_, r) = p.divmod_monic(self.reduction()).expect("monic");
        let mut coords = r.into_coeffs();
        coords.resize(self.dim(), BigInt::zero());
        CycElem { ctx: self.clone(), coords }
    }

    /// `zeta_2c^e`; negative exponents wrap modulo `2c`.
    pub fn zeta_pow(&self, e: i64) -> CycElem {
        let e = e.rem_euclid(2 * self.c() as i64) as usize;
        CycElem { ctx: self.clone(), coords: self.zeta_coords(e).to_vec() }
    }

    pub fn elem_add(&self, a: &CycElem, b: &CycElem) -> Result<CycElem> {
        self.check(&a.ctx)?;
        self.check(&b.ctx)?;
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        Ok(CycElem { ctx: self.clone(), coords })
    }

    pub fn elem_sub(&self, a: &CycElem, b: &CycElem) -> Result<CycElem> {
        self.check(&a.ctx)?;
        self.check(&b.ctx)?;
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
        Ok(CycElem { ctx: self.clone(), coords })
    }

    pub fn elem_mul(&self, a: &CycElem, b: &CycElem) -> Result<CycElem> {
        self.check(&a.ctx)?;
        self.check(&b.ctx)?;
        let mut out = vec![BigInt::zero(); self.dim()];
        for (i, x) in a.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (o, r) in out.iter_mut().zip(self.zeta_coords(i + j)) {
                    if !r.is_zero() {
                        *o += &xy * r;
                    }
                }
            }
        }
        Ok(CycElem { ctx: self.clone(), coords: out })
    }

    pub fn cpoly_zero(&self) -> CycPoly {
        CycPoly { ctx: self.clone(), parts: vec![Poly::zero(); self.dim()] }
    }

    /// Image of an integer polynomial in `Z[zeta][q]`.
    pub fn embed(&self, p: &Poly) -> CycPoly {
        let mut out = self.cpoly_zero();
        out.parts[0] = p.clone();
        out
    }

    pub fn cpoly_from_coeffs(&self, coeffs: &[CycElem]) -> Result<CycPoly> {
        let mut parts = vec![Vec::with_capacity(coeffs.len()); self.dim()];
        for c in coeffs {
            self.check(&c.ctx)?;
            for (part, v) in parts.iter_mut().zip(&c.coords) {
                part.push(v.clone());
            }
        }
        Ok(CycPoly { ctx: self.clone(), parts: parts.into_iter().map(Poly::from_coeffs).collect() })
    }

    pub fn cpoly_add(&self, a: &CycPoly, b: &CycPoly) -> Result<CycPoly> {
        self.check(&a.ctx)?;
        self.check(&b.ctx)?;
        let parts = a.parts.iter().zip(&b.parts).map(|(x, y)| x + y).collect();
        Ok(CycPoly { ctx: self.clone(), parts })
    }

    pub fn cpoly_sub(&self, a: &CycPoly, b: &CycPoly) -> Result<CycPoly> {
        self.check(&a.ctx)?;
        self.check(&b.ctx)?;
        let parts = a.parts.iter().zip(&b.parts).map(|(x, y)| x - y).collect();
        Ok(CycPoly { ctx: self.clone(), parts })
    }

    pub fn cpoly_mul(&self, a: &CycPoly, b: &CycPoly) -> Result<CycPoly> {
        self.check(&a.ctx)?;
        self.check(&b.ctx)?;
        let mut out = self.cpoly_zero();
        for (i, x) in a.parts.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.parts.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (part, r) in out.parts.iter_mut().zip(self.zeta_coords(i + j)) {
                    part.add_scaled_shifted(r, &xy, 0);
                }
            }
        }
        Ok(out)
    }

    pub fn cpoly_derivative(&self, a: &CycPoly, l: usize) -> Result<CycPoly> {
        self.check(&a.ctx)?;
        Ok(a.derivative(l))
    }

    /// Parses the zeta-coefficient text format, e.g. `(1+z)*q^2 - z^3*q + 2`.
    pub fn parse_cpoly(&self, s: &str) -> Result<CycPoly> {
        let coeffs = text::parse(s, 'q', true)?;
        let elems: Vec<CycElem> = coeffs.iter().map(|z| self.elem_from_zeta_poly(z)).collect();
        self.cpoly_from_coeffs(&elems)
    }
}

impl fmt::Debug for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingCtx(c={}, dim={})", self.c(), self.dim())
    }
}

impl PartialEq for RingCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for RingCtx {}

/// An element of `Z[zeta_2c]` as coordinates on `1, zeta, ..., zeta^(dim-1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycElem {
    ctx: RingCtx,
    coords: Vec<BigInt>,
}

impl CycElem {
    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The integer value, if every zeta component vanishes.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    pub fn scale(&self, k: &BigInt) -> CycElem {
        CycElem { ctx: self.ctx.clone(), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn neg(&self) -> CycElem {
        CycElem { ctx: self.ctx.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }

    fn as_zeta_poly(&self) -> Poly {
        Poly::from_coeffs(self.coords.clone())
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_zeta_poly().to_string_in("z"))
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem[c={}]({self})", self.ctx.c())
    }
}

/// A polynomial in `q` with coefficients in `Z[zeta_2c]`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycPoly {
    ctx: RingCtx,
    parts: Vec<Poly>,
}

impl CycPoly {
    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    /// `parts()[i]` is the integer polynomial multiplying `zeta^i`.
    pub fn parts(&self) -> &[Poly] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Poly::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.parts.iter().filter_map(Poly::degree).max()
    }

    pub fn low_degree(&self) -> Option<usize> {
        self.parts.iter().filter_map(Poly::low_degree).min()
    }

    /// Coefficient of `q^k`.
    pub fn coeff(&self, k: usize) -> CycElem {
        CycElem { ctx: self.ctx.clone(), coords: self.parts.iter().map(|p| p.coeff(k)).collect() }
    }

    pub fn coeffs(&self) -> Vec<CycElem> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.coeff(k)).collect(),
        }
    }

    pub fn neg(&self) -> CycPoly {
        CycPoly { ctx: self.ctx.clone(), parts: self.parts.iter().map(|p| -p).collect() }
    }

    pub fn shift(&self, s: usize) -> CycPoly {
        CycPoly { ctx: self.ctx.clone(), parts: self.parts.iter().map(|p| p.shift(s)).collect() }
    }

    /// Exact division by `q^s`.
    pub fn unshift(&self, s: usize) -> Option<CycPoly> {
        let parts = self.parts.iter().map(|p| p.unshift(s)).collect::<Option<Vec<_>>>()?;
        Some(CycPoly { ctx: self.ctx.clone(), parts })
    }

    pub fn derivative(&self, l: usize) -> CycPoly {
        CycPoly { ctx: self.ctx.clone(), parts: self.parts.iter().map(|p| p.derivative(l)).collect() }
    }

    pub fn scale_int(&self, k: &BigInt) -> CycPoly {
        CycPoly { ctx: self.ctx.clone(), parts: self.parts.iter().map(|p| p.scale(k)).collect() }
    }

    pub fn mul_int_poly(&self, b: &Poly) -> CycPoly {
        CycPoly { ctx: self.ctx.clone(), parts: self.parts.iter().map(|p| p * b).collect() }
    }

    pub fn mul_elem(&self, e: &CycElem) -> Result<CycPoly> {
        self.ctx.check(&e.ctx)?;
        let mut out = self.ctx.cpoly_zero();
        for (i, x) in e.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, part) in self.parts.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                for (o, r) in out.parts.iter_mut().zip(self.ctx.zeta_coords(i + j)) {
                    if !r.is_zero() {
                        o.add_scaled_shifted(&(x * r), part, 0);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self += e * q^shift * b`, in place.
    pub fn add_elem_times(&mut self, e: &CycElem, b: &Poly, shift: usize) -> Result<()> {
        self.ctx.check(&e.ctx)?;
        for (part, k) in self.parts.iter_mut().zip(&e.coords) {
            part.add_scaled_shifted(k, b, shift);
        }
        Ok(())
    }

    /// Exact quotient by a monic integer polynomial.
    pub fn divexact_int(&self, b: &Poly) -> Result<CycPoly> {
        if !b.is_monic() {
            return Err(if b.is_zero() { Error::DivisionByZero } else { Error::NonMonicDivisor });
        }
        let mut parts = Vec::with_capacity(self.parts.len());
        for p in &self.parts {
            let (quot, rem) = p.divmod_monic(b)?;
            if !rem.is_zero() {
                return Err(Error::NotDivisible(format!("zeta-polynomial by {b}")));
            }
            parts.push(quot);
        }
        Ok(CycPoly { ctx: self.ctx.clone(), parts })
    }

    /// Largest `e` with `Phi_m(q)^e | self` in `Z[zeta][q]`.
    pub fn phi_valuation(&self, m: usize) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.parts
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| crate::cyclotomic::phi_valuation(p, m))
            .try_fold(u32::MAX, |acc, v| v.map(|v| acc.min(v)))
    }

    /// The integer polynomial, when no coefficient has a zeta component.
    pub fn to_bigpoly(&self) -> Result<Poly> {
        if self.parts[1..].iter().any(|p| !p.is_zero()) {
            return Err(Error::NotRational);
        }
        Ok(self.parts[0].clone())
    }

    pub fn is_rational(&self) -> bool {
        self.parts[1..].iter().all(Poly::is_zero)
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zcoeffs: Vec<Poly> = self.coeffs().iter().map(CycElem::as_zeta_poly).collect();
        f.write_str(&text::format_zeta_poly(&zcoeffs, "q"))
    }
}

impl serde::Serialize for CycPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycPoly[c={}]({self})", self.ctx.c())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn contexts() {
        let c1 = RingCtx::new(1);
        assert_eq!((c1.dim(), c1.reduction().to_string()), (1, "q+1".to_string()));
        let c2 = RingCtx::new(2);
        assert_eq!((c2.dim(), c2.reduction().to_string()), (2, "q^2+1".to_string()));
        let c3 = RingCtx::new(3);
        assert_eq!((c3.dim(), c3.reduction().to_string()), (2, "q^2-q+1".to_string()));
    }

    #[test]
    fn zeta_powers() {
        let c2 = RingCtx::new(2);
        assert_eq!(c2.zeta_pow(2), c2.elem_int(-1));
        for c in 1..=4 {
            let ctx = RingCtx::new(c);
            assert_eq!(ctx.zeta_pow(c as i64), ctx.elem_int(-1), "c={c}");
        }
        let c3 = RingCtx::new(3);
        assert_eq!(c3.zeta_pow(1).coords(), ints(&[0, 1]).as_slice());
        assert_eq!(c3.zeta_pow(-1), c3.zeta_pow(5));
    }

    #[test]
    fn element_products() {
        let c2 = RingCtx::new(2);
        let z = c2.zeta_pow(1);
        assert_eq!(c2.elem_mul(&z, &z).unwrap(), c2.elem_int(-1));
        let a = c2.elem_from_coords(ints(&[3, -2])).unwrap();
        assert_eq!(c2.elem_mul(&a, &c2.elem_one()).unwrap(), a);
        let c3 = RingCtx::new(3);
        let z6 = c3.zeta_pow(1);
        assert_eq!(c3.elem_mul(&z6, &z6).unwrap().coords(), ints(&[-1, 1]).as_slice());
    }

    #[test]
    fn ctx_mismatch_is_an_error() {
        let c2 = RingCtx::new(2);
        let c3 = RingCtx::new(3);
        let r = c2.elem_mul(&c2.zeta_pow(1), &c3.zeta_pow(1));
        assert_eq!(r, Err(Error::CtxMismatch { left: 2, right: 3 }));
        let r = c2.cpoly_add(&c2.cpoly_zero(), &c3.cpoly_zero());
        assert!(matches!(r, Err(Error::CtxMismatch { .. })));
    }

    #[test]
    fn cpoly_examples() {
        let c2 = RingCtx::new(2);
        let a = c2.parse_cpoly("1+z*q").unwrap();
        let b = c2.parse_cpoly("1-z*q").unwrap();
        assert_eq!(c2.cpoly_add(&a, &b).unwrap(), c2.embed(&Poly::constant(2)));
        assert!(c2.cpoly_derivative(&c2.parse_cpoly("3+z").unwrap(), 1).unwrap().is_zero());
        let zq = c2.parse_cpoly("z+z*q").unwrap();
        let zeta = c2.parse_cpoly("z").unwrap();
        assert_eq!(c2.cpoly_mul(&zq, &zeta).unwrap(), c2.parse_cpoly("-1-q").unwrap());
        assert_eq!(zq.mul_elem(&c2.zeta_pow(1)).unwrap(), c2.parse_cpoly("-1-q").unwrap());
    }

    #[test]
    fn exact_division_by_integer_polys() {
        let c2 = RingCtx::new(2);
        let zq = c2.parse_cpoly("z+z*q").unwrap();
        assert_eq!(zq.divexact_int(&"q+1".parse().unwrap()).unwrap(), c2.parse_cpoly("z").unwrap());
        let phi3: Poly = "q^2+q+1".parse().unwrap();
        assert!(c2.cpoly_zero().divexact_int(&phi3).unwrap().is_zero());
        let bad = c2.parse_cpoly("z*q+1").unwrap();
        assert!(matches!(bad.divexact_int(&"q+1".parse().unwrap()), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn valuations() {
        let c2 = RingCtx::new(2);
        assert_eq!(c2.parse_cpoly("z+z*q").unwrap().phi_valuation(2), Ok(1));
        assert_eq!(c2.parse_cpoly("3+2*z").unwrap().phi_valuation(5), Ok(0));
        let phi3: Poly = "q^2+q+1".parse().unwrap();
        for c in 1..=4 {
            let ctx = RingCtx::new(c);
            assert_eq!(ctx.embed(&phi3.pow(2)).phi_valuation(3), Ok(2));
        }
        assert_eq!(c2.cpoly_zero().phi_valuation(2), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rational_extraction() {
        let c3 = RingCtx::new(3);
        let p: Poly = "q^3-2*q+7".parse().unwrap();
        assert_eq!(c3.embed(&p).to_bigpoly().unwrap(), p);
        assert_eq!(c3.parse_cpoly("z").unwrap().to_bigpoly(), Err(Error::NotRational));
        let c1 = RingCtx::new(1);
        // zeta_2 = -1 collapses everything to integers
        assert_eq!(c1.parse_cpoly("z*q+z^2").unwrap().to_bigpoly().unwrap(), "-q+1".parse().unwrap());
    }

    #[test]
    fn display_round_trips() {
        let c4 = RingCtx::new(4);
        for s in ["(1+z)*q^2 - z^3*q + 2", "0", "-z*q-z", "(2*z^3-z+5)*q^7+q"] {
            let a = c4.parse_cpoly(s).unwrap();
            assert_eq!(c4.parse_cpoly(&a.to_string()).unwrap(), a, "{s}");
        }
    }
}
