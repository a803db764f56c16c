//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored in ascending degree order and the vector is kept
//! normalized: the last entry is nonzero, and the zero polynomial is the empty
//! vector. Its degree is reported as `None`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::text;

/// Operand length below which multiplication stays schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 24;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Poly::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::from_coeffs(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, exp: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `q^n - 1`.
    pub fn q_pow_minus_one(n: usize) -> Self {
        let mut p = Poly::monomial(BigInt::one(), n);
        p -= &Poly::one();
        p
    }

    /// `1 - q^n`.
    pub fn one_minus_q_pow(n: usize) -> Self {
        -Poly::q_pow_minus_one(n)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Index of the lowest nonzero coefficient, i.e. the largest `s` with `q^s | self`.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplication by `q^s`.
    pub fn shift(&self, s: usize) -> Poly {
        if self.is_zero() || s == 0 {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + s);
        coeffs.resize(s, BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact division by `q^s`; `None` if some coefficient below `s` is nonzero.
    pub fn unshift(&self, s: usize) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.coeffs.iter().take(s).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly { coeffs: self.coeffs[s.min(self.coeffs.len())..].to_vec() })
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `self += k * q^shift * other`, in place.
    pub fn add_scaled_shifted(&mut self, k: &BigInt, other: &Poly, shift: usize) {
        if k.is_zero() || other.is_zero() {
            return;
        }
        let need = other.coeffs.len() + shift;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, BigInt::zero());
        }
        let dst = &mut self.coeffs[shift..need];
        if k.is_one() {
            for (d, c) in dst.iter_mut().zip(&other.coeffs) {
                *d += c;
            }
        } else if (-k).is_one() {
            for (d, c) in dst.iter_mut().zip(&other.coeffs) {
                *d -= c;
            }
        } else {
            for (d, c) in dst.iter_mut().zip(&other.coeffs) {
                *d += c * k;
            }
        }
        trim(&mut self.coeffs);
    }

    /// The `l`-fold formal derivative.
    pub fn derivative(&self, l: usize) -> Poly {
        if l == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= l {
            return Poly::zero();
        }
        let coeffs = (l..self.coeffs.len())
            .map(|i| {
                // falling factorial i (i-1) ... (i-l+1)
                let ff = (i - l + 1..=i).fold(BigInt::one(), |acc, t| acc * t);
                &self.coeffs[i] * ff
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Long division by a monic divisor: `self = b * quotient + remainder` with
    /// `deg(remainder) < deg(b)`.
    pub fn divmod_monic(&self, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        if !b.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if da < db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let lead = std::mem::take(&mut rem[i + db]);
            if lead.is_zero() {
                continue;
            }
            for (r, bc) in rem[i..i + db].iter_mut().zip(&b.coeffs) {
                if !bc.is_zero() {
                    *r -= &lead * bc;
                }
            }
            quot[i] = lead;
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact quotient `self / b` over the integers.
    ///
    /// Non-monic divisors are handled by integer long division that requires
    /// every leading-coefficient step to divide exactly.
    pub fn divexact(&self, b: &Poly) -> Result<Poly> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        if b.is_monic() {
            let (q, r) = self.divmod_monic(b)?;
            return if r.is_zero() { Ok(q) } else { Err(not_divisible(self, b)) };
        }
        let Some(da) = self.degree() else {
            return Ok(Poly::zero());
        };
        if da < db {
            return Err(not_divisible(self, b));
        }
        let lb = &b.coeffs[db];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let lead = std::mem::take(&mut rem[i + db]);
            if lead.is_zero() {
                continue;
            }
            let (t, r) = lead.div_rem(lb);
            if !r.is_zero() {
                return Err(not_divisible(self, b));
            }
            for (r, bc) in rem[i..i + db].iter_mut().zip(&b.coeffs) {
                if !bc.is_zero() {
                    *r -= &t * bc;
                }
            }
            quot[i] = t;
        }
        if rem[..db].iter().any(|c| !c.is_zero()) {
            return Err(not_divisible(self, b));
        }
        Ok(Poly::from_coeffs(quot))
    }

    pub fn mul_schoolbook(&self, other: &Poly) -> Poly {
        Poly::from_coeffs(schoolbook(&self.coeffs, &other.coeffs))
    }

    /// Karatsuba with an explicit schoolbook cutoff, for tuning.
    #[doc(hidden)]
    pub fn mul_karatsuba_with(&self, other: &Poly, cutoff: usize) -> Poly {
        Poly::from_coeffs(karatsuba(&self.coeffs, &other.coeffs, cutoff))
    }

    /// Formats with a variable name other than `q`.
    pub fn to_string_in(&self, var: &str) -> String {
        text::format_int_poly(&self.coeffs, var)
    }
}

fn not_divisible(a: &Poly, b: &Poly) -> Error {
    let da = a.degree().map_or("-inf".to_string(), |d| d.to_string());
    Error::NotDivisible(format!("degree-{da} dividend by {b}"))
}

fn trim(coeffs: &mut Vec<BigInt>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out[i..].iter_mut().zip(b) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    out
}

fn add_into(dst: &mut [BigInt], src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}

fn sub_into(dst: &mut [BigInt], src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= s;
    }
}

fn karatsuba(a: &[BigInt], b: &[BigInt], cutoff: usize) -> Vec<BigInt> {
    if a.len().min(b.len()) < cutoff.max(2) {
        return schoolbook(a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    if a1.is_empty() || b1.is_empty() {
        // Unbalanced operands: split the longer one only.
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, chunk) in long.chunks(short.len()).enumerate() {
            let part = karatsuba(chunk, short, cutoff);
            add_into(&mut out[i * short.len()..], &part);
        }
        return out;
    }
    let z0 = karatsuba(a0, b0, cutoff);
    let z2 = karatsuba(a1, b1, cutoff);
    let mut sa = a0.to_vec();
    if sa.len() < a1.len() {
        sa.resize(a1.len(), BigInt::zero());
    }
    add_into(&mut sa, a1);
    let mut sb = b0.to_vec();
    if sb.len() < b1.len() {
        sb.resize(b1.len(), BigInt::zero());
    }
    add_into(&mut sb, b1);
    let mut z1 = karatsuba(&sa, &sb, cutoff);
    sub_into(&mut z1, &z0);
    sub_into(&mut z1, &z2);

    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    add_into(&mut out, &z0);
    add_into(&mut out[half..], &z1);
    add_into(&mut out[2 * half..], &z2);
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("q"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Poly::parse_in(s, 'q')
    }
}

impl Poly {
    /// Parses the text format with the given variable letter.
    pub fn parse_in(s: &str, var: char) -> Result<Self> {
        let terms = text::parse(s, var, false)?;
        let coeffs = terms.into_iter().map(|z| z.coeff(0)).collect();
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        Poly::from_coeffs(karatsuba(&self.coeffs, &rhs.coeffs, KARATSUBA_THRESHOLD))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.add_scaled_shifted(&BigInt::one(), rhs, 0);
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.add_scaled_shifted(&-BigInt::one(), rhs, 0);
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl Poly {
    /// Sign of the leading coefficient: 1, -1, or 0 for the zero polynomial.
    pub fn leading_sign(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }
}
