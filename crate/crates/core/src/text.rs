//! Polynomial text format shared by every type and the CLI.
//!
//! A polynomial is a signed sum of terms; a term is a product of factors, each
//! an integer, the main variable with optional `^exp`, the zeta symbol `z`
//! with optional `^exp`, or a parenthesized zeta expression. `*` between
//! factors is optional and whitespace is ignored, so `q^7+q^4+q^3+q-1`,
//! `-3*q^2+1`, `2q^90` and `(1+z)*q^2 - z^3*q + 2` are all accepted.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigpoly::Poly;
use crate::error::{Error, Result};

/// Parses `s` into coefficients of the main variable `var`, each an integer
/// polynomial in `z`. With `allow_zeta` false every coefficient is constant.
pub(crate) fn parse(s: &str, var: char, allow_zeta: bool) -> Result<Vec<Poly>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { src: s, chars, pos: 0, var, allow_zeta };
    if p.chars.is_empty() {
        return Err(p.err("empty input"));
    }
    let out = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err(&format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    var: char,
    allow_zeta: bool,
}

/// A term under construction: `coeff(z) * var^exp`.
struct Term {
    coeff: Poly,
    exp: usize,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::Parse { input: self.src.to_string(), reason: reason.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Vec<Poly>> {
        let mut acc: Vec<Poly> = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            if acc.len() <= t.exp {
                acc.resize(t.exp + 1, Poly::zero());
            }
            acc[t.exp].add_scaled_shifted(&BigInt::from(sign), &t.coeff, 0);
        }
        while acc.last().is_some_and(|c| c.is_zero()) {
            acc.pop();
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = Term { coeff: Poly::one(), exp: 0 };
        let mut factors = 0;
        loop {
            match self.peek() {
                Some('*') if factors > 0 => {
                    self.pos += 1;
                    if !self.starts_factor() {
                        return Err(self.err("dangling '*'"));
                    }
                }
                _ if self.starts_factor() => {}
                _ => break,
            }
            self.factor(&mut t)?;
            factors += 1;
        }
        if factors == 0 {
            return Err(self.err("expected a term"));
        }
        Ok(t)
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' || c == self.var => true,
            Some('z') => self.allow_zeta,
            _ => false,
        }
    }

    fn factor(&mut self, t: &mut Term) -> Result<()> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end"))?;
        if c.is_ascii_digit() {
            let n = self.integer()?;
            t.coeff = t.coeff.scale(&n);
        } else if c == self.var {
            self.pos += 1;
            t.exp += self.exponent()?;
        } else if c == 'z' {
            self.pos += 1;
            let e = self.exponent()?;
            t.coeff = t.coeff.shift(e);
        } else if c == '(' {
            if !self.allow_zeta {
                return Err(self.err("parenthesized coefficients need a zeta context"));
            }
            self.pos += 1;
            let start = self.pos;
            let mut depth = 1;
            while depth > 0 {
                match self.peek() {
                    Some('(') => depth += 1,
                    Some(')') => depth -= 1,
                    None => return Err(self.err("unbalanced parenthesis")),
                    _ => {}
                }
                self.pos += 1;
            }
            let inner: String = self.chars[start..self.pos - 1].iter().collect();
            let zpoly = parse(&inner, 'z', false).map_err(|_| self.err("bad zeta expression"))?;
            let zpoly = Poly::from_coeffs(zpoly.into_iter().map(|c| c.coeff(0)).collect());
            t.coeff = &t.coeff * &zpoly;
        } else {
            return Err(self.err(&format!("unexpected {c:?}")));
        }
        Ok(())
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.err("bad integer"))
    }

    fn exponent(&mut self) -> Result<usize> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.err("expected exponent"));
        }
        let e = self.integer()?;
        usize::try_from(e).map_err(|_| self.err("exponent too large"))
    }
}

/// Descending-degree rendering, e.g. `4*q^3+3*q^2+4*q+1`.
pub(crate) fn format_int_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut s = String::new();
    for (e, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        let mag = c.abs();
        if e == 0 {
            s.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                s.push_str(&mag.to_string());
                s.push('*');
            }
            push_power(&mut s, var, e);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Renders `sum_e coeff_e(z) * var^e` where each coefficient is given as a
/// polynomial in `z`. Integer coefficients print bare, single zeta monomials
/// print as `a*z^i`, anything longer is parenthesized.
pub(crate) fn format_zeta_poly(coeffs: &[Poly], var: &str) -> String {
    let mut s = String::new();
    for (e, c) in coeffs.iter().enumerate().rev() {
        let nonzero: Vec<(usize, &BigInt)> = c.coeffs().iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        match nonzero.as_slice() {
            [] => continue,
            [(0, v)] => push_scaled(&mut s, v, None, var, e),
            [(i, v)] => push_scaled(&mut s, v, Some(*i), var, e),
            _ => {
                if !s.is_empty() {
                    s.push('+');
                }
                s.push('(');
                s.push_str(&c.to_string_in("z"));
                s.push(')');
                if e > 0 {
                    s.push('*');
                    push_power(&mut s, var, e);
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn push_scaled(s: &mut String, v: &BigInt, zexp: Option<usize>, var: &str, e: usize) {
    if v.is_negative() {
        s.push('-');
    } else if !s.is_empty() {
        s.push('+');
    }
    let mag = v.abs();
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() || (zexp.is_none() && e == 0) {
        parts.push(mag.to_string());
    }
    if let Some(i) = zexp {
        let mut z = String::new();
        push_power(&mut z, "z", i);
        parts.push(z);
    }
    if e > 0 {
        let mut q = String::new();
        push_power(&mut q, var, e);
        parts.push(q);
    }
    s.push_str(&parts.join("*"));
}

fn push_power(s: &mut String, var: &str, e: usize) {
    s.push_str(var);
    if e > 1 {
        s.push('^');
        s.push_str(&e.to_string());
    }
}
