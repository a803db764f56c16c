use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bigpoly::Poly;
use crate::cyclotomic::{cyclotomic_shared, euler_phi};
use crate::cycring::CycPoly;
use crate::error::{Error, Result};
use crate::flecksums::multiplicity::product_of_powers;

/// A polynomial split as `unit * q^qpower * prod Phi_m^e_m * residual`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorReport<R> {
    pub unit: i8,
    pub qpower: usize,
    pub cyclo_exponents: BTreeMap<usize, u32>,
    pub residual: R,
    pub predicted_exponents: BTreeMap<usize, u32>,
}

impl<R> FactorReport<R> {
    /// Indices where the observed multiplicity falls short of the prediction.
    pub fn shortfalls(&self) -> Vec<usize> {
        self.predicted_exponents
            .iter()
            .filter(|(m, &e)| self.cyclo_exponents.get(m).copied().unwrap_or(0) < e)
            .map(|(&m, _)| m)
            .collect()
    }

    pub fn meets_prediction(&self) -> bool {
        self.shortfalls().is_empty()
    }

    /// `unit * q^qpower * prod Phi_m^e_m` as an integer polynomial.
    pub fn cyclotomic_part(&self) -> Poly {
        product_of_powers(&self.cyclo_exponents).shift(self.qpower).scale(&self.unit.into())
    }
}

impl FactorReport<Poly> {
    pub fn reconstruct(&self) -> Poly {
        &self.cyclotomic_part() * &self.residual
    }
}

impl FactorReport<CycPoly> {
    pub fn reconstruct(&self) -> CycPoly {
        self.residual.mul_int_poly(&self.cyclotomic_part())
    }
}

impl<R: fmt::Display> fmt::Display for FactorReport<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![if self.unit < 0 { "-1".to_string() } else { "+1".to_string() }];
        match self.qpower {
            0 => {}
            1 => parts.push("q".into()),
            s => parts.push(format!("q^{s}")),
        }
        for (m, e) in &self.cyclo_exponents {
            parts.push(if *e == 1 { format!("Phi_{m}") } else { format!("Phi_{m}^{e}") });
        }
        parts.push(format!("({})", self.residual));
        write!(f, "{}", parts.join(" * "))
    }
}

/// Orders `m` that can divide a polynomial of degree `deg`: all `m` with
/// `phi(m) <= deg`. Below `10^7`, `m / phi(m) < 6`, so `6 deg` bounds them.
fn candidate_orders(deg: usize) -> impl Iterator<Item = usize> {
    assert!(deg < 1_000_000, "degree {deg} too large for the cyclotomic search bound");
    (1..=(6 * deg).max(30)).filter(move |&m| euler_phi(m) <= deg)
}

/// Strips the sign, the largest power of `q`, and every cyclotomic factor
/// `Phi_m` with `phi(m) <= deg`, at full multiplicity.
pub fn factor_report(p: &Poly, predicted: &BTreeMap<usize, u32>) -> Result<FactorReport<Poly>> {
    let qpower = p.low_degree().ok_or(Error::ZeroPolynomial)?;
    let mut cur = p.unshift(qpower).expect("low degree");
    let unit = cur.leading_sign();
    if unit < 0 {
        cur = -cur;
    }
    let bound = p.degree().unwrap_or(0);
    let mut cyclo_exponents = BTreeMap::new();
    for m in candidate_orders(bound) {
        if cur.degree().unwrap_or(0) < euler_phi(m) {
            continue;
        }
        let phi = cyclotomic_shared(m);
        let mut e = 0;
        loop {
            let (quot, rem) = cur.divmod_monic(&phi)?;
            if !rem.is_zero() {
                break;
            }
            cur = quot;
            e += 1;
        }
        if e > 0 {
            cyclo_exponents.insert(m, e);
        }
    }
    Ok(FactorReport { unit, qpower, cyclo_exponents, residual: cur, predicted_exponents: predicted.clone() })
}

/// Same decomposition in `Z[zeta][q]`. Rational inputs are normalized as in
/// [`factor_report`]; otherwise the unit is left as `+1`.
pub fn factor_report_cyc(p: &CycPoly, predicted: &BTreeMap<usize, u32>) -> Result<FactorReport<CycPoly>> {
    if p.is_rational() {
        let r = factor_report(&p.to_bigpoly()?, predicted)?;
        return Ok(FactorReport {
            unit: r.unit,
            qpower: r.qpower,
            cyclo_exponents: r.cyclo_exponents,
            residual: p.ctx().embed(&r.residual),
            predicted_exponents: r.predicted_exponents,
        });
    }
    let qpower = p.low_degree().ok_or(Error::ZeroPolynomial)?;
    let mut cur = p.unshift(qpower).expect("low degree");
    let bound = p.degree().unwrap_or(0);
    let mut cyclo_exponents = BTreeMap::new();
    for m in candidate_orders(bound) {
        if cur.degree().unwrap_or(0) < euler_phi(m) {
            continue;
        }
        let e = cur.phi_valuation(m)?;
        if e > 0 {
            cur = cur.divexact_int(&cyclotomic_shared(m).pow(e))?;
            cyclo_exponents.insert(m, e);
        }
    }
    Ok(FactorReport { unit: 1, qpower, cyclo_exponents, residual: cur, predicted_exponents: predicted.clone() })
}
