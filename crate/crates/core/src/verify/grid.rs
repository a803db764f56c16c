use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cycring::RingCtx;
use crate::error::Result;
use crate::flecksums::XPoly;

/// How the sweep picks `n` for each parameter tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NRange {
    /// `threshold ..= threshold + extra`, dropping values above `cap`.
    Threshold { extra: usize, cap: usize },
    /// Exactly these values.
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepGrid {
    pub c: Vec<usize>,
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    pub d: Vec<usize>,
    pub z: Vec<usize>,
    pub deg_p: Vec<usize>,
    /// Classes for the class-sum sweeps; `None` means every `0 <= j < c`.
    pub j: Option<Vec<usize>>,
    pub n: NRange,
    /// Fixed weight in place of the random ones, e.g. `"1"` or `"(1+z)*x"`.
    pub p_override: Option<String>,
    pub seed: u64,
    pub case_cap: Option<usize>,
    /// How many `n` just below each threshold to probe.
    pub below_threshold: usize,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            c: vec![1, 2, 3, 4],
            k: vec![1, 3],
            l: vec![0, 1],
            d: vec![0, 1],
            z: vec![0, 1],
            deg_p: vec![0, 1],
            j: None,
            n: NRange::Threshold { extra: 4, cap: 60 },
            p_override: None,
            seed: 0x5eed_f1ec,
            case_cap: None,
            below_threshold: 2,
        }
    }
}

/// Smallest `n` covered by the divisibility theorems:
/// `(deg P + 2 (l + d) + 1) k c`.
pub fn threshold(deg_p: usize, l: usize, d: usize, k: usize, c: usize) -> usize {
    (deg_p + 2 * (l + d) + 1) * k * c
}

/// One enumerated parameter tuple with its weight polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub c: usize,
    pub k: usize,
    pub l: usize,
    pub d: usize,
    pub z: usize,
    pub n: usize,
    #[serde(rename = "P", serialize_with = "as_text")]
    pub p: XPoly,
    pub threshold: usize,
}

fn as_text<S: serde::Serializer>(p: &XPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl Case {
    pub fn kc(&self) -> usize {
        self.k * self.c
    }

    pub fn deg_p(&self) -> usize {
        self.p.degree_or_zero()
    }
}

/// A nonzero polynomial of exact degree `deg` with coordinates in `-3..=3`.
pub fn random_xpoly(ctx: &RingCtx, deg: usize, rng: &mut impl Rng) -> XPoly {
    loop {
        let coeffs = (0..=deg)
            .map(|_| {
                let coords = (0..ctx.dim()).map(|_| rng.gen_range(-3i64..=3).into()).collect();
                ctx.elem_from_coords(coords).expect("dimension matches")
            })
            .collect();
        let p = XPoly::new(ctx, coeffs).expect("same ctx");
        if p.degree() == Some(deg) {
            return p;
        }
    }
}

/// Deterministic per-tuple generator, independent of enumeration order.
pub(crate) fn tuple_rng(seed: u64, tuple: &[usize]) -> ChaCha8Rng {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &v in tuple {
        h = (h ^ v as u64).wrapping_mul(0x1000_0000_01b3).rotate_left(29);
    }
    ChaCha8Rng::seed_from_u64(h)
}

impl SweepGrid {
    pub fn with_n(mut self, n: NRange) -> Self {
        self.n = n;
        self
    }

    pub fn with_p_override(mut self, p: impl Into<String>) -> Self {
        self.p_override = Some(p.into());
        self
    }

    /// Weight for a tuple; ignores `deg` when a fixed weight is configured.
    pub fn weight(&self, ctx: &RingCtx, deg: usize, tuple: &[usize]) -> Result<XPoly> {
        match &self.p_override {
            Some(text) => XPoly::parse(ctx, text),
            None => Ok(random_xpoly(ctx, deg, &mut tuple_rng(self.seed, tuple))),
        }
    }

    fn degrees(&self) -> Vec<Option<usize>> {
        if self.p_override.is_some() {
            vec![None]
        } else {
            self.deg_p.iter().copied().map(Some).collect()
        }
    }

    /// Candidate `n` values for a threshold, split into covered and probe sets.
    fn n_values(&self, thr: usize) -> (Vec<usize>, Vec<usize>) {
        let probe_from = thr.saturating_sub(self.below_threshold);
        match &self.n {
            NRange::Threshold { extra, cap } => {
                let covered = (thr..=thr + extra).filter(|n| n <= cap).collect();
                let probe = (probe_from..thr).filter(|n| n <= cap).collect();
                (covered, probe)
            }
            NRange::Explicit(ns) => {
                let covered = ns.iter().copied().filter(|&n| n >= thr).collect();
                let probe = ns.iter().copied().filter(|&n| n < thr && n >= probe_from).collect();
                (covered, probe)
            }
        }
    }

    fn enumerate(&self, covered: bool) -> Result<Vec<Case>> {
        let mut out = Vec::new();
        for &c in &self.c {
            let ctx = RingCtx::new(c);
            for &k in self.k.iter().filter(|k| *k % 2 == 1) {
                for &l in &self.l {
                    for &d in &self.d {
                        for &z in &self.z {
                            for deg in self.degrees() {
                                let fixed = match deg {
                                    None => Some(self.weight(&ctx, 0, &[])?),
                                    Some(_) => None,
                                };
                                let deg_p = match &fixed {
                                    Some(p) => p.degree_or_zero(),
                                    None => deg.unwrap_or(0),
                                };
                                let thr = threshold(deg_p, l, d, k, c);
                                let (ns, probe) = self.n_values(thr);
                                for n in if covered { ns } else { probe } {
                                    let p = match &fixed {
                                        Some(p) => p.clone(),
                                        None => self.weight(&ctx, deg_p, &[c, k, l, d, z, deg_p, n])?,
                                    };
                                    out.push(Case { c, k, l, d, z, n, p, threshold: thr });
                                }
                            }
                        }
                    }
                }
            }
        }
        if covered {
            if let Some(cap) = self.case_cap {
                out.truncate(cap);
            }
        }
        Ok(out)
    }

    /// Cases meeting the theorem hypothesis, in lexicographic grid order.
    pub fn cases(&self) -> Result<Vec<Case>> {
        self.enumerate(true)
    }

    /// Cases just below the threshold, reported but never asserted.
    pub fn probe_cases(&self) -> Result<Vec<Case>> {
        self.enumerate(false)
    }

    /// Classes to sweep for a given `c`.
    pub fn classes(&self, c: usize) -> Vec<usize> {
        match &self.j {
            None => (0..c).collect(),
            Some(js) => js.iter().copied().filter(|&j| j < c).collect(),
        }
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("grid serializes")
    }
}
