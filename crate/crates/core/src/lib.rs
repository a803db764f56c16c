//! Exact arithmetic for alternating q-binomial sums and Fleck-type class sums.
//!
//! Layers, bottom up: big-integer polynomials ([`bigpoly`]), cyclotomic
//! polynomials ([`cyclotomic`]), polynomials over `Z[zeta_2c]` ([`cycring`]),
//! Gaussian binomials ([`qbinomial`]), the sums and their factorizations
//! ([`flecksums`]), and the verification harness ([`verify`]).

pub mod bigpoly;
pub mod cyclotomic;
pub mod cycring;
pub mod error;
pub mod flecksums;
pub mod qbinomial;
mod text;
pub mod verify;

pub use bigpoly::Poly;
pub use cycring::{CycElem, CycPoly, RingCtx};
pub use error::{Error, Result};
pub use flecksums::{FactorReport, SumSpec, XPoly};
