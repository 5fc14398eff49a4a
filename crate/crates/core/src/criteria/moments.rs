use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shot-noise-normalized variances of one quadrature on each beam and their
/// normalized correlation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMomentPair", into = "RawMomentPair")]
pub struct MomentPair {
    f1: f64,
    f2: f64,
    c12: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMomentPair {
    #[serde(rename = "F1")]
    f1: f64,
    #[serde(rename = "F2")]
    f2: f64,
    #[serde(rename = "C12")]
    c12: f64,
}

impl TryFrom<RawMomentPair> for MomentPair {
    type Error = Error;

    fn try_from(raw: RawMomentPair) -> Result<Self> {
        MomentPair::new(raw.f1, raw.f2, raw.c12)
    }
}

impl From<MomentPair> for RawMomentPair {
    fn from(m: MomentPair) -> Self {
        RawMomentPair {
            f1: m.f1,
            f2: m.f2,
            c12: m.c12,
        }
    }
}

impl MomentPair {
    pub fn new(f1: f64, f2: f64, c12: f64) -> Result<Self> {
        if !(f1 > 0.0) || !f1.is_finite() {
            return Err(Error::invalid(
                "F1",
                f1,
                "variance must be positive and finite",
            ));
        }
        if !(f2 > 0.0) || !f2.is_finite() {
            return Err(Error::invalid(
                "F2",
                f2,
                "variance must be positive and finite",
            ));
        }
        if !(c12.abs() <= 1.0) {
            return Err(Error::invalid(
                "C12",
                c12,
                "correlation must lie in [-1, 1]",
            ));
        }
        Ok(Self { f1, f2, c12 })
    }

    pub fn f1(&self) -> f64 {
        self.f1
    }

    pub fn f2(&self) -> f64 {
        self.f2
    }

    pub fn c12(&self) -> f64 {
        self.c12
    }

    /// Unnormalized covariance `C12 * sqrt(F1 F2)`.
    pub fn covariance(&self) -> f64 {
        self.c12 * (self.f1 * self.f2).sqrt()
    }

    /// The same moments with the roles of the two beams exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            f1: self.f2,
            f2: self.f1,
            c12: self.c12,
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.f1 == self.f2
    }
}

/// Moments on both conjugate quadrature pairs, as needed by the
/// separability and EPR criteria.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DuanEprMoments {
    pub plus: MomentPair,
    pub minus: MomentPair,
}

impl DuanEprMoments {
    pub fn new(plus: MomentPair, minus: MomentPair) -> Self {
        Self { plus, minus }
    }

    /// Products `F+_i F-_i` for each beam; both are `>= 1` for moments read
    /// off a physical state on conjugate quadratures.
    pub fn heisenberg_products(&self) -> (f64, f64) {
        (self.plus.f1 * self.minus.f1, self.plus.f2 * self.minus.f2)
    }
}
