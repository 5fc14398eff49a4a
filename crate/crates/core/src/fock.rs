//! Photon-number statistics of the separable twin-Fock mixture
//! `rho = sum_n p_n |n, n><n, n|`.
//!
//! Both modes always carry the same photon number, so intensity correlation
//! is perfect and levels 1 and 2 are passed, although the state is a mixture
//! of product states and therefore separable.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FockMixture {
    weights: Vec<f64>,
}

impl FockMixture {
    /// Weights `p_0 .. p_N`; must be non-negative and sum to 1 within `1e-12`.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Validation {
                field: "weights".into(),
                message: "at least one weight is required".into(),
            });
        }
        for (n, &p) in weights.iter().enumerate() {
            if !(p >= 0.0) || !p.is_finite() {
                return Err(Error::invalid(format!("p_{n}"), p, "weight must be >= 0"));
            }
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::invalid(
                "sum of weights",
                total,
                "weights must sum to 1",
            ));
        }
        Ok(Self { weights })
    }

    /// Normalizes arbitrary non-negative weights before validating.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::invalid("sum of weights", total, "must be positive"));
        }
        Self::new(weights.into_iter().map(|p| p / total).collect())
    }

    /// Geometric (thermal) weights `p_n = m^n / (1 + m)^(n+1)` truncated at
    /// `cutoff` and renormalized.
    pub fn geometric(mean: f64, cutoff: usize) -> Result<Self> {
        if !(mean > 0.0) || !mean.is_finite() {
            return Err(Error::invalid("mean", mean, "must be positive"));
        }
        let ratio = mean / (1.0 + mean);
        let weights = (0..=cutoff)
            .map(|n| ratio.powi(n as i32) / (1.0 + mean))
            .collect();
        Self::normalized(weights)
    }

    /// Poisson weights of mean `mu`, truncated at `cutoff` and renormalized.
    pub fn poisson(mu: f64, cutoff: usize) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::invalid("mu", mu, "must be positive"));
        }
        let mut p = (-mu).exp();
        let mut weights = Vec::with_capacity(cutoff + 1);
        for n in 0..=cutoff {
            if n > 0 {
                p *= mu / n as f64;
            }
            weights.push(p);
        }
        Self::normalized(weights)
    }

    /// One weight per non-empty line; `#` starts a comment.
    pub fn parse_column(text: &str) -> Result<Self> {
        let mut weights = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let p = content.parse::<f64>().map_err(|e| Error::Parse {
                line: i + 1,
                message: format!("invalid weight {content:?}: {e}"),
            })?;
            weights.push(p);
        }
        Self::new(weights)
    }

    /// Comma- or whitespace-separated inline list.
    pub fn parse_inline(list: &str) -> Result<Self> {
        let weights = list
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .enumerate()
            .map(|(i, s)| {
                s.parse::<f64>().map_err(|e| Error::Parse {
                    line: 1,
                    message: format!("entry {}: invalid weight {s:?}: {e}", i + 1),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_column(&text)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhotonStatistics {
    pub mean: f64,
    pub variance: f64,
    /// `Var(n) / <n>`, intensity noise relative to a coherent state.
    pub fano: f64,
    /// Normalized photon-number correlation; `None` when `Var(n) = 0`.
    #[serde(rename = "C12")]
    pub correlation: Option<f64>,
    /// `Var(n1 - n2) / (<n1> + <n2>)`.
    pub intensity_gemellity: f64,
    #[serde(rename = "V12")]
    pub conditional_variance_12: f64,
    #[serde(rename = "V21")]
    pub conditional_variance_21: f64,
}

/// Moments of the joint distribution `P(n1, n2) = p_n delta(n1, n2) delta(n2, n)`.
pub fn photon_statistics(m: &FockMixture) -> Result<PhotonStatistics> {
    let joint = m
        .weights
        .iter()
        .enumerate()
        .map(|(n, &p)| (p, n as f64, n as f64));

    let mean1: f64 = joint.clone().map(|(p, n1, _)| p * n1).sum();
    let mean2: f64 = joint.clone().map(|(p, _, n2)| p * n2).sum();
    if mean1 == 0.0 {
        return Err(Error::Undefined(
            "all weight on n = 0: Fano factor and correlation are 0/0".into(),
        ));
    }
    let var1: f64 = joint
        .clone()
        .map(|(p, n1, _)| p * (n1 - mean1) * (n1 - mean1))
        .sum();
    let var2: f64 = joint
        .clone()
        .map(|(p, _, n2)| p * (n2 - mean2) * (n2 - mean2))
        .sum();
    let cov: f64 = joint
        .clone()
        .map(|(p, n1, n2)| p * (n1 - mean1) * (n2 - mean2))
        .sum();
    let var_diff: f64 = joint
        .map(|(p, n1, n2)| p * ((n1 - n2) - (mean1 - mean2)).powi(2))
        .sum();

    let fano1 = var1 / mean1;
    let fano2 = var2 / mean2;
    let (correlation, v12, v21) = if var1 > 0.0 && var2 > 0.0 {
        let c = cov / (var1 * var2).sqrt();
        (Some(c), fano1 * (1.0 - c * c), fano2 * (1.0 - c * c))
    } else {
        // a deterministic photon number leaves nothing to infer
        (None, fano1, fano2)
    };

    Ok(PhotonStatistics {
        mean: mean1,
        variance: var1,
        fano: fano1,
        correlation,
        intensity_gemellity: var_diff / (mean1 + mean2),
        conditional_variance_12: v12,
        conditional_variance_21: v21,
    })
}
