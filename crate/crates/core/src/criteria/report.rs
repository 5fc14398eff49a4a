use std::f64::consts::FRAC_PI_2;

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use super::{
    balanced_difference_gemellity, balanced_sum_gemellity, conditional_variance_of,
    duan_separability, epr_correlation_form, epr_product, gemellity, qnd_correlation_form,
    Direction, DuanEprMoments, MomentPair,
};
use crate::error::Result;
use crate::gaussian::{moments_from_cov, GaussianTwoModeState};

pub const LEVEL5_NOTE: &str = "not evaluable for Gaussian states (positive Wigner function)";

/// Values within this distance of a criterion boundary count as on the
/// boundary and do not satisfy the strict inequality. Covers rounding in
/// states that sit exactly on the boundary, e.g. a classical split (`G = 1`).
pub const BOUNDARY_TOLERANCE: f64 = 1e-10;

fn strictly_below(value: f64, bound: f64) -> bool {
    value < bound - BOUNDARY_TOLERANCE
}

/// Homodyne angles selecting the conjugate quadrature pair. Both beams are
/// measured at the same angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureAngles {
    pub theta_plus: f64,
    pub theta_minus: f64,
}

impl Default for QuadratureAngles {
    fn default() -> Self {
        Self {
            theta_plus: 0.0,
            theta_minus: FRAC_PI_2,
        }
    }
}

/// Every criterion value for one state, with strict-inequality verdicts.
///
/// Levels 1 and 2 use the plus pair; levels 3 and 4 need both pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub angles: QuadratureAngles,
    pub plus: MomentPair,
    pub minus: MomentPair,
    #[serde(rename = "G")]
    pub gemellity: f64,
    pub optimal_theta: f64,
    /// Minimized gemellity of the minus pair.
    #[serde(rename = "G_minus")]
    pub gemellity_minus: f64,
    #[serde(rename = "V12")]
    pub v12: f64,
    #[serde(rename = "V21")]
    pub v21: f64,
    pub optimal_g12: f64,
    pub optimal_g21: f64,
    /// `|C12| > sqrt(1 - 1/F1)` on the plus pair; `null` when `F1 < 1`.
    pub qnd_correlation_form_12: Option<bool>,
    pub qnd_correlation_form_21: Option<bool>,
    /// `Var(X+_1 - X+_2) / 2`.
    #[serde(rename = "G_plus_balanced")]
    pub balanced_plus: f64,
    /// `Var(X-_1 + X-_2) / 2`.
    #[serde(rename = "G_minus_balanced")]
    pub balanced_minus: f64,
    #[serde(rename = "S12")]
    pub s12: f64,
    /// Set when recombining at the optimal angles would give lower noise
    /// than the fixed 50/50 combinations entering `S12`.
    pub duan_minimized_lower: bool,
    pub epr_12: f64,
    pub epr_21: f64,
    pub epr_correlation_form_12: bool,
    pub epr_correlation_form_21: bool,
    pub level1: bool,
    pub level2: bool,
    pub level3: bool,
    pub level4: bool,
    pub level5_note: String,
}

impl CriteriaReport {
    pub fn from_moments(dm: &DuanEprMoments, angles: QuadratureAngles) -> Self {
        let plus = dm.plus;
        let minus = dm.minus;
        let g = gemellity(&plus);
        let g_minus = gemellity(&minus);
        let v12 = conditional_variance_of(&plus, Direction::OneGivenTwo);
        let v21 = conditional_variance_of(&plus, Direction::TwoGivenOne);
        let balanced_plus = balanced_difference_gemellity(&plus);
        let balanced_minus = balanced_sum_gemellity(&minus);
        let s12 = duan_separability(dm);
        let epr_12 = epr_product(dm, Direction::OneGivenTwo);
        let epr_21 = epr_product(dm, Direction::TwoGivenOne);
        let slack = 1e-12 * (1.0 + s12.abs());
        Self {
            angles,
            plus,
            minus,
            gemellity: g.value,
            optimal_theta: g.theta,
            gemellity_minus: g_minus.value,
            v12: v12.value,
            v21: v21.value,
            optimal_g12: v12.gain,
            optimal_g21: v21.gain,
            qnd_correlation_form_12: qnd_correlation_form(&plus, Direction::OneGivenTwo),
            qnd_correlation_form_21: qnd_correlation_form(&plus, Direction::TwoGivenOne),
            balanced_plus,
            balanced_minus,
            s12,
            duan_minimized_lower: g.value + g_minus.value < s12 - slack,
            epr_12,
            epr_21,
            epr_correlation_form_12: epr_correlation_form(dm, Direction::OneGivenTwo),
            epr_correlation_form_21: epr_correlation_form(dm, Direction::TwoGivenOne),
            level1: strictly_below(g.value, 1.0),
            level2: strictly_below(v12.value, 1.0) || strictly_below(v21.value, 1.0),
            level3: strictly_below(s12, 2.0),
            level4: strictly_below(epr_12, 1.0) || strictly_below(epr_21, 1.0),
            level5_note: LEVEL5_NOTE.to_string(),
        }
    }

    /// Named scalar values, in a fixed order, for estimation and tables.
    pub fn scalars(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("F1_plus", self.plus.f1()),
            ("F2_plus", self.plus.f2()),
            ("C12_plus", self.plus.c12()),
            ("F1_minus", self.minus.f1()),
            ("F2_minus", self.minus.f2()),
            ("C12_minus", self.minus.c12()),
            ("G", self.gemellity),
            ("optimal_theta", self.optimal_theta),
            ("G_minus", self.gemellity_minus),
            ("V12", self.v12),
            ("V21", self.v21),
            ("optimal_g12", self.optimal_g12),
            ("optimal_g21", self.optimal_g21),
            ("G_plus_balanced", self.balanced_plus),
            ("G_minus_balanced", self.balanced_minus),
            ("S12", self.s12),
            ("epr_12", self.epr_12),
            ("epr_21", self.epr_21),
        ]
    }

    pub fn levels(&self) -> [bool; 4] {
        [self.level1, self.level2, self.level3, self.level4]
    }
}

/// Criteria computed from a raw covariance matrix without any physicality
/// check, so that sample covariances can go through the same path.
pub fn report_from_covariance(
    cov: &Matrix4<f64>,
    angles: QuadratureAngles,
) -> Result<CriteriaReport> {
    let plus = moments_from_cov(cov, angles.theta_plus, angles.theta_plus)?;
    let minus = moments_from_cov(cov, angles.theta_minus, angles.theta_minus)?;
    Ok(CriteriaReport::from_moments(
        &DuanEprMoments::new(plus, minus),
        angles,
    ))
}

/// Full criteria ladder for a state. Physicality is guaranteed by the
/// state's constructors, so only degenerate moments can fail here.
pub fn classify(state: &GaussianTwoModeState, angles: QuadratureAngles) -> Result<CriteriaReport> {
    report_from_covariance(state.cov(), angles)
}
