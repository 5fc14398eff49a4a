//! Closed-form correlation criteria on second moments.
//!
//! Every function here is plain moment arithmetic in shot-noise units and
//! accepts lab-measured numbers; joint physicality is only enforced on the
//! full-state path ([`classify`]). Signed correlations are accepted
//! throughout: anticorrelated beams are handled through `|C12|`, and the
//! optimal recombination angle and gains carry the sign.

mod moments;
pub mod operational;
mod report;

pub use moments::{DuanEprMoments, MomentPair};
pub use report::{
    classify, report_from_covariance, CriteriaReport, QuadratureAngles, BOUNDARY_TOLERANCE,
    LEVEL5_NOTE,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which beam is inferred from which in a conditional variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// `V_{1|2}`: beam 1 inferred from measurements on beam 2.
    OneGivenTwo,
    /// `V_{2|1}`.
    TwoGivenOne,
}

/// Minimum recombination noise and the beamsplitter angle reaching it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gemellity {
    pub value: f64,
    /// Angle `theta` of the output `cos(theta) dX1 - sin(theta) dX2`.
    pub theta: f64,
}

/// Residual variance after optimal linear inference, and the optimal gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalVariance {
    pub value: f64,
    /// Gain `g` minimizing `Var(X_a - g X_b)`.
    pub gain: f64,
}

/// Correlation obtained by splitting one beam of Fano factor `f_in` on a
/// 50/50 beamsplitter with vacuum in the other port: `(F_in - 1)/(F_in + 1)`.
pub fn classical_split_correlation(f_in: f64) -> Result<f64> {
    if !(f_in >= 1.0) || !f_in.is_finite() {
        return Err(Error::invalid("F_in", f_in, "Fano factor must be >= 1"));
    }
    Ok((f_in - 1.0) / (f_in + 1.0))
}

/// Correlation of two beams of Fano factors `f1`, `f2` produced by splitting
/// a classical beam on an unbalanced beamsplitter.
pub fn classical_unbalanced_correlation(f1: f64, f2: f64) -> Result<f64> {
    for (name, f) in [("F1", f1), ("F2", f2)] {
        if !(f >= 1.0) || !f.is_finite() {
            return Err(Error::invalid(name, f, "Fano factor must be >= 1"));
        }
    }
    Ok(((1.0 - 1.0 / f1) * (1.0 - 1.0 / f2)).sqrt())
}

/// Gemellity: the smallest shot-noise-normalized variance reachable by
/// recombining the two beams on a lossless beamsplitter,
/// `G = (F1 + F2)/2 - sqrt(C12^2 F1 F2 + ((F1 - F2)/2)^2)`.
///
/// `G` is the small eigenvalue of the 2x2 covariance of the pair and is
/// evaluated as `det / lambda_max` to avoid cancellation near `G = 0`.
pub fn gemellity(m: &MomentPair) -> Gemellity {
    let (f1, f2) = (m.f1(), m.f2());
    let cov = m.covariance();
    let half_diff = 0.5 * (f1 - f2);
    let radius = cov.hypot(half_diff);
    let lambda_max = 0.5 * (f1 + f2) + radius;
    let det = f1 * f2 * (1.0 - m.c12() * m.c12());
    Gemellity {
        value: (det / lambda_max).max(0.0),
        theta: 0.5 * cov.atan2(-half_diff),
    }
}

/// `V_{a|b} = F_a (1 - C^2)`, reached at gain `g = C sqrt(F_a F_b) / F_b`.
pub fn conditional_variance(f_a: f64, f_b: f64, c: f64) -> ConditionalVariance {
    ConditionalVariance {
        value: f_a * (1.0 - c * c),
        gain: c * (f_a * f_b).sqrt() / f_b,
    }
}

pub fn conditional_variance_of(m: &MomentPair, direction: Direction) -> ConditionalVariance {
    match direction {
        Direction::OneGivenTwo => conditional_variance(m.f1(), m.f2(), m.c12()),
        Direction::TwoGivenOne => conditional_variance(m.f2(), m.f1(), m.c12()),
    }
}

/// Correlation form of the asymmetric QND condition, `|C12| > sqrt(1 - 1/F_a)`.
///
/// Equivalent to `V_{a|b} < 1` only for `F_a >= 1`; below shot noise the
/// square root is undefined and `None` is returned (any correlation then
/// satisfies `V < 1`).
pub fn qnd_correlation_form(m: &MomentPair, direction: Direction) -> Option<bool> {
    let f_a = match direction {
        Direction::OneGivenTwo => m.f1(),
        Direction::TwoGivenOne => m.f2(),
    };
    (f_a >= 1.0).then(|| m.c12().abs() > (1.0 - 1.0 / f_a).sqrt())
}

/// Half the variance of `X+_1 - X+_2`: balanced gemellity of the plus pair.
pub fn balanced_difference_gemellity(m: &MomentPair) -> f64 {
    0.5 * (m.f1() + m.f2()) - m.covariance()
}

/// Half the variance of `X-_1 + X-_2`: balanced anti-gemellity of the minus pair.
pub fn balanced_sum_gemellity(m: &MomentPair) -> f64 {
    0.5 * (m.f1() + m.f2()) + m.covariance()
}

/// Duan separability `S12 = (Var(X+_1 - X+_2) + Var(X-_1 + X-_2)) / 2`.
pub fn duan_separability(dm: &DuanEprMoments) -> f64 {
    balanced_difference_gemellity(&dm.plus) + balanced_sum_gemellity(&dm.minus)
}

/// Product of the plus- and minus-quadrature conditional variances for one
/// inference direction.
pub fn epr_product(dm: &DuanEprMoments, direction: Direction) -> f64 {
    conditional_variance_of(&dm.plus, direction).value
        * conditional_variance_of(&dm.minus, direction).value
}

/// Correlation form of the EPR condition for one direction:
/// `(1 - C+^2)(1 - C-^2) < 1 / (F+ F-)` with `F+-` the variances of the
/// inferred beam. This is the direction that agrees with `V+ V- < 1`.
pub fn epr_correlation_form(dm: &DuanEprMoments, direction: Direction) -> bool {
    let (fp, fm) = match direction {
        Direction::OneGivenTwo => (dm.plus.f1(), dm.minus.f1()),
        Direction::TwoGivenOne => (dm.plus.f2(), dm.minus.f2()),
    };
    let cp = dm.plus.c12();
    let cm = dm.minus.c12();
    (1.0 - cp * cp) * (1.0 - cm * cm) < 1.0 / (fp * fm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn pair(f1: f64, f2: f64, c: f64) -> MomentPair {
        MomentPair::new(f1, f2, c).unwrap()
    }

    #[test]
    fn classical_split_values() {
        assert!((classical_split_correlation(9.0).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(classical_split_correlation(1.0).unwrap(), 0.0);
        let big = classical_split_correlation(1e6).unwrap();
        assert!((big - 0.999998).abs() < 1e-6);
        assert!((big - 999_999.0 / 1_000_001.0).abs() < 1e-15);
        assert!(classical_split_correlation(0.99).is_err());
    }

    #[test]
    fn classical_unbalanced_values() {
        let c = classical_unbalanced_correlation(9.0, 3.0).unwrap();
        assert!((c - (16.0f64 / 27.0).sqrt()).abs() < 1e-15);
        assert!((c - 0.76980).abs() < 1e-5);
        assert_eq!(classical_unbalanced_correlation(42.0, 1.0).unwrap(), 0.0);
        let c = classical_unbalanced_correlation(9.0, 9.0).unwrap();
        assert!((c - 8.0 / 9.0).abs() < 1e-15);
        let g = gemellity(&pair(9.0, 9.0, c));
        assert!((g.value - 1.0).abs() < 1e-12);
        assert!(classical_unbalanced_correlation(2.0, 0.5).is_err());
    }

    #[test]
    fn gemellity_values() {
        let g = gemellity(&pair(2.0, 2.0, 0.9));
        assert!((g.value - 0.2).abs() < 1e-12);
        assert!((g.theta - FRAC_PI_4).abs() < 1e-15);
        let g = gemellity(&pair(2.0, 2.0, -0.9));
        assert!((g.value - 0.2).abs() < 1e-12);
        assert!((g.theta + FRAC_PI_4).abs() < 1e-15);
        // (9 + 3)/2 - sqrt(16/27 * 27 + 9) = 6 - 5
        let c = (16.0f64 / 27.0).sqrt();
        let g = gemellity(&pair(9.0, 3.0, c));
        assert!((g.value - 1.0).abs() < 1e-12);
        assert!((g.theta - FRAC_PI_4).abs() > 0.1);
        let g = gemellity(&pair(1.0, 2.0, 0.0));
        assert_eq!((g.value, g.theta), (1.0, 0.0));
    }

    #[test]
    fn shot_noise_beam_makes_any_correlation_quantum() {
        for f2 in [1.0, 2.0, 10.0, 1e3] {
            let mut prev = 1.0;
            for c in [0.01, 0.1, 0.5, 0.9, 1.0] {
                let g = gemellity(&pair(1.0, f2, c)).value;
                assert!(g < 1.0, "F2={f2} C={c} G={g}");
                assert!(g < prev);
                prev = g;
            }
        }
    }

    #[test]
    fn conditional_variance_values() {
        let v = conditional_variance(2.0, 5.0, 0.9);
        assert!((v.value - 0.38).abs() < 1e-15);
        assert_eq!(conditional_variance(3.0, 2.0, 0.0).value, 3.0);
        assert_eq!(conditional_variance(3.0, 2.0, 1.0).value, 0.0);
        let v = conditional_variance(2.0, 2.0, 0.9);
        assert!((v.gain - 0.9).abs() < 1e-15);
        let m = pair(1.2, 6.0, 0.6);
        let v12 = conditional_variance_of(&m, Direction::OneGivenTwo).value;
        let v21 = conditional_variance_of(&m, Direction::TwoGivenOne).value;
        assert!((v12 - 0.768).abs() < 1e-12);
        assert!((v21 - 3.84).abs() < 1e-12);
    }

    #[test]
    fn qnd_correlation_form_agrees_above_shot_noise() {
        for (f1, c) in [(2.0, 0.6), (2.0, 0.8), (5.0, 0.88), (5.0, 0.9), (1.0, 0.01)] {
            let m = pair(f1, 3.0, c);
            let v = conditional_variance_of(&m, Direction::OneGivenTwo).value;
            assert_eq!(
                qnd_correlation_form(&m, Direction::OneGivenTwo),
                Some(v < 1.0)
            );
        }
        assert_eq!(
            qnd_correlation_form(&pair(0.5, 3.0, 0.0), Direction::OneGivenTwo),
            None
        );
    }

    #[test]
    fn duan_and_epr_values() {
        let vac = DuanEprMoments::new(pair(1.0, 1.0, 0.0), pair(1.0, 1.0, 0.0));
        assert_eq!(duan_separability(&vac), 2.0);
        assert_eq!(epr_product(&vac, Direction::OneGivenTwo), 1.0);

        let (c, s) = (1.0f64.cosh(), 1.0f64.sinh());
        let tmsv = DuanEprMoments::new(pair(c, c, s / c), pair(c, c, -s / c));
        let s12 = duan_separability(&tmsv);
        assert!((s12 - 2.0 * (-1.0f64).exp()).abs() < 1e-12);
        assert!((s12 - 0.7357588823428847).abs() < 1e-12);
        let p = epr_product(&tmsv, Direction::TwoGivenOne);
        assert!((p - 1.0 / (c * c)).abs() < 1e-12);
        assert!((p - 0.41997434161402614).abs() < 1e-12);
        assert!(epr_correlation_form(&tmsv, Direction::OneGivenTwo));

        let f = 3.5;
        let th = DuanEprMoments::new(pair(f, f, 0.0), pair(f, f, 0.0));
        assert_eq!(duan_separability(&th), 2.0 * f);
        assert!(!epr_correlation_form(&th, Direction::OneGivenTwo));
    }
}
