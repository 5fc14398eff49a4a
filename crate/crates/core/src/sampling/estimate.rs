use std::collections::BTreeMap;

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use super::SampleBatch;
use crate::criteria::{report_from_covariance, CriteriaReport, QuadratureAngles};
use crate::error::{Error, Result};

pub const JACKKNIFE_BLOCKS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub se: f64,
}

impl Estimate {
    /// Distance to `target` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.value - target).abs() / self.se
    }
}

/// Plug-in criteria from one batch with delete-one-block jackknife errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatedCriteria {
    pub n: usize,
    pub blocks: usize,
    pub seed: u64,
    pub source_label: String,
    /// Full-sample plug-in report, including the level verdicts.
    pub report: CriteriaReport,
    pub estimates: BTreeMap<String, Estimate>,
}

impl EstimatedCriteria {
    pub fn get(&self, name: &str) -> Option<&Estimate> {
        self.estimates.get(name)
    }
}

/// Running sums of centered records for one block.
#[derive(Clone, Copy)]
struct Sums {
    count: f64,
    first: Vector4<f64>,
    second: Matrix4<f64>,
}

impl Sums {
    fn zero() -> Self {
        Self {
            count: 0.0,
            first: Vector4::zeros(),
            second: Matrix4::zeros(),
        }
    }

    fn covariance(&self) -> Matrix4<f64> {
        let m = self.first / self.count;
        self.second / self.count - m * m.transpose()
    }

    fn minus(&self, other: &Sums) -> Sums {
        Sums {
            count: self.count - other.count,
            first: self.first - other.first,
            second: self.second - other.second,
        }
    }
}

fn column_mean(batch: &SampleBatch) -> Vector4<f64> {
    let n = batch.len() as f64;
    batch
        .samples()
        .iter()
        .fold(Vector4::zeros(), |acc, r| acc + Vector4::from(*r))
        / n
}

fn block_sums(batch: &SampleBatch, centre: &Vector4<f64>, blocks: usize) -> Vec<Sums> {
    let n = batch.len();
    (0..blocks)
        .map(|b| {
            let rows = &batch.samples()[b * n / blocks..(b + 1) * n / blocks];
            rows.iter().fold(Sums::zero(), |mut s, r| {
                let x = Vector4::from(*r) - centre;
                s.count += 1.0;
                s.first += x;
                s.second += x * x.transpose();
                s
            })
        })
        .collect()
}

/// Sample mean and plug-in (`1/N`) covariance of a batch.
pub fn sample_moments(batch: &SampleBatch) -> (Vector4<f64>, Matrix4<f64>) {
    let centre = column_mean(batch);
    let total = block_sums(batch, &centre, 1)[0];
    (centre + total.first / total.count, total.covariance())
}

/// The map from second moments to criteria shared by the analytic and the
/// estimated paths.
pub fn plug_in_report(cov: &Matrix4<f64>, angles: QuadratureAngles) -> Result<CriteriaReport> {
    report_from_covariance(cov, angles).map_err(|e| Error::Estimation(e.to_string()))
}

pub fn estimate_criteria(batch: &SampleBatch) -> Result<EstimatedCriteria> {
    estimate_criteria_at(batch, QuadratureAngles::default())
}

pub fn estimate_criteria_at(
    batch: &SampleBatch,
    angles: QuadratureAngles,
) -> Result<EstimatedCriteria> {
    let n = batch.len();
    if n < 2 * JACKKNIFE_BLOCKS {
        return Err(Error::Estimation(format!(
            "{n} samples; at least {} are needed for {JACKKNIFE_BLOCKS} jackknife blocks",
            2 * JACKKNIFE_BLOCKS
        )));
    }
    let centre = column_mean(batch);
    let blocks = block_sums(batch, &centre, JACKKNIFE_BLOCKS);
    let total = blocks.iter().fold(Sums::zero(), |acc, b| Sums {
        count: acc.count + b.count,
        first: acc.first + b.first,
        second: acc.second + b.second,
    });
    let cov = total.covariance();
    for i in 0..4 {
        if !(cov[(i, i)] > 0.0) {
            return Err(Error::Estimation(format!(
                "column {} has zero variance",
                super::CSV_HEADER[i + 1]
            )));
        }
    }

    let report = plug_in_report(&cov, angles)?;
    let replicates = blocks
        .iter()
        .map(|b| plug_in_report(&total.minus(b).covariance(), angles))
        .collect::<Result<Vec<_>>>()?;

    let k = JACKKNIFE_BLOCKS as f64;
    let replicate_scalars: Vec<_> = replicates.iter().map(|r| r.scalars()).collect();
    let estimates = report
        .scalars()
        .into_iter()
        .enumerate()
        .map(|(idx, (name, value))| {
            let mean = replicate_scalars.iter().map(|s| s[idx].1).sum::<f64>() / k;
            let ss: f64 = replicate_scalars
                .iter()
                .map(|s| (s[idx].1 - mean).powi(2))
                .sum();
            let se = ((k - 1.0) / k * ss).sqrt();
            (name.to_string(), Estimate { value, se })
        })
        .collect();

    Ok(EstimatedCriteria {
        n,
        blocks: JACKKNIFE_BLOCKS,
        seed: batch.seed(),
        source_label: batch.source_label().to_string(),
        report,
        estimates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::classify;
    use crate::gaussian::GaussianTwoModeState;
    use crate::sampling::draw_samples;

    #[test]
    fn analytic_covariance_through_plug_in_path() {
        let state = GaussianTwoModeState::two_mode_squeezed(0.8)
            .unwrap()
            .apply_phase(0.3, -0.1);
        let angles = QuadratureAngles {
            theta_plus: 0.2,
            theta_minus: 1.9,
        };
        let direct = classify(&state, angles).unwrap();
        let plug = plug_in_report(state.cov(), angles).unwrap();
        for ((name, a), (_, b)) in direct.scalars().into_iter().zip(plug.scalars()) {
            assert!((a - b).abs() <= 1e-12, "{name}: {a} vs {b}");
        }
    }

    #[test]
    fn moments_of_a_small_batch() {
        let batch = SampleBatch::new(
            vec![
                [1.0, 0.0, 2.0, 0.0],
                [-1.0, 2.0, 0.0, 1.0],
                [0.0, 1.0, 1.0, -1.0],
            ],
            0,
            "hand",
        )
        .unwrap();
        let (mean, cov) = sample_moments(&batch);
        assert!((mean[0] - 0.0).abs() < 1e-15);
        assert!((mean[2] - 1.0).abs() < 1e-15);
        assert!((cov[(0, 0)] - 2.0 / 3.0).abs() < 1e-15);
        assert!((cov[(0, 2)] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_column_is_an_error() {
        let rows = (0..400)
            .map(|i| [i as f64, 1.0, -(i as f64), 0.5 * i as f64])
            .collect();
        let batch = SampleBatch::new(rows, 0, "flat").unwrap();
        assert!(matches!(
            estimate_criteria(&batch),
            Err(Error::Estimation(_))
        ));
    }

    #[test]
    fn too_few_samples() {
        let batch = draw_samples(&GaussianTwoModeState::vacuum(), 150, 1).unwrap();
        assert!(matches!(
            estimate_criteria(&batch),
            Err(Error::Estimation(_))
        ));
    }

    #[test]
    fn errors_shrink_with_n() {
        let state = GaussianTwoModeState::two_mode_squeezed(0.5).unwrap();
        let small = estimate_criteria(&draw_samples(&state, 2_000, 5).unwrap()).unwrap();
        let large = estimate_criteria(&draw_samples(&state, 200_000, 5).unwrap()).unwrap();
        for name in ["G", "V12", "S12", "epr_12"] {
            let (a, b) = (small.get(name).unwrap().se, large.get(name).unwrap().se);
            assert!(b < a / 5.0, "{name}: {a} -> {b}");
            assert!(b > 0.0);
        }
    }
}
