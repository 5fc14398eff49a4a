use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::Scenario;
use crate::criteria::{classify, CriteriaReport, LEVEL5_NOTE};
use crate::error::{Error, Result};
use crate::gaussian::GaussianTwoModeState;
use crate::sampling::{draw_samples_labeled, estimate_criteria_at, EstimatedCriteria};

pub const REPORT_SCHEMA: &str = "twinbeams-report/1";

/// Verdict and meaning of one level of the correlation ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Banner {
    pub level: u8,
    pub name: String,
    pub criterion: String,
    /// `None` for level 5, which has no Gaussian test.
    pub satisfied: Option<bool>,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub source: String,
    pub state: GaussianTwoModeState,
    pub analytic: CriteriaReport,
    pub sampled: Option<EstimatedCriteria>,
    pub banners: Vec<Banner>,
}

pub fn banners(report: &CriteriaReport) -> Vec<Banner> {
    let rows: [(u8, &str, &str, Option<bool>, &str); 5] = [
        (
            1,
            "twin beams",
            "G < 1",
            Some(report.level1),
            "no model with classical fields and classical noise reproduces the correlation",
        ),
        (
            2,
            "QND-correlated beams",
            "V12 < 1 or V21 < 1",
            Some(report.level2),
            "measuring one beam gives a quantum non-demolition measurement of the other",
        ),
        (
            3,
            "inseparable beams",
            "S12 < 2",
            Some(report.level3),
            "the correlation comes from an entangled, non-separable state",
        ),
        (
            4,
            "EPR beams",
            "V+ V- < 1 (either direction)",
            Some(report.level4),
            "inference from one beam beats the Heisenberg bound on both quadratures of the other",
        ),
        (5, "Bell beams", "none", None, LEVEL5_NOTE),
    ];
    rows.into_iter()
        .map(|(level, name, criterion, satisfied, statement)| Banner {
            level,
            name: name.into(),
            criterion: criterion.into(),
            satisfied,
            statement: statement.into(),
        })
        .collect()
}

pub fn run_scenario(scenario: &Scenario) -> Result<RunReport> {
    let state = scenario.build_state()?;
    let angles = scenario.angles();
    let analytic = classify(&state, angles)?;
    let label = scenario.source_label();
    let sampled = match scenario.analysis.sampling {
        Some(s) => {
            log::info!("drawing {} samples with seed {}", s.n, s.seed);
            let batch = draw_samples_labeled(&state, s.n, s.seed, &label)?;
            Some(estimate_criteria_at(&batch, angles)?)
        }
        None => None,
    };
    Ok(RunReport {
        schema: REPORT_SCHEMA.to_string(),
        source: label,
        banners: banners(&analytic),
        state,
        analytic,
        sampled,
    })
}

/// Runs a scenario file and writes the JSON report to `out`, or to the
/// scenario's `outputs.report`, or next to the scenario as `report.json`.
pub fn run_scenario_file(path: &Path, out: Option<&Path>) -> Result<(RunReport, PathBuf)> {
    let scenario = Scenario::load(path)?;
    let report = run_scenario(&scenario)?;
    let target = match (out, &scenario.outputs.report) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(p)) => scenario.resolve(p),
        (None, None) => scenario.resolve(Path::new("report.json")),
    };
    let text = serde_json::to_string_pretty(&report)?;
    std::fs::write(&target, text + "\n").map_err(|e| Error::io(&target, e))?;
    Ok((report, target))
}
