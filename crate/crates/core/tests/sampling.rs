mod common;

use twinbeams::criteria::{classify, QuadratureAngles};
use twinbeams::sampling::{read_batch, sample_moments, write_batch};
use twinbeams::scenario::{run_scenario, Source, Step};
use twinbeams::{draw_samples, estimate_criteria, GaussianTwoModeState, Scenario};

#[test]
fn estimates_converge_across_sample_sizes() {
    let state = GaussianTwoModeState::two_mode_squeezed(0.7)
        .unwrap()
        .apply_phase(0.2, 0.2);
    let analytic = classify(&state, QuadratureAngles::default()).unwrap();
    for (k, n) in [1_000, 10_000, 100_000, 1_000_000].into_iter().enumerate() {
        let est = estimate_criteria(&draw_samples(&state, n, 40 + k as u64).unwrap()).unwrap();
        for name in ["G", "V12", "V21", "S12", "epr_12", "epr_21", "C12_plus"] {
            let target = analytic
                .scalars()
                .into_iter()
                .find(|(m, _)| *m == name)
                .unwrap()
                .1;
            let z = est.get(name).unwrap().z_score(target);
            assert!(z <= 5.0, "n={n} {name}: z={z}");
        }
    }
}

#[test]
fn sample_covariance_approaches_state_covariance() {
    let mut rng = common::rng(3);
    let state = common::general_state(&mut rng);
    let (mean, cov) = sample_moments(&draw_samples(&state, 1_000_000, 9).unwrap());
    let scale = state.cov().amax();
    assert!((cov - state.cov()).amax() < 0.02 * scale);
    assert!(mean.amax() < 0.01 * scale.sqrt());
}

#[test]
fn batch_file_round_trip_keeps_the_estimate() {
    let state = common::split_thermal(9.0);
    let batch = draw_samples(&state, 5_000, 17).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("batch.csv");
    write_batch(&batch, &path).unwrap();
    let back = read_batch(&path).unwrap();
    assert_eq!(back, batch);
    assert_eq!(
        estimate_criteria(&back).unwrap(),
        estimate_criteria(&batch).unwrap()
    );
}

#[test]
fn analytic_and_sampled_agree_in_one_report() {
    let scenario = Scenario::new(Source::Tmsv { r: 1.103 })
        .with_step(Step::Loss {
            eta1: 0.8,
            eta2: 0.9,
        })
        .with_sampling(1_000_000, 21);
    let report = run_scenario(&scenario).unwrap();
    let sampled = report.sampled.as_ref().unwrap();
    assert_eq!(sampled.n, 1_000_000);
    for (name, value) in report.analytic.scalars() {
        if name.starts_with("optimal") {
            continue;
        }
        let z = sampled.get(name).unwrap().z_score(value);
        assert!(z <= 5.0, "{name}: z={z}");
    }
}
