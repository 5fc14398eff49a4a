//! Random-state generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_4, PI};

use nalgebra::{Matrix4, Vector4};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use twinbeams::{BeamsplitterParams, GaussianTwoModeState, LossParams, Mode, MomentPair};

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform on `[lo, hi]`.
pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..=hi.ln())).exp()
}

pub fn random_pair(rng: &mut ChaCha8Rng) -> MomentPair {
    let f1 = log_uniform(rng, 0.05, 50.0);
    let f2 = log_uniform(rng, 0.05, 50.0);
    MomentPair::new(f1, f2, rng.random_range(-1.0..=1.0)).unwrap()
}

/// Mode-symmetric state: two independently squeezed thermal modes mixed on a
/// 50/50 beamsplitter, then symmetric loss and equal phases. Every quadrature
/// pair of the result has `F1 = F2`.
pub fn balanced_state(rng: &mut ChaCha8Rng) -> GaussianTwoModeState {
    let n = rng.random_range(1.0..3.0);
    let mut s = GaussianTwoModeState::thermal(n, n).unwrap();
    for mode in [Mode::One, Mode::Two] {
        s = s
            .apply_squeezer(mode, rng.random_range(-1.5..1.5), rng.random_range(0.0..PI))
            .unwrap();
    }
    let phase = rng.random_range(0.0..2.0 * PI);
    s.apply_beamsplitter(BeamsplitterParams::balanced())
        .apply_loss(LossParams::symmetric(rng.random_range(0.0..=1.0)).unwrap())
        .apply_phase(phase, phase)
}

/// Thermal modes, independent squeezers, a random beamsplitter, random
/// phases and independent losses.
pub fn general_state(rng: &mut ChaCha8Rng) -> GaussianTwoModeState {
    let mut s =
        GaussianTwoModeState::thermal(rng.random_range(1.0..4.0), rng.random_range(1.0..4.0))
            .unwrap();
    for mode in [Mode::One, Mode::Two] {
        s = s
            .apply_squeezer(mode, rng.random_range(-1.5..1.5), rng.random_range(0.0..PI))
            .unwrap();
    }
    s.apply_beamsplitter(BeamsplitterParams::new(
        rng.random_range(0.0..PI),
        rng.random_range(0.0..2.0 * PI),
    ))
    .apply_phase(
        rng.random_range(0.0..2.0 * PI),
        rng.random_range(0.0..2.0 * PI),
    )
    .apply_loss(LossParams::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0)).unwrap())
}

/// Symmetric standard form with correlated plus and anticorrelated minus
/// quadratures of independent strengths, rejection sampled for physicality.
pub fn standard_form_state(rng: &mut ChaCha8Rng) -> GaussianTwoModeState {
    loop {
        let a = log_uniform(rng, 1.0, 20.0);
        let c = rng.random_range(0.0..a);
        let d = rng.random_range(0.0..a);
        if let Ok(s) = GaussianTwoModeState::new(Vector4::zeros(), standard_form(a, c, d)) {
            return s;
        }
    }
}

/// Symmetric standard form with equal plus and minus correlation strength,
/// the class reached by a TMSV under symmetric loss and thermal noise.
pub fn phase_insensitive_state(rng: &mut ChaCha8Rng) -> GaussianTwoModeState {
    let a = log_uniform(rng, 1.0, 20.0);
    let c = rng.random_range(0.0..=1.0) * (a * a - 1.0).sqrt();
    GaussianTwoModeState::new(Vector4::zeros(), standard_form(a, c, c)).unwrap()
}

pub fn standard_form(a: f64, c: f64, d: f64) -> Matrix4<f64> {
    Matrix4::new(
        a, 0.0, c, 0.0, //
        0.0, a, 0.0, -d, //
        c, 0.0, a, 0.0, //
        0.0, -d, 0.0, a,
    )
}

/// `cov = I + A A^T`: a classical state (positive P function).
pub fn classical_state(rng: &mut ChaCha8Rng) -> GaussianTwoModeState {
    let scale = log_uniform(rng, 0.01, 3.0);
    let a = Matrix4::from_fn(|_, _| scale * rng.sample::<f64, _>(StandardNormal));
    let mean = Vector4::from_fn(|_, _| rng.random_range(-5.0..5.0));
    GaussianTwoModeState::new(mean, Matrix4::identity() + a * a.transpose()).unwrap()
}

/// A random sequence of beamsplitters and phase shifts.
pub fn passive_pipeline(
    rng: &mut ChaCha8Rng,
    state: &GaussianTwoModeState,
) -> GaussianTwoModeState {
    let steps = rng.random_range(1..=6);
    (0..steps).fold(state.clone(), |s, _| {
        if rng.random_bool(0.5) {
            s.apply_beamsplitter(BeamsplitterParams::new(
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
            ))
        } else {
            s.apply_phase(rng.random_range(-PI..PI), rng.random_range(-PI..PI))
        }
    })
}

pub fn split_thermal(f_in: f64) -> GaussianTwoModeState {
    GaussianTwoModeState::thermal(f_in, 1.0)
        .unwrap()
        .apply_beamsplitter(BeamsplitterParams::new(FRAC_PI_4, 0.0))
}
