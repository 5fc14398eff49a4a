//! Two-mode Gaussian states and the linear-optical maps acting on them.
//!
//! Coordinates are always `(X+_1, X-_1, X+_2, X-_2)` and the covariance is
//! normalized to shot noise, so a coherent or vacuum mode has unit variance on
//! every quadrature. With this normalization the canonical commutator is
//! `[X+, X-] = 2i` and a covariance `cov` describes a physical state iff
//! `cov + i*Omega` is positive semidefinite, `Omega` being block-diagonal
//! with blocks `[[0, 1], [-1, 0]]`.

use std::f64::consts::FRAC_PI_4;

use nalgebra::{Matrix2, Matrix4, SMatrix, SymmetricEigen, Vector4};
use serde::{Deserialize, Serialize};

use crate::criteria::MomentPair;
use crate::error::{Error, Result};

pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
pub const PHYSICALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Mode {
    One,
    Two,
}

impl Mode {
    fn offset(self) -> usize {
        match self {
            Mode::One => 0,
            Mode::Two => 2,
        }
    }
}

impl TryFrom<u8> for Mode {
    type Error = String;

    fn try_from(value: u8) -> std::result::Result<Self, String> {
        match value {
            1 => Ok(Mode::One),
            2 => Ok(Mode::Two),
            other => Err(format!("mode must be 1 or 2, got {other}")),
        }
    }
}

impl From<Mode> for u8 {
    fn from(mode: Mode) -> u8 {
        match mode {
            Mode::One => 1,
            Mode::Two => 2,
        }
    }
}

/// Beamsplitter with amplitude reflection `cos(theta)` and transmission
/// `sin(theta)`, preceded by a phase shift `phi` on mode 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamsplitterParams {
    pub theta: f64,
    #[serde(default)]
    pub phi: f64,
}

impl BeamsplitterParams {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub fn balanced() -> Self {
        Self::new(FRAC_PI_4, 0.0)
    }

    pub fn reflection(&self) -> f64 {
        self.theta.cos()
    }

    pub fn transmission(&self) -> f64 {
        self.theta.sin()
    }
}

/// Per-mode intensity transmissions of a pure-loss channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossParams {
    eta1: f64,
    eta2: f64,
}

impl LossParams {
    pub fn new(eta1: f64, eta2: f64) -> Result<Self> {
        for (name, eta) in [("eta1", eta1), ("eta2", eta2)] {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::invalid(name, eta, "transmission must lie in [0, 1]"));
            }
        }
        Ok(Self { eta1, eta2 })
    }

    pub fn symmetric(eta: f64) -> Result<Self> {
        Self::new(eta, eta)
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    pub fn eta2(&self) -> f64 {
        self.eta2
    }
}

/// Mean vector and covariance matrix of a two-mode Gaussian state.
///
/// Construction through [`GaussianTwoModeState::new`] rejects asymmetric,
/// non-positive or uncertainty-violating covariances; every map in this
/// module preserves physicality, so values obtained from the constructors and
/// `apply_*` methods are always valid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct GaussianTwoModeState {
    mean: Vector4<f64>,
    cov: Matrix4<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateJson {
    mean: [f64; 4],
    cov: [[f64; 4]; 4],
}

impl TryFrom<StateJson> for GaussianTwoModeState {
    type Error = Error;

    fn try_from(raw: StateJson) -> Result<Self> {
        let mean = Vector4::from(raw.mean);
        let cov = Matrix4::from_fn(|i, j| raw.cov[i][j]);
        GaussianTwoModeState::new(mean, cov)
    }
}

impl From<GaussianTwoModeState> for StateJson {
    fn from(state: GaussianTwoModeState) -> Self {
        let mut cov = [[0.0; 4]; 4];
        for (i, row) in cov.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = state.cov[(i, j)];
            }
        }
        StateJson {
            mean: state.mean.into(),
            cov,
        }
    }
}

impl GaussianTwoModeState {
    pub fn new(mean: Vector4<f64>, cov: Matrix4<f64>) -> Result<Self> {
        if mean.iter().chain(cov.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Validation {
                field: "state".into(),
                message: "mean and covariance entries must be finite".into(),
            });
        }
        let asym = (cov - cov.transpose()).amax();
        if asym > SYMMETRY_TOLERANCE {
            return Err(Error::NotSymmetric(asym));
        }
        for i in 0..4 {
            if cov[(i, i)] <= 0.0 {
                return Err(Error::NonPositiveVariance {
                    index: i,
                    value: cov[(i, i)],
                });
            }
        }
        let min_eig = uncertainty_min_eigenvalue(&cov);
        if min_eig < -PHYSICALITY_TOLERANCE {
            return Err(Error::Unphysical(min_eig));
        }
        Ok(Self { mean, cov })
    }

    pub fn vacuum() -> Self {
        Self {
            mean: Vector4::zeros(),
            cov: Matrix4::identity(),
        }
    }

    /// Independent phase-insensitive beams with quadrature Fano factors
    /// `f1`, `f2` (classical excess noise for `F > 1`).
    pub fn thermal(f1: f64, f2: f64) -> Result<Self> {
        for (name, f) in [("f1", f1), ("f2", f2)] {
            if !(f >= 1.0) || !f.is_finite() {
                return Err(Error::invalid(name, f, "thermal Fano factor must be >= 1"));
            }
        }
        Ok(Self {
            mean: Vector4::zeros(),
            cov: Matrix4::from_diagonal(&Vector4::new(f1, f1, f2, f2)),
        })
    }

    /// Two-mode squeezed vacuum: `X+` correlated and `X-` anticorrelated.
    pub fn two_mode_squeezed(r: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::invalid("r", r, "squeezing parameter must be >= 0"));
        }
        let c = (2.0 * r).cosh();
        let s = (2.0 * r).sinh();
        #[rustfmt::skip]
        let cov = Matrix4::new(
            c,   0.0, s,   0.0,
            0.0, c,   0.0, -s,
            s,   0.0, c,   0.0,
            0.0, -s,  0.0, c,
        );
        Ok(Self {
            mean: Vector4::zeros(),
            cov,
        })
    }

    /// Squeezed vacuum on `mode` (variance `e^{-2s}` along the quadrature at
    /// angle `angle`), vacuum on the other mode.
    pub fn single_mode_squeezed(mode: Mode, s: f64, angle: f64) -> Result<Self> {
        Self::vacuum().apply_squeezer(mode, s, angle)
    }

    pub fn mean(&self) -> &Vector4<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &Matrix4<f64> {
        &self.cov
    }

    fn transform(&self, s: &Matrix4<f64>) -> Self {
        let cov = s * self.cov * s.transpose();
        Self {
            mean: s * self.mean,
            cov: symmetrize(cov),
        }
    }

    pub fn apply_beamsplitter(&self, params: BeamsplitterParams) -> Self {
        self.transform(&beamsplitter_matrix(params))
    }

    pub fn apply_phase(&self, phi1: f64, phi2: f64) -> Self {
        let mut s = Matrix4::zeros();
        s.fixed_view_mut::<2, 2>(0, 0).copy_from(&rotation(phi1));
        s.fixed_view_mut::<2, 2>(2, 2).copy_from(&rotation(phi2));
        self.transform(&s)
    }

    /// Single-mode squeezer: the quadrature at `angle` is scaled by `e^{-s}`
    /// and its conjugate by `e^{s}`.
    pub fn apply_squeezer(&self, mode: Mode, s: f64, angle: f64) -> Result<Self> {
        if !s.is_finite() || !angle.is_finite() || s.abs() > 50.0 {
            return Err(Error::invalid(
                "s",
                s,
                "squeezing must be finite with |s| <= 50",
            ));
        }
        let rot = rotation(angle);
        let local = rot * Matrix2::new((-s).exp(), 0.0, 0.0, s.exp()) * rot.transpose();
        let mut m = Matrix4::identity();
        let o = mode.offset();
        m.fixed_view_mut::<2, 2>(o, o).copy_from(&local);
        Ok(self.transform(&m))
    }

    /// Pure-loss channel: each mode is mixed with vacuum, keeping a fraction
    /// `eta` of its intensity.
    pub fn apply_loss(&self, params: LossParams) -> Self {
        let (a, b) = (params.eta1.sqrt(), params.eta2.sqrt());
        let x = Matrix4::from_diagonal(&Vector4::new(a, a, b, b));
        let y = Matrix4::from_diagonal(&Vector4::new(
            1.0 - params.eta1,
            1.0 - params.eta1,
            1.0 - params.eta2,
            1.0 - params.eta2,
        ));
        let cov = x * self.cov * x.transpose() + y;
        Self {
            mean: x * self.mean,
            cov: symmetrize(cov),
        }
    }

    /// Moments of the quadratures `cos(t1) X+_1 + sin(t1) X-_1` and
    /// `cos(t2) X+_2 + sin(t2) X-_2`.
    pub fn quadrature_moments(&self, theta1: f64, theta2: f64) -> MomentPair {
        moments_from_cov(&self.cov, theta1, theta2)
            .expect("physical states have positive quadrature variances")
    }

    pub fn uncertainty_min_eigenvalue(&self) -> f64 {
        uncertainty_min_eigenvalue(&self.cov)
    }

    /// Smallest eigenvalue of `cov - I`; non-negative iff the state has a
    /// positive Glauber P function, i.e. is classical.
    pub fn classicality_min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.cov - Matrix4::identity())
            .eigenvalues
            .min()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: StateJson = serde_json::from_str(text)?;
        raw.try_into()
    }
}

/// Variances and normalized correlation of one quadrature of each mode.
///
/// The correlation is clamped to `[-1, 1]` only when it overshoots by at most
/// `1e-12`; larger overshoots are reported as errors by [`MomentPair::new`].
pub fn moments_from_cov(cov: &Matrix4<f64>, theta1: f64, theta2: f64) -> Result<MomentPair> {
    let u1 = Vector4::new(theta1.cos(), theta1.sin(), 0.0, 0.0);
    let u2 = Vector4::new(0.0, 0.0, theta2.cos(), theta2.sin());
    let f1 = u1.dot(&(cov * u1));
    let f2 = u2.dot(&(cov * u2));
    let cross = u1.dot(&(cov * u2));
    let mut c = cross / (f1 * f2).sqrt();
    if c.abs() > 1.0 && c.abs() <= 1.0 + 1e-12 {
        c = c.signum();
    }
    MomentPair::new(f1, f2, c)
}

pub fn rotation(phi: f64) -> Matrix2<f64> {
    let (s, c) = phi.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Symplectic matrix of [`GaussianTwoModeState::apply_beamsplitter`]: the
/// mode-2 phase shift followed by the mixing
/// `X1' = r X1 - t X2`, `X2' = t X1 + r X2` on both quadratures.
pub fn beamsplitter_matrix(params: BeamsplitterParams) -> Matrix4<f64> {
    let r = params.reflection();
    let t = params.transmission();
    let i2 = Matrix2::identity();
    let mut mix = Matrix4::zeros();
    mix.fixed_view_mut::<2, 2>(0, 0).copy_from(&(i2 * r));
    mix.fixed_view_mut::<2, 2>(0, 2).copy_from(&(i2 * -t));
    mix.fixed_view_mut::<2, 2>(2, 0).copy_from(&(i2 * t));
    mix.fixed_view_mut::<2, 2>(2, 2).copy_from(&(i2 * r));
    let mut phase = Matrix4::identity();
    phase
        .fixed_view_mut::<2, 2>(2, 2)
        .copy_from(&rotation(params.phi));
    mix * phase
}

/// Symplectic form in `(X+_1, X-_1, X+_2, X-_2)` ordering.
pub fn symplectic_form() -> Matrix4<f64> {
    #[rustfmt::skip]
    let omega = Matrix4::new(
        0.0,  1.0, 0.0,  0.0,
        -1.0, 0.0, 0.0,  0.0,
        0.0,  0.0, 0.0,  1.0,
        0.0,  0.0, -1.0, 0.0,
    );
    omega
}

/// Smallest eigenvalue of the Hermitian matrix `cov + i*Omega`.
///
/// Computed through the real symmetric embedding `[[A, -B], [B, A]]` of
/// `A + iB`, whose spectrum is that of `A + iB` with every eigenvalue doubled.
pub fn uncertainty_min_eigenvalue(cov: &Matrix4<f64>) -> f64 {
    let omega = symplectic_form();
    let mut embed = SMatrix::<f64, 8, 8>::zeros();
    embed.fixed_view_mut::<4, 4>(0, 0).copy_from(cov);
    embed.fixed_view_mut::<4, 4>(4, 4).copy_from(cov);
    embed.fixed_view_mut::<4, 4>(0, 4).copy_from(&(-omega));
    embed.fixed_view_mut::<4, 4>(4, 0).copy_from(&omega);
    SymmetricEigen::new(embed).eigenvalues.min()
}

fn symmetrize(m: Matrix4<f64>) -> Matrix4<f64> {
    (m + m.transpose()) * 0.5
}
