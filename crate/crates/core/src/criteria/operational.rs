//! Operational definitions of gemellity and conditional variance by direct
//! scans: the beamsplitter angle for recombined beams, the electronic gain
//! for the subtracted photocurrents. They share no algebra with the closed
//! forms in the parent module and serve as their oracle.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{ConditionalVariance, Direction, Gemellity, MomentPair};

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
/// Returns `(argmin, min)` over every point evaluated.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..200 {
        if hi - lo <= 1e-13 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
            if f1 < best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
            if f2 < best.1 {
                best = (x2, f2);
            }
        }
    }
    best
}

/// Coarse scan of `f` over `grid_size` points of `[lo, hi)`, then golden
/// section between the neighbours of the best grid point.
fn scan_then_refine(f: impl Fn(f64) -> f64, lo: f64, hi: f64, grid_size: usize) -> (f64, f64) {
    let step = (hi - lo) / grid_size as f64;
    let (best_i, best_f) = (0..grid_size).map(|i| (i, f(lo + step * i as f64))).fold(
        (0, f64::INFINITY),
        |acc, (i, v)| if v < acc.1 { (i, v) } else { acc },
    );
    let centre = lo + step * best_i as f64;
    let (x, v) = golden_section(&f, centre - step, centre + step);
    if v <= best_f {
        (x, v)
    } else {
        (centre, best_f)
    }
}

/// Noise of the recombined output `cos(theta) dX1 - sin(theta) dX2`.
pub fn recombined_variance(m: &MomentPair, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    c * c * m.f1() + s * s * m.f2() - 2.0 * s * c * m.covariance()
}

/// Gemellity as the minimum of [`recombined_variance`] over a full period of
/// the beamsplitter angle. `grid_size` (at least 3) sets the coarse scan.
pub fn gemellity_operational(m: &MomentPair, grid_size: usize) -> Gemellity {
    let grid_size = grid_size.max(3);
    let (theta, value) = scan_then_refine(
        |t| recombined_variance(m, t),
        -FRAC_PI_2,
        FRAC_PI_2,
        grid_size,
    );
    // report the angle in (-pi/2, pi/2]
    let theta = if theta <= -FRAC_PI_2 {
        theta + PI
    } else if theta > FRAC_PI_2 {
        theta - PI
    } else {
        theta
    };
    Gemellity { value, theta }
}

/// Variance of `X_a - g X_b` for the chosen inference direction.
pub fn gain_variance(m: &MomentPair, direction: Direction, gain: f64) -> f64 {
    let (fa, fb) = match direction {
        Direction::OneGivenTwo => (m.f1(), m.f2()),
        Direction::TwoGivenOne => (m.f2(), m.f1()),
    };
    fa - 2.0 * gain * m.covariance() + gain * gain * fb
}

/// Conditional variance as the minimum of [`gain_variance`] over the gain.
pub fn conditional_variance_operational(
    m: &MomentPair,
    direction: Direction,
) -> ConditionalVariance {
    let (fa, fb) = match direction {
        Direction::OneGivenTwo => (m.f1(), m.f2()),
        Direction::TwoGivenOne => (m.f2(), m.f1()),
    };
    // |g*| <= sqrt(Fa/Fb) by Cauchy-Schwarz
    let reach = 2.0 * (fa / fb).sqrt() + 1.0;
    let (gain, value) = scan_then_refine(|g| gain_variance(m, direction, g), -reach, reach, 64);
    ConditionalVariance { value, gain }
}
