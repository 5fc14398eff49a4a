//! Simulated homodyne records and jackknife estimates of every criterion.

use twinbeams::criteria::{classify, QuadratureAngles};
use twinbeams::{draw_samples, estimate_criteria, GaussianTwoModeState};

fn main() -> twinbeams::Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1_000_000);
    let state = GaussianTwoModeState::two_mode_squeezed(1.103)?;
    let analytic = classify(&state, QuadratureAngles::default())?;
    let estimated = estimate_criteria(&draw_samples(&state, n, 2024)?)?;

    println!("N = {n}, {} jackknife blocks", estimated.blocks);
    println!(
        "{:<18} {:>12} {:>12} {:>10} {:>6}",
        "criterion", "analytic", "estimate", "SE", "z"
    );
    for (name, value) in analytic.scalars() {
        let e = estimated.get(name).expect("every scalar is estimated");
        println!(
            "{name:<18} {value:>12.6} {:>12.6} {:>10.2e} {:>6.2}",
            e.value,
            e.se,
            e.z_score(value)
        );
    }
    Ok(())
}
