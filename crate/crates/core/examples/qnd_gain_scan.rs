//! Conditional variance found by scanning the inference gain, against the
//! closed form.

use twinbeams::criteria::operational::{conditional_variance_operational, gain_variance};
use twinbeams::criteria::{conditional_variance_of, qnd_correlation_form, Direction};
use twinbeams::{GaussianTwoModeState, LossParams};

fn main() -> twinbeams::Result<()> {
    let state =
        GaussianTwoModeState::two_mode_squeezed(0.6)?.apply_loss(LossParams::new(0.9, 0.6)?);
    let pair = state.quadrature_moments(0.0, 0.0);
    println!(
        "F1 = {:.4}, F2 = {:.4}, C12 = {:.4}",
        pair.f1(),
        pair.f2(),
        pair.c12()
    );

    for g in [0.0, 0.25, 0.5, 0.75, 1.0, 1.25] {
        println!(
            "g = {g:<5} Var(X1 - g X2) = {:.5}",
            gain_variance(&pair, Direction::OneGivenTwo, g)
        );
    }
    for dir in [Direction::OneGivenTwo, Direction::TwoGivenOne] {
        let closed = conditional_variance_of(&pair, dir);
        let scanned = conditional_variance_operational(&pair, dir);
        println!(
            "{dir:?}: V = {:.12} at g = {:.6} (scan {:.12} at {:.6}), correlation form {:?}",
            closed.value,
            closed.gain,
            scanned.value,
            scanned.gain,
            qnd_correlation_form(&pair, dir)
        );
    }
    Ok(())
}
