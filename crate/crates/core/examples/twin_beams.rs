//! Gemellity of twin beams versus a classically split noisy beam.

use twinbeams::criteria::{classify, QuadratureAngles};
use twinbeams::{BeamsplitterParams, GaussianTwoModeState};

fn main() -> twinbeams::Result<()> {
    let angles = QuadratureAngles::default();
    println!("{:>6} {:>10} {:>10}", "r", "G", "e^-2r");
    for r in [0.0, 0.25, 0.5, 1.0, 1.103, 1.5, 2.0] {
        let report = classify(&GaussianTwoModeState::two_mode_squeezed(r)?, angles)?;
        println!(
            "{r:>6.3} {:>10.6} {:>10.6}",
            report.gemellity,
            (-2.0 * r).exp()
        );
    }

    println!("\nclassical split (thermal beam on a 50/50 beamsplitter)");
    println!("{:>6} {:>10} {:>10}", "F_in", "C12", "G");
    for f_in in [1.0, 3.0, 9.0, 30.0, 100.0] {
        let state = GaussianTwoModeState::thermal(f_in, 1.0)?
            .apply_beamsplitter(BeamsplitterParams::balanced());
        let report = classify(&state, angles)?;
        println!(
            "{f_in:>6} {:>10.6} {:>10.6}",
            report.plus.c12(),
            report.gemellity
        );
    }
    Ok(())
}
