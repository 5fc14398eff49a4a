//! A separable mixture of twin Fock states with perfect intensity correlation.

use twinbeams::fock::photon_statistics;
use twinbeams::FockMixture;

fn main() -> twinbeams::Result<()> {
    for mean in [0.5, 1.0, 5.0] {
        let mixture = FockMixture::geometric(mean, 400)?;
        let stats = photon_statistics(&mixture)?;
        println!(
            "<n> = {:.4}  Fano = {:.4}  C12 = {:?}  G = {}  V12 = {}  V21 = {}",
            stats.mean,
            stats.fano,
            stats.correlation,
            stats.intensity_gemellity,
            stats.conditional_variance_12,
            stats.conditional_variance_21
        );
    }
    Ok(())
}
