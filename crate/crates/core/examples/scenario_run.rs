//! Run a scenario file and print the level banners.
//!
//! cargo run --example scenario_run -- crates/core/scenarios/lossy_epr.toml

use twinbeams::scenario::run_scenario;
use twinbeams::Scenario;

fn main() -> twinbeams::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/twin_beams.toml").into()
    });
    let scenario = Scenario::load(&path)?;
    let report = run_scenario(&scenario)?;
    println!("{}", report.source);
    for b in &report.banners {
        let verdict = match b.satisfied {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        println!(
            "level {} {:<22} {:<28} {verdict:<4} {}",
            b.level, b.name, b.criterion, b.statement
        );
    }
    Ok(())
}
