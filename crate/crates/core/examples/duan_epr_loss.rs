//! Duan sum and EPR product of strongly squeezed twin beams under loss.

use twinbeams::scenario::{parse_grid, sweep, Source, Step};
use twinbeams::Scenario;

fn main() -> twinbeams::Result<()> {
    let scenario = Scenario::new(Source::Tmsv { r: 3.0 }).with_step(Step::Loss {
        eta1: 1.0,
        eta2: 1.0,
    });
    let params = ["pipeline.0.eta1".to_string(), "pipeline.0.eta2".to_string()];
    let table = sweep(&scenario, &params, &parse_grid("0:1:21")?)?;

    println!(
        "{:>5} {:>10} {:>12} {:>6} {:>6}",
        "eta", "S12", "EPR", "L3", "L4"
    );
    for row in &table.rows {
        let r = &row.report;
        println!(
            "{:>5.2} {:>10.5} {:>12.5} {:>6} {:>6}",
            row.value, r.s12, r.epr_12, r.level3, r.level4
        );
    }
    if let Some(eta) = table.crossing("epr_12", 1.0) {
        println!("EPR product crosses 1 at eta = {eta:.4}");
    }
    Ok(())
}
