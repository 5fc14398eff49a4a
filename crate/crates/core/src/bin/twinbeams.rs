use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use twinbeams::criteria::QuadratureAngles;
use twinbeams::fock::{photon_statistics, FockMixture};
use twinbeams::sampling::{draw_samples_labeled, estimate_criteria_at, read_batch, write_batch};
use twinbeams::scenario::{parse_grid, run_scenario, sweep, Sampling, Scenario};
use twinbeams::{Error, Result};

/// Twin, QND, inseparable and EPR criteria for two-mode Gaussian beams.
///
/// Log verbosity is read from TWINBEAMS_LOG (e.g. TWINBEAMS_LOG=info).
#[derive(Parser)]
#[command(name = "twinbeams", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the scenario state and write the JSON criteria report.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override or enable sampling: number of homodyne records.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Tabulate the criteria while one or more parameters follow a grid.
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        /// Dotted parameter path(s), comma separated, e.g. pipeline.0.eta1,pipeline.0.eta2
        #[arg(long, value_delimiter = ',', required = true)]
        param: Vec<String>,
        /// start:stop:count or v1,v2,...
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a seeded homodyne batch from the scenario state and write it as CSV.
    Sample {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate every criterion, with jackknife errors, from a batch CSV.
    Estimate {
        #[arg(long)]
        batch: PathBuf,
        /// Take the analysis angles from this scenario instead of (0, pi/2).
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Photon statistics of the twin-Fock mixture sum_n p_n |n,n><n,n|.
    Fock {
        /// Inline weights p_0,p_1,...
        #[arg(long, conflicts_with = "weights_file", allow_hyphen_values = true)]
        weights: Option<String>,
        /// One weight per line.
        #[arg(long)]
        weights_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Run {
            scenario,
            out,
            n,
            seed,
        } => {
            let mut sc = Scenario::load(&scenario)?;
            if n.is_some() || seed.is_some() {
                let current = sc.analysis.sampling;
                sc.analysis.sampling = Some(Sampling {
                    n: n.or(current.map(|s| s.n)).unwrap_or(1_000_000),
                    seed: seed.or(current.map(|s| s.seed)).unwrap_or(0),
                });
                sc.validate()?;
            }
            let report = run_scenario(&sc)?;
            let target = out.or_else(|| sc.outputs.report.as_deref().map(|p| sc.resolve(p)));
            for b in &report.banners {
                let verdict = match b.satisfied {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "n/a",
                };
                log::info!("level {} ({}): {verdict}", b.level, b.name);
            }
            emit(&serde_json::to_string_pretty(&report)?, target.as_deref())
        }
        Command::Sweep {
            scenario,
            param,
            grid,
            out,
        } => {
            let sc = Scenario::load(&scenario)?;
            let table = sweep(&sc, &param, &parse_grid(&grid)?)?;
            match out.or_else(|| sc.outputs.sweep.as_deref().map(|p| sc.resolve(p))) {
                Some(path) => table.write_csv_file(path),
                None => table.write_csv(std::io::stdout().lock()),
            }
        }
        Command::Sample {
            scenario,
            n,
            seed,
            out,
        } => {
            let sc = Scenario::load(&scenario)?;
            let state = sc.build_state()?;
            let batch = draw_samples_labeled(&state, n, seed, &sc.source_label())?;
            write_batch(&batch, &out)?;
            log::info!("wrote {} samples to {}", batch.len(), out.display());
            Ok(())
        }
        Command::Estimate {
            batch,
            scenario,
            out,
        } => {
            let angles = match scenario {
                Some(path) => Scenario::load(path)?.angles(),
                None => QuadratureAngles::default(),
            };
            let estimated = estimate_criteria_at(&read_batch(&batch)?, angles)?;
            emit(&serde_json::to_string_pretty(&estimated)?, out.as_deref())
        }
        Command::Fock {
            weights,
            weights_file,
            out,
        } => {
            let mixture = match (weights, weights_file) {
                (Some(list), _) => FockMixture::parse_inline(&list)?,
                (None, Some(path)) => FockMixture::read(path)?,
                (None, None) => {
                    return Err(Error::Validation {
                        field: "weights".into(),
                        message: "give --weights or --weights-file".into(),
                    })
                }
            };
            let stats = photon_statistics(&mixture)?;
            emit(&serde_json::to_string_pretty(&stats)?, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TWINBEAMS_LOG", "warn")).init();
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
