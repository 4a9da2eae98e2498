//! Thin command-line shell over the `scsm` library. Every number it prints
//! or writes can be recomputed by calling the library with the seed recorded
//! in the output row.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use scsm::sweep::{run_bound_sweep, run_sweep, SweepRun};
use scsm::{emit_csv, moment_report, parse_config, preset, SweepSpec, SystemConfig};

#[derive(Parser)]
#[command(
    name = "scsm",
    about = "Spectral-efficiency lab for uplink massive SC-SM MIMO with MR combining",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Overrides {
    /// Master seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo trials per sweep point.
    #[arg(long)]
    trials: Option<usize>,
    /// Samples for the spatial mutual-information estimator.
    #[arg(long)]
    mi_samples: Option<usize>,
    /// Output CSV path (a plotting script is written next to it).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fixed user distances in meters, comma separated (e.g. 50,120,380).
    #[arg(long, value_delimiter = ',')]
    fixed_distances: Option<Vec<f64>>,
}

impl Overrides {
    fn apply(&self, spec: &mut SweepSpec) {
        if let Some(seed) = self.seed {
            spec.base.master_seed = seed;
        }
        if let Some(trials) = self.trials {
            spec.n_trials = trials;
        }
        if let Some(samples) = self.mi_samples {
            spec.n_mi_samples = samples;
        }
        if let Some(out) = &self.out {
            spec.out = Some(out.clone());
        }
        if let Some(d) = &self.fixed_distances {
            spec.base.fixed_distances = Some(d.clone());
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form SE lower bound over the configured grid.
    Bound {
        /// Sweep config (flat JSON).
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Bound plus the Monte Carlo SE estimate over the configured grid.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run one of the canned sweeps: fig4, fig5, fig6, fig7, fig8.
    Preset {
        name: String,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Monte Carlo check of the moment identities behind the closed form.
    Moments {
        /// Optional sweep config supplying the scenario; defaults otherwise.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Sample count (default 100000).
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> scsm::Result<ExitCode> {
    match cli.command {
        Command::Bound { config, overrides } => {
            let mut spec = parse_config(&config)?;
            overrides.apply(&mut spec);
            spec.validate()?;
            finish(run_bound_sweep(&spec)?, &spec)
        }
        Command::Simulate { config, overrides } => {
            let mut spec = parse_config(&config)?;
            overrides.apply(&mut spec);
            spec.validate()?;
            finish(run_sweep(&spec)?, &spec)
        }
        Command::Preset { name, overrides } => {
            let mut spec = preset(&name)?;
            if spec.out.is_none() {
                spec.out = Some(PathBuf::from(format!("{name}.csv")));
            }
            overrides.apply(&mut spec);
            spec.validate()?;
            finish(run_sweep(&spec)?, &spec)
        }
        Command::Moments {
            config,
            trials,
            seed,
        } => {
            let mut cfg = match config {
                Some(path) => parse_config(&path)?.base,
                None => SystemConfig {
                    n_rx: 16,
                    n_tx: 2,
                    n_users: 2,
                    n_taps: 2,
                    ..Default::default()
                },
            };
            if let Some(seed) = seed {
                cfg.master_seed = seed;
            }
            let report = moment_report(&cfg, trials.unwrap_or(100_000), cfg.master_seed)?;
            let ok = report.max_abs_z() <= 4.0;
            print_ignoring_closed_pipe(&format!(
                "{report}\nmax |z| = {:.2} ({})\n",
                report.max_abs_z(),
                if ok { "ok" } else { "suspicious" }
            ));
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn finish(run: SweepRun, spec: &SweepSpec) -> scsm::Result<ExitCode> {
    // Write the artifact before any console output so a closed stdout pipe
    // cannot lose the file.
    if let Some(path) = &spec.out {
        emit_csv(&run.rows, path)?;
    }
    let mut table = String::new();
    let _ = writeln!(
        table,
        "{:<10} {:>12} {:>14} {:>14} {:>12} {:>8} {:>20}",
        "curve", "value", "se_bound", "se_mc", "mc_stderr", "ms", "seed"
    );
    for row in &run.rows {
        let _ = writeln!(
            table,
            "{:<10} {:>12} {:>14.6} {:>14.6} {:>12.4} {:>8} {:>20}",
            row.curve_label,
            row.swept_value,
            row.se_bound_total,
            row.se_mc_total,
            row.se_mc_stderr,
            row.runtime_ms,
            row.seed
        );
    }
    if let Some(path) = &spec.out {
        let _ = writeln!(table, "wrote {}", path.display());
    }
    print_ignoring_closed_pipe(&table);
    if run.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &run.failures {
            eprintln!("point failed: {f}");
        }
        Ok(ExitCode::FAILURE)
    }
}

/// Console output is best-effort: a reader that hangs up (e.g. `head`) must
/// not turn a finished computation into a crash.
fn print_ignoring_closed_pipe(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}
