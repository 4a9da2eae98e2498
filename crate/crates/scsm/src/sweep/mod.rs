//! Parameter sweeps: grid expansion, per-point evaluation (closed-form bound
//! plus Monte Carlo estimate), preset scenarios and CSV emission.

mod csv;
mod file;
mod presets;

pub use csv::{emit_csv, parse_csv, plot_script_path, CsvRow};
pub use file::parse_config;
pub use presets::preset;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use crate::bounds::{mr_sinr_closed_form, se_lower_bound};
use crate::channel::{jakes_correlation, power_delay_profile};
use crate::config::{db_to_linear, SystemConfig};
use crate::error::{Error, Result};
use crate::mc::{empirical_se, CombinerSpec};
use crate::rng::{derive_seed, role};

/// A sweepable scalar of [`SystemConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    NRx,
    NTx,
    NUsers,
    NTaps,
    /// Received power swept on a dB grid.
    RxPowerDb,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::NRx => "n_rx",
            SweepParam::NTx => "n_tx",
            SweepParam::NUsers => "n_users",
            SweepParam::NTaps => "n_taps",
            SweepParam::RxPowerDb => "rx_power_db",
        }
    }

    /// Short label used in curve names: `K=10`, `Nr=128`, ...
    pub fn symbol(self) -> &'static str {
        match self {
            SweepParam::NRx => "Nr",
            SweepParam::NTx => "Nt",
            SweepParam::NUsers => "K",
            SweepParam::NTaps => "L",
            SweepParam::RxPowerDb => "PudB",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "n_rx" => Ok(SweepParam::NRx),
            "n_tx" => Ok(SweepParam::NTx),
            "n_users" => Ok(SweepParam::NUsers),
            "n_taps" => Ok(SweepParam::NTaps),
            "rx_power_db" => Ok(SweepParam::RxPowerDb),
            other => Err(Error::InvalidSweep(format!(
                "unknown sweep parameter `{other}` (expected n_rx, n_tx, n_users, n_taps or rx_power_db)"
            ))),
        }
    }

    pub fn apply(self, config: &mut SystemConfig, value: f64) -> Result<()> {
        let as_count = |v: f64| -> Result<usize> {
            if v >= 1.0 && v.fract() == 0.0 && v <= usize::MAX as f64 {
                Ok(v as usize)
            } else {
                Err(Error::InvalidSweep(format!(
                    "{} grid value {v} is not a positive integer",
                    self.name()
                )))
            }
        };
        match self {
            SweepParam::NRx => config.n_rx = as_count(value)?,
            SweepParam::NTx => config.n_tx = as_count(value)?,
            SweepParam::NUsers => config.n_users = as_count(value)?,
            SweepParam::NTaps => config.n_taps = as_count(value)?,
            SweepParam::RxPowerDb => config.rx_power = db_to_linear(value),
        }
        Ok(())
    }
}

/// One swept grid with an optional second parameter producing a family of
/// curves.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: SystemConfig,
    pub swept: SweepParam,
    pub grid: Vec<f64>,
    pub curve: Option<(SweepParam, Vec<f64>)>,
    pub n_trials: usize,
    pub n_mi_samples: usize,
    pub out: Option<PathBuf>,
}

impl SweepSpec {
    pub fn single_point(base: SystemConfig) -> Self {
        let grid = vec![base.n_rx as f64];
        SweepSpec {
            base,
            swept: SweepParam::NRx,
            grid,
            curve: None,
            n_trials: 1_000,
            n_mi_samples: 10_000,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.grid.is_empty() {
            return Err(Error::InvalidSweep("empty sweep grid".into()));
        }
        if !self.grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidSweep(
                "sweep grid must be strictly increasing".into(),
            ));
        }
        if let Some((param, values)) = &self.curve {
            if values.is_empty() {
                return Err(Error::InvalidSweep(format!(
                    "curve parameter {} has no values",
                    param.name()
                )));
            }
        }
        if self.n_trials < 2 {
            return Err(Error::InvalidSweep("n_trials must be at least 2".into()));
        }
        if self.n_mi_samples < 2 {
            return Err(Error::InvalidSweep("n_mi_samples must be at least 2".into()));
        }
        Ok(())
    }

    /// Curve labels in declaration order; a single unnamed curve when no
    /// curve parameter is set.
    pub fn curve_labels(&self) -> Vec<String> {
        match &self.curve {
            Some((param, values)) => values
                .iter()
                .map(|v| format!("{}={}", param.symbol(), format_grid_value(*v)))
                .collect(),
            None => vec!["all".to_string()],
        }
    }

    /// Fully configured scenario for one (curve, grid) cell.
    pub fn point_config(&self, curve_idx: usize, grid_idx: usize) -> Result<SystemConfig> {
        let mut cfg = self.base.clone();
        if let Some((param, values)) = &self.curve {
            param.apply(&mut cfg, values[curve_idx])?;
        }
        self.swept.apply(&mut cfg, self.grid[grid_idx])?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Deterministic seed for one cell, recorded in the output row so the
    /// point can be recomputed in isolation.
    pub fn point_seed(&self, curve_idx: usize, grid_idx: usize) -> u64 {
        derive_seed(
            self.base.master_seed,
            &[role::SWEEP_POINT, curve_idx as u64, grid_idx as u64],
        )
    }
}

fn format_grid_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// One evaluated grid cell.
#[derive(Debug, Clone)]
pub struct ResultRow {
    pub curve_label: String,
    pub swept_value: f64,
    pub se_bound_total: f64,
    /// NaN when the point was evaluated bound-only.
    pub se_mc_total: f64,
    pub se_mc_stderr: f64,
    /// Closed-form SINR averaged over antennas (user-invariant).
    pub sinr_closed_form: f64,
    /// Per-user (bound, mc, mc stderr); mc entries NaN for bound-only runs.
    pub per_user: Vec<(f64, f64, f64)>,
    /// Wall-clock cost of the point. Diagnostic only: deliberately kept out
    /// of the CSV so repeated runs stay byte-identical.
    pub runtime_ms: u64,
    pub seed: u64,
}

/// A point that failed, with enough context to identify it.
#[derive(Debug)]
pub struct PointFailure {
    pub curve_label: String,
    pub swept_value: f64,
    pub error: Error,
}

impl std::fmt::Display for PointFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{} @ {}] {}",
            self.curve_label, self.swept_value, self.error
        )
    }
}

/// Sweep outcome: rows for the points that succeeded (in (curve, grid)
/// order) and a failure record per point that did not.
#[derive(Debug)]
pub struct SweepRun {
    pub rows: Vec<ResultRow>,
    pub failures: Vec<PointFailure>,
}

/// Run the sweep with both the closed-form bound and the Monte Carlo
/// estimator at every point.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepRun> {
    run(spec, true)
}

/// Closed-form bound only; Monte Carlo columns come out as NaN.
pub fn run_bound_sweep(spec: &SweepSpec) -> Result<SweepRun> {
    run(spec, false)
}

fn run(spec: &SweepSpec, with_mc: bool) -> Result<SweepRun> {
    spec.validate()?;
    let labels = spec.curve_labels();
    let n_curves = labels.len();
    let cells: Vec<(usize, usize)> = (0..n_curves)
        .flat_map(|c| (0..spec.grid.len()).map(move |g| (c, g)))
        .collect();

    // Points carry their own derived seeds, so parallel evaluation with an
    // ordered collect is bit-reproducible regardless of thread count.
    let results: Vec<std::result::Result<ResultRow, PointFailure>> = cells
        .par_iter()
        .map(|&(c, g)| {
            let label = labels[c].clone();
            let value = spec.grid[g];
            eval_point(spec, c, g, &label, with_mc).map_err(|error| PointFailure {
                curve_label: label,
                swept_value: value,
                error,
            })
        })
        .collect();

    let mut rows = Vec::with_capacity(cells.len());
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(f) => failures.push(f),
        }
    }
    Ok(SweepRun { rows, failures })
}

fn eval_point(
    spec: &SweepSpec,
    curve_idx: usize,
    grid_idx: usize,
    label: &str,
    with_mc: bool,
) -> Result<ResultRow> {
    let start = Instant::now();
    let cfg = spec.point_config(curve_idx, grid_idx)?;
    let seed = spec.point_seed(curve_idx, grid_idx);

    let pdp = power_delay_profile(cfg.n_taps, cfg.decay_db, cfg.pdp_mode);
    let corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
    let sinr = mr_sinr_closed_form(&cfg, &pdp, &corr);
    let bound = se_lower_bound(&cfg, &sinr)?;

    let (mc_total, mc_stderr, mc_users) = if with_mc {
        let est = empirical_se(&cfg, CombinerSpec::Mr, spec.n_trials, spec.n_mi_samples, seed)?;
        (
            est.total,
            est.total_std_error,
            est.per_user
                .iter()
                .zip(&est.std_errors)
                .map(|(&v, &e)| (v, e))
                .collect::<Vec<_>>(),
        )
    } else {
        (f64::NAN, f64::NAN, vec![(f64::NAN, f64::NAN); cfg.n_users])
    };

    let per_user = bound
        .per_user
        .iter()
        .zip(&mc_users)
        .map(|(&b, &(m, e))| (b, m, e))
        .collect();

    Ok(ResultRow {
        curve_label: label.to_string(),
        swept_value: spec.grid[grid_idx],
        se_bound_total: bound.total,
        se_mc_total: mc_total,
        se_mc_stderr: mc_stderr,
        sinr_closed_form: sinr.mean(),
        per_user,
        runtime_ms: start.elapsed().as_millis() as u64,
        seed,
    })
}
