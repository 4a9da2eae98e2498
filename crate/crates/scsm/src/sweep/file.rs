//! Sweep configuration files: a single flat JSON document describing the
//! scenario, the swept grid and the Monte Carlo settings.
//!
//! Powers are given in dB (`rx_power_db`, `noise_power_db`) and converted to
//! linear on load. Unknown or missing fields are reported by name.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::config::{db_to_linear, PdpMode, SystemConfig};
use crate::error::{Error, Result};
use crate::sweep::{SweepParam, SweepSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSpec {
    n_rx: usize,
    n_tx: usize,
    n_users: usize,
    n_taps: usize,
    #[serde(default = "defaults::frame_len")]
    frame_len: usize,
    #[serde(default = "defaults::rx_power_db")]
    rx_power_db: f64,
    #[serde(default)]
    noise_power_db: f64,
    #[serde(default = "defaults::decay_db")]
    decay_db: f64,
    #[serde(default = "defaults::device_size_m")]
    device_size_m: f64,
    #[serde(default = "defaults::carrier_hz")]
    carrier_hz: f64,
    #[serde(default = "defaults::cell_radius_m")]
    cell_radius_m: f64,
    #[serde(default = "defaults::min_dist_m")]
    min_dist_m: f64,
    #[serde(default = "defaults::pathloss_exp")]
    pathloss_exp: f64,
    #[serde(default = "defaults::master_seed")]
    master_seed: u64,
    #[serde(default)]
    pdp_mode: PdpMode,
    #[serde(default)]
    fixed_distances: Option<Vec<f64>>,
    #[serde(default)]
    sweep_param: Option<String>,
    #[serde(default)]
    sweep_grid: Option<Vec<f64>>,
    #[serde(default)]
    curve_param: Option<String>,
    #[serde(default)]
    curve_values: Option<Vec<f64>>,
    #[serde(default = "defaults::trials")]
    trials: usize,
    #[serde(default = "defaults::mi_samples")]
    mi_samples: usize,
    #[serde(default)]
    out: Option<PathBuf>,
}

mod defaults {
    pub fn frame_len() -> usize {
        2048
    }
    pub fn rx_power_db() -> f64 {
        10.0
    }
    pub fn decay_db() -> f64 {
        3.0
    }
    pub fn device_size_m() -> f64 {
        0.1
    }
    pub fn carrier_hz() -> f64 {
        5.0e9
    }
    pub fn cell_radius_m() -> f64 {
        500.0
    }
    pub fn min_dist_m() -> f64 {
        50.0
    }
    pub fn pathloss_exp() -> f64 {
        3.7
    }
    pub fn master_seed() -> u64 {
        1
    }
    pub fn trials() -> usize {
        1_000
    }
    pub fn mi_samples() -> usize {
        10_000
    }
}

/// Load and validate a sweep spec from a JSON file. A file without
/// `sweep_param` describes a single point, which becomes a one-cell grid.
pub fn parse_config(path: &Path) -> Result<SweepSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigFile {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let file: FileSpec = serde_json::from_str(&text).map_err(|e| Error::ConfigFile {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;

    let base = SystemConfig {
        n_rx: file.n_rx,
        n_tx: file.n_tx,
        n_users: file.n_users,
        n_taps: file.n_taps,
        frame_len: file.frame_len,
        rx_power: db_to_linear(file.rx_power_db),
        noise_power: db_to_linear(file.noise_power_db),
        decay_db: file.decay_db,
        device_size: file.device_size_m,
        carrier_hz: file.carrier_hz,
        cell_radius: file.cell_radius_m,
        min_dist: file.min_dist_m,
        pathloss_exp: file.pathloss_exp,
        master_seed: file.master_seed,
        pdp_mode: file.pdp_mode,
        fixed_distances: file.fixed_distances,
    };

    let mut spec = match (&file.sweep_param, &file.sweep_grid) {
        (Some(name), Some(grid)) => SweepSpec {
            swept: SweepParam::parse(name)?,
            grid: grid.clone(),
            base,
            curve: None,
            n_trials: file.trials,
            n_mi_samples: file.mi_samples,
            out: file.out.clone(),
        },
        (Some(_), None) | (None, Some(_)) => {
            return Err(Error::InvalidSweep(
                "sweep_param and sweep_grid must be given together".into(),
            ))
        }
        (None, None) => {
            let mut s = SweepSpec::single_point(base);
            s.n_trials = file.trials;
            s.n_mi_samples = file.mi_samples;
            s.out = file.out.clone();
            s
        }
    };
    match (&file.curve_param, &file.curve_values) {
        (Some(name), Some(values)) => {
            spec.curve = Some((SweepParam::parse(name)?, values.clone()));
        }
        (Some(_), None) | (None, Some(_)) => {
            return Err(Error::InvalidSweep(
                "curve_param and curve_values must be given together".into(),
            ))
        }
        (None, None) => {}
    }
    spec.validate()?;
    Ok(spec)
}
