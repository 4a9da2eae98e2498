//! The five canonical sweep scenarios.
//!
//! All presets share the simulation constants (2048-symbol frame, 5 GHz
//! carrier, 0.1 m devices, 3 dB tap decay, 0 dB noise, 500 m cell, 50 m
//! minimum distance, path-loss exponent 3.7) and 10 dB received power unless
//! that is the swept axis.

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::sweep::{SweepParam, SweepSpec};

fn shared_base() -> SystemConfig {
    SystemConfig {
        n_rx: 512,
        n_tx: 2,
        n_users: 10,
        n_taps: 3,
        frame_len: 2048,
        rx_power: 10.0,  // 10 dB
        noise_power: 1.0, // 0 dB
        ..Default::default()
    }
}

/// Named sweep presets:
///
/// * `fig4` — SE versus N_r for K in {5, 10, 20}
/// * `fig5` — SE versus N_t for N_r in {128, 512}
/// * `fig6` — SE versus K (single curve)
/// * `fig7` — SE versus L for K in {5, 10, 20}
/// * `fig8` — SE versus P_u (dB) for K in {5, 10, 20}
pub fn preset(name: &str) -> Result<SweepSpec> {
    let base = shared_base();
    let k_curves = Some((SweepParam::NUsers, vec![5.0, 10.0, 20.0]));
    let spec = match name {
        "fig4" => SweepSpec {
            base,
            swept: SweepParam::NRx,
            grid: vec![32.0, 64.0, 128.0, 256.0, 512.0, 1024.0],
            curve: k_curves,
            n_trials: 1_000,
            n_mi_samples: 10_000,
            out: None,
        },
        "fig5" => SweepSpec {
            base,
            swept: SweepParam::NTx,
            grid: vec![1.0, 2.0, 4.0, 8.0, 16.0],
            curve: Some((SweepParam::NRx, vec![128.0, 512.0])),
            n_trials: 1_000,
            n_mi_samples: 10_000,
            out: None,
        },
        // The K axis runs far enough to show the throughput peak before
        // pilot overhead wins.
        "fig6" => SweepSpec {
            base,
            swept: SweepParam::NUsers,
            grid: vec![2.0, 5.0, 10.0, 20.0, 40.0, 80.0, 160.0],
            curve: None,
            n_trials: 1_000,
            n_mi_samples: 10_000,
            out: None,
        },
        "fig7" => SweepSpec {
            base,
            swept: SweepParam::NTaps,
            grid: vec![1.0, 2.0, 3.0, 5.0, 8.0],
            curve: k_curves,
            n_trials: 1_000,
            n_mi_samples: 10_000,
            out: None,
        },
        "fig8" => SweepSpec {
            base,
            swept: SweepParam::RxPowerDb,
            grid: vec![-10.0, -5.0, 0.0, 5.0, 10.0, 20.0, 30.0],
            curve: k_curves,
            n_trials: 1_000,
            n_mi_samples: 10_000,
            out: None,
        },
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(spec)
}
