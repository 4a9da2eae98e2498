//! The Gaussian moment identities used by the MR SINR derivation, plus a
//! Monte Carlo report putting z-scores on each of them.

use std::fmt;

use crate::channel::{
    jakes_correlation, place_users, power_delay_profile, sample_channel, shortcut_estimate,
};
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::math::MeanVar;
use crate::rng::derive_seed;

/// Estimation-noise inflation `1 + sigma^2 / (K L P_u)`; multiplies every
/// moment that involves the MR combiner.
pub fn estimation_inflation(config: &SystemConfig) -> f64 {
    1.0 + config.noise_power
        / (config.n_users as f64 * config.n_taps as f64 * config.rx_power)
}

/// `E{f^H h} = alpha Omega_0 N_r` (real).
pub fn signal_mean(alpha: f64, omega0: f64, n_rx: f64) -> f64 {
    alpha * omega0 * n_rx
}

/// `E{||f||^2} = alpha Omega_0 N_r (1 + sigma^2/(K L P_u))`.
pub fn combiner_norm(alpha: f64, omega0: f64, n_rx: f64, eta: f64) -> f64 {
    alpha * omega0 * n_rx * eta
}

/// Cross moment against an independent channel column (other user or path):
/// `alpha' Omega_l' alpha Omega_0 N_r (1 + sigma^2/(K L P_u))`.
pub fn uncorrelated_cross(
    alpha_other: f64,
    omega_other: f64,
    alpha: f64,
    omega0: f64,
    n_rx: f64,
    eta: f64,
) -> f64 {
    alpha_other * omega_other * alpha * omega0 * n_rx * eta
}

/// Cross moment against the same user's tap-0 column on another antenna,
/// correlation `rho`: `alpha^2 Omega_0^2 N_r (N_r rho^2 + 1 + sigma^2/(K L P_u))`.
/// At `rho = 1` this is the desired-link second moment and contains the
/// fourth-moment identity `E{||h||^4} = alpha^2 Omega_0^2 N_r (N_r + 1)`.
pub fn correlated_cross(alpha: f64, omega0: f64, n_rx: f64, rho: f64, eta: f64) -> f64 {
    alpha * alpha * omega0 * omega0 * n_rx * (n_rx * rho * rho + eta)
}

/// `E{||h||^4} = alpha^2 Omega_0^2 N_r (N_r + 1)`.
pub fn fourth_moment(alpha: f64, omega0: f64, n_rx: f64) -> f64 {
    alpha * alpha * omega0 * omega0 * n_rx * (n_rx + 1.0)
}

/// One validated moment identity.
#[derive(Debug, Clone)]
pub struct MomentRow {
    pub label: String,
    pub analytic: f64,
    pub estimate: f64,
    pub std_error: f64,
}

impl MomentRow {
    pub fn z_score(&self) -> f64 {
        (self.estimate - self.analytic) / self.std_error
    }
}

/// Table of analytic-vs-simulated moments.
#[derive(Debug, Clone)]
pub struct MomentReport {
    pub rows: Vec<MomentRow>,
    pub n_samples: usize,
}

impl MomentReport {
    pub fn max_abs_z(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.z_score().abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for MomentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<28} {:>14} {:>14} {:>11} {:>8}",
            "moment", "analytic", "estimate", "std error", "z"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<28} {:>14.6e} {:>14.6e} {:>11.3e} {:>8.2}",
                r.label,
                r.analytic,
                r.estimate,
                r.std_error,
                r.z_score()
            )?;
        }
        write!(f, "({} samples)", self.n_samples)
    }
}

/// Simulate the moment identities for user 0 (antenna 0) of the given
/// scenario and report a z-score per identity.
pub fn moment_report(config: &SystemConfig, n_samples: usize, seed: u64) -> Result<MomentReport> {
    config.validate()?;
    if n_samples < 1_000 {
        return Err(Error::TooFewTrials {
            min: 1_000,
            got: n_samples,
        });
    }

    let geometry = place_users(config, seed);
    let pdp = power_delay_profile(config.n_taps, config.decay_db, config.pdp_mode);
    let corr = jakes_correlation(config.n_tx, config.device_size, config.carrier_hz);
    let eta = estimation_inflation(config);
    let n_rx = config.n_rx as f64;
    let alpha = geometry.gain(0);
    let om0 = pdp.dominant();

    let mut sig = MeanVar::new();
    let mut norm = MeanVar::new();
    let mut cross_user = MeanVar::new();
    let mut cross_tap = MeanVar::new();
    let mut fourth = MeanVar::new();
    let mut cross_corr = MeanVar::new();

    for sample in 0..n_samples {
        let s = derive_seed(seed, &[sample as u64]);
        let re = sample_channel(config, &geometry, &pdp, &corr, s);
        let est = shortcut_estimate(config, &re, s);
        let f = est.tap(0, 0).column(0);
        let h = re.tap(0, 0).column(0);

        sig.push(f.dotc(&h).re);
        norm.push(f.norm_squared());
        fourth.push(h.norm_squared().powi(2));
        if config.n_users > 1 {
            cross_user.push(f.dotc(&re.tap(1, 0).column(0)).norm_sqr());
        }
        if config.n_taps > 1 {
            cross_tap.push(f.dotc(&re.tap(0, 1).column(0)).norm_sqr());
        }
        if config.n_tx > 1 {
            cross_corr.push(f.dotc(&re.tap(0, 0).column(1)).norm_sqr());
        }
    }

    let mut rows = vec![
        MomentRow {
            label: "signal_mean".into(),
            analytic: signal_mean(alpha, om0, n_rx),
            estimate: sig.mean(),
            std_error: sig.std_error(),
        },
        MomentRow {
            label: "combiner_norm".into(),
            analytic: combiner_norm(alpha, om0, n_rx, eta),
            estimate: norm.mean(),
            std_error: norm.std_error(),
        },
        MomentRow {
            label: "fourth_moment".into(),
            analytic: fourth_moment(alpha, om0, n_rx),
            estimate: fourth.mean(),
            std_error: fourth.std_error(),
        },
    ];
    if config.n_users > 1 {
        rows.push(MomentRow {
            label: "cross_other_user".into(),
            analytic: uncorrelated_cross(geometry.gain(1), om0, alpha, om0, n_rx, eta),
            estimate: cross_user.mean(),
            std_error: cross_user.std_error(),
        });
    }
    if config.n_taps > 1 {
        rows.push(MomentRow {
            label: "cross_other_tap".into(),
            analytic: uncorrelated_cross(alpha, pdp.weight(1), alpha, om0, n_rx, eta),
            estimate: cross_tap.mean(),
            std_error: cross_tap.std_error(),
        });
    }
    if config.n_tx > 1 {
        rows.push(MomentRow {
            label: "cross_correlated_ta".into(),
            analytic: correlated_cross(alpha, om0, n_rx, corr.get(0, 1), eta),
            estimate: cross_corr.mean(),
            std_error: cross_corr.std_error(),
        });
    }

    Ok(MomentReport { rows, n_samples })
}
