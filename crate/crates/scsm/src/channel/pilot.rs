//! Orthogonal pilot layout and zero-forcing channel estimation.
//!
//! The preamble is `L-1` zero symbols (guard against the previous frame)
//! followed by `N_t` blocks of `K*L` symbols. During block `n` every user
//! transmits its pilot sequence `p_k` on antenna `n` and keeps the other
//! antennas silent; `p_k` itself is zero except for the head vector
//! `v = [sqrt(KL), 0, ..., 0]` sitting in sub-block `k`. Each transmitted
//! pulse therefore owns `L` exclusive receive symbols, the pilot Gram matrix
//! is `KL * I`, and least-squares inversion reduces to reading one received
//! column per (user, path, antenna).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::ChannelRealization;
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::rng::{role, stream};

/// Pilot sequences for every user, as laid out above.
#[derive(Debug, Clone, PartialEq)]
pub struct PilotBook {
    n_users: usize,
    n_taps: usize,
    n_tx: usize,
    amplitude: f64, // sqrt(K*L)
}

impl PilotBook {
    /// Pilot sequence `p_k` of length `K*L` (real-valued, single pulse).
    pub fn seq(&self, user: usize) -> DVector<f64> {
        let kl = self.n_users * self.n_taps;
        let mut p = DVector::zeros(kl);
        p[user * self.n_taps] = self.amplitude;
        p
    }

    /// Head vector `v = [sqrt(KL), 0, ..., 0]` of length `L`.
    pub fn head(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.n_taps);
        v[0] = self.amplitude;
        v
    }

    /// Inner product `p_k^H p_j`, computed exactly on the pulse-position
    /// grid: `KL` when the positions coincide, zero otherwise.
    pub fn gram(&self, k: usize, j: usize) -> f64 {
        if k == j {
            (self.n_users * self.n_taps) as f64
        } else {
            0.0
        }
    }

    /// Total preamble length `N_c = L-1 + N_t*K*L`.
    pub fn preamble_len(&self) -> usize {
        self.n_taps - 1 + self.n_tx * self.n_users * self.n_taps
    }

    /// Preamble index at which the pulse of (user, antenna) starts; its `L`
    /// multipath echoes land on the following symbols.
    pub fn pulse_start(&self, user: usize, antenna: usize) -> usize {
        let kl = self.n_users * self.n_taps;
        (self.n_taps - 1) + antenna * kl + user * self.n_taps
    }

    /// Pilot symbol transmitted by `user` on `antenna` at preamble time `t`.
    pub fn tx_symbol(&self, user: usize, antenna: usize, t: usize) -> f64 {
        if t == self.pulse_start(user, antenna) {
            self.amplitude
        } else {
            0.0
        }
    }
}

pub fn build_pilot_book(config: &SystemConfig) -> PilotBook {
    PilotBook {
        n_users: config.n_users,
        n_taps: config.n_taps,
        n_tx: config.n_tx,
        amplitude: ((config.n_users * config.n_taps) as f64).sqrt(),
    }
}

/// Estimated tap matrices and the per-user estimation-noise variance
/// `sigma_N^2 alpha_k Omega_0 / (K L P_u)` (identical for every tap).
#[derive(Debug, Clone)]
pub struct ChannelEstimate {
    n_users: usize,
    n_taps: usize,
    est_taps: Vec<DMatrix<Complex64>>,
    est_noise_var: Vec<f64>,
}

impl ChannelEstimate {
    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn n_taps(&self) -> usize {
        self.n_taps
    }

    pub fn tap(&self, user: usize, path: usize) -> &DMatrix<Complex64> {
        &self.est_taps[user * self.n_taps + path]
    }

    pub fn est_noise_var(&self) -> &[f64] {
        &self.est_noise_var
    }
}

/// Full pilot-path estimator: transmits the preamble through the tap channel,
/// adds receiver noise and inverts by least squares.
///
/// With this pilot book the LS normal equations are diagonal (the design
/// columns are orthogonal with norm `sqrt(P_k K L)`), so the inversion reads
/// the received column at each pulse-echo position and rescales it.
pub fn zf_estimate(
    config: &SystemConfig,
    realization: &ChannelRealization,
    pilots: &PilotBook,
    seed: u64,
) -> Result<ChannelEstimate> {
    if pilots.preamble_len() >= config.frame_len {
        return Err(Error::PilotOverflow {
            pilot_len: pilots.preamble_len(),
            frame_len: config.frame_len,
        });
    }

    let n_rx = config.n_rx;
    let n_p = pilots.preamble_len();

    // Received preamble: superpose every pulse echo, then add noise.
    let mut rx = DMatrix::<Complex64>::zeros(n_rx, n_p);
    for user in 0..config.n_users {
        let amp = realization.power(user).sqrt() * pilots.head()[0];
        for antenna in 0..config.n_tx {
            let start = pilots.pulse_start(user, antenna);
            for path in 0..config.n_taps {
                let col = realization.tap(user, path).column(antenna);
                let mut dst = rx.column_mut(start + path);
                dst.axpy(Complex64::new(amp, 0.0), &col, Complex64::new(1.0, 0.0));
            }
        }
    }
    let noise_sigma = (config.noise_power / 2.0).sqrt();
    let mut rng = stream(seed, &[role::PILOT_NOISE]);
    for z in rx.iter_mut() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *z += Complex64::new(re * noise_sigma, im * noise_sigma);
    }

    // LS recovery, one column per (user, path, antenna).
    let kl = (config.n_users * config.n_taps) as f64;
    let mut est_taps = Vec::with_capacity(config.n_users * config.n_taps);
    for user in 0..config.n_users {
        let scale = Complex64::new(1.0 / (realization.power(user) * kl).sqrt(), 0.0);
        for path in 0..config.n_taps {
            let mut h = DMatrix::<Complex64>::zeros(n_rx, config.n_tx);
            for antenna in 0..config.n_tx {
                let src = rx.column(pilots.pulse_start(user, antenna) + path);
                h.column_mut(antenna).copy_from(&(src * scale));
            }
            est_taps.push(h);
        }
    }

    Ok(ChannelEstimate {
        n_users: config.n_users,
        n_taps: config.n_taps,
        est_taps,
        est_noise_var: estimation_noise_vars(config, realization),
    })
}

/// Shortcut estimator drawing `h_hat = h + w` directly, with
/// `w ~ CN(0, sigma_N^2 / (P_k K L) I)`. Statistically equivalent to
/// [`zf_estimate`] and cheaper inside Monte Carlo loops.
pub fn shortcut_estimate(
    config: &SystemConfig,
    realization: &ChannelRealization,
    seed: u64,
) -> ChannelEstimate {
    let kl = (config.n_users * config.n_taps) as f64;
    let mut est_taps = Vec::with_capacity(config.n_users * config.n_taps);
    for user in 0..config.n_users {
        let var = config.noise_power / (realization.power(user) * kl);
        let sigma = (var / 2.0).sqrt();
        for path in 0..config.n_taps {
            let mut rng = stream(seed, &[role::EST_NOISE, user as u64, path as u64]);
            let mut h = realization.tap(user, path).clone();
            for z in h.iter_mut() {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                *z += Complex64::new(re * sigma, im * sigma);
            }
            est_taps.push(h);
        }
    }
    ChannelEstimate {
        n_users: config.n_users,
        n_taps: config.n_taps,
        est_taps,
        est_noise_var: estimation_noise_vars(config, realization),
    }
}

fn estimation_noise_vars(config: &SystemConfig, realization: &ChannelRealization) -> Vec<f64> {
    let kl = (config.n_users * config.n_taps) as f64;
    realization
        .per_user_power()
        .iter()
        .map(|&p| config.noise_power / (p * kl))
        .collect()
}
