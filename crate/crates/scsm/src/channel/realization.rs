//! Multipath tap sampling for one coherence frame.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::{CorrelationMatrix, PowerDelayProfile, UserGeometry};
use crate::config::SystemConfig;
use crate::rng::{role, stream};

/// Tap matrices `H_kl` (N_r x N_t) for every user and path, the uncorrelated
/// draws they were built from, and the per-user transmit power
/// `P_k = P_u / (alpha_k Omega_0)`.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    n_users: usize,
    n_taps: usize,
    taps: Vec<DMatrix<Complex64>>,
    uncorrelated: Vec<DMatrix<Complex64>>,
    per_user_power: Vec<f64>,
}

impl ChannelRealization {
    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn n_taps(&self) -> usize {
        self.n_taps
    }

    /// Correlated tap matrix `H_kl = G_kl R_TX^(1/2)`.
    pub fn tap(&self, user: usize, path: usize) -> &DMatrix<Complex64> {
        &self.taps[user * self.n_taps + path]
    }

    /// The i.i.d. draw `G_kl` behind [`ChannelRealization::tap`].
    pub fn uncorrelated_tap(&self, user: usize, path: usize) -> &DMatrix<Complex64> {
        &self.uncorrelated[user * self.n_taps + path]
    }

    pub fn per_user_power(&self) -> &[f64] {
        &self.per_user_power
    }

    pub fn power(&self, user: usize) -> f64 {
        self.per_user_power[user]
    }
}

/// Draw one frame of channel taps.
///
/// `G_kl` entries are i.i.d. circularly symmetric complex Gaussian with
/// variance `alpha_k * Omega_l` (half per real component); correlation is
/// applied on the transmit side only. Deterministic in `seed`, with one
/// stream per (user, path) so partial re-simulation stays reproducible.
pub fn sample_channel(
    config: &SystemConfig,
    geometry: &UserGeometry,
    pdp: &PowerDelayProfile,
    corr: &CorrelationMatrix,
    seed: u64,
) -> ChannelRealization {
    let n_rx = config.n_rx;
    let n_tx = config.n_tx;
    let sqrt_corr = corr.sqrt_factor().map(|x| Complex64::new(x, 0.0));
    let identity_corr = corr.entries().is_identity(0.0);

    let mut taps = Vec::with_capacity(config.n_users * config.n_taps);
    let mut uncorrelated = Vec::with_capacity(config.n_users * config.n_taps);
    for user in 0..config.n_users {
        for path in 0..config.n_taps {
            let sigma = (geometry.gain(user) * pdp.weight(path) / 2.0).sqrt();
            let mut rng = stream(seed, &[role::CHANNEL, user as u64, path as u64]);
            let g = DMatrix::from_fn(n_rx, n_tx, |_, _| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re * sigma, im * sigma)
            });
            let h = if identity_corr { g.clone() } else { &g * &sqrt_corr };
            uncorrelated.push(g);
            taps.push(h);
        }
    }

    let per_user_power = geometry
        .gains()
        .iter()
        .map(|&a| config.rx_power / (a * pdp.dominant()))
        .collect();

    ChannelRealization {
        n_users: config.n_users,
        n_taps: config.n_taps,
        taps,
        uncorrelated,
        per_user_power,
    }
}
