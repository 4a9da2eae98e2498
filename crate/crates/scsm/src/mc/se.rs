//! Empirical spectral efficiency: the simulation-side counterpart of the
//! closed-form lower bound.

use crate::bounds::{cmcc_term, spatial_term_bound};
use crate::config::SystemConfig;
use crate::error::Result;
use crate::mc::{expectation_terms_empirical, sinr_from_terms, sinr_rel_se, spatial_mi_exact, CombinerSpec};
use crate::rng::{derive_seed, role};

const LN_2: f64 = std::f64::consts::LN_2;

/// Per-user empirical SE with standard errors, bits/s/Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct SeEstimate {
    pub per_user: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub total: f64,
    pub total_std_error: f64,
}

/// Estimate `S_k = (N_s/N_a) [ I(y;e) + cmcc ]` with the SINR taken from the
/// empirical expectation terms and the spatial mutual information sampled
/// exactly.
///
/// The reported standard error combines, per user: the mutual-information
/// sampling error, and the SINR estimation error propagated through both SE
/// terms (per-antenna SINR errors for one user are treated as fully
/// correlated, the conservative choice; users are combined in quadrature).
pub fn empirical_se(
    config: &SystemConfig,
    combiner: CombinerSpec,
    n_trials: usize,
    n_mi_samples: usize,
    seed: u64,
) -> Result<SeEstimate> {
    let terms = expectation_terms_empirical(config, combiner, n_trials, seed)?;
    let sinr = sinr_from_terms(&terms, config)?;
    let rel_se = sinr_rel_se(&terms);
    let overhead = config.overhead_factor();
    let n_tx = config.n_tx as f64;

    let mut per_user = Vec::with_capacity(config.n_users);
    let mut std_errors = Vec::with_capacity(config.n_users);
    for k in 0..config.n_users {
        let mi = spatial_mi_exact(
            sinr.row(k),
            n_mi_samples,
            derive_seed(seed, &[role::MUTUAL_INFO, k as u64]),
        );
        let cmcc = cmcc_term(&sinr, k);
        per_user.push(overhead * (mi.value + cmcc));

        // SINR-induced error: |d SE / d ln s_n| * rel_se, with the spatial
        // slope taken from the closed-form bound (a cheap smooth proxy for
        // the sampled MI's own sensitivity).
        let mut propagated = 0.0;
        for n in 0..config.n_tx {
            let s = sinr.get(k, n);
            let cmcc_slope = (n_tx * s / (1.0 + n_tx * s)) / (n_tx * LN_2);
            let spatial_slope = spatial_slope(sinr.row(k), n);
            propagated += (cmcc_slope + spatial_slope).abs() * rel_se[k * config.n_tx + n];
        }
        let se = overhead * (mi.std_error.powi(2) + propagated.powi(2)).sqrt();
        std_errors.push(se);
    }

    let total = per_user.iter().sum();
    let total_std_error = std_errors.iter().map(|e| e * e).sum::<f64>().sqrt();
    Ok(SeEstimate {
        per_user,
        std_errors,
        total,
        total_std_error,
    })
}

/// Central log-derivative of the spatial bound w.r.t. one antenna's SINR.
fn spatial_slope(row: &[f64], n: usize) -> f64 {
    use crate::bounds::SinrVector;
    if row.len() == 1 {
        return 0.0;
    }
    let h = 0.05f64;
    let mut hi = row.to_vec();
    let mut lo = row.to_vec();
    hi[n] *= h.exp();
    lo[n] *= (-h).exp();
    let up = spatial_term_bound(&SinrVector::uniform(1, &hi), 0);
    let down = spatial_term_bound(&SinrVector::uniform(1, &lo), 0);
    (up - down) / (2.0 * h)
}
