//! Exact (sampled) mutual information between the equivalent received
//! symbol and the active-antenna index.
//!
//! Given the per-antenna SINRs, the equivalent channel conditioned on
//! antenna `n` is a zero-mean complex Gaussian with diagonal covariance
//! `diag{1/SINR_1, ..., 1/SINR_Nt} + N_t diag{e_n}`, and the spatial mutual
//! information is that of an `N_t`-component diagonal Gaussian mixture. The
//! estimator below samples it directly, which is independent of every
//! approximation step used by the closed-form bound.

use rand::Rng;

use crate::bounds::ActivePattern;
use crate::math::{ln_sum_exp, MeanVar};
use crate::rng::{role, stream};

const LN_2: f64 = std::f64::consts::LN_2;

/// Monte Carlo mutual-information estimate, bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

/// Sample `I(y_hat; e_hat)` for one user's SINR row.
///
/// Every density involved depends on the component magnitudes only, so the
/// sampler draws `|y_i|^2` exponentially distributed with the conditional
/// variance — exactly equivalent to drawing the complex vector itself.
pub fn spatial_mi_exact(sinr_row: &[f64], n_samples: usize, seed: u64) -> MiEstimate {
    let n_tx = sinr_row.len();
    assert!(n_tx >= 1 && n_samples >= 2, "need antennas and samples");
    if n_tx == 1 {
        // Single hypothesis: the integrand is identically zero.
        return MiEstimate {
            value: 0.0,
            std_error: 0.0,
            n_samples,
        };
    }

    // vars[m][i]: conditional variance of component i given active antenna m.
    let base: Vec<f64> = sinr_row.iter().map(|&s| 1.0 / s).collect();
    let mut vars = vec![base.clone(); n_tx];
    for (m, row) in vars.iter_mut().enumerate() {
        row[m] += n_tx as f64;
    }
    let ln_norms: Vec<f64> = vars
        .iter()
        .map(|row| row.iter().map(|d| (std::f64::consts::PI * d).ln()).sum())
        .collect();

    let mut rng = stream(seed, &[role::MUTUAL_INFO]);
    let mut acc = MeanVar::new();
    let mut y2 = vec![0.0; n_tx];
    let mut ln_p = vec![0.0; n_tx];
    let ln_nt = (n_tx as f64).ln();

    for _ in 0..n_samples {
        let own = ActivePattern::draw_uniform(n_tx, &mut rng).index();
        for i in 0..n_tx {
            let u: f64 = rng.gen();
            y2[i] = -vars[own][i] * (1.0 - u).ln();
        }
        for m in 0..n_tx {
            let quad: f64 = y2.iter().zip(&vars[m]).map(|(y, d)| y / d).sum();
            ln_p[m] = -ln_norms[m] - quad;
        }
        acc.push((ln_p[own] - ln_sum_exp(&ln_p) + ln_nt) / LN_2);
    }

    MiEstimate {
        value: acc.mean(),
        std_error: acc.std_error(),
        n_samples,
    }
}
