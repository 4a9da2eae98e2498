//! Exponentially decaying power-delay profile, normalised to unit total
//! power.

use crate::config::PdpMode;

/// Per-tap average power weights, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerDelayProfile {
    weights: Vec<f64>,
}

impl PowerDelayProfile {
    pub fn n_taps(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, tap: usize) -> f64 {
        self.weights[tap]
    }

    /// Dominant-path weight Omega_0.
    pub fn dominant(&self) -> f64 {
        self.weights[0]
    }
}

/// Build the profile. Per-dB mode uses `10^(-beta*l/10)`, literal mode
/// `10^(-beta*l)`; either way the weights are normalised to unit sum.
pub fn power_delay_profile(n_taps: usize, decay_db: f64, mode: PdpMode) -> PowerDelayProfile {
    let weights: Vec<f64> = (0..n_taps)
        .map(|l| {
            let e = match mode {
                PdpMode::PerDb => -decay_db * l as f64 / 10.0,
                PdpMode::Literal => -decay_db * l as f64,
            };
            10f64.powf(e)
        })
        .collect();
    let total: f64 = weights.iter().sum();
    PowerDelayProfile {
        weights: weights.into_iter().map(|w| w / total).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_tap_is_unity() {
        let p = power_delay_profile(1, 3.0, PdpMode::PerDb);
        assert_eq!(p.weights(), &[1.0]);
    }

    #[test]
    fn three_taps_beta3_per_db() {
        // normalise {1, 10^-0.3, 10^-0.6}
        let p = power_delay_profile(3, 3.0, PdpMode::PerDb);
        let want = [0.570653826757, 0.286004412791, 0.143341760452];
        for (got, want) in p.weights().iter().zip(want) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn two_taps_dominant_weight() {
        let p = power_delay_profile(2, 3.0, PdpMode::PerDb);
        assert!((p.dominant() - 0.666139424583).abs() < 1e-10);
    }

    #[test]
    fn literal_mode_decays_faster() {
        let per_db = power_delay_profile(2, 3.0, PdpMode::PerDb);
        let literal = power_delay_profile(2, 3.0, PdpMode::Literal);
        assert!(literal.dominant() > per_db.dominant());
        assert!((literal.dominant() - 1.0 / (1.0 + 1e-3)).abs() < 1e-12);
    }

    #[test]
    fn normalisation_and_monotonicity() {
        for n_taps in 1..=12 {
            for decay in [0.0, 0.5, 3.0, 9.0] {
                let p = power_delay_profile(n_taps, decay, PdpMode::PerDb);
                let sum: f64 = p.weights().iter().sum();
                assert!((sum - 1.0).abs() <= 1e-12);
                if decay > 0.0 {
                    for w in p.weights().windows(2) {
                        assert!(w[0] > w[1]);
                    }
                }
            }
        }
    }
}
