//! Transmit-antenna correlation under the Jakes model for a uniform linear
//! array, plus the symmetric square-root factor used to correlate tap
//! matrices.

use nalgebra::DMatrix;

use crate::config::SPEED_OF_LIGHT;
use crate::math::bessel_j0;

/// Real symmetric TA correlation matrix with its square-root factor.
///
/// `sqrt_factor` is the symmetric matrix square root obtained from the
/// eigendecomposition with negative eigenvalues clamped to zero, so
/// `sqrt_factor * sqrt_factor^T` reproduces `entries` to within 1e-10
/// relative error.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    entries: DMatrix<f64>,
    sqrt_factor: DMatrix<f64>,
}

impl CorrelationMatrix {
    /// Build from an explicit symmetric matrix with unit diagonal.
    pub fn from_entries(entries: DMatrix<f64>) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "correlation must be square");
        let eig = entries.clone().symmetric_eigen();
        let clamped = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
        let sqrt_factor =
            &eig.eigenvectors * DMatrix::from_diagonal(&clamped) * eig.eigenvectors.transpose();
        CorrelationMatrix { entries, sqrt_factor }
    }

    /// Identity correlation (uncorrelated antennas).
    pub fn identity(n_tx: usize) -> Self {
        CorrelationMatrix {
            entries: DMatrix::identity(n_tx, n_tx),
            sqrt_factor: DMatrix::identity(n_tx, n_tx),
        }
    }

    /// Uniform off-diagonal correlation `rho`; handy for synthetic setups.
    pub fn uniform(n_tx: usize, rho: f64) -> Self {
        let entries = DMatrix::from_fn(n_tx, n_tx, |i, j| if i == j { 1.0 } else { rho });
        Self::from_entries(entries)
    }

    pub fn n_tx(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn sqrt_factor(&self) -> &DMatrix<f64> {
        &self.sqrt_factor
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Sum of squared off-diagonal correlations against antenna `n`,
    /// i.e. the large-N_r SINR ceiling term for that antenna.
    pub fn off_diag_sq_sum(&self, n: usize) -> f64 {
        (0..self.n_tx())
            .filter(|&m| m != n)
            .map(|m| self.entries[(m, n)] * self.entries[(m, n)])
            .sum()
    }
}

/// Jakes-model TA correlation: entry (i, j) is `J0(2 pi d |i-j| / (N_t lambda))`
/// with `lambda = c / f_c`.
pub fn jakes_correlation(n_tx: usize, device_size: f64, carrier_hz: f64) -> CorrelationMatrix {
    let lambda = SPEED_OF_LIGHT / carrier_hz;
    let entries = DMatrix::from_fn(n_tx, n_tx, |i, j| {
        let delta = (i as f64 - j as f64).abs();
        bessel_j0(2.0 * std::f64::consts::PI * device_size * delta / (n_tx as f64 * lambda))
    });
    CorrelationMatrix::from_entries(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_one_and_single_antenna_is_identity() {
        let c = jakes_correlation(4, 0.1, 5.0e9);
        for i in 0..4 {
            assert_eq!(c.get(i, i), 1.0);
        }
        let one = jakes_correlation(1, 0.1, 5.0e9);
        assert_eq!(one.n_tx(), 1);
        assert_eq!(one.get(0, 0), 1.0);
        assert_eq!(one.sqrt_factor()[(0, 0)], 1.0);
    }

    #[test]
    fn two_antenna_default_geometry() {
        // d = 0.1 m, f_c = 5 GHz => argument 2*pi*0.1/(2*lambda) = 5.2396125...
        // J0 of that is -0.0966632640 (30-digit series oracle).
        let c = jakes_correlation(2, 0.1, 5.0e9);
        assert!((c.get(0, 1) + 0.096_663_264_031_165_92).abs() < 1e-12);
        assert_eq!(c.get(0, 1), c.get(1, 0));
    }

    #[test]
    fn sqrt_factor_roundtrip() {
        for n_tx in [2usize, 3, 8, 16] {
            let c = jakes_correlation(n_tx, 0.1, 5.0e9);
            let back = c.sqrt_factor() * c.sqrt_factor().transpose();
            let err = (&back - c.entries()).norm() / c.entries().norm();
            assert!(err <= 1e-10, "n_tx={n_tx}: roundtrip error {err}");
        }
    }

    #[test]
    fn eigenvalues_non_negative_before_clamp() {
        for n_tx in [2usize, 4, 8, 16] {
            let c = jakes_correlation(n_tx, 0.1, 5.0e9);
            let eig = c.entries().clone().symmetric_eigen();
            for &l in eig.eigenvalues.iter() {
                assert!(l >= -1e-10, "n_tx={n_tx}: eigenvalue {l}");
            }
        }
    }

    #[test]
    fn uniform_rho_matches() {
        let c = CorrelationMatrix::uniform(2, 0.3);
        assert!((c.off_diag_sq_sum(0) - 0.09).abs() < 1e-15);
    }
}
