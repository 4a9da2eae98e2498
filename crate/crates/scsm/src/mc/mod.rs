//! Monte Carlo counterparts of the closed forms: empirical expectation
//! terms of the SINR quotient, exact spatial mutual information of the
//! Gaussian-mixture channel, the empirical spectral efficiency, and the
//! moment identities behind the MR closed form.

mod mi;
mod moments;
mod se;

pub use mi::{spatial_mi_exact, MiEstimate};
pub use moments::{moment_report, MomentReport, MomentRow};
pub use se::{empirical_se, SeEstimate};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bounds::SinrVector;
use crate::channel::{
    jakes_correlation, place_users, power_delay_profile, sample_channel, shortcut_estimate,
    CorrelationMatrix, PowerDelayProfile, UserGeometry,
};
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::math::MeanVar;
use crate::rng::derive_seed;

/// Receive combiner choice. Only maximum-ratio is shipped; the enum is the
/// extension point for other linear combiners built from the channel
/// estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CombinerSpec {
    /// `f_k0n = h_hat_k0n`.
    #[default]
    Mr,
}

/// Empirical estimates of the expectation terms entering the SINR quotient,
/// per (user, antenna), with standard errors.
///
/// `interference_sum` is the full power sum over every (user', path',
/// antenna') triple weighted by `P_k'/N_t`. The denominator used for SINR
/// assembly subtracts the full second moment of the desired link
/// (`self_second`), which is the combination the closed form corresponds
/// to; it is accumulated per trial as `denominator` so the heavy
/// fourth-moment fluctuations of the desired link cancel exactly instead of
/// inflating the variance.
#[derive(Debug, Clone)]
pub struct ExpectationTerms {
    n_users: usize,
    n_tx: usize,
    n_trials: usize,
    noise_power: f64,
    per_user_power: Vec<f64>,
    gains: Vec<f64>,
    sig_mean: Vec<Complex64>,
    sig_mean_se: Vec<f64>,
    tap0_cross: Vec<f64>,
    tap0_cross_se: Vec<f64>,
    interference_sum: Vec<f64>,
    interference_sum_se: Vec<f64>,
    combiner_norm: Vec<f64>,
    combiner_norm_se: Vec<f64>,
    denominator: Vec<f64>,
    denominator_se: Vec<f64>,
}

impl ExpectationTerms {
    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn n_tx(&self) -> usize {
        self.n_tx
    }

    pub fn n_trials(&self) -> usize {
        self.n_trials
    }

    /// Noise power the terms were computed under.
    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    /// Per-user transmit power `P_k` of the geometry the terms were
    /// estimated under.
    pub fn per_user_power(&self) -> &[f64] {
        &self.per_user_power
    }

    /// Large-scale gains `alpha_k` of that geometry.
    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    fn kn(&self, user: usize, antenna: usize) -> usize {
        user * self.n_tx + antenna
    }

    /// Mean of `f^H h_k0n` (complex).
    pub fn signal_mean(&self, user: usize, antenna: usize) -> Complex64 {
        self.sig_mean[self.kn(user, antenna)]
    }

    /// Signal term `|E{f^H h}|^2`.
    pub fn signal(&self, user: usize, antenna: usize) -> f64 {
        self.sig_mean[self.kn(user, antenna)].norm_sqr()
    }

    /// Delta-method standard error of [`ExpectationTerms::signal`].
    pub fn signal_se(&self, user: usize, antenna: usize) -> f64 {
        let m = self.sig_mean[self.kn(user, antenna)];
        2.0 * m.norm() * self.sig_mean_se[self.kn(user, antenna)]
    }

    /// Same-user tap-0 cross moment `E{|f_k0n^H h_k0n'|^2}`.
    pub fn tap0_cross(&self, user: usize, antenna: usize, other: usize) -> f64 {
        self.tap0_cross[(user * self.n_tx + antenna) * self.n_tx + other]
    }

    pub fn tap0_cross_se(&self, user: usize, antenna: usize, other: usize) -> f64 {
        self.tap0_cross_se[(user * self.n_tx + antenna) * self.n_tx + other]
    }

    /// Second moment of the desired link, `E{|f_k0n^H h_k0n|^2}`.
    pub fn self_second(&self, user: usize, antenna: usize) -> f64 {
        self.tap0_cross(user, antenna, antenna)
    }

    /// Full interference sum `sum_{k',l',n'} (P_k'/N_t) E{|f^H h|^2}`.
    pub fn interference_sum(&self, user: usize, antenna: usize) -> f64 {
        self.interference_sum[self.kn(user, antenna)]
    }

    pub fn interference_sum_se(&self, user: usize, antenna: usize) -> f64 {
        self.interference_sum_se[self.kn(user, antenna)]
    }

    /// Combiner power `E{||f||^2}`.
    pub fn combiner_norm(&self, user: usize, antenna: usize) -> f64 {
        self.combiner_norm[self.kn(user, antenna)]
    }

    pub fn combiner_norm_se(&self, user: usize, antenna: usize) -> f64 {
        self.combiner_norm_se[self.kn(user, antenna)]
    }

    /// SINR denominator: interference sum minus the desired-link second
    /// moment plus the noise term.
    pub fn denominator(&self, user: usize, antenna: usize) -> f64 {
        self.denominator[self.kn(user, antenna)]
    }

    pub fn denominator_se(&self, user: usize, antenna: usize) -> f64 {
        self.denominator_se[self.kn(user, antenna)]
    }

    /// Exact-moment terms: the Gaussian moment identities of the MR analysis
    /// evaluated analytically for the given scenario. Feeding these into
    /// [`sinr_from_terms`] reproduces the closed-form SINR to machine
    /// precision, which is the algebraic cross-check between the two routes.
    pub fn from_exact_moments(
        config: &SystemConfig,
        pdp: &PowerDelayProfile,
        corr: &CorrelationMatrix,
        geometry: &UserGeometry,
    ) -> Self {
        let n_users = config.n_users;
        let n_tx = config.n_tx;
        let n_rx = config.n_rx as f64;
        let eta = moments::estimation_inflation(config);
        let gains = geometry.gains().to_vec();
        let per_user_power: Vec<f64> = gains
            .iter()
            .map(|&a| config.rx_power / (a * pdp.dominant()))
            .collect();

        let mut terms = ExpectationTerms {
            n_users,
            n_tx,
            n_trials: 0,
            noise_power: config.noise_power,
            per_user_power: per_user_power.clone(),
            gains: gains.clone(),
            sig_mean: vec![Complex64::default(); n_users * n_tx],
            sig_mean_se: vec![0.0; n_users * n_tx],
            tap0_cross: vec![0.0; n_users * n_tx * n_tx],
            tap0_cross_se: vec![0.0; n_users * n_tx * n_tx],
            interference_sum: vec![0.0; n_users * n_tx],
            interference_sum_se: vec![0.0; n_users * n_tx],
            combiner_norm: vec![0.0; n_users * n_tx],
            combiner_norm_se: vec![0.0; n_users * n_tx],
            denominator: vec![0.0; n_users * n_tx],
            denominator_se: vec![0.0; n_users * n_tx],
        };

        for k in 0..n_users {
            let alpha = gains[k];
            let om0 = pdp.dominant();
            for n in 0..n_tx {
                let i = terms.kn(k, n);
                terms.sig_mean[i] =
                    Complex64::new(moments::signal_mean(alpha, om0, n_rx), 0.0);
                terms.combiner_norm[i] = moments::combiner_norm(alpha, om0, n_rx, eta);
                for np in 0..n_tx {
                    terms.tap0_cross[i * n_tx + np] = moments::correlated_cross(
                        alpha,
                        om0,
                        n_rx,
                        corr.get(n, np),
                        eta,
                    );
                }
                let mut total = 0.0;
                for kp in 0..n_users {
                    let w = per_user_power[kp] / n_tx as f64;
                    for lp in 0..config.n_taps {
                        for np in 0..n_tx {
                            let m = if kp == k && lp == 0 {
                                terms.tap0_cross[i * n_tx + np]
                            } else {
                                moments::uncorrelated_cross(
                                    gains[kp],
                                    pdp.weight(lp),
                                    alpha,
                                    om0,
                                    n_rx,
                                    eta,
                                )
                            };
                            total += w * m;
                        }
                    }
                }
                terms.interference_sum[i] = total;
                let w_k = per_user_power[k] / n_tx as f64;
                terms.denominator[i] = total - w_k * terms.tap0_cross[i * n_tx + n]
                    + config.noise_power * terms.combiner_norm[i];
            }
        }
        terms
    }
}

/// Estimate the expectation terms by simulation.
///
/// Geometry is drawn once (or taken from `fixed_distances`) and held fixed
/// across trials: the expectations are over channel, estimation noise and
/// receiver noise for a given set of large-scale gains, which is also the
/// conditioning under which the closed form is stated. Per-trial streams
/// derive from `seed`, so results do not depend on scheduling.
pub fn expectation_terms_empirical(
    config: &SystemConfig,
    combiner: CombinerSpec,
    n_trials: usize,
    seed: u64,
) -> Result<ExpectationTerms> {
    config.validate()?;
    if n_trials < 2 {
        return Err(Error::TooFewTrials {
            min: 2,
            got: n_trials,
        });
    }
    let CombinerSpec::Mr = combiner;

    let n_users = config.n_users;
    let n_tx = config.n_tx;
    let n_taps = config.n_taps;
    let geometry = place_users(config, seed);
    let pdp = power_delay_profile(n_taps, config.decay_db, config.pdp_mode);
    let corr = jakes_correlation(n_tx, config.device_size, config.carrier_hz);

    let per_user_power: Vec<f64> = geometry
        .gains()
        .iter()
        .map(|&a| config.rx_power / (a * pdp.dominant()))
        .collect();
    let weights: Vec<f64> = per_user_power.iter().map(|&p| p / n_tx as f64).collect();

    let kn = n_users * n_tx;
    let mut sig_re = vec![MeanVar::new(); kn];
    let mut sig_im = vec![MeanVar::new(); kn];
    let mut cross = vec![MeanVar::new(); kn * n_tx];
    let mut isi = vec![MeanVar::new(); kn];
    let mut norm = vec![MeanVar::new(); kn];
    let mut den = vec![MeanVar::new(); kn];

    let mut combiners = DMatrix::<Complex64>::zeros(config.n_rx, kn);
    let mut channels = DMatrix::<Complex64>::zeros(config.n_rx, n_users * n_taps * n_tx);

    for trial in 0..n_trials {
        let trial_seed = derive_seed(seed, &[trial as u64]);
        let realization = sample_channel(config, &geometry, &pdp, &corr, trial_seed);
        let estimate = shortcut_estimate(config, &realization, trial_seed);

        for k in 0..n_users {
            combiners
                .columns_mut(k * n_tx, n_tx)
                .copy_from(estimate.tap(k, 0));
            for l in 0..n_taps {
                channels
                    .columns_mut((k * n_taps + l) * n_tx, n_tx)
                    .copy_from(realization.tap(k, l));
            }
        }
        // All inner products f_k0n^H h_k'l'n' in one adjoint product.
        let dots = combiners.ad_mul(&channels);

        for k in 0..n_users {
            for n in 0..n_tx {
                let row = k * n_tx + n;
                let f_norm = combiners.column(row).norm_squared();
                let self_col = (k * n_taps) * n_tx + n;
                let sig = dots[(row, self_col)];

                let mut full = 0.0;
                for (kp, &w) in weights.iter().enumerate() {
                    let base = kp * n_taps * n_tx;
                    for c in 0..n_taps * n_tx {
                        full += w * dots[(row, base + c)].norm_sqr();
                    }
                }
                let nonself = full - weights[k] * sig.norm_sqr();

                sig_re[row].push(sig.re);
                sig_im[row].push(sig.im);
                for np in 0..n_tx {
                    let v = dots[(row, (k * n_taps) * n_tx + np)].norm_sqr();
                    cross[row * n_tx + np].push(v);
                }
                isi[row].push(full);
                norm[row].push(f_norm);
                den[row].push(nonself + config.noise_power * f_norm);
            }
        }
    }

    Ok(ExpectationTerms {
        n_users,
        n_tx,
        n_trials,
        noise_power: config.noise_power,
        per_user_power,
        gains: geometry.gains().to_vec(),
        sig_mean: sig_re
            .iter()
            .zip(&sig_im)
            .map(|(r, i)| Complex64::new(r.mean(), i.mean()))
            .collect(),
        sig_mean_se: sig_re
            .iter()
            .zip(&sig_im)
            .map(|(r, i)| (r.std_error().powi(2) + i.std_error().powi(2)).sqrt())
            .collect(),
        tap0_cross: cross.iter().map(MeanVar::mean).collect(),
        tap0_cross_se: cross.iter().map(MeanVar::std_error).collect(),
        interference_sum: isi.iter().map(MeanVar::mean).collect(),
        interference_sum_se: isi.iter().map(MeanVar::std_error).collect(),
        combiner_norm: norm.iter().map(MeanVar::mean).collect(),
        combiner_norm_se: norm.iter().map(MeanVar::std_error).collect(),
        denominator: den.iter().map(MeanVar::mean).collect(),
        denominator_se: den.iter().map(MeanVar::std_error).collect(),
    })
}

/// Assemble the SINR from expectation terms:
/// `(P_k/N_t) |E{f^H h}|^2 / denominator`.
///
/// A non-positive denominator (possible at tiny trial counts) is reported as
/// a diagnostic error rather than producing a negative SINR.
pub fn sinr_from_terms(terms: &ExpectationTerms, config: &SystemConfig) -> Result<SinrVector> {
    assert_eq!(
        (config.n_users, config.n_tx),
        (terms.n_users(), terms.n_tx()),
        "terms were estimated for a different scenario"
    );
    let n_tx = terms.n_tx() as f64;
    let mut values = Vec::with_capacity(terms.n_users() * terms.n_tx());
    for k in 0..terms.n_users() {
        let w = terms.per_user_power()[k] / n_tx;
        for n in 0..terms.n_tx() {
            let den = terms.denominator(k, n);
            if den <= 0.0 {
                return Err(Error::NonPositiveDenominator {
                    user: k,
                    antenna: n,
                    value: den,
                });
            }
            values.push(w * terms.signal(k, n) / den);
        }
    }
    Ok(SinrVector::from_values(terms.n_users(), terms.n_tx(), values))
}

/// Relative standard error of the assembled SINR per (user, antenna),
/// combining the numerator and denominator uncertainties in quadrature.
pub fn sinr_rel_se(terms: &ExpectationTerms) -> Vec<f64> {
    let mut out = Vec::with_capacity(terms.n_users() * terms.n_tx());
    for k in 0..terms.n_users() {
        for n in 0..terms.n_tx() {
            let rel_num = terms.signal_se(k, n) / terms.signal(k, n);
            let rel_den = terms.denominator_se(k, n) / terms.denominator(k, n);
            out.push((rel_num * rel_num + rel_den * rel_den).sqrt());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::mr_sinr_closed_form;
    use crate::channel::power_delay_profile;
    use rand::Rng;

    fn test_cfg() -> SystemConfig {
        SystemConfig {
            n_rx: 16,
            n_tx: 2,
            n_users: 2,
            n_taps: 2,
            fixed_distances: Some(vec![50.0, 200.0]),
            ..Default::default()
        }
    }

    #[test]
    fn exact_moments_reproduce_closed_form() {
        // Random 20-point parameter grid: the moment route and the closed
        // form agree to 1e-12 relative.
        let mut rng = rand::thread_rng();
        for _ in 0..20 {
            let cfg = SystemConfig {
                n_rx: rng.gen_range(4..200),
                n_tx: rng.gen_range(1..5),
                n_users: rng.gen_range(1..5),
                n_taps: rng.gen_range(1..4),
                frame_len: 8192,
                rx_power: 10f64.powf(rng.gen_range(-1.0..2.0)),
                noise_power: 10f64.powf(rng.gen_range(-2.0..1.0)),
                decay_db: rng.gen_range(0.0..6.0),
                fixed_distances: None,
                ..Default::default()
            };
            cfg.validate().unwrap();
            let pdp = power_delay_profile(cfg.n_taps, cfg.decay_db, cfg.pdp_mode);
            let corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
            let geom = place_users(&cfg, rng.gen());
            let terms = ExpectationTerms::from_exact_moments(&cfg, &pdp, &corr, &geom);
            let assembled = sinr_from_terms(&terms, &cfg).unwrap();
            let closed = mr_sinr_closed_form(&cfg, &pdp, &corr);
            for (a, c) in assembled.values().iter().zip(closed.values()) {
                assert!(
                    (a - c).abs() / c <= 1e-12,
                    "assembled {a} vs closed {c}"
                );
            }
        }
    }

    #[test]
    fn empirical_terms_match_moment_identities() {
        // Signal mean, combiner norm and the correlated cross moment all sit
        // within 3 standard errors of their analytic values.
        let cfg = test_cfg();
        let pdp = power_delay_profile(cfg.n_taps, cfg.decay_db, cfg.pdp_mode);
        let corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
        let geom = place_users(&cfg, 11);
        let exact = ExpectationTerms::from_exact_moments(&cfg, &pdp, &corr, &geom);

        let terms = expectation_terms_empirical(&cfg, CombinerSpec::Mr, 20_000, 11).unwrap();
        for k in 0..2 {
            for n in 0..2 {
                let m = terms.signal_mean(k, n);
                let want = exact.signal_mean(k, n).re;
                assert!(
                    (m.re - want).abs() <= 3.0 * terms.sig_mean_se[terms.kn(k, n)].max(1e-12),
                    "signal mean {m} vs {want}"
                );
                let norm = terms.combiner_norm(k, n);
                assert!(
                    (norm - exact.combiner_norm(k, n)).abs()
                        <= 3.0 * terms.combiner_norm_se(k, n)
                );
                let other = 1 - n;
                let cr = terms.tap0_cross(k, n, other);
                assert!(
                    (cr - exact.tap0_cross(k, n, other)).abs()
                        <= 3.0 * terms.tap0_cross_se(k, n, other),
                    "cross {cr} vs {}",
                    exact.tap0_cross(k, n, other)
                );
            }
        }
    }

    #[test]
    fn empirical_sinr_matches_closed_form() {
        let cfg = SystemConfig {
            n_rx: 64,
            n_tx: 2,
            n_users: 2,
            n_taps: 2,
            ..Default::default()
        };
        let pdp = power_delay_profile(cfg.n_taps, cfg.decay_db, cfg.pdp_mode);
        let corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
        let terms = expectation_terms_empirical(&cfg, CombinerSpec::Mr, 10_000, 21).unwrap();
        let mc = sinr_from_terms(&terms, &cfg).unwrap();
        let rel_se = sinr_rel_se(&terms);
        let closed = mr_sinr_closed_form(&cfg, &pdp, &corr);
        for (i, (m, c)) in mc.values().iter().zip(closed.values()).enumerate() {
            let rel = (m - c).abs() / c;
            let tol = f64::max(0.03, 3.0 * rel_se[i]);
            assert!(rel <= tol, "rel {rel} vs tol {tol}");
        }
    }

    #[test]
    fn noise_free_baseline() {
        // sigma^2 = 0, K = 1, L = 1: with uncorrelated antennas the closed
        // form collapses to SINR = N_r/(N_t - 1); with the Jakes correlation
        // the empirical route still reproduces it within tolerance.
        let cfg = SystemConfig {
            n_rx: 64,
            n_tx: 2,
            n_users: 1,
            n_taps: 1,
            noise_power: 0.0,
            ..Default::default()
        };
        let pdp = power_delay_profile(1, cfg.decay_db, cfg.pdp_mode);
        let ideal = mr_sinr_closed_form(&cfg, &pdp, &crate::channel::CorrelationMatrix::identity(2));
        assert!((ideal.get(0, 0) - 64.0).abs() < 1e-9);

        let corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
        let closed = mr_sinr_closed_form(&cfg, &pdp, &corr);
        let rho2 = corr.off_diag_sq_sum(0);
        assert!((1.0 / closed.get(0, 0) - (rho2 + 1.0 / 64.0)).abs() < 1e-15);

        let terms = expectation_terms_empirical(&cfg, CombinerSpec::Mr, 10_000, 3).unwrap();
        let mc = sinr_from_terms(&terms, &cfg).unwrap();
        let rel = (mc.get(0, 0) - closed.get(0, 0)).abs() / closed.get(0, 0);
        assert!(rel < 0.05, "rel {rel}");
    }

    #[test]
    fn rejects_single_trial() {
        let cfg = test_cfg();
        assert!(matches!(
            expectation_terms_empirical(&cfg, CombinerSpec::Mr, 1, 0),
            Err(Error::TooFewTrials { .. })
        ));
    }

    #[test]
    fn terms_are_deterministic() {
        let cfg = test_cfg();
        let a = expectation_terms_empirical(&cfg, CombinerSpec::Mr, 50, 5).unwrap();
        let b = expectation_terms_empirical(&cfg, CombinerSpec::Mr, 50, 5).unwrap();
        assert_eq!(a.sig_mean, b.sig_mean);
        assert_eq!(a.denominator, b.denominator);
    }

    #[test]
    fn std_errors_shrink_with_sqrt_trials() {
        let cfg = test_cfg();
        let a = expectation_terms_empirical(&cfg, CombinerSpec::Mr, 2_000, 5).unwrap();
        let b = expectation_terms_empirical(&cfg, CombinerSpec::Mr, 4_000, 5).unwrap();
        let expected = 1.0 / 2f64.sqrt();
        for (x, y) in a.interference_sum_se.iter().zip(&b.interference_sum_se) {
            let ratio = y / x;
            assert!(
                (ratio / expected - 1.0).abs() < 0.2,
                "ratio {ratio} vs {expected}"
            );
        }
        for (x, y) in a.denominator_se.iter().zip(&b.denominator_se) {
            let ratio = y / x;
            assert!((ratio / expected - 1.0).abs() < 0.2);
        }
    }
}
