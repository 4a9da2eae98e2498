//! Numerical laboratory for the uplink spectral efficiency of a single-cell
//! massive MIMO system whose users transmit single-carrier spatial
//! modulation over frequency-selective channels, detected with maximum-ratio
//! combining.
//!
//! Two independent routes compute the same quantities:
//!
//! * [`bounds`] — closed forms: the MR SINR, its large-array ceiling, and
//!   the per-user spectral-efficiency lower bound (spatial term plus
//!   continuous-input term, scaled by the pilot overhead).
//! * [`mc`] — simulation: empirical expectation terms assembled into an
//!   SINR, exactly sampled spatial mutual information, moment-identity
//!   z-score reports.
//!
//! [`channel`] generates the physics (geometry, Jakes antenna correlation,
//! exponential power-delay profile, correlated Rayleigh taps, orthogonal
//! pilots with zero-forcing estimation), and [`sweep`] reproduces the
//! canonical parameter sweeps with deterministic seeding and CSV output.
//!
//! ```
//! use scsm::{
//!     jakes_correlation, mr_sinr_closed_form, power_delay_profile, se_lower_bound,
//!     SystemConfig,
//! };
//!
//! let cfg = SystemConfig::default();
//! let pdp = power_delay_profile(cfg.n_taps, cfg.decay_db, cfg.pdp_mode);
//! let corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
//! let sinr = mr_sinr_closed_form(&cfg, &pdp, &corr);
//! let se = se_lower_bound(&cfg, &sinr).unwrap();
//! assert!(se.total > 0.0);
//! ```

pub mod bounds;
pub mod channel;
pub mod config;
pub mod error;
pub mod math;
pub mod mc;
pub mod rng;
pub mod sweep;

pub use bounds::{
    cmcc_term, mr_sinr_asymptote, mr_sinr_closed_form, se_lower_bound, sigma_matrix,
    spatial_term_bound, spatial_term_bound_raw, ActivePattern, SeBound, SigmaMatrix, SinrVector,
};
pub use channel::{
    build_pilot_book, jakes_correlation, place_users, power_delay_profile, sample_channel,
    shortcut_estimate, zf_estimate, ChannelEstimate, ChannelRealization, CorrelationMatrix,
    PilotBook, PowerDelayProfile, UserGeometry,
};
pub use config::{db_to_linear, linear_to_db, PdpMode, SystemConfig};
pub use error::{Error, Result};
pub use mc::{
    empirical_se, expectation_terms_empirical, moment_report, sinr_from_terms, sinr_rel_se,
    spatial_mi_exact, CombinerSpec, ExpectationTerms, MiEstimate, MomentReport, SeEstimate,
};
pub use sweep::{
    emit_csv, parse_config, parse_csv, preset, run_bound_sweep, run_sweep, ResultRow, SweepParam,
    SweepRun, SweepSpec,
};
