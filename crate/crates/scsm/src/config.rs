//! System configuration: every scalar parameter of the uplink scenario plus
//! the master seed, with validation and the derived frame bookkeeping.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// How the per-tap decay exponent is interpreted when building the
/// power-delay profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PdpMode {
    /// `10^(-beta*l/10)`: beta is a per-tap decay in dB (default).
    #[default]
    PerDb,
    /// `10^(-beta*l)`: beta used as a bare exponent.
    Literal,
}

/// Scenario parameters for the uplink single-cell system.
///
/// Powers are stored in linear units; use [`db_to_linear`] when building a
/// config from dB quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Receive antennas at the base station (N_r).
    pub n_rx: usize,
    /// Transmit antennas per user (N_t).
    pub n_tx: usize,
    /// Scheduled users (K).
    pub n_users: usize,
    /// Multipath taps (L).
    pub n_taps: usize,
    /// Symbols per coherence frame (N_a).
    pub frame_len: usize,
    /// Effective received power per user (P_u), linear.
    pub rx_power: f64,
    /// Noise power (sigma_N^2), linear. Zero is allowed and models perfect
    /// channel estimation.
    pub noise_power: f64,
    /// Multipath decay (beta), dB per tap in [`PdpMode::PerDb`].
    pub decay_db: f64,
    /// Physical device size (d), meters.
    pub device_size: f64,
    /// Carrier frequency (f_c), Hz.
    pub carrier_hz: f64,
    /// Cell radius (r), meters.
    pub cell_radius: f64,
    /// Minimum user distance (r_m), meters.
    pub min_dist: f64,
    /// Path-loss exponent (gamma).
    pub pathloss_exp: f64,
    /// Master seed; every random stream in the lab derives from it.
    pub master_seed: u64,
    pub pdp_mode: PdpMode,
    /// Optional per-user distances overriding random placement.
    pub fixed_distances: Option<Vec<f64>>,
}

impl Default for SystemConfig {
    /// The shared simulation constants: 2048-symbol frames, 5 GHz carrier,
    /// 0.1 m devices, 3 dB tap decay, 0 dB noise, 500 m cell with a 50 m
    /// exclusion radius and path-loss exponent 3.7.
    fn default() -> Self {
        SystemConfig {
            n_rx: 128,
            n_tx: 2,
            n_users: 10,
            n_taps: 3,
            frame_len: 2048,
            rx_power: 10.0,
            noise_power: 1.0,
            decay_db: 3.0,
            device_size: 0.1,
            carrier_hz: 5.0e9,
            cell_radius: 500.0,
            min_dist: 50.0,
            pathloss_exp: 3.7,
            master_seed: 1,
            pdp_mode: PdpMode::PerDb,
            fixed_distances: None,
        }
    }
}

impl SystemConfig {
    /// Pilot preamble length N_c = L-1 + N_t*K*L (guard plus orthogonal
    /// pilots).
    pub fn pilot_len(&self) -> usize {
        self.n_taps - 1 + self.n_tx * self.n_users * self.n_taps
    }

    /// Payload symbols per frame, N_s = N_a - N_c - (L-1). Negative when the
    /// preamble does not fit; [`SystemConfig::validate`] rejects that.
    pub fn payload_len(&self) -> i64 {
        self.frame_len as i64 - self.pilot_len() as i64 - (self.n_taps as i64 - 1)
    }

    /// Fraction of the frame carrying payload, N_s/N_a.
    pub fn overhead_factor(&self) -> f64 {
        self.payload_len() as f64 / self.frame_len as f64
    }

    /// Carrier wavelength, c/f_c.
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_hz
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(field: &'static str, v: f64) -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig {
                    field,
                    message: format!("must be strictly positive, got {v}"),
                })
            }
        }

        let counts: [(&'static str, usize); 5] = [
            ("n_rx", self.n_rx),
            ("n_tx", self.n_tx),
            ("n_users", self.n_users),
            ("n_taps", self.n_taps),
            ("frame_len", self.frame_len),
        ];
        for (field, v) in counts {
            if v == 0 {
                return Err(Error::InvalidConfig {
                    field,
                    message: "must be at least 1".into(),
                });
            }
        }

        positive("rx_power", self.rx_power)?;
        positive("device_size", self.device_size)?;
        positive("carrier_hz", self.carrier_hz)?;
        positive("cell_radius", self.cell_radius)?;
        positive("min_dist", self.min_dist)?;
        positive("pathloss_exp", self.pathloss_exp)?;
        if !(self.noise_power >= 0.0 && self.noise_power.is_finite()) {
            return Err(Error::InvalidConfig {
                field: "noise_power",
                message: format!("must be finite and non-negative, got {}", self.noise_power),
            });
        }
        if !(self.decay_db >= 0.0 && self.decay_db.is_finite()) {
            return Err(Error::InvalidConfig {
                field: "decay_db",
                message: format!("must be finite and non-negative, got {}", self.decay_db),
            });
        }
        if self.min_dist > self.cell_radius {
            return Err(Error::InvalidConfig {
                field: "min_dist",
                message: format!(
                    "minimum distance {} exceeds cell radius {}",
                    self.min_dist, self.cell_radius
                ),
            });
        }
        if self.payload_len() < 1 {
            return Err(Error::InvalidConfig {
                field: "frame_len",
                message: format!(
                    "frame of {} symbols leaves no payload after {} pilot and {} guard symbols",
                    self.frame_len,
                    self.pilot_len(),
                    self.n_taps - 1
                ),
            });
        }
        if let Some(d) = &self.fixed_distances {
            if d.len() != self.n_users {
                return Err(Error::InvalidConfig {
                    field: "fixed_distances",
                    message: format!("expected {} distances, got {}", self.n_users, d.len()),
                });
            }
            for &v in d {
                if !(v >= self.min_dist && v <= self.cell_radius) {
                    return Err(Error::InvalidConfig {
                        field: "fixed_distances",
                        message: format!(
                            "distance {v} outside [{}, {}]",
                            self.min_dist, self.cell_radius
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}
