//! User placement and large-scale attenuation.

use rand::Rng;

use crate::config::SystemConfig;
use crate::rng::{role, stream};

/// Per-user distances and large-scale gains `alpha_k = (v_k / r_m)^(-gamma)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UserGeometry {
    distances: Vec<f64>,
    gains: Vec<f64>,
}

impl UserGeometry {
    pub fn n_users(&self) -> usize {
        self.distances.len()
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    pub fn gain(&self, user: usize) -> f64 {
        self.gains[user]
    }
}

/// Place users on the annulus `[r_m, r]`.
///
/// Distances are drawn area-uniform (`v = sqrt(r_m^2 + u (r^2 - r_m^2))`)
/// unless the config carries fixed distances, which take precedence and make
/// the result seed-independent.
pub fn place_users(config: &SystemConfig, seed: u64) -> UserGeometry {
    let distances: Vec<f64> = match &config.fixed_distances {
        Some(d) => d.clone(),
        None => {
            let mut rng = stream(seed, &[role::GEOMETRY]);
            let r2 = config.cell_radius * config.cell_radius;
            let rm2 = config.min_dist * config.min_dist;
            (0..config.n_users)
                .map(|_| {
                    let u: f64 = rng.gen::<f64>();
                    (rm2 + u * (r2 - rm2)).sqrt()
                })
                .collect()
        }
    };
    let gains = distances
        .iter()
        .map(|&v| (v / config.min_dist).powf(-config.pathloss_exp))
        .collect();
    UserGeometry { distances, gains }
}
