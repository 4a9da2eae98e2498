//! Show the interference-limited SINR ceiling: growing the receive array
//! without bound leaves the SINR pinned by transmit-antenna correlation.
//!
//! ```sh
//! cargo run --release --example sinr_ceiling
//! ```

use scsm::{
    jakes_correlation, mr_sinr_asymptote, mr_sinr_closed_form, power_delay_profile, SystemConfig,
};

fn main() {
    let base = SystemConfig {
        n_tx: 2,
        n_users: 10,
        n_taps: 3,
        ..Default::default()
    };
    let pdp = power_delay_profile(base.n_taps, base.decay_db, base.pdp_mode);
    let corr = jakes_correlation(base.n_tx, base.device_size, base.carrier_hz);
    let ceiling = mr_sinr_asymptote(&corr)[0];

    println!("TA correlation rho = {:.6}; SINR ceiling = 1/rho^2 = {:.4}", corr.get(0, 1), ceiling);
    println!();
    println!("{:>10} {:>12} {:>16}", "N_r", "SINR", "ceiling fraction");
    for exp in [5usize, 7, 9, 11, 13, 15, 17, 20] {
        let cfg = SystemConfig {
            n_rx: 1usize << exp,
            ..base.clone()
        };
        let sinr = mr_sinr_closed_form(&cfg, &pdp, &corr).get(0, 0);
        println!("{:>10} {:>12.4} {:>15.2}%", cfg.n_rx, sinr, 100.0 * sinr / ceiling);
    }
}
