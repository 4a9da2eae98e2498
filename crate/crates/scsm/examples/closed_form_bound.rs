//! Evaluate the closed-form SE lower bound for one scenario and print the
//! per-term breakdown.
//!
//! ```sh
//! cargo run --release --example closed_form_bound
//! ```

use scsm::{
    jakes_correlation, mr_sinr_closed_form, power_delay_profile, se_lower_bound, SystemConfig,
};

fn main() {
    let cfg = SystemConfig {
        n_rx: 256,
        n_tx: 2,
        n_users: 10,
        n_taps: 3,
        ..Default::default()
    };
    cfg.validate().expect("valid scenario");

    let pdp = power_delay_profile(cfg.n_taps, cfg.decay_db, cfg.pdp_mode);
    let corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
    let sinr = mr_sinr_closed_form(&cfg, &pdp, &corr);
    let se = se_lower_bound(&cfg, &sinr).expect("bound");

    println!(
        "scenario: Nr={} Nt={} K={} L={} Pu={} dB sigma^2={} dB",
        cfg.n_rx,
        cfg.n_tx,
        cfg.n_users,
        cfg.n_taps,
        scsm::linear_to_db(cfg.rx_power),
        scsm::linear_to_db(cfg.noise_power),
    );
    println!(
        "power-delay profile: {:?}",
        pdp.weights().iter().map(|w| (w * 1e4).round() / 1e4).collect::<Vec<_>>()
    );
    println!("TA correlation(0,1) = {:.6}", corr.get(0, 1));
    println!();
    println!("per-antenna SINR: {:?}", sinr.row(0));
    println!("payload fraction Ns/Na   = {:.6}", se.components.overhead);
    println!("spatial term (user 0)    = {:.6} bits", se.components.spatial[0]);
    println!("cmcc term (user 0)       = {:.6} bits", se.components.cmcc[0]);
    println!("SE lower bound (user 0)  = {:.6} bits/s/Hz", se.per_user[0]);
    println!("SE lower bound (total)   = {:.6} bits/s/Hz", se.total);
}
