//! Pilot design and zero-forcing estimation: check the estimation-error
//! variance against the chosen pilot energy, for both the full pilot-path
//! simulation and the shortcut sampler.
//!
//! ```sh
//! cargo run --release --example channel_estimation
//! ```

use scsm::math::MeanVar;
use scsm::{
    build_pilot_book, jakes_correlation, place_users, power_delay_profile, sample_channel,
    shortcut_estimate, zf_estimate, SystemConfig,
};

fn main() {
    let cfg = SystemConfig {
        n_rx: 8,
        n_tx: 2,
        n_users: 2,
        n_taps: 2,
        fixed_distances: Some(vec![50.0, 50.0]),
        ..Default::default()
    };
    let trials = 10_000u64;

    let geom = place_users(&cfg, 1);
    let pdp = power_delay_profile(cfg.n_taps, cfg.decay_db, cfg.pdp_mode);
    let corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
    let book = build_pilot_book(&cfg);

    println!(
        "pilot preamble: {} symbols ({} guard + {} blocks of {})",
        book.preamble_len(),
        cfg.n_taps - 1,
        cfg.n_tx,
        cfg.n_users * cfg.n_taps
    );
    println!(
        "pilot gram: p0.p0 = {}, p0.p1 = {}",
        book.gram(0, 0),
        book.gram(0, 1)
    );

    let mut full = MeanVar::new();
    let mut short = MeanVar::new();
    for trial in 0..trials {
        let re = sample_channel(&cfg, &geom, &pdp, &corr, trial);
        let a = zf_estimate(&cfg, &re, &book, trial ^ 0xAAAA).expect("zf");
        let b = shortcut_estimate(&cfg, &re, trial ^ 0x5555);
        for (est, truth) in a.tap(0, 0).iter().zip(re.tap(0, 0).iter()) {
            full.push((est - truth).norm_sqr());
        }
        for (est, truth) in b.tap(0, 0).iter().zip(re.tap(0, 0).iter()) {
            short.push((est - truth).norm_sqr());
        }
    }
    let formula = cfg.noise_power * geom.gain(0) * pdp.dominant()
        / ((cfg.n_users * cfg.n_taps) as f64 * cfg.rx_power);

    println!();
    println!("error variance, {trials} trials:");
    println!("  analytic            {formula:.6e}");
    println!("  pilot-path ZF       {:.6e} ± {:.1e}", full.mean(), full.std_error());
    println!("  shortcut sampler    {:.6e} ± {:.1e}", short.mean(), short.std_error());
}
