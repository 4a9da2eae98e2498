//! Validate the closed-form SE lower bound against the independent Monte
//! Carlo estimator at a single operating point.
//!
//! ```sh
//! cargo run --release --example bound_vs_monte_carlo
//! ```

use scsm::{
    empirical_se, jakes_correlation, mr_sinr_closed_form, power_delay_profile, se_lower_bound,
    CombinerSpec, SystemConfig,
};

fn main() {
    let cfg = SystemConfig {
        n_rx: 128,
        n_tx: 2,
        n_users: 5,
        n_taps: 3,
        master_seed: 42,
        ..Default::default()
    };
    let trials = 2_000;
    let mi_samples = 20_000;

    let pdp = power_delay_profile(cfg.n_taps, cfg.decay_db, cfg.pdp_mode);
    let corr = jakes_correlation(cfg.n_tx, cfg.device_size, cfg.carrier_hz);
    let bound = se_lower_bound(&cfg, &mr_sinr_closed_form(&cfg, &pdp, &corr)).expect("bound");
    let mc = empirical_se(&cfg, CombinerSpec::Mr, trials, mi_samples, cfg.master_seed)
        .expect("monte carlo");

    println!(
        "Nr={} Nt={} K={} L={} | {trials} trials, {mi_samples} MI samples, seed {}",
        cfg.n_rx, cfg.n_tx, cfg.n_users, cfg.n_taps, cfg.master_seed
    );
    println!();
    println!("{:>6} {:>14} {:>20}", "user", "bound", "monte carlo");
    for k in 0..cfg.n_users {
        println!(
            "{k:>6} {:>14.4} {:>14.4} ± {:.4}",
            bound.per_user[k], mc.per_user[k], mc.std_errors[k]
        );
    }
    println!(
        "{:>6} {:>14.4} {:>14.4} ± {:.4}",
        "total", bound.total, mc.total, mc.total_std_error
    );
    let gap = 100.0 * (mc.total - bound.total) / mc.total;
    println!("\nrelative gap: {gap:.2}% (bound below estimate: {})", bound.total <= mc.total);
}
