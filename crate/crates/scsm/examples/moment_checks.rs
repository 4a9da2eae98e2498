//! Z-score report for the Gaussian moment identities behind the MR SINR
//! closed form.
//!
//! ```sh
//! cargo run --release --example moment_checks
//! ```

use scsm::{moment_report, SystemConfig};

fn main() {
    let cfg = SystemConfig {
        n_rx: 16,
        n_tx: 2,
        n_users: 2,
        n_taps: 2,
        master_seed: 7,
        ..Default::default()
    };
    let report = moment_report(&cfg, 100_000, cfg.master_seed).expect("report");
    println!("{report}");
    println!("max |z| = {:.2}", report.max_abs_z());
}
