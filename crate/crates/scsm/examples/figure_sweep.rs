//! Run a reduced receive-antenna sweep (bound plus Monte Carlo), write the
//! CSV and its companion plot script, and print the table.
//!
//! ```sh
//! cargo run --release --example figure_sweep
//! python3 sweep_nr.plot.py   # optional: render the figure
//! ```

use std::path::PathBuf;

use scsm::sweep::run_sweep;
use scsm::{emit_csv, preset, SweepParam};

fn main() {
    let mut spec = preset("fig4").expect("preset");
    spec.grid = vec![32.0, 128.0, 512.0];
    spec.curve = Some((SweepParam::NUsers, vec![5.0, 10.0]));
    spec.n_trials = 300;
    spec.n_mi_samples = 5_000;
    spec.base.master_seed = 42;

    let run = run_sweep(&spec).expect("sweep");
    for f in &run.failures {
        eprintln!("point failed: {f}");
    }

    println!(
        "{:<8} {:>8} {:>12} {:>12} {:>10} {:>20}",
        "curve", "N_r", "se_bound", "se_mc", "stderr", "seed"
    );
    for row in &run.rows {
        println!(
            "{:<8} {:>8} {:>12.4} {:>12.4} {:>10.4} {:>20}",
            row.curve_label,
            row.swept_value,
            row.se_bound_total,
            row.se_mc_total,
            row.se_mc_stderr,
            row.seed
        );
    }

    let out = PathBuf::from("sweep_nr.csv");
    emit_csv(&run.rows, &out).expect("csv");
    println!("\nwrote {} and {}", out.display(), scsm::sweep::plot_script_path(&out).display());
}
