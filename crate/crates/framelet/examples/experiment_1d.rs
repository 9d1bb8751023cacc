//! Desk-scale run of the 1D convergence experiment.
//!
//! ```bash
//! cargo run --release --example experiment_1d
//! ```

use framelet::{run_experiment, ExperimentSpec};

fn main() -> framelet::Result<()> {
    let mut spec = ExperimentSpec::paper_1d(42);
    spec.scales = (1..=6).collect();
    spec.trials = 10;

    let report = run_experiment(&spec)?;
    println!("{}", report.to_csv_string());
    match report.slope {
        Some(slope) => println!("fitted log2 slope of the max error: {slope:.4}"),
        None => println!("slope undefined"),
    }
    Ok(())
}
