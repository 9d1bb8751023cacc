//! Desk-scale run of the 2D convergence experiment.
//!
//! ```bash
//! cargo run --release --example experiment_2d
//! ```

use framelet::{run_experiment, ExperimentSpec};

fn main() -> framelet::Result<()> {
    let mut spec = ExperimentSpec::paper_2d(42);
    spec.scales = (1..=4).collect();
    spec.trials = 5;

    let report = run_experiment(&spec)?;
    println!("{}", report.to_csv_string());
    match report.slope {
        Some(slope) => println!("fitted log2 slope of the max error: {slope:.4}"),
        None => println!("slope undefined"),
    }
    Ok(())
}
