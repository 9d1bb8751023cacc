//! Convergence experiments: jittered reconstruction of the builtin targets
//! across a range of scales, with CSV report emission.
//!
//! The 1D protocol reconstructs a sinc-plus-spline-bump target on
//! [-100, 100] from samples at `2^{-N}(k + 1 + θ_k)`, `θ_k` standard
//! Gaussian, and records the maximum relative error over the trials of each
//! scale. The 2D protocol does the same on [-2, 2]² with offset 0.5 per
//! coordinate and a 501×501 error grid. Reports are pure functions of
//! `(spec, seed)`.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use crate::bspline::{eval_bspline, RefinableFunction};
use crate::error::{Error, Result};
use crate::jitter::{JitterDistribution, PerturbationModel};
use crate::lattice::{DomainBox, PointGrid};
use crate::rates::fit_decay_slope;
use crate::sampling::{run_trials, ReconstructionConfig, TargetFunction};

/// The 1D simulation target:
/// `sin(x)/x + B₂(x-2)/3 - cos((x-3)²)B₂(x-3)/6 + cos((x-4)²)B₂(x-4)/2 -
/// cos((x-5)²)B₂(x-5)/2`, with the removable singularity at 0 evaluating
/// to 1.
pub fn builtin_target_1d() -> TargetFunction {
    TargetFunction::new(1, 1.49, |p| {
        let x = p[0];
        let sinc = if x == 0.0 { 1.0 } else { x.sin() / x };
        sinc + eval_bspline(2, x - 2.0) / 3.0
            - ((x - 3.0) * (x - 3.0)).cos() * eval_bspline(2, x - 3.0) / 6.0
            + ((x - 4.0) * (x - 4.0)).cos() * eval_bspline(2, x - 4.0) / 2.0
            - ((x - 5.0) * (x - 5.0)).cos() * eval_bspline(2, x - 5.0) / 2.0
    })
}

/// The 2D simulation target `1/((50+x₁²)(20+x₂²)) + B₂(x₁)B₂(x₂)`.
pub fn builtin_target_2d() -> TargetFunction {
    TargetFunction::new(2, 1.49, |p| {
        1.0 / ((50.0 + p[0] * p[0]) * (20.0 + p[1] * p[1]))
            + eval_bspline(2, p[0]) * eval_bspline(2, p[1])
    })
}

/// Full description of one convergence experiment.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub name: String,
    /// Identifier of the target for report metadata and hashing.
    pub target_id: String,
    pub target: TargetFunction,
    pub phi: RefinableFunction,
    pub domain: DomainBox,
    pub grid: PointGrid,
    /// Scales to run, strictly increasing.
    pub scales: Vec<u32>,
    pub trials: u32,
    pub model: PerturbationModel,
    /// Where to write `<name>_report.csv` and `<name>_plot.csv`; `None`
    /// keeps the run in memory.
    pub output_dir: Option<PathBuf>,
    /// Optional wall-clock budget. When projected runtime exceeds it the
    /// trial count halves for the remaining scales (logged in the report
    /// metadata). Budgeted runs trade away bitwise reproducibility.
    pub time_budget: Option<Duration>,
}

impl ExperimentSpec {
    /// The 1D protocol: B₃ atoms on [-100, 100], offset 1, standard
    /// Gaussian jitter, error grid {-100 + 0.01 i}. Desk-scale defaults:
    /// scales 1..=8, 50 trials.
    pub fn paper_1d(seed: u64) -> Self {
        ExperimentSpec {
            name: "experiment-1d".into(),
            target_id: "paper-1d".into(),
            target: builtin_target_1d(),
            phi: RefinableFunction::bspline(3),
            domain: DomainBox::interval(-100.0, 100.0),
            grid: PointGrid::uniform_1d(-100.0, 0.01, 20_001),
            scales: (1..=8).collect(),
            trials: 50,
            model: PerturbationModel::new(
                vec![1.0],
                0.5,
                JitterDistribution::Gaussian { sigma: 1.0 },
                seed,
            )
            .expect("valid builtin model"),
            output_dir: None,
            time_budget: None,
        }
    }

    /// The 2D protocol: B₃⊗B₃ atoms on [-2, 2]², offset 0.5 per
    /// coordinate, standard Gaussian jitter, grid (2/250)·{-250..250}².
    /// Desk-scale defaults: scales 1..=6, 20 trials.
    pub fn paper_2d(seed: u64) -> Self {
        let axis: Vec<f64> = (-250..=250).map(|l| 2.0 * l as f64 / 250.0).collect();
        ExperimentSpec {
            name: "experiment-2d".into(),
            target_id: "paper-2d".into(),
            target: builtin_target_2d(),
            phi: RefinableFunction::tensor_bspline(3, 3),
            domain: DomainBox::rectangle([-2.0, -2.0], [2.0, 2.0]),
            grid: PointGrid::tensor_2d(&axis, &axis),
            scales: (1..=6).collect(),
            trials: 20,
            model: PerturbationModel::new(
                vec![0.5, 0.5],
                0.5,
                JitterDistribution::Gaussian { sigma: 1.0 },
                seed,
            )
            .expect("valid builtin model"),
            output_dir: None,
            time_budget: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.model.seed()
    }

    fn validate(&self) -> Result<()> {
        if self.scales.is_empty() {
            return Err(Error::invalid("scales", "must be nonempty"));
        }
        if self.scales.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("scales", "must be strictly increasing"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials", "must be at least 1"));
        }
        Ok(())
    }

    /// Canonical one-line description of everything that determines the
    /// output.
    pub fn canonical_description(&self) -> String {
        format!(
            "name={};target={};phi_dim={};scales={:?};trials={};offset={:?};alpha={};dist={:?};seed={}",
            self.name,
            self.target_id,
            self.phi.dim(),
            self.scales,
            self.trials,
            self.model.offset(),
            self.model.alpha(),
            self.model.distribution(),
            self.model.seed(),
        )
    }

    /// FNV-1a hash of the canonical description.
    pub fn spec_hash(&self) -> u64 {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in self.canonical_description().bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash
    }
}

/// One row of an error report.
#[derive(Clone, Copy, Debug)]
pub struct ReportRow {
    pub scale: u32,
    pub max_err: f64,
    pub mean_err: f64,
    pub std_err: f64,
    /// Trials actually run at this scale (differs from the spec only under
    /// a time budget).
    pub trials: u32,
}

/// Per-scale error statistics with the fitted decay slope.
#[derive(Clone, Debug)]
pub struct ErrorReport {
    pub rows: Vec<ReportRow>,
    /// Least-squares slope of log₂(max_err) against N; `None` when fewer
    /// than 3 rows or some error vanishes.
    pub slope: Option<f64>,
    pub seed: u64,
    pub spec_hash: u64,
    pub metadata: Vec<String>,
}

impl ErrorReport {
    /// The report CSV: header plus one row per scale, LF endings, 17
    /// significant digits.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("N,max_err,mean_err,std_err\n");
        for row in &self.rows {
            writeln!(
                out,
                "{},{:.16e},{:.16e},{:.16e}",
                row.scale, row.max_err, row.mean_err, row.std_err
            )
            .expect("writing to a String cannot fail");
        }
        out
    }

    /// Plot data: scale against maximum relative error.
    pub fn to_plot_csv_string(&self) -> String {
        let mut out = String::from("N,max_err\n");
        for row in &self.rows {
            writeln!(out, "{},{:.16e}", row.scale, row.max_err)
                .expect("writing to a String cannot fail");
        }
        out
    }
}

/// Run the experiment: for each scale, `trials` jittered reconstructions,
/// aggregated into a report row; writes the CSV files when an output
/// directory is set.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ErrorReport> {
    spec.validate()?;
    let start = Instant::now();
    let mut rows = Vec::with_capacity(spec.scales.len());
    let mut metadata = Vec::new();
    let mut trials = spec.trials;
    let mut last_scale_time: Option<Duration> = None;

    for &scale in &spec.scales {
        if let (Some(budget), Some(last)) = (spec.time_budget, last_scale_time) {
            // Sampling work doubles per scale step; the grid part stays flat.
            let projected = last * 2;
            if start.elapsed() + projected > budget && trials > 1 {
                let reduced = (trials / 2).max(1);
                metadata.push(format!(
                    "scale {scale}: trials reduced {trials} -> {reduced} (time budget)"
                ));
                trials = reduced;
            }
        }
        let scale_start = Instant::now();
        let cfg = ReconstructionConfig::new(spec.phi.clone(), spec.domain.clone(), scale)?;
        let report = run_trials(&spec.target, &cfg, &spec.model, trials, &spec.grid)?;
        rows.push(ReportRow {
            scale,
            max_err: report.max,
            mean_err: report.mean,
            std_err: report.stddev,
            trials,
        });
        last_scale_time = Some(scale_start.elapsed());
    }

    let fit_points: Vec<(u32, f64)> = rows.iter().map(|r| (r.scale, r.max_err)).collect();
    let slope = match fit_decay_slope(&fit_points, 2.0) {
        Ok(s) => Some(s),
        Err(_) => {
            metadata.push("slope undefined: fewer than 3 scales or vanishing errors".into());
            None
        }
    };

    let report = ErrorReport {
        rows,
        slope,
        seed: spec.seed(),
        spec_hash: spec.spec_hash(),
        metadata,
    };

    if let Some(dir) = &spec.output_dir {
        std::fs::create_dir_all(dir)?;
        std::fs::write(
            dir.join(format!("{}_report.csv", spec.name)),
            report.to_csv_string(),
        )?;
        std::fs::write(
            dir.join(format!("{}_plot.csv", spec.name)),
            report.to_plot_csv_string(),
        )?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn target_1d_spot_values() {
        let f = builtin_target_1d();
        assert_abs_diff_eq!(f.eval(&[0.0]), 1.0, epsilon = 1e-15);
        // sin(2.5)/2.5 + B₂(0.5)/3, remaining bump arguments ≤ 0.
        assert_abs_diff_eq!(f.eval(&[2.5]), 0.406_055_524_308_249_3, epsilon = 1e-12);
        // Far field: only the sinc part survives.
        assert_abs_diff_eq!(
            f.eval(&[1000.0]),
            1000f64.sin() / 1000.0,
            epsilon = 1e-18
        );
    }

    #[test]
    fn target_2d_spot_values() {
        let f = builtin_target_2d();
        assert_abs_diff_eq!(f.eval(&[0.0, 0.0]), 0.001, epsilon = 1e-15);
        assert_abs_diff_eq!(
            f.eval(&[1.0, 1.0]),
            1.0 / (51.0 * 21.0) + 1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            f.eval(&[10.0, 10.0]),
            1.0 / (150.0 * 120.0),
            epsilon = 1e-18
        );
    }

    #[test]
    fn zero_jitter_constant_target_reports_tiny_errors() {
        let mut spec = ExperimentSpec::paper_1d(7);
        spec.name = "flat".into();
        spec.target_id = "const-one".into();
        spec.target = TargetFunction::new(1, 10.0, |_| 1.0);
        spec.model =
            PerturbationModel::new(vec![0.0], 0.5, JitterDistribution::Zero, 7).unwrap();
        spec.scales = vec![1, 2];
        spec.trials = 2;
        spec.grid = PointGrid::uniform_1d(-100.0, 0.5, 401);
        let report = run_experiment(&spec).unwrap();
        for row in &report.rows {
            assert!(row.max_err < 1e-12);
        }
        assert!(report.slope.is_none());
        assert!(!report.metadata.is_empty());
    }

    #[test]
    fn rows_sorted_and_consistent() {
        let mut spec = ExperimentSpec::paper_1d(3);
        spec.scales = vec![1, 3, 5];
        spec.trials = 3;
        spec.grid = PointGrid::uniform_1d(-100.0, 0.25, 801);
        let report = run_experiment(&spec).unwrap();
        assert_eq!(report.rows.len(), 3);
        for pair in report.rows.windows(2) {
            assert!(pair[0].scale < pair[1].scale);
        }
        for row in &report.rows {
            assert!(row.max_err >= row.mean_err);
        }
        assert!(report.slope.is_some());
    }

    #[test]
    fn csv_shape() {
        let mut spec = ExperimentSpec::paper_1d(11);
        spec.scales = vec![1, 2, 3];
        spec.trials = 2;
        spec.grid = PointGrid::uniform_1d(-100.0, 0.5, 401);
        let report = run_experiment(&spec).unwrap();
        let csv = report.to_csv_string();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "N,max_err,mean_err,std_err");
        assert_eq!(lines.len(), 4);
        assert!(!csv.contains('\r'));
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 4);
        }
        let plot = report.to_plot_csv_string();
        assert!(plot.starts_with("N,max_err\n"));
        assert_eq!(plot.lines().count(), 4);
    }

    #[test]
    fn rerun_is_bit_identical() {
        let mut spec = ExperimentSpec::paper_1d(2024);
        spec.scales = vec![1, 2, 4];
        spec.trials = 4;
        spec.grid = PointGrid::uniform_1d(-100.0, 0.2, 1001);
        let a = run_experiment(&spec).unwrap().to_csv_string();
        let b = run_experiment(&spec).unwrap().to_csv_string();
        assert_eq!(a, b);
    }

    #[test]
    fn validation_failures() {
        let mut spec = ExperimentSpec::paper_1d(1);
        spec.scales = vec![];
        assert!(run_experiment(&spec).is_err());
        let mut spec = ExperimentSpec::paper_1d(1);
        spec.scales = vec![3, 2];
        assert!(run_experiment(&spec).is_err());
        let mut spec = ExperimentSpec::paper_1d(1);
        spec.trials = 0;
        assert!(run_experiment(&spec).is_err());
    }

    #[test]
    fn spec_hash_tracks_content() {
        let a = ExperimentSpec::paper_1d(1);
        let mut b = ExperimentSpec::paper_1d(1);
        assert_eq!(a.spec_hash(), b.spec_hash());
        b.trials = 99;
        assert_ne!(a.spec_hash(), b.spec_hash());
    }
}
