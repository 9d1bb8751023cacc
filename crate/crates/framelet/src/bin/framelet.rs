//! Command-line front end: mask verification, tail bounds, rate constants,
//! reconstruction, and the builtin convergence experiments.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use framelet::mask::read_masks;
use framelet::{
    builtin_target_1d, builtin_target_2d, decay_exponent, lattice_tail_bound,
    lattice_tail_oracle, perturbed_reconstruct, reconstruction_rate_factor, run_experiment,
    uniform_reconstruct, verify_mep, CosetSet, DomainBox, ExperimentSpec, JitterDistribution,
    PerturbationModel, PointGrid, RateParams, ReconstructionConfig, RefinableFunction,
    TargetFunction,
};

#[derive(Parser)]
#[command(
    name = "framelet",
    about = "B-spline sampling reconstruction in Sobolev spaces",
    version
)]
struct Cli {
    /// Plain-text key=value config file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the perfect-reconstruction identities for a mask family.
    ///
    /// Masks are read from the files in order as a, a~, b_1..b_L,
    /// b~_1..b~_L; blank lines separate masks within one file.
    #[command(name = "verify-mep")]
    VerifyMep(VerifyMepArgs),

    /// Print the lattice tail-sum bound and optionally its brute-force
    /// oracle.
    #[command(name = "tail-bound")]
    TailBound(TailBoundArgs),

    /// Reconstruct a builtin target from (optionally jittered) samples at
    /// the given evaluation points.
    Reconstruct(ReconstructArgs),

    /// Run the builtin 1D convergence experiment.
    #[command(name = "experiment-1d")]
    Experiment1d(ExperimentArgs),

    /// Run the builtin 2D convergence experiment.
    #[command(name = "experiment-2d")]
    Experiment2d(ExperimentArgs),

    /// Print the decay exponent and the reconstruction rate factor.
    Rates(RatesArgs),
}

#[derive(Args)]
struct VerifyMepArgs {
    /// Mask files; concatenated blocks are assigned a, a~, b..., b~...
    #[arg(required = true)]
    files: Vec<PathBuf>,

    /// Grid points per dimension for the residual sup.
    #[arg(long)]
    grid_points: Option<usize>,

    /// Residual tolerance for the pass/fail verdict.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct TailBoundArgs {
    #[arg(long)]
    s: f64,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    m: f64,
    #[arg(long = "J")]
    level: f64,
    /// Truncation radius for the brute-force oracle.
    #[arg(long)]
    oracle: Option<u64>,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Target: paper-1d | paper-2d | const-one | linear.
    #[arg(long)]
    target: String,

    /// Generator: bspline:N | tensor:N1,N2.
    #[arg(long)]
    phi: String,

    /// Scale N (sampling rate 2^N per coordinate).
    #[arg(long = "N")]
    scale: u32,

    /// Jitter: zero | gaussian:SIGMA | uniform:HALFWIDTH, with optional
    /// ,lambda=L[:L2] ,alpha=A ,seed=U suffixes.
    #[arg(long)]
    jitter: Option<String>,

    /// File of evaluation points, one `x [y]` row per line.
    #[arg(long)]
    points: PathBuf,

    /// Output CSV (`x [y] f recon err`); stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Scale range `a..b` (inclusive).
    #[arg(long)]
    scales: Option<String>,

    #[arg(long)]
    trials: Option<u32>,

    #[arg(long)]
    seed: Option<u64>,

    /// Directory for the report and plot CSV files.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Full protocol: scales 1..10, 500 trials.
    #[arg(long)]
    paper: bool,

    /// Wall-clock budget; halves remaining trial counts when exceeded
    /// (trades away bitwise reproducibility).
    #[arg(long)]
    budget_secs: Option<f64>,
}

#[derive(Args)]
struct RatesArgs {
    #[arg(long)]
    s: f64,
    /// Target smoothness.
    #[arg(long)]
    sigma: f64,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    d: usize,
    #[arg(long = "N")]
    scale: u32,
    #[arg(long, default_value_t = 2.0)]
    m: f64,
    /// Constant jitter offset magnitude.
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    /// Value of the jitter sequence norm max{l2, l_alpha^(alpha/2)}.
    #[arg(long, default_value_t = 0.0)]
    eps_norm: f64,
}

enum CliError {
    Validation(String),
    Io(String),
}

impl From<framelet::Error> for CliError {
    fn from(err: framelet::Error) -> Self {
        match err {
            framelet::Error::Io(e) => CliError::Io(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                std::process::exit(0);
            }
            eprint!("{err}");
            std::process::exit(1);
        }
    };
    let config = match cli.config.as_deref().map(read_config).transpose() {
        Ok(cfg) => cfg.unwrap_or_default(),
        Err(err) => return fail(err),
    };
    let outcome = match cli.command {
        Command::VerifyMep(args) => cmd_verify_mep(args, &config),
        Command::TailBound(args) => cmd_tail_bound(args),
        Command::Reconstruct(args) => cmd_reconstruct(args),
        Command::Experiment1d(args) => cmd_experiment(args, &config, false),
        Command::Experiment2d(args) => cmd_experiment(args, &config, true),
        Command::Rates(args) => cmd_rates(args),
    };
    if let Err(err) = outcome {
        fail(err);
    }
}

fn fail(err: CliError) {
    match err {
        CliError::Validation(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        CliError::Io(msg) => {
            eprintln!("i/o error: {msg}");
            std::process::exit(2);
        }
    }
}

/// Plain-text `key=value` lines; `#` starts a comment.
fn read_config(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for raw in text.lines() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Validation(format!(
                "config line `{line}` is not key=value"
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn config_value<T: std::str::FromStr>(
    config: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    match config.get(key) {
        None => Ok(None),
        Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
            CliError::Validation(format!("config key `{key}` has invalid value `{raw}`"))
        }),
    }
}

/// Precedence: explicit flag, then FRAMELET_SEED, then config, then default.
fn resolve_seed(flag: Option<u64>, config: &HashMap<String, String>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    if let Ok(raw) = std::env::var("FRAMELET_SEED") {
        return raw.parse().map_err(|_| {
            CliError::Validation(format!("FRAMELET_SEED has invalid value `{raw}`"))
        });
    }
    Ok(config_value::<u64>(config, "seed")?.unwrap_or(42))
}

fn cmd_verify_mep(args: VerifyMepArgs, config: &HashMap<String, String>) -> Result<(), CliError> {
    let grid_points = match args.grid_points {
        Some(n) => n,
        None => config_value(config, "grid_points")?.unwrap_or(256),
    };
    let tol = match args.tol {
        Some(t) => t,
        None => config_value(config, "tol")?.unwrap_or(1e-12),
    };

    let mut masks = Vec::new();
    for file in &args.files {
        masks.extend(read_masks(file)?);
    }
    if masks.len() < 4 || masks.len() % 2 != 0 {
        return Err(CliError::Validation(format!(
            "need an even number of masks (a, a~, b..., b~...), at least 4; got {}",
            masks.len()
        )));
    }
    let num_wavelets = (masks.len() - 2) / 2;
    let a = masks[0].clone();
    let a_dual = masks[1].clone();
    let bs = masks[2..2 + num_wavelets].to_vec();
    let bs_dual = masks[2 + num_wavelets..].to_vec();
    let cosets = CosetSet::dyadic(a.dim())?;

    let report = verify_mep(&a, &a_dual, &bs, &bs_dual, &cosets, grid_points)?;
    println!(
        "masks: lowpass pair + {num_wavelets} wavelet pair(s), dimension {}",
        a.dim()
    );
    println!("lowpass identity residual: {:.3e}", report.lowpass_residual);
    for (j, (shifted, in_place)) in report
        .coset_residuals_dual_shifted
        .iter()
        .zip(&report.coset_residuals_dual_unshifted)
        .enumerate()
    {
        println!(
            "coset {}: dual-shifted residual {:.3e}, dual-in-place residual {:.3e}",
            j + 1,
            shifted,
            in_place
        );
    }
    let pass = report.passes(tol);
    println!(
        "{} (lowpass and dual-in-place residuals vs tolerance {tol:.1e})",
        if pass { "PASS" } else { "FAIL" }
    );
    if pass {
        Ok(())
    } else {
        Err(CliError::Validation(
            "duality identities not satisfied".into(),
        ))
    }
}

fn cmd_tail_bound(args: TailBoundArgs) -> Result<(), CliError> {
    let bound = lattice_tail_bound(args.s, args.d, args.m, args.level)?;
    println!("bound: {bound:.5}");
    if let Some(radius) = args.oracle {
        let oracle = lattice_tail_oracle(args.s, args.d, args.m, args.level, radius)?;
        println!(
            "oracle: {:.5} (remainder <= {:.2e})",
            oracle.value, oracle.remainder_bound
        );
        println!("ratio: {:.4}", oracle.value / bound);
    }
    Ok(())
}

fn parse_phi(spec: &str) -> Result<RefinableFunction, CliError> {
    let err = || {
        CliError::Validation(format!(
            "invalid --phi `{spec}`; expected bspline:N or tensor:N1,N2"
        ))
    };
    let (kind, rest) = spec.split_once(':').ok_or_else(err)?;
    match kind {
        "bspline" => {
            let order: u32 = rest.parse().map_err(|_| err())?;
            if order == 0 {
                return Err(err());
            }
            Ok(RefinableFunction::bspline(order))
        }
        "tensor" => {
            let (n1, n2) = rest.split_once(',').ok_or_else(err)?;
            let n1: u32 = n1.parse().map_err(|_| err())?;
            let n2: u32 = n2.parse().map_err(|_| err())?;
            if n1 == 0 || n2 == 0 {
                return Err(err());
            }
            Ok(RefinableFunction::tensor_bspline(n1, n2))
        }
        _ => Err(err()),
    }
}

fn parse_target(name: &str, dim: usize) -> Result<TargetFunction, CliError> {
    let target = match name {
        "paper-1d" => builtin_target_1d(),
        "paper-2d" => builtin_target_2d(),
        "const-one" => TargetFunction::new(dim, 100.0, |_| 1.0),
        "linear" => TargetFunction::new(dim, 1.0, |x| x.iter().sum()),
        other => {
            return Err(CliError::Validation(format!(
                "unknown target `{other}`; expected paper-1d, paper-2d, const-one, or linear"
            )))
        }
    };
    if target.dim() != dim {
        return Err(CliError::Validation(format!(
            "target `{name}` has dimension {}, generator has dimension {dim}",
            target.dim()
        )));
    }
    Ok(target)
}

/// `zero | gaussian:SIGMA | uniform:HALFWIDTH` with optional
/// `,lambda=L[:L2]`, `,alpha=A`, `,seed=U` suffixes.
fn parse_jitter(spec: &str, dim: usize) -> Result<PerturbationModel, CliError> {
    let err = |what: &str| CliError::Validation(format!("invalid --jitter `{spec}`: {what}"));
    let mut distribution = None;
    let mut lambda = vec![0.0; dim];
    let mut alpha = 0.5;
    let mut seed = 42u64;
    for (i, part) in spec.split(',').enumerate() {
        let part = part.trim();
        if i == 0 {
            distribution = Some(match part.split_once(':') {
                None if part == "zero" => JitterDistribution::Zero,
                Some(("gaussian", v)) => JitterDistribution::Gaussian {
                    sigma: v.parse().map_err(|_| err("bad sigma"))?,
                },
                Some(("uniform", v)) => JitterDistribution::Uniform {
                    halfwidth: v.parse().map_err(|_| err("bad halfwidth"))?,
                },
                _ => return Err(err("unknown distribution")),
            });
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| err("expected key=value"))?;
        match key {
            "lambda" => {
                let components: Vec<&str> = value.split(':').collect();
                if components.len() == 1 {
                    let v: f64 = components[0].parse().map_err(|_| err("bad lambda"))?;
                    lambda = vec![v; dim];
                } else if components.len() == dim {
                    lambda = components
                        .iter()
                        .map(|c| c.parse().map_err(|_| err("bad lambda")))
                        .collect::<Result<_, _>>()?;
                } else {
                    return Err(err("lambda component count"));
                }
            }
            "alpha" => alpha = value.parse().map_err(|_| err("bad alpha"))?,
            "seed" => seed = value.parse().map_err(|_| err("bad seed"))?,
            _ => return Err(err("unknown key")),
        }
    }
    let distribution = distribution.ok_or_else(|| err("missing distribution"))?;
    Ok(PerturbationModel::new(lambda, alpha, distribution, seed)?)
}

fn read_points(path: &Path, dim: usize) -> Result<PointGrid, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut coords = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != dim {
            return Err(CliError::Validation(format!(
                "{}:{}: expected {dim} coordinates, got {}",
                path.display(),
                line_no + 1,
                fields.len()
            )));
        }
        for field in fields {
            let v: f64 = field.parse().map_err(|_| {
                CliError::Validation(format!(
                    "{}:{}: invalid number `{field}`",
                    path.display(),
                    line_no + 1
                ))
            })?;
            coords.push(v);
        }
    }
    if coords.is_empty() {
        return Err(CliError::Validation(format!(
            "{}: no evaluation points",
            path.display()
        )));
    }
    Ok(PointGrid::new(dim, coords)?)
}

fn cmd_reconstruct(args: ReconstructArgs) -> Result<(), CliError> {
    let phi = parse_phi(&args.phi)?;
    let dim = phi.dim();
    let target = parse_target(&args.target, dim)?;
    let grid = read_points(&args.points, dim)?;
    let domain = DomainBox::bounding(dim, &grid)
        .ok_or_else(|| CliError::Validation("no evaluation points".into()))?;
    let cfg = ReconstructionConfig::new(phi, domain, args.scale)?;

    let jitter = args
        .jitter
        .as_deref()
        .map(|spec| parse_jitter(spec, dim))
        .transpose()?;
    let sequence = jitter
        .as_ref()
        .map(|model| model.generate(&cfg.index_box()))
        .transpose()?;

    let mut csv = String::from(match dim {
        1 => "x,f,recon,err\n",
        _ => "x,y,f,recon,err\n",
    });
    let mut reconstructed = Vec::with_capacity(grid.len());
    for x in grid.iter() {
        let fx = target.eval(x);
        let rx = match &sequence {
            Some(eps) => perturbed_reconstruct(&target, &cfg, eps, x)?,
            None => uniform_reconstruct(&target, &cfg, x),
        };
        reconstructed.push(rx);
        let row = match dim {
            1 => format!(
                "{:.16e},{:.16e},{:.16e},{:.16e}\n",
                x[0],
                fx,
                rx,
                (fx - rx).abs()
            ),
            _ => format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                x[0],
                x[1],
                fx,
                rx,
                (fx - rx).abs()
            ),
        };
        csv.push_str(&row);
    }

    let mut num = Vec::with_capacity(grid.len());
    let mut den = Vec::with_capacity(grid.len());
    for (x, rx) in grid.iter().zip(&reconstructed) {
        let fx = target.eval(x);
        num.push((fx - rx) * (fx - rx));
        den.push(fx * fx);
    }
    let denominator = framelet::numeric::pairwise_sum(&den);
    if denominator <= 0.0 {
        return Err(CliError::Validation(
            "relative error undefined: target vanishes on every point".into(),
        ));
    }
    let rel = (framelet::numeric::pairwise_sum(&num) / denominator).sqrt();

    match &args.out {
        Some(path) => {
            std::fs::write(path, csv)?;
            println!("wrote {} rows to {}", grid.len(), path.display());
            println!("relative error: {rel:.6e}");
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(csv.as_bytes())?;
            eprintln!("relative error: {rel:.6e}");
        }
    }
    Ok(())
}

fn parse_scales(spec: &str) -> Result<Vec<u32>, CliError> {
    let err = || {
        CliError::Validation(format!(
            "invalid --scales `{spec}`; expected a..b with a <= b"
        ))
    };
    let (a, b) = spec.split_once("..").ok_or_else(err)?;
    let a: u32 = a.trim().parse().map_err(|_| err())?;
    let b: u32 = b.trim().parse().map_err(|_| err())?;
    if a > b {
        return Err(err());
    }
    Ok((a..=b).collect())
}

fn cmd_experiment(
    args: ExperimentArgs,
    config: &HashMap<String, String>,
    two_dimensional: bool,
) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed, config)?;
    let mut spec = if two_dimensional {
        ExperimentSpec::paper_2d(seed)
    } else {
        ExperimentSpec::paper_1d(seed)
    };
    if args.paper {
        spec.scales = (1..=10).collect();
        spec.trials = 500;
    }
    let scales_flag = args.scales.as_deref().map(parse_scales).transpose()?;
    let scales_config = config_value::<String>(config, "scales")?
        .as_deref()
        .map(parse_scales)
        .transpose()?;
    if let Some(scales) = scales_flag.or(scales_config) {
        spec.scales = scales;
    }
    if let Some(trials) = args.trials.or(config_value(config, "trials")?) {
        spec.trials = trials;
    }
    let out_dir = args
        .out
        .or(config_value::<PathBuf>(config, "out")?)
        .unwrap_or_else(|| PathBuf::from("."));
    spec.output_dir = Some(out_dir.clone());
    if let Some(secs) = args.budget_secs.or(config_value(config, "budget_secs")?) {
        spec.time_budget = Some(Duration::from_secs_f64(secs));
    }

    let report = run_experiment(&spec)?;
    println!(
        "{} seed={} spec-hash={:016x}",
        spec.name, report.seed, report.spec_hash
    );
    println!("N,max_err,mean_err,std_err,trials");
    for row in &report.rows {
        println!(
            "{},{:.6e},{:.6e},{:.6e},{}",
            row.scale, row.max_err, row.mean_err, row.std_err, row.trials
        );
    }
    match report.slope {
        Some(slope) => println!("fitted log2 slope: {slope:.4}"),
        None => println!("fitted log2 slope: undefined"),
    }
    for note in &report.metadata {
        println!("note: {note}");
    }
    println!(
        "wrote {}/{}_report.csv and {}/{}_plot.csv",
        out_dir.display(),
        spec.name,
        out_dir.display(),
        spec.name
    );
    Ok(())
}

fn cmd_rates(args: RatesArgs) -> Result<(), CliError> {
    let params = RateParams::new(args.s, args.sigma, args.alpha, args.d, args.m, 4)?;
    let zeta = decay_exponent(&params);
    let factor = reconstruction_rate_factor(&params, args.scale, &[args.lambda], args.eps_norm);
    let uniform_part = args.m.powf(-(args.sigma - args.s) * args.scale as f64);
    let jitter_part = args.m.powf(-zeta * args.scale as f64);
    println!("zeta: {zeta:.6}");
    println!("uniform decay factor m^(-(sigma-s)N): {uniform_part:.6e}");
    println!("jitter decay factor m^(-zeta N): {jitter_part:.6e}");
    println!(
        "rate factor (lambda={}, eps_norm={}): {:.6e}",
        args.lambda, args.eps_norm, factor.value
    );
    if !factor.scale_precondition_met {
        println!("note: scale precondition N >= (2s+2-alpha)/(2-alpha) log_m(d) not met");
    }
    Ok(())
}
