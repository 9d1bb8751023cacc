//! Single-level sampling-synthesis operators and their error functionals.
//!
//! The uniform operator sends a target `f` to
//! `Σ_k f(2^{-N} k) φ(2^N x - k)`; the perturbed variant samples at the
//! jittered points `2^{-N}(k + ε_k)` instead while keeping the synthesis
//! atoms on the uniform lattice. Sums are over the finitely many indices
//! whose atom support touches the point, in ascending index order.

use std::sync::Arc;

use rayon::prelude::*;

use crate::bspline::RefinableFunction;
use crate::error::{Error, Result};
use crate::jitter::{PerturbationModel, PerturbationSequence};
use crate::lattice::{DomainBox, IndexBox, PointGrid, MAX_DIM};
use crate::numeric::{max_of, pairwise_sum};
use crate::rng::trial_seed;
use crate::sobolev::SpectralFunction;

/// A reconstruction target: a pointwise evaluator plus optional metadata.
#[derive(Clone)]
pub struct TargetFunction {
    eval: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    dim: usize,
    /// Optional Fourier-domain evaluator.
    pub fourier: Option<SpectralFunction>,
    /// Declared Sobolev smoothness; metadata only.
    pub sobolev_hint: f64,
}

impl std::fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TargetFunction")
            .field("dim", &self.dim)
            .field("sobolev_hint", &self.sobolev_hint)
            .finish()
    }
}

impl TargetFunction {
    pub fn new(
        dim: usize,
        sobolev_hint: f64,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        TargetFunction {
            eval: Arc::new(eval),
            dim,
            fourier: None,
            sobolev_hint,
        }
    }

    pub fn with_fourier(mut self, spectrum: SpectralFunction) -> Self {
        self.fourier = Some(spectrum);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        (self.eval)(x)
    }
}

/// Scale, domain, and generator of a reconstruction; the dilation factor is
/// 2 per coordinate.
#[derive(Clone, Debug)]
pub struct ReconstructionConfig {
    phi: RefinableFunction,
    domain: DomainBox,
    scale: u32,
}

impl ReconstructionConfig {
    pub fn new(phi: RefinableFunction, domain: DomainBox, scale: u32) -> Result<Self> {
        if phi.dim() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: phi.dim(),
                got: domain.dim(),
            });
        }
        if scale > 40 {
            return Err(Error::invalid(
                "scale",
                format!("2^{scale} overflows the lattice index range"),
            ));
        }
        Ok(ReconstructionConfig { phi, domain, scale })
    }

    pub fn phi(&self) -> &RefinableFunction {
        &self.phi
    }

    pub fn domain(&self) -> &DomainBox {
        &self.domain
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn dim(&self) -> usize {
        self.phi.dim()
    }

    /// `2^N`, the sampling rate per coordinate.
    pub fn dilation_power(&self) -> f64 {
        2f64.powi(self.scale as i32)
    }

    /// All indices whose atom `φ(2^N · - k)` can meet the domain: per
    /// coordinate `2^N lo - order ≤ k ≤ 2^N hi`. Support-exact, so every
    /// nonzero term of the synthesis sum on the domain is covered.
    pub fn index_box(&self) -> IndexBox {
        let dim = self.dim();
        let rate = self.dilation_power();
        let mut lo = [0i64; MAX_DIM];
        let mut hi = [0i64; MAX_DIM];
        if self.domain.is_empty() {
            lo[0] = 1; // canonical empty box
            hi[0] = 0;
            return IndexBox::new(dim, lo, hi).expect("dim validated");
        }
        for c in 0..dim {
            let order = self.phi.order(c) as f64;
            lo[c] = (rate * self.domain.lo()[c] - order).ceil() as i64;
            hi[c] = (rate * self.domain.hi()[c]).floor() as i64;
        }
        IndexBox::new(dim, lo, hi).expect("dim validated")
    }

    /// Per-coordinate range of indices with `φ(2^N x - k) ≠ 0`:
    /// `2^N x - order ≤ k < 2^N x`.
    fn contributing_range(&self, c: usize, x: f64) -> (i64, i64) {
        let y = self.dilation_power() * x;
        let order = self.phi.order(c) as f64;
        let lo = (y - order).ceil() as i64;
        let hi = (y).ceil() as i64 - 1;
        (lo, hi)
    }
}

/// `Σ_k f(2^{-N} k) φ(2^N x - k)` over the contributing indices.
pub fn uniform_reconstruct(f: &TargetFunction, cfg: &ReconstructionConfig, x: &[f64]) -> f64 {
    let step = 1.0 / cfg.dilation_power();
    reconstruct_with(cfg, x, |k| {
        let mut sample_point = [0.0f64; MAX_DIM];
        for c in 0..cfg.dim() {
            sample_point[c] = step * k[c] as f64;
        }
        Ok(f.eval(&sample_point[..cfg.dim()]))
    })
    .expect("uniform sampling cannot fail")
}

/// `Σ_k f(2^{-N}(k + ε_k)) φ(2^N x - k)`; requires an `ε` entry for every
/// contributing index.
pub fn perturbed_reconstruct(
    f: &TargetFunction,
    cfg: &ReconstructionConfig,
    eps: &PerturbationSequence,
    x: &[f64],
) -> Result<f64> {
    let step = 1.0 / cfg.dilation_power();
    reconstruct_with(cfg, x, |k| {
        let jitter = eps
            .get(k)
            .ok_or(Error::MissingPerturbation { index: k })?;
        let mut sample_point = [0.0f64; MAX_DIM];
        for c in 0..cfg.dim() {
            sample_point[c] = step * (k[c] as f64 + jitter[c]);
        }
        Ok(f.eval(&sample_point[..cfg.dim()]))
    })
}

/// Shared synthesis loop: ascending index order, `sample(k) * φ(2^N x - k)`.
fn reconstruct_with(
    cfg: &ReconstructionConfig,
    x: &[f64],
    mut sample: impl FnMut([i64; MAX_DIM]) -> Result<f64>,
) -> Result<f64> {
    assert_eq!(x.len(), cfg.dim(), "evaluation point has wrong dimension");
    let rate = cfg.dilation_power();
    let mut acc = 0.0;
    match cfg.dim() {
        1 => {
            let (lo, hi) = cfg.contributing_range(0, x[0]);
            let y = rate * x[0];
            for k in lo..=hi {
                let weight = cfg.phi.eval(&[y - k as f64]);
                acc += sample([k, 0])? * weight;
            }
        }
        _ => {
            let (lo1, hi1) = cfg.contributing_range(0, x[0]);
            let (lo2, hi2) = cfg.contributing_range(1, x[1]);
            let y1 = rate * x[0];
            let y2 = rate * x[1];
            for k1 in lo1..=hi1 {
                for k2 in lo2..=hi2 {
                    let weight = cfg.phi.eval(&[y1 - k1 as f64, y2 - k2 as f64]);
                    acc += sample([k1, k2])? * weight;
                }
            }
        }
    }
    Ok(acc)
}

/// Relative L² error `sqrt(Σ_i (f(x_i) - r(x_i))² / Σ_j f(x_j)²)` over the
/// grid.
pub fn relative_error(
    f: &TargetFunction,
    reconstruction: impl Fn(&[f64]) -> f64,
    grid: &PointGrid,
) -> Result<f64> {
    let mut num = Vec::with_capacity(grid.len());
    let mut den = Vec::with_capacity(grid.len());
    for x in grid.iter() {
        let fx = f.eval(x);
        let diff = fx - reconstruction(x);
        num.push(diff * diff);
        den.push(fx * fx);
    }
    let denominator = pairwise_sum(&den);
    if denominator <= 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok((pairwise_sum(&num) / denominator).sqrt())
}

/// Per-trial relative errors of a jittered reconstruction, with summary
/// statistics.
#[derive(Clone, Debug)]
pub struct TrialReport {
    /// Relative error of each trial, in trial order.
    pub errors: Vec<f64>,
    pub max: f64,
    pub mean: f64,
    pub stddev: f64,
    pub median: f64,
}

impl TrialReport {
    fn from_errors(errors: Vec<f64>) -> Self {
        let n = errors.len() as f64;
        let mean = pairwise_sum(&errors) / n;
        let centered: Vec<f64> = errors.iter().map(|e| (e - mean) * (e - mean)).collect();
        let stddev = (pairwise_sum(&centered) / n).sqrt();
        let mut sorted = errors.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("errors are finite"));
        let median = if sorted.len() % 2 == 1 {
            sorted[sorted.len() / 2]
        } else {
            0.5 * (sorted[sorted.len() / 2 - 1] + sorted[sorted.len() / 2])
        };
        TrialReport {
            max: max_of(&errors),
            mean,
            stddev,
            median,
            errors,
        }
    }
}

/// Run `trials` independent jittered reconstructions and collect the
/// relative error of each over `grid`.
///
/// Trial `t` draws its jitter from the seed `trial_seed(model.seed(), t)`,
/// so the whole report is a pure function of `(f, cfg, model, trials,
/// grid)`. Trials run in parallel; every reduction is ordered.
pub fn run_trials(
    f: &TargetFunction,
    cfg: &ReconstructionConfig,
    model: &PerturbationModel,
    trials: u32,
    grid: &PointGrid,
) -> Result<TrialReport> {
    if trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    for (what, d) in [
        ("target", f.dim()),
        ("model", model.dim()),
        ("grid", grid.dim()),
    ] {
        if d != cfg.dim() {
            return Err(Error::invalid(
                "dim",
                format!("{what} has dimension {d}, config has {}", cfg.dim()),
            ));
        }
    }

    let reference: Vec<f64> = grid
        .iter()
        .map(|x| {
            let v = f.eval(x);
            v * v
        })
        .collect();
    let denominator = pairwise_sum(&reference);
    if denominator <= 0.0 {
        return Err(Error::ZeroReference);
    }

    let indices = cfg.index_box();
    let errors: Result<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let seeded = model.clone().with_seed(trial_seed(model.seed(), trial as u64));
            let eps = seeded.generate(&indices)?;
            let samples = sample_values(f, cfg, &indices, &eps);
            let squares: Vec<f64> = grid
                .iter()
                .map(|x| {
                    let recon = reconstruct_from_samples(cfg, &indices, &samples, x);
                    let diff = f.eval(x) - recon;
                    diff * diff
                })
                .collect();
            Ok((pairwise_sum(&squares) / denominator).sqrt())
        })
        .collect();
    Ok(TrialReport::from_errors(errors?))
}

/// Evaluate `f` once per lattice index at the jittered sample points.
fn sample_values(
    f: &TargetFunction,
    cfg: &ReconstructionConfig,
    indices: &IndexBox,
    eps: &PerturbationSequence,
) -> Vec<f64> {
    let step = 1.0 / cfg.dilation_power();
    let dim = cfg.dim();
    indices
        .iter()
        .map(|k| {
            let jitter = eps.get(k).expect("sequence generated on this box");
            let mut sample_point = [0.0f64; MAX_DIM];
            for c in 0..dim {
                sample_point[c] = step * (k[c] as f64 + jitter[c]);
            }
            f.eval(&sample_point[..dim])
        })
        .collect()
}

/// Synthesis from cached sample values; identical arithmetic and index
/// order to [`perturbed_reconstruct`], so results match it bit for bit.
fn reconstruct_from_samples(
    cfg: &ReconstructionConfig,
    indices: &IndexBox,
    samples: &[f64],
    x: &[f64],
) -> f64 {
    let rate = cfg.dilation_power();
    let mut acc = 0.0;
    match cfg.dim() {
        1 => {
            let (lo, hi) = cfg.contributing_range(0, x[0]);
            let y = rate * x[0];
            for k in lo..=hi {
                let weight = cfg.phi.eval(&[y - k as f64]);
                let pos = indices.position([k, 0]).expect("grid point inside domain");
                acc += samples[pos] * weight;
            }
        }
        _ => {
            let (lo1, hi1) = cfg.contributing_range(0, x[0]);
            let (lo2, hi2) = cfg.contributing_range(1, x[1]);
            let y1 = rate * x[0];
            let y2 = rate * x[1];
            for k1 in lo1..=hi1 {
                for k2 in lo2..=hi2 {
                    let weight = cfg.phi.eval(&[y1 - k1 as f64, y2 - k2 as f64]);
                    let pos = indices
                        .position([k1, k2])
                        .expect("grid point inside domain");
                    acc += samples[pos] * weight;
                }
            }
        }
    }
    acc
}
