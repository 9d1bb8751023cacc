//! Jitter sequences `ε_k = λ + θ_k` over finite lattice boxes, and the
//! sequence norms the perturbation error bounds are stated in.
//!
//! Draws are keyed by `(seed, k, coordinate)` through a counter-based
//! stream, so the value at an index does not depend on the box it was
//! generated in. Gaussian jitter uses the deterministic inverse-CDF
//! transform for cross-platform bit-stability.

use std::io::{BufRead, BufReader, Read, Write};

use crate::error::{Error, Result};
use crate::lattice::{IndexBox, MAX_DIM};
use crate::numeric::pairwise_sum;
use crate::rng::{lattice_stream, normal_quantile, unit_open};

/// Distribution of the random component `θ_k` (independently per
/// coordinate).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JitterDistribution {
    /// `θ_k = 0`: pure constant offset.
    Zero,
    /// Centered Gaussian with standard deviation `sigma`.
    Gaussian { sigma: f64 },
    /// Uniform on `[-halfwidth, halfwidth]`.
    Uniform { halfwidth: f64 },
}

impl JitterDistribution {
    fn quantile(&self, u: f64) -> f64 {
        match *self {
            JitterDistribution::Zero => 0.0,
            JitterDistribution::Gaussian { sigma } => sigma * normal_quantile(u),
            JitterDistribution::Uniform { halfwidth } => halfwidth * (2.0 * u - 1.0),
        }
    }
}

/// Generator for jitter sequences `ε_k = offset + θ_k`.
#[derive(Clone, Debug)]
pub struct PerturbationModel {
    offset: Vec<f64>,
    alpha: f64,
    distribution: JitterDistribution,
    seed: u64,
}

impl PerturbationModel {
    /// `offset` is the constant shift λ (one entry per dimension); `alpha`
    /// is the summability exponent used in the sequence norms, required in
    /// `(0, 2)`.
    pub fn new(
        offset: Vec<f64>,
        alpha: f64,
        distribution: JitterDistribution,
        seed: u64,
    ) -> Result<Self> {
        if offset.is_empty() || offset.len() > MAX_DIM {
            return Err(Error::invalid(
                "offset",
                format!("needs 1 or 2 components, got {}", offset.len()),
            ));
        }
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::invalid(
                "alpha",
                format!("must lie in (0, 2), got {alpha}"),
            ));
        }
        Ok(PerturbationModel {
            offset,
            alpha,
            distribution,
            seed,
        })
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn distribution(&self) -> JitterDistribution {
        self.distribution
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Draw `ε_k = offset + θ_k` for every index of the box.
    ///
    /// Deterministic: the value at `k` is a pure function of `(seed, k)`,
    /// independent of the box extent and of iteration order.
    pub fn generate(&self, indices: &IndexBox) -> Result<PerturbationSequence> {
        if indices.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: indices.dim(),
            });
        }
        let dim = self.dim();
        let mut entries = Vec::with_capacity(indices.len());
        for k in indices.iter() {
            let mut eps = [0.0f64; MAX_DIM];
            for (c, slot) in eps.iter_mut().enumerate().take(dim) {
                let u = unit_open(lattice_stream(self.seed, &k[..dim], c));
                *slot = self.offset[c] + self.distribution.quantile(u);
            }
            entries.push(eps);
        }
        Ok(PerturbationSequence {
            indices: indices.clone(),
            entries,
        })
    }
}

/// A jitter sequence over a finite index box, one offset vector per index.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSequence {
    indices: IndexBox,
    entries: Vec<[f64; MAX_DIM]>,
}

impl PerturbationSequence {
    /// Build from explicit entries listed in the box's row-major order.
    pub fn from_entries(indices: IndexBox, entries: Vec<[f64; MAX_DIM]>) -> Result<Self> {
        if entries.len() != indices.len() {
            return Err(Error::invalid(
                "entries",
                format!("box has {} indices, got {}", indices.len(), entries.len()),
            ));
        }
        Ok(PerturbationSequence { indices, entries })
    }

    pub fn index_box(&self) -> &IndexBox {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.indices.dim()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at lattice index `k`, if the box contains it.
    pub fn get(&self, k: [i64; MAX_DIM]) -> Option<&[f64]> {
        let pos = self.indices.position(k)?;
        Some(&self.entries[pos][..self.dim()])
    }

    /// Entry at row-major position `pos`.
    pub fn entry(&self, pos: usize) -> &[f64] {
        &self.entries[pos][..self.dim()]
    }

    pub fn iter(&self) -> impl Iterator<Item = ([i64; MAX_DIM], &[f64])> + '_ {
        self.indices
            .iter()
            .zip(self.entries.iter().map(move |e| &e[..self.dim()]))
    }

    /// Rows of `k_1 [k_2] eps_1 [eps_2]`, whitespace-separated, full
    /// precision.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        for (k, eps) in self.iter() {
            match self.dim() {
                1 => writeln!(out, "{} {:.16e}", k[0], eps[0])?,
                _ => writeln!(out, "{} {} {:.16e} {:.16e}", k[0], k[1], eps[0], eps[1])?,
            }
        }
        Ok(())
    }

    /// Parse rows written by [`write_csv`](Self::write_csv). The indices
    /// must fill a complete box.
    pub fn read_csv(reader: impl Read, source: &str) -> Result<Self> {
        let mut rows: Vec<([i64; MAX_DIM], [f64; MAX_DIM])> = Vec::new();
        let mut dim: Option<usize> = None;
        for (line_no, line) in BufReader::new(reader).lines().enumerate() {
            let line = line?;
            let body = match line.find('#') {
                Some(pos) => &line[..pos],
                None => &line,
            }
            .trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            let row_dim = match fields.len() {
                2 => 1,
                4 => 2,
                n => {
                    return Err(Error::Parse {
                        file: source.to_string(),
                        line: line_no + 1,
                        reason: format!("expected 2 or 4 fields, got {n}"),
                    })
                }
            };
            if *dim.get_or_insert(row_dim) != row_dim {
                return Err(Error::Parse {
                    file: source.to_string(),
                    line: line_no + 1,
                    reason: "mixed dimensions".into(),
                });
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse().map_err(|_| Error::Parse {
                    file: source.to_string(),
                    line: line_no + 1,
                    reason: format!("invalid number `{s}`"),
                })
            };
            let parse_idx = |s: &str| -> Result<i64> {
                s.parse().map_err(|_| Error::Parse {
                    file: source.to_string(),
                    line: line_no + 1,
                    reason: format!("invalid index `{s}`"),
                })
            };
            let mut k = [0i64; MAX_DIM];
            let mut eps = [0.0f64; MAX_DIM];
            k[0] = parse_idx(fields[0])?;
            if row_dim == 1 {
                eps[0] = parse(fields[1])?;
            } else {
                k[1] = parse_idx(fields[1])?;
                eps[0] = parse(fields[2])?;
                eps[1] = parse(fields[3])?;
            }
            rows.push((k, eps));
        }
        let dim = dim.ok_or_else(|| Error::Parse {
            file: source.to_string(),
            line: 0,
            reason: "no data rows".into(),
        })?;
        let mut lo = [i64::MAX; MAX_DIM];
        let mut hi = [i64::MIN; MAX_DIM];
        for (k, _) in &rows {
            for c in 0..dim {
                lo[c] = lo[c].min(k[c]);
                hi[c] = hi[c].max(k[c]);
            }
        }
        let indices = IndexBox::new(dim, lo, hi)?;
        if rows.len() != indices.len() {
            return Err(Error::Parse {
                file: source.to_string(),
                line: 0,
                reason: format!(
                    "{} rows do not fill the bounding box of {} indices",
                    rows.len(),
                    indices.len()
                ),
            });
        }
        let mut entries = vec![[0.0f64; MAX_DIM]; indices.len()];
        let mut seen = vec![false; indices.len()];
        for (k, eps) in rows {
            let pos = indices.position(k).expect("inside bounding box");
            if seen[pos] {
                return Err(Error::Parse {
                    file: source.to_string(),
                    line: 0,
                    reason: format!("duplicate index {:?}", &k[..dim]),
                });
            }
            seen[pos] = true;
            entries[pos] = eps;
        }
        Ok(PerturbationSequence { indices, entries })
    }
}

/// `(Σ_k ‖ε_k - shift‖₂^α)^{1/α}` over the finite box.
pub fn lalpha_norm(seq: &PerturbationSequence, shift: &[f64], alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::invalid(
            "alpha",
            format!("must be > 0, got {alpha}"),
        ));
    }
    if shift.len() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: seq.dim(),
            got: shift.len(),
        });
    }
    let total = shifted_power_sum(seq, shift, alpha);
    Ok(total.powf(1.0 / alpha))
}

/// `max{ ‖ε - λ‖_{ℓ²}, ‖ε - λ‖_{ℓ^α}^{α/2} }`; the second term equals
/// `(Σ ‖ε_k - λ‖^α)^{1/2}`.
pub fn norm_max(seq: &PerturbationSequence, lambda: &[f64], alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::invalid(
            "alpha",
            format!("must lie in (0, 2), got {alpha}"),
        ));
    }
    if lambda.len() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: seq.dim(),
            got: lambda.len(),
        });
    }
    let l2 = shifted_power_sum(seq, lambda, 2.0).sqrt();
    let frac = shifted_power_sum(seq, lambda, alpha).sqrt();
    Ok(l2.max(frac))
}

fn shifted_power_sum(seq: &PerturbationSequence, shift: &[f64], alpha: f64) -> f64 {
    let dim = seq.dim();
    let terms: Vec<f64> = seq
        .entries
        .iter()
        .map(|eps| {
            let mut sq = 0.0;
            for c in 0..dim {
                let d = eps[c] - shift[c];
                sq += d * d;
            }
            if sq == 0.0 {
                0.0
            } else {
                sq.sqrt().powf(alpha)
            }
        })
        .collect();
    pairwise_sum(&terms)
}
