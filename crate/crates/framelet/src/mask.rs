//! Trigonometric (Laurent) polynomial algebra for refinement and wavelet
//! mask symbols.
//!
//! A mask symbol is the 2π-periodic polynomial `p(ξ) = Σ_k a[k] e^{i k·ξ}`
//! with finitely many nonzero coefficients on `Z^d`, `d ∈ {1, 2}`. This
//! module evaluates symbols and their exact derivatives, counts sum rules
//! and vanishing moments as zero orders, and checks the mixed-extension
//! perfect-reconstruction identities for a candidate dual mask family.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufReader, Read};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::MAX_DIM;

/// Search cap for zero orders; masks in scope never reach it.
pub const ZERO_ORDER_CAP: u32 = 12;

/// Finitely supported coefficient sequence on `Z^d` representing the symbol
/// `p(ξ) = Σ_k a[k] e^{i k·ξ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPolynomial {
    dim: usize,
    coeffs: BTreeMap<[i64; MAX_DIM], Complex64>,
}

impl TrigPolynomial {
    /// Build from `(index, coefficient)` pairs. Duplicate indices accumulate.
    pub fn from_coeffs<I>(dim: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([i64; MAX_DIM], Complex64)>,
    {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::invalid("dim", format!("must be 1 or 2, got {dim}")));
        }
        let mut map = BTreeMap::new();
        for (mut k, c) in coeffs {
            for comp in k.iter_mut().skip(dim) {
                *comp = 0;
            }
            *map.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| c.norm_sqr() != 0.0);
        Ok(TrigPolynomial { dim, coeffs: map })
    }

    /// 1D symbol from real coefficients at the given indices.
    pub fn from_real_1d(coeffs: &[(i64, f64)]) -> Self {
        TrigPolynomial::from_coeffs(
            1,
            coeffs
                .iter()
                .map(|&(k, c)| ([k, 0], Complex64::new(c, 0.0))),
        )
        .expect("dim 1 is valid")
    }

    /// The constant symbol `p ≡ c`.
    pub fn constant(dim: usize, c: Complex64) -> Result<Self> {
        TrigPolynomial::from_coeffs(dim, [([0i64; MAX_DIM], c)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&[i64; MAX_DIM], &Complex64)> {
        self.coeffs.iter()
    }

    pub fn num_coeffs(&self) -> usize {
        self.coeffs.len()
    }

    /// Evaluate `Σ_k a[k] e^{i k·ξ}`.
    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        assert_eq!(xi.len(), self.dim, "evaluation point has wrong dimension");
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.coeffs {
            let mut phase = 0.0;
            for (c_idx, &x) in xi.iter().enumerate() {
                phase += k[c_idx] as f64 * x;
            }
            acc += c * Complex64::new(phase.cos(), phase.sin());
        }
        acc
    }

    /// Exact partial derivative `∂^α p(ξ) = Σ_k a[k] (i k)^α e^{i k·ξ}`.
    pub fn derivative(&self, alpha: &[u32], xi: &[f64]) -> Complex64 {
        assert_eq!(alpha.len(), self.dim, "derivative order has wrong dimension");
        assert_eq!(xi.len(), self.dim, "evaluation point has wrong dimension");
        let total: u32 = alpha.iter().sum();
        let i_pow = Complex64::i().powu(total);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.coeffs {
            let mut weight = 1.0;
            let mut phase = 0.0;
            for c_idx in 0..self.dim {
                weight *= (k[c_idx] as f64).powi(alpha[c_idx] as i32);
                phase += k[c_idx] as f64 * xi[c_idx];
            }
            acc += c * weight * Complex64::new(phase.cos(), phase.sin());
        }
        i_pow * acc
    }

    /// Pointwise sum of two symbols of equal dimension.
    pub fn add(&self, other: &TrigPolynomial) -> Result<TrigPolynomial> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        TrigPolynomial::from_coeffs(
            self.dim,
            self.coeffs
                .iter()
                .chain(other.coeffs.iter())
                .map(|(&k, &c)| (k, c)),
        )
    }

    pub fn scale(&self, factor: Complex64) -> TrigPolynomial {
        let coeffs = self.coeffs.iter().map(|(&k, &c)| (k, c * factor)).collect();
        TrigPolynomial {
            dim: self.dim,
            coeffs,
        }
    }

    /// Shift every index by `t`; multiplies the symbol by `e^{i t·ξ}`.
    pub fn translate(&self, t: [i64; MAX_DIM]) -> TrigPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, &c)| {
                let mut kk = k;
                for c_idx in 0..self.dim {
                    kk[c_idx] += t[c_idx];
                }
                (kk, c)
            })
            .collect();
        TrigPolynomial {
            dim: self.dim,
            coeffs,
        }
    }

    /// Separable 2D symbol `p(ξ1, ξ2) = p1(ξ1) p2(ξ2)` from two 1D symbols.
    pub fn tensor(p1: &TrigPolynomial, p2: &TrigPolynomial) -> Result<TrigPolynomial> {
        for p in [p1, p2] {
            if p.dim != 1 {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    got: p.dim,
                });
            }
        }
        let mut pairs = Vec::with_capacity(p1.coeffs.len() * p2.coeffs.len());
        for (k1, c1) in &p1.coeffs {
            for (k2, c2) in &p2.coeffs {
                pairs.push(([k1[0], k2[0]], c1 * c2));
            }
        }
        TrigPolynomial::from_coeffs(2, pairs)
    }
}

/// Lowpass mask of the cardinal B-spline of order `n`:
/// `((1 + e^{-iξ})/2)^n`, coefficients `binom(n, j)/2^n` at `k = -j`.
pub fn bspline_mask(order: u32) -> TrigPolynomial {
    assert!(order >= 1, "B-spline order must be at least 1");
    let scale = 0.5f64.powi(order as i32);
    let coeffs = (0..=order).map(|j| (-(j as i64), binomial(order, j) * scale));
    TrigPolynomial::from_real_1d(&coeffs.collect::<Vec<_>>())
}

/// The order-`r` difference symbol `((1 - e^{-iξ})/2)^r`; it has a zero of
/// exact order `r` at the origin.
pub fn difference_mask(order: u32) -> TrigPolynomial {
    assert!(order >= 1, "difference order must be at least 1");
    let scale = 0.5f64.powi(order as i32);
    let coeffs = (0..=order).map(|j| {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        (-(j as i64), sign * binomial(order, j) * scale)
    });
    TrigPolynomial::from_real_1d(&coeffs.collect::<Vec<_>>())
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

/// Representatives of the cosets `[(M^T)^{-1} Z^d] / Z^d` for `M = 2I`;
/// `γ_0 = 0` first, then the nonzero shifts with components in `{0, π}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetSet {
    dim: usize,
    gammas: Vec<[f64; MAX_DIM]>,
}

impl CosetSet {
    /// Coset representatives for dyadic dilation in dimension `dim`.
    pub fn dyadic(dim: usize) -> Result<Self> {
        match dim {
            1 => Ok(CosetSet {
                dim,
                gammas: vec![[0.0, 0.0], [std::f64::consts::PI, 0.0]],
            }),
            2 => {
                let pi = std::f64::consts::PI;
                Ok(CosetSet {
                    dim,
                    gammas: vec![[0.0, 0.0], [pi, 0.0], [0.0, pi], [pi, pi]],
                })
            }
            _ => Err(Error::invalid("dim", format!("must be 1 or 2, got {dim}"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Representative `γ_j` as a `dim`-length slice.
    pub fn gamma(&self, j: usize) -> &[f64] {
        &self.gammas[j][..self.dim]
    }

    /// The nonzero representatives `γ_1, …`.
    pub fn nonzero(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.gammas[1..].iter().map(move |g| &g[..self.dim])
    }
}

/// Order of the zero of `p` at `ξ0`: the largest `r` such that every partial
/// derivative of total order below `r` vanishes at `ξ0` within `tol`.
///
/// Derivatives are computed exactly from the coefficients, never by finite
/// differences. The search caps at [`ZERO_ORDER_CAP`].
pub fn zero_order_at(p: &TrigPolynomial, xi0: &[f64], tol: f64) -> Result<u32> {
    if tol <= 0.0 {
        return Err(Error::invalid("tol", format!("must be > 0, got {tol}")));
    }
    for order in 0..ZERO_ORDER_CAP {
        for alpha in multi_indices(p.dim(), order) {
            if p.derivative(&alpha, xi0).norm() > tol {
                return Ok(order);
            }
        }
    }
    Ok(ZERO_ORDER_CAP)
}

/// All multi-indices of total order `order` in dimension `dim`.
fn multi_indices(dim: usize, order: u32) -> Vec<Vec<u32>> {
    match dim {
        1 => vec![vec![order]],
        2 => (0..=order).map(|j| vec![order - j, j]).collect(),
        _ => unreachable!("dimension is validated at construction"),
    }
}

/// Number of sum rules of the refinement mask `a`: the minimum over the
/// nonzero cosets `γ_j` of the zero order of `a` at `γ_j`.
///
/// Signals [`Error::NotARefinementMask`] when `a(0)` strays from 1 by more
/// than `tol`.
pub fn sum_rules(a: &TrigPolynomial, cosets: &CosetSet, tol: f64) -> Result<u32> {
    if tol <= 0.0 {
        return Err(Error::invalid("tol", format!("must be > 0, got {tol}")));
    }
    if cosets.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: cosets.dim(),
        });
    }
    let origin = vec![0.0; a.dim()];
    let at_zero = a.eval(&origin);
    if (at_zero - Complex64::new(1.0, 0.0)).norm() > tol {
        return Err(Error::NotARefinementMask {
            value: at_zero.norm(),
            tol,
        });
    }
    let mut min_order = ZERO_ORDER_CAP;
    for gamma in cosets.nonzero() {
        min_order = min_order.min(zero_order_at(a, gamma, tol)?);
    }
    Ok(min_order)
}

/// Vanishing-moment count of a wavelet with highpass symbol `b`: since
/// `ψ̂(2ξ) = b(ξ) φ̂(ξ)` and `φ̂(0) = 1`, this is the zero order of `b` at 0.
pub fn vanishing_moments(b: &TrigPolynomial, tol: f64) -> Result<u32> {
    let origin = vec![0.0; b.dim()];
    zero_order_at(b, &origin, tol)
}

/// Residuals of the mixed-extension perfect-reconstruction identities on a
/// uniform grid over `(-π, π]^d`.
#[derive(Clone, Debug)]
pub struct MepReport {
    /// `sup |Σ_ℓ conj(bℓ) b̃ℓ + conj(a) ã − 1|`.
    pub lowpass_residual: f64,
    /// Per nonzero coset: `sup |Σ_ℓ conj(bℓ(·+γ)) b̃ℓ(·) + conj(a(·+γ)) ã(·+γ)|`
    /// — the dual lowpass factor shifted along with the primal one.
    pub coset_residuals_dual_shifted: Vec<f64>,
    /// Per nonzero coset: `sup |Σ_ℓ conj(bℓ(·+γ)) b̃ℓ(·) + conj(a(·+γ)) ã(·)|`
    /// — only the conjugated primal symbols shifted. This is the form the
    /// standard dual-mask cancellation satisfies (the Haar pair makes the
    /// cross terms cancel here, not in the shifted-dual variant).
    pub coset_residuals_dual_unshifted: Vec<f64>,
}

impl MepReport {
    pub fn max_dual_shifted(&self) -> f64 {
        crate::numeric::max_of(&self.coset_residuals_dual_shifted)
    }

    pub fn max_dual_unshifted(&self) -> f64 {
        crate::numeric::max_of(&self.coset_residuals_dual_unshifted)
    }

    /// Perfect-reconstruction check: lowpass identity plus the coset
    /// identities with the dual lowpass symbol left in place.
    pub fn passes(&self, tol: f64) -> bool {
        self.lowpass_residual < tol && self.max_dual_unshifted() < tol
    }
}

/// Evaluate the duality identities for the mask family
/// `(a, ã, {bℓ}, {b̃ℓ})` on a uniform grid with `grid_points` nodes per
/// dimension over `(-π, π]^d` and report the residual suprema.
///
/// Both readings of the coset identity are reported; see [`MepReport`].
pub fn verify_mep(
    a: &TrigPolynomial,
    a_dual: &TrigPolynomial,
    bs: &[TrigPolynomial],
    bs_dual: &[TrigPolynomial],
    cosets: &CosetSet,
    grid_points: usize,
) -> Result<MepReport> {
    if bs.len() != bs_dual.len() || bs.is_empty() {
        return Err(Error::MaskListMismatch {
            primal: bs.len(),
            dual: bs_dual.len(),
        });
    }
    if grid_points < 16 {
        return Err(Error::invalid(
            "grid_points",
            format!("must be at least 16, got {grid_points}"),
        ));
    }
    let dim = a.dim();
    for p in std::iter::once(a_dual).chain(bs).chain(bs_dual) {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
    }
    if cosets.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: cosets.dim(),
        });
    }

    let n_cosets = cosets.len() - 1;
    let mut report = MepReport {
        lowpass_residual: 0.0,
        coset_residuals_dual_shifted: vec![0.0; n_cosets],
        coset_residuals_dual_unshifted: vec![0.0; n_cosets],
    };

    let mut xi = vec![0.0f64; dim];
    let mut shifted = vec![0.0f64; dim];
    let total = grid_points.pow(dim as u32);
    for flat in 0..total {
        let mut rem = flat;
        for c in (0..dim).rev() {
            let i = rem % grid_points;
            rem /= grid_points;
            xi[c] = torus_node(i, grid_points);
        }

        let a_here = a.eval(&xi);
        let ad_here = a_dual.eval(&xi);
        let mut low = a_here.conj() * ad_here - Complex64::new(1.0, 0.0);
        for (b, bd) in bs.iter().zip(bs_dual) {
            low += b.eval(&xi).conj() * bd.eval(&xi);
        }
        report.lowpass_residual = report.lowpass_residual.max(low.norm());

        for (j, gamma) in cosets.nonzero().enumerate() {
            for c in 0..dim {
                shifted[c] = xi[c] + gamma[c];
            }
            let a_shift = a.eval(&shifted).conj();
            let mut cross = Complex64::new(0.0, 0.0);
            for (b, bd) in bs.iter().zip(bs_dual) {
                cross += b.eval(&shifted).conj() * bd.eval(&xi);
            }
            let with_dual_shifted = cross + a_shift * a_dual.eval(&shifted);
            let with_dual_in_place = cross + a_shift * ad_here;
            report.coset_residuals_dual_shifted[j] =
                report.coset_residuals_dual_shifted[j].max(with_dual_shifted.norm());
            report.coset_residuals_dual_unshifted[j] =
                report.coset_residuals_dual_unshifted[j].max(with_dual_in_place.norm());
        }
    }
    Ok(report)
}

/// Node `i` of the uniform `n`-point grid over `(-π, π]`.
pub(crate) fn torus_node(i: usize, n: usize) -> f64 {
    let pi = std::f64::consts::PI;
    -pi + 2.0 * pi * (i + 1) as f64 / n as f64
}

/// Parse masks from text: one coefficient per line, `k1 [k2] re im`
/// whitespace-separated, `#` comments; blank lines separate masks.
pub fn parse_masks(text: &str, source: &str) -> Result<Vec<TrigPolynomial>> {
    let mut masks = Vec::new();
    let mut block: Vec<([i64; MAX_DIM], Complex64)> = Vec::new();
    let mut block_dim: Option<usize> = None;

    let flush = |block: &mut Vec<([i64; MAX_DIM], Complex64)>,
                 block_dim: &mut Option<usize>,
                 masks: &mut Vec<TrigPolynomial>|
     -> Result<()> {
        if let Some(dim) = block_dim.take() {
            masks.push(TrigPolynomial::from_coeffs(dim, block.drain(..))?);
        }
        Ok(())
    };

    for (line_no, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            // Blank lines separate masks; comment-only lines do not.
            if raw.trim().is_empty() {
                flush(&mut block, &mut block_dim, &mut masks)?;
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let dim = match fields.len() {
            3 => 1,
            4 => 2,
            n => {
                return Err(Error::Parse {
                    file: source.to_string(),
                    line: line_no + 1,
                    reason: format!("expected 3 or 4 fields (k1 [k2] re im), got {n}"),
                })
            }
        };
        if let Some(prev) = block_dim {
            if prev != dim {
                return Err(Error::Parse {
                    file: source.to_string(),
                    line: line_no + 1,
                    reason: format!("mixed dimensions within one mask ({prev} vs {dim})"),
                });
            }
        }
        block_dim = Some(dim);
        let parse_int = |s: &str| -> Result<i64> {
            s.parse().map_err(|_| Error::Parse {
                file: source.to_string(),
                line: line_no + 1,
                reason: format!("invalid integer index `{s}`"),
            })
        };
        let parse_float = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::Parse {
                file: source.to_string(),
                line: line_no + 1,
                reason: format!("invalid number `{s}`"),
            })
        };
        let mut k = [0i64; MAX_DIM];
        k[0] = parse_int(fields[0])?;
        if dim == 2 {
            k[1] = parse_int(fields[1])?;
        }
        let re = parse_float(fields[dim])?;
        let im = parse_float(fields[dim + 1])?;
        block.push((k, Complex64::new(re, im)));
    }
    flush(&mut block, &mut block_dim, &mut masks)?;
    Ok(masks)
}

/// Read all masks from a file; see [`parse_masks`] for the format.
pub fn read_masks(path: &Path) -> Result<Vec<TrigPolynomial>> {
    let mut text = String::new();
    BufReader::new(std::fs::File::open(path)?).read_to_string(&mut text)?;
    parse_masks(&text, &path.display().to_string())
}

/// Render one mask in the file format, coefficients in index order.
pub fn format_mask(p: &TrigPolynomial) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs() {
        if p.dim() == 1 {
            writeln!(out, "{} {:.17e} {:.17e}", k[0], c.re, c.im).unwrap();
        } else {
            writeln!(out, "{} {} {:.17e} {:.17e}", k[0], k[1], c.re, c.im).unwrap();
        }
    }
    out
}

/// Read masks from any reader; see [`parse_masks`] for the format.
pub fn read_masks_from(reader: impl Read, source: &str) -> Result<Vec<TrigPolynomial>> {
    let mut text = String::new();
    BufReader::new(reader).read_to_string(&mut text)?;
    parse_masks(&text, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn haar_lowpass() -> TrigPolynomial {
        bspline_mask(1)
    }

    fn haar_highpass() -> TrigPolynomial {
        difference_mask(1)
    }

    #[test]
    fn eval_haar_examples() {
        let a = haar_lowpass();
        assert_abs_diff_eq!(a.eval(&[0.0]).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.eval(&[0.0]).im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.eval(&[std::f64::consts::PI]).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn bspline_mask_coefficients() {
        let a1 = bspline_mask(1);
        assert_eq!(a1.num_coeffs(), 2);
        for (k, c) in a1.coeffs() {
            assert!(k[0] == 0 || k[0] == -1);
            assert_abs_diff_eq!(c.re, 0.5, epsilon = 1e-15);
        }

        let a3 = bspline_mask(3);
        let expect = [(0i64, 0.125), (-1, 0.375), (-2, 0.375), (-3, 0.125)];
        assert_eq!(a3.num_coeffs(), 4);
        for (k, want) in expect {
            let c = a3
                .coeffs()
                .find(|(idx, _)| idx[0] == k)
                .map(|(_, c)| *c)
                .unwrap();
            assert_abs_diff_eq!(c.re, want, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(bspline_mask(2).eval(&[0.0]).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn b3_mask_has_triple_zero_at_pi() {
        let a3 = bspline_mask(3);
        assert_abs_diff_eq!(
            a3.eval(&[std::f64::consts::PI]).norm(),
            0.0,
            epsilon = 1e-15
        );
        assert_eq!(
            zero_order_at(&a3, &[std::f64::consts::PI], 1e-8).unwrap(),
            3
        );
    }

    #[test]
    fn zero_order_examples() {
        let a1 = haar_lowpass();
        assert_eq!(zero_order_at(&a1, &[0.0], 1e-8).unwrap(), 0);
        let b = haar_highpass();
        assert_eq!(zero_order_at(&b, &[0.0], 1e-8).unwrap(), 1);
    }

    #[test]
    fn zero_order_rejects_bad_tol() {
        let a = haar_lowpass();
        assert!(zero_order_at(&a, &[0.0], 0.0).is_err());
        assert!(zero_order_at(&a, &[0.0], -1.0).is_err());
    }

    #[test]
    fn zero_order_caps_for_zero_polynomial() {
        let z = TrigPolynomial::from_coeffs(1, []).unwrap();
        assert_eq!(zero_order_at(&z, &[0.0], 1e-8).unwrap(), ZERO_ORDER_CAP);
    }

    #[test]
    fn sum_rules_examples() {
        let cosets = CosetSet::dyadic(1).unwrap();
        assert_eq!(sum_rules(&bspline_mask(3), &cosets, 1e-8).unwrap(), 3);
        assert_eq!(sum_rules(&bspline_mask(1), &cosets, 1e-8).unwrap(), 1);

        let cosets2 = CosetSet::dyadic(2).unwrap();
        let tensor3 = TrigPolynomial::tensor(&bspline_mask(3), &bspline_mask(3)).unwrap();
        assert_eq!(sum_rules(&tensor3, &cosets2, 1e-8).unwrap(), 3);
    }

    #[test]
    fn sum_rules_rejects_non_mask() {
        let cosets = CosetSet::dyadic(1).unwrap();
        let b = haar_highpass(); // value 0 at origin
        assert!(matches!(
            sum_rules(&b, &cosets, 1e-8),
            Err(Error::NotARefinementMask { .. })
        ));
    }

    #[test]
    fn vanishing_moment_examples() {
        assert_eq!(vanishing_moments(&difference_mask(1), 1e-8).unwrap(), 1);
        assert_eq!(vanishing_moments(&difference_mask(2), 1e-8).unwrap(), 2);
        let one = TrigPolynomial::constant(1, Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!(vanishing_moments(&one, 1e-8).unwrap(), 0);
    }

    #[test]
    fn mep_haar_pair_passes_in_place_form() {
        let a = haar_lowpass();
        let b = haar_highpass();
        let cosets = CosetSet::dyadic(1).unwrap();
        for grid in [16, 64, 256, 500] {
            let report = verify_mep(
                &a,
                &a,
                std::slice::from_ref(&b),
                std::slice::from_ref(&b),
                &cosets,
                grid,
            )
            .unwrap();
            assert!(report.lowpass_residual < 1e-12, "grid {grid}");
            assert!(report.max_dual_unshifted() < 1e-12, "grid {grid}");
            // The variant that also shifts the dual lowpass factor does not
            // cancel for the Haar pair: |cross + |a(ξ+π)|^2| peaks at 1.
            assert!(report.max_dual_shifted() > 0.9, "grid {grid}");
            assert!(report.passes(1e-12));
        }
    }

    #[test]
    fn mep_detects_missing_highpass() {
        let a3 = bspline_mask(3);
        let zero = TrigPolynomial::from_coeffs(1, []).unwrap();
        let cosets = CosetSet::dyadic(1).unwrap();
        let report = verify_mep(
            &a3,
            &a3,
            std::slice::from_ref(&zero),
            std::slice::from_ref(&zero),
            &cosets,
            256,
        )
        .unwrap();
        // |a(π)|² = 0, so the lowpass identity misses 1 by 1 there.
        assert!(report.lowpass_residual > 0.9);
        assert!(!report.passes(1e-12));
    }

    #[test]
    fn mep_delta_dual_lowpass_identity() {
        // ã ≡ 1, b̃ ≡ 1 and b = δ - a makes conj(b) b̃ = 1 - conj(a),
        // so the lowpass identity holds exactly.
        let a = haar_lowpass();
        let one = TrigPolynomial::constant(1, Complex64::new(1.0, 0.0)).unwrap();
        let delta_minus_a = one.add(&a.scale(Complex64::new(-1.0, 0.0))).unwrap();
        let cosets = CosetSet::dyadic(1).unwrap();
        let report = verify_mep(
            &a,
            &one,
            std::slice::from_ref(&delta_minus_a),
            std::slice::from_ref(&one),
            &cosets,
            256,
        )
        .unwrap();
        assert!(report.lowpass_residual < 1e-12);
    }

    #[test]
    fn mep_rejects_mismatched_lists() {
        let a = haar_lowpass();
        let b = haar_highpass();
        let cosets = CosetSet::dyadic(1).unwrap();
        let err = verify_mep(&a, &a, &[b.clone(), b.clone()], &[b], &cosets, 64);
        assert!(matches!(err, Err(Error::MaskListMismatch { .. })));
    }

    #[test]
    fn mask_file_round_trip() {
        let a = bspline_mask(3);
        let text = format_mask(&a);
        let parsed = parse_masks(&text, "inline").unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed[0], a);

        let t = TrigPolynomial::tensor(&bspline_mask(2), &bspline_mask(1)).unwrap();
        let parsed2 = parse_masks(&format_mask(&t), "inline").unwrap();
        assert_eq!(parsed2[0], t);
    }

    #[test]
    fn mask_file_blocks_and_comments() {
        let text = "# Haar family\n0 0.5 0\n-1 0.5 0\n\n0 0.5 0\n-1 -0.5 0 # highpass\n";
        let masks = parse_masks(text, "inline").unwrap();
        assert_eq!(masks.len(), 2);
        assert_eq!(masks[0], haar_lowpass());
        assert_eq!(masks[1], haar_highpass());
    }

    #[test]
    fn mask_file_rejects_bad_lines() {
        assert!(matches!(
            parse_masks("0 0.5\n", "inline"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_masks("x 0.5 0\n", "inline"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_masks("0 0.5 0\n0 1 0.5 0\n", "inline"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn bspline_masks_have_matching_sum_rules() {
        let cosets = CosetSet::dyadic(1).unwrap();
        for n in 1..=8 {
            let a = bspline_mask(n);
            assert_eq!(sum_rules(&a, &cosets, 1e-8).unwrap(), n, "order {n}");
            assert_eq!(a.eval(&[0.0]), Complex64::new(1.0, 0.0), "order {n}");
        }
    }

    fn small_symbol() -> impl Strategy<Value = TrigPolynomial> {
        proptest::collection::vec(((-4i64..=4), (-1.0f64..=1.0), (-1.0f64..=1.0)), 1..6).prop_map(
            |entries| {
                TrigPolynomial::from_coeffs(
                    1,
                    entries
                        .into_iter()
                        .map(|(k, re, im)| ([k, 0], Complex64::new(re, im))),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn eval_is_linear(p in small_symbol(), q in small_symbol(), xi in -10.0f64..10.0) {
            let sum = p.add(&q).unwrap();
            let lhs = sum.eval(&[xi]);
            let rhs = p.eval(&[xi]) + q.eval(&[xi]);
            prop_assert!((lhs - rhs).norm() < 1e-14);
        }

        #[test]
        fn eval_is_periodic(p in small_symbol(), xi in -3.0f64..3.0) {
            let period = 2.0 * std::f64::consts::PI;
            let diff = (p.eval(&[xi]) - p.eval(&[xi + period])).norm();
            prop_assert!(diff < 1e-12);
        }

        #[test]
        fn zero_order_invariant_under_translation(p in small_symbol(), t in -5i64..=5) {
            let xi0 = [std::f64::consts::PI];
            let before = zero_order_at(&p, &xi0, 1e-7).unwrap();
            let after = zero_order_at(&p.translate([t, 0]), &xi0, 1e-7).unwrap();
            prop_assert_eq!(before, after);
        }
    }
}
