//! Cardinal B-splines and their 2D tensor products.
//!
//! `B_n` is the n-fold convolution of the indicator of `(0, 1]`, supported
//! on `(0, n]`. Both the time-domain evaluator (Cox–de Boor recursion) and
//! the Fourier evaluator `((1 - e^{-iξ})/(iξ))^n` are provided, together
//! with checks that a candidate mask actually satisfies the two-scale
//! refinement relation and that shifts sum to one.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mask::{bspline_mask, torus_node, TrigPolynomial};

/// Value of the order-`n` cardinal B-spline at `x`.
///
/// `B_1` is the indicator of `(0, 1]`; higher orders follow the recursion
/// `B_n(x) = (x B_{n-1}(x) + (n - x) B_{n-1}(x - 1)) / (n - 1)`.
pub fn eval_bspline(order: u32, x: f64) -> f64 {
    assert!(order >= 1, "B-spline order must be at least 1");
    if x <= 0.0 || x > order as f64 {
        return 0.0;
    }
    if order == 1 {
        return 1.0;
    }
    let n = order as f64;
    (x * eval_bspline(order - 1, x) + (n - x) * eval_bspline(order - 1, x - 1.0)) / (n - 1.0)
}

/// Fourier transform of `B_n`: `((1 - e^{-iξ})/(iξ))^n`.
///
/// Below `|ξ| < 1e-4` the factor is evaluated as `e^{-iξ/2} sinc(ξ/2)` with
/// a series for sinc, avoiding the `1 - e^{-iξ}` cancellation; the removable
/// singularity at 0 evaluates to 1.
pub fn fourier_bspline(order: u32, xi: f64) -> Complex64 {
    assert!(order >= 1, "B-spline order must be at least 1");
    if xi.abs() < 1e-4 {
        let half = xi / 2.0;
        let rotation = Complex64::new(
            (-(order as f64) * half).cos(),
            (-(order as f64) * half).sin(),
        );
        return rotation * sinc_series(half).powi(order as i32);
    }
    let num = Complex64::new(1.0 - xi.cos(), xi.sin());
    let den = Complex64::new(0.0, xi);
    (num / den).powu(order)
}

/// Taylor series for `sin(t)/t`, accurate to machine precision for `|t| < 1`.
fn sinc_series(t: f64) -> f64 {
    let t2 = t * t;
    // 1 - t²/3! + t⁴/5! - t⁶/7! + t⁸/9! - t¹⁰/11!
    1.0 + t2 * (-1.0 / 6.0
        + t2 * (1.0 / 120.0 + t2 * (-1.0 / 5040.0 + t2 * (1.0 / 362880.0 - t2 / 39916800.0))))
}

/// Which refinable generator a [`RefinableFunction`] represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplineKind {
    /// Cardinal B-spline of the given order.
    Bspline { order: u32 },
    /// Separable product `B_{n1}(x1) B_{n2}(x2)`.
    TensorBspline { orders: [u32; 2] },
}

/// A compactly supported refinable function with time- and Fourier-domain
/// evaluators and its refinement mask.
#[derive(Clone, Debug)]
pub struct RefinableFunction {
    kind: SplineKind,
    mask: TrigPolynomial,
    smoothness_hint: f64,
}

impl RefinableFunction {
    /// Cardinal B-spline of order `n`, supported on `(0, n]`.
    pub fn bspline(order: u32) -> Self {
        assert!(order >= 1, "B-spline order must be at least 1");
        RefinableFunction {
            kind: SplineKind::Bspline { order },
            mask: bspline_mask(order),
            // B_n lies in H^μ exactly for μ < n - 1/2; metadata only.
            smoothness_hint: order as f64 - 0.5,
        }
    }

    /// Separable 2D product of B-splines of orders `n1`, `n2`.
    pub fn tensor_bspline(order1: u32, order2: u32) -> Self {
        assert!(order1 >= 1 && order2 >= 1, "orders must be at least 1");
        let mask = TrigPolynomial::tensor(&bspline_mask(order1), &bspline_mask(order2))
            .expect("1D masks tensorize");
        RefinableFunction {
            kind: SplineKind::TensorBspline {
                orders: [order1, order2],
            },
            mask,
            smoothness_hint: order1.min(order2) as f64 - 0.5,
        }
    }

    pub fn kind(&self) -> &SplineKind {
        &self.kind
    }

    pub fn mask(&self) -> &TrigPolynomial {
        &self.mask
    }

    /// Open upper bound on the Sobolev smoothness; metadata only, never used
    /// in computation paths.
    pub fn smoothness_hint(&self) -> f64 {
        self.smoothness_hint
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            SplineKind::Bspline { .. } => 1,
            SplineKind::TensorBspline { .. } => 2,
        }
    }

    /// Spline order along coordinate `c`; the support there is `(0, order]`.
    pub fn order(&self, c: usize) -> u32 {
        match &self.kind {
            SplineKind::Bspline { order } => {
                assert_eq!(c, 0);
                *order
            }
            SplineKind::TensorBspline { orders } => orders[c],
        }
    }

    /// Largest per-coordinate support width.
    pub fn max_order(&self) -> u32 {
        (0..self.dim()).map(|c| self.order(c)).max().unwrap()
    }

    /// Pointwise value; zero outside the support box.
    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim(), "evaluation point has wrong dimension");
        match &self.kind {
            SplineKind::Bspline { order } => eval_bspline(*order, x[0]),
            SplineKind::TensorBspline { orders } => {
                eval_bspline(orders[0], x[0]) * eval_bspline(orders[1], x[1])
            }
        }
    }

    /// Fourier transform at `xi`.
    pub fn fourier(&self, xi: &[f64]) -> Complex64 {
        assert_eq!(
            xi.len(),
            self.dim(),
            "evaluation point has wrong dimension"
        );
        match &self.kind {
            SplineKind::Bspline { order } => fourier_bspline(*order, xi[0]),
            SplineKind::TensorBspline { orders } => {
                fourier_bspline(orders[0], xi[0]) * fourier_bspline(orders[1], xi[1])
            }
        }
    }
}

/// Max residual of the refinement identity `φ̂(2ξ) - a(ξ) φ̂(ξ)` for the
/// function's own mask, over a uniform grid on `(-π, π]^d`.
pub fn check_refinement(phi: &RefinableFunction, grid_points: usize) -> Result<f64> {
    check_refinement_with(phi, phi.mask(), grid_points)
}

/// Same residual with an arbitrary candidate mask.
pub fn check_refinement_with(
    phi: &RefinableFunction,
    mask: &TrigPolynomial,
    grid_points: usize,
) -> Result<f64> {
    if grid_points < 64 {
        return Err(Error::invalid(
            "grid_points",
            format!("must be at least 64, got {grid_points}"),
        ));
    }
    if mask.dim() != phi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            got: mask.dim(),
        });
    }
    let dim = phi.dim();
    let mut worst = 0.0f64;
    let mut xi = vec![0.0f64; dim];
    let mut two_xi = vec![0.0f64; dim];
    let total = grid_points.pow(dim as u32);
    for flat in 0..total {
        let mut rem = flat;
        for c in (0..dim).rev() {
            let i = rem % grid_points;
            rem /= grid_points;
            xi[c] = torus_node(i, grid_points);
            two_xi[c] = 2.0 * xi[c];
        }
        let residual = (phi.fourier(&two_xi) - mask.eval(&xi) * phi.fourier(&xi)).norm();
        worst = worst.max(residual);
    }
    Ok(worst)
}

/// Max deviation of `Σ_k φ(x - k)` from 1 over the sample points, the sum
/// running over every lattice shift whose support contains the point.
pub fn check_partition_of_unity(phi: &RefinableFunction, samples: &[&[f64]]) -> f64 {
    let dim = phi.dim();
    let mut worst = 0.0f64;
    let mut shifted = vec![0.0f64; dim];
    for x in samples {
        assert_eq!(x.len(), dim, "sample point has wrong dimension");
        let mut total = 0.0;
        // Per coordinate, φ(x-k) ≠ 0 needs x - n ≤ k < x.
        let ranges: Vec<(i64, i64)> = (0..dim)
            .map(|c| {
                let n = phi.order(c) as f64;
                let lo = (x[c] - n).ceil() as i64;
                let hi = (x[c]).ceil() as i64 - 1;
                (lo, hi)
            })
            .collect();
        match dim {
            1 => {
                for k in ranges[0].0..=ranges[0].1 {
                    shifted[0] = x[0] - k as f64;
                    total += phi.eval(&shifted);
                }
            }
            _ => {
                for k1 in ranges[0].0..=ranges[0].1 {
                    for k2 in ranges[1].0..=ranges[1].1 {
                        shifted[0] = x[0] - k1 as f64;
                        shifted[1] = x[1] - k2 as f64;
                        total += phi.eval(&shifted);
                    }
                }
            }
        }
        worst = worst.max((total - 1.0).abs());
    }
    worst
}
