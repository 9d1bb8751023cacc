//! Lattice index boxes, axis-aligned domains, and flat point grids.
//!
//! Dimension is 1 or 2 throughout the crate. Points and indices are stored as
//! fixed `[_; 2]` arrays with the second component ignored (index `0`, point
//! `0.0`) in the one-dimensional case; `dim` records the live dimension.

use crate::error::{Error, Result};

pub(crate) const MAX_DIM: usize = 2;

/// Inclusive box of lattice indices in `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexBox {
    dim: usize,
    lo: [i64; MAX_DIM],
    hi: [i64; MAX_DIM],
}

impl IndexBox {
    /// Inclusive box `[lo, hi]` per coordinate. `lo > hi` in any live
    /// coordinate yields an empty box.
    pub fn new(dim: usize, lo: [i64; MAX_DIM], hi: [i64; MAX_DIM]) -> Result<Self> {
        check_dim(dim)?;
        let mut lo = lo;
        let mut hi = hi;
        for c in dim..MAX_DIM {
            lo[c] = 0;
            hi[c] = 0;
        }
        Ok(IndexBox { dim, lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo[..self.dim]
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi[..self.dim]
    }

    pub fn is_empty(&self) -> bool {
        (0..self.dim).any(|c| self.lo[c] > self.hi[c])
    }

    /// Number of lattice points in the box.
    pub fn len(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        (0..self.dim)
            .map(|c| (self.hi[c] - self.lo[c] + 1) as usize)
            .product()
    }

    pub fn contains(&self, k: [i64; MAX_DIM]) -> bool {
        !self.is_empty() && (0..self.dim).all(|c| self.lo[c] <= k[c] && k[c] <= self.hi[c])
    }

    /// Row-major position of `k` within the box (last coordinate fastest).
    pub fn position(&self, k: [i64; MAX_DIM]) -> Option<usize> {
        if !self.contains(k) {
            return None;
        }
        let mut pos = 0usize;
        for c in 0..self.dim {
            let extent = (self.hi[c] - self.lo[c] + 1) as usize;
            pos = pos * extent + (k[c] - self.lo[c]) as usize;
        }
        Some(pos)
    }

    /// Iterate the box in row-major order (last coordinate fastest).
    pub fn iter(&self) -> IndexBoxIter<'_> {
        IndexBoxIter {
            bx: self,
            next: if self.is_empty() { None } else { Some(self.lo) },
        }
    }
}

pub struct IndexBoxIter<'a> {
    bx: &'a IndexBox,
    next: Option<[i64; MAX_DIM]>,
}

impl Iterator for IndexBoxIter<'_> {
    type Item = [i64; MAX_DIM];

    fn next(&mut self) -> Option<Self::Item> {
        let cur = self.next?;
        let mut k = cur;
        let mut c = self.bx.dim;
        loop {
            if c == 0 {
                self.next = None;
                break;
            }
            c -= 1;
            k[c] += 1;
            if k[c] <= self.bx.hi[c] {
                self.next = Some(k);
                break;
            }
            k[c] = self.bx.lo[c];
        }
        Some(cur)
    }
}

/// Axis-aligned box in `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainBox {
    dim: usize,
    lo: [f64; MAX_DIM],
    hi: [f64; MAX_DIM],
}

impl DomainBox {
    pub fn new(dim: usize, lo: [f64; MAX_DIM], hi: [f64; MAX_DIM]) -> Result<Self> {
        check_dim(dim)?;
        let mut lo = lo;
        let mut hi = hi;
        for c in dim..MAX_DIM {
            lo[c] = 0.0;
            hi[c] = 0.0;
        }
        Ok(DomainBox { dim, lo, hi })
    }

    /// 1D interval `[a, b]`.
    pub fn interval(a: f64, b: f64) -> Self {
        DomainBox::new(1, [a, 0.0], [b, 0.0]).expect("dim 1 is valid")
    }

    /// 2D rectangle `[a1, b1] x [a2, b2]`.
    pub fn rectangle(a: [f64; 2], b: [f64; 2]) -> Self {
        DomainBox::new(2, a, b).expect("dim 2 is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo[..self.dim]
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi[..self.dim]
    }

    pub fn is_empty(&self) -> bool {
        (0..self.dim).any(|c| self.lo[c] > self.hi[c])
    }

    /// Smallest axis-aligned box containing all `points`; `None` when empty.
    pub fn bounding(dim: usize, points: &PointGrid) -> Option<Self> {
        if points.len() == 0 {
            return None;
        }
        let mut lo = [f64::INFINITY; MAX_DIM];
        let mut hi = [f64::NEG_INFINITY; MAX_DIM];
        for p in points.iter() {
            for c in 0..dim {
                lo[c] = lo[c].min(p[c]);
                hi[c] = hi[c].max(p[c]);
            }
        }
        DomainBox::new(dim, lo, hi).ok()
    }
}

/// Flat list of evaluation points in `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointGrid {
    dim: usize,
    coords: Vec<f64>,
}

impl PointGrid {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        check_dim(dim)?;
        if coords.len() % dim != 0 {
            return Err(Error::invalid(
                "coords",
                format!("length {} not divisible by dim {}", coords.len(), dim),
            ));
        }
        Ok(PointGrid { dim, coords })
    }

    /// Uniform 1D grid `{start + step*i : i = 0..count-1}`.
    pub fn uniform_1d(start: f64, step: f64, count: usize) -> Self {
        let coords = (0..count).map(|i| start + step * i as f64).collect();
        PointGrid { dim: 1, coords }
    }

    /// Cartesian product of per-axis values, row-major (second axis fastest).
    pub fn tensor_2d(axis1: &[f64], axis2: &[f64]) -> Self {
        let mut coords = Vec::with_capacity(2 * axis1.len() * axis2.len());
        for &x in axis1 {
            for &y in axis2 {
                coords.push(x);
                coords.push(y);
            }
        }
        PointGrid { dim: 2, coords }
    }

    pub fn from_points(dim: usize, points: &[&[f64]]) -> Result<Self> {
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        PointGrid::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::invalid("dim", format!("must be 1 or 2, got {dim}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_iteration_2d() {
        let bx = IndexBox::new(2, [0, 0], [1, 2]).unwrap();
        let order: Vec<[i64; 2]> = bx.iter().collect();
        assert_eq!(
            order,
            vec![[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]]
        );
        assert_eq!(bx.len(), 6);
        for (i, k) in bx.iter().enumerate() {
            assert_eq!(bx.position(k), Some(i));
        }
    }

    #[test]
    fn empty_box() {
        let bx = IndexBox::new(1, [3, 0], [2, 0]).unwrap();
        assert!(bx.is_empty());
        assert_eq!(bx.len(), 0);
        assert_eq!(bx.iter().count(), 0);
    }

    #[test]
    fn grid_tensor_order() {
        let g = PointGrid::tensor_2d(&[0.0, 1.0], &[5.0, 6.0]);
        assert_eq!(g.len(), 4);
        assert_eq!(g.point(1), &[0.0, 6.0]);
        assert_eq!(g.point(2), &[1.0, 5.0]);
    }

    #[test]
    fn dim_zero_rejected() {
        assert!(IndexBox::new(0, [0, 0], [1, 1]).is_err());
        assert!(PointGrid::new(3, vec![]).is_err());
    }
}
