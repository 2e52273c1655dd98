//! Bounded box domains with a uniform evaluation lattice.
//!
//! The ambient space is R^n restricted to an axis-aligned box. Membership
//! outside the box is zero by convention, and every sup/inf in this crate is
//! taken over the box's uniform lattice.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// An axis-aligned box in R^n together with a uniform lattice on it.
///
/// Axis `i` carries `resolution[i]` evenly spaced points from `bounds[i].0`
/// to `bounds[i].1` inclusive. Lattice points are addressed by a flat
/// row-major index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    bounds: Vec<(f64, f64)>,
    resolution: Vec<usize>,
}

impl Domain {
    pub fn new(bounds: Vec<(f64, f64)>, resolution: Vec<usize>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(CoreError::InvalidDomain("dimension must be at least 1".into()));
        }
        if bounds.len() != resolution.len() {
            return Err(CoreError::DimensionMismatch {
                expected: bounds.len(),
                got: resolution.len(),
            });
        }
        for &(lo, hi) in &bounds {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(CoreError::InvalidDomain(format!(
                    "axis bounds [{lo}, {hi}] must be finite with lo < hi"
                )));
            }
        }
        if let Some(&r) = resolution.iter().find(|&&r| r < 2) {
            return Err(CoreError::InvalidDomain(format!(
                "resolution {r} is below the minimum of 2 points per axis"
            )));
        }
        Ok(Domain { bounds, resolution })
    }

    /// One-dimensional domain, the common case for scalar-side sets.
    pub fn line(lo: f64, hi: f64, resolution: usize) -> Result<Self> {
        Domain::new(vec![(lo, hi)], vec![resolution])
    }

    /// Cube `[lo, hi]^dim` with the same resolution on every axis.
    pub fn cube(dim: usize, lo: f64, hi: f64, resolution: usize) -> Result<Self> {
        Domain::new(vec![(lo, hi); dim], vec![resolution; dim])
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn resolution(&self) -> &[usize] {
        &self.resolution
    }

    pub fn step(&self, axis: usize) -> f64 {
        let (lo, hi) = self.bounds[axis];
        (hi - lo) / (self.resolution[axis] - 1) as f64
    }

    /// Smallest lattice spacing over all axes.
    pub fn min_step(&self) -> f64 {
        (0..self.dimension())
            .map(|a| self.step(a))
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `x` lies in the closed box.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(&self.bounds)
                .all(|(&xi, &(lo, hi))| xi >= lo && xi <= hi)
    }

    /// Total number of lattice points.
    pub fn lattice_len(&self) -> usize {
        self.resolution.iter().product()
    }

    /// Coordinate of lattice index `i` along `axis`.
    pub fn axis_coord(&self, axis: usize, i: usize) -> f64 {
        self.bounds[axis].0 + i as f64 * self.step(axis)
    }

    /// Writes the lattice point at flat index `idx` into `out`.
    pub fn point_into(&self, idx: usize, out: &mut Vec<f64>) {
        out.clear();
        let mut rest = idx;
        // Row-major: last axis varies fastest.
        let mut divs = vec![0usize; self.dimension()];
        let mut acc = 1;
        for axis in (0..self.dimension()).rev() {
            divs[axis] = acc;
            acc *= self.resolution[axis];
        }
        for axis in 0..self.dimension() {
            let i = rest / divs[axis];
            rest %= divs[axis];
            out.push(self.axis_coord(axis, i));
        }
    }

    pub fn point(&self, idx: usize) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.dimension());
        self.point_into(idx, &mut p);
        p
    }

    /// Iterates all lattice points in flat-index order.
    pub fn points(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.lattice_len()).map(|i| self.point(i))
    }

    /// Per-axis indices of flat lattice index `idx`.
    pub fn index_to_multi(&self, idx: usize) -> Vec<usize> {
        let mut multi = vec![0usize; self.dimension()];
        let mut rest = idx;
        for axis in (0..self.dimension()).rev() {
            multi[axis] = rest % self.resolution[axis];
            rest /= self.resolution[axis];
        }
        multi
    }

    /// Flat lattice index of per-axis indices.
    pub fn multi_to_flat(&self, multi: &[usize]) -> usize {
        let mut idx = 0;
        for axis in 0..self.dimension() {
            idx = idx * self.resolution[axis] + multi[axis];
        }
        idx
    }

    /// Flat index of the lattice point nearest to `x`, or `None` when `x`
    /// falls outside every axis cell (more than half a step beyond the box).
    pub fn nearest_index(&self, x: &[f64]) -> Option<usize> {
        if x.len() != self.dimension() {
            return None;
        }
        let mut idx = 0usize;
        for axis in 0..self.dimension() {
            let rel = (x[axis] - self.bounds[axis].0) / self.step(axis);
            let i = rel.round();
            if i < 0.0 || i > (self.resolution[axis] - 1) as f64 || !i.is_finite() {
                return None;
            }
            idx = idx * self.resolution[axis] + i as usize;
        }
        Some(idx)
    }

    /// Product domain: bounds and resolutions concatenated.
    pub fn product(&self, other: &Domain) -> Domain {
        let mut bounds = self.bounds.clone();
        bounds.extend_from_slice(&other.bounds);
        let mut resolution = self.resolution.clone();
        resolution.extend_from_slice(&other.resolution);
        Domain { bounds, resolution }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_axes() {
        assert!(Domain::new(vec![(0.0, 0.0)], vec![5]).is_err());
        assert!(Domain::new(vec![(0.0, 1.0)], vec![1]).is_err());
        assert!(Domain::new(vec![], vec![]).is_err());
        assert!(Domain::new(vec![(0.0, 1.0)], vec![2, 3]).is_err());
    }

    #[test]
    fn lattice_endpoints_are_exact() {
        let d = Domain::line(-3.0, 3.0, 121).unwrap();
        assert_eq!(d.axis_coord(0, 0), -3.0);
        assert_eq!(d.axis_coord(0, 120), 3.0);
        assert_eq!(d.lattice_len(), 121);
    }

    #[test]
    fn contains_is_closed_box() {
        let d = Domain::cube(2, -1.0, 1.0, 3).unwrap();
        assert!(d.contains(&[1.0, -1.0]));
        assert!(!d.contains(&[1.0 + 1e-12, 0.0]));
        assert!(!d.contains(&[0.0]));
    }

    #[test]
    fn nearest_index_rounds_and_rejects_outside() {
        let d = Domain::line(0.0, 1.0, 5).unwrap(); // step 0.25
        assert_eq!(d.nearest_index(&[0.3]), Some(1));
        assert_eq!(d.nearest_index(&[0.4]), Some(2));
        assert_eq!(d.nearest_index(&[1.1]), Some(4));
        assert_eq!(d.nearest_index(&[1.2]), None);
        assert_eq!(d.nearest_index(&[-0.2]), None);
    }

    #[test]
    fn flat_index_round_trips_through_points() {
        let d = Domain::new(vec![(0.0, 1.0), (0.0, 2.0)], vec![3, 5]).unwrap();
        for (i, p) in d.points().enumerate() {
            assert_eq!(d.nearest_index(&p), Some(i));
        }
    }

    #[test]
    fn product_concatenates_axes() {
        let a = Domain::line(0.0, 1.0, 3).unwrap();
        let b = Domain::cube(2, -1.0, 1.0, 5).unwrap();
        let p = a.product(&b);
        assert_eq!(p.dimension(), 3);
        assert_eq!(p.resolution(), &[3, 5, 5]);
        assert_eq!(p.bounds()[0], (0.0, 1.0));
        assert_eq!(p.bounds()[2], (-1.0, 1.0));
    }
}
