//! Affine maps `x -> A x + b` between the box domains.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Dot product with a fixed left-to-right accumulation order.
///
/// Every inner product in this crate funnels through here so that two ways
/// of computing the same functional value agree bit-for-bit.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0.0;
    for i in 0..a.len() {
        acc += a[i] * b[i];
    }
    acc
}

/// A map `x -> A x + b` with `A` stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    rows: usize,
    cols: usize,
    matrix: Vec<f64>,
    offset: Vec<f64>,
}

impl AffineMap {
    pub fn new(rows: usize, cols: usize, matrix: Vec<f64>, offset: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(CoreError::InvalidParameter("affine map must have positive shape".into()));
        }
        if matrix.len() != rows * cols {
            return Err(CoreError::InvalidParameter(format!(
                "matrix has {} entries, expected {}",
                matrix.len(),
                rows * cols
            )));
        }
        if offset.len() != rows {
            return Err(CoreError::DimensionMismatch { expected: rows, got: offset.len() });
        }
        Ok(AffineMap { rows, cols, matrix, offset })
    }

    /// Purely linear map (zero offset).
    pub fn linear(rows: usize, cols: usize, matrix: Vec<f64>) -> Result<Self> {
        let offset = vec![0.0; rows];
        AffineMap::new(rows, cols, matrix, offset)
    }

    pub fn identity(n: usize) -> Self {
        let mut matrix = vec![0.0; n * n];
        for i in 0..n {
            matrix[i * n + i] = 1.0;
        }
        AffineMap { rows: n, cols: n, matrix, offset: vec![0.0; n] }
    }

    /// Projection of a product space onto the coordinate block `range`.
    pub fn projection(total: usize, range: std::ops::Range<usize>) -> Self {
        let rows = range.len();
        let mut matrix = vec![0.0; rows * total];
        for (r, c) in range.clone().enumerate() {
            matrix[r * total + c] = 1.0;
        }
        AffineMap { rows, cols: total, matrix, offset: vec![0.0; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.matrix[r * self.cols..(r + 1) * self.cols]
    }

    pub fn apply_into(&self, x: &[f64], out: &mut Vec<f64>) {
        debug_assert_eq!(x.len(), self.cols);
        out.clear();
        for r in 0..self.rows {
            out.push(dot(self.row(r), x) + self.offset[r]);
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.rows);
        self.apply_into(x, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn applies_matrix_and_offset() {
        let f = AffineMap::new(2, 2, vec![1.0, 2.0, 3.0, 4.0], vec![10.0, 20.0]).unwrap();
        assert_eq!(f.apply(&[1.0, 1.0]), vec![13.0, 27.0]);
    }

    #[test]
    fn projection_extracts_coordinates_exactly() {
        let p = AffineMap::projection(4, 2..4);
        assert_eq!(p.apply(&[0.1, 0.2, 0.3, 0.4]), vec![0.3, 0.4]);
    }

    #[test]
    fn shape_validation() {
        assert!(AffineMap::new(2, 2, vec![1.0; 3], vec![0.0; 2]).is_err());
        assert!(AffineMap::new(2, 2, vec![1.0; 4], vec![0.0; 3]).is_err());
    }
}
