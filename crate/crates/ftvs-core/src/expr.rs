//! Membership function expression trees.
//!
//! A fuzzy set's body is a small immutable tree evaluated pointwise. Leaves
//! are constants, crisp indicators, triangular ramps, and sampled grids;
//! inner nodes are lattice meets/joins and the point transformations
//! (scaling, translation, affine pullback). Evaluation is pure: the same
//! point always yields the same grade, and every grade lies in [0, 1].

use serde::{Deserialize, Serialize};

use crate::affine::{dot, AffineMap};
use crate::domain::Domain;
use crate::error::{CoreError, Result};
use crate::reals::FelbinNorm;
use crate::set::FuzzySet;

/// Which cut level a [`Predicate::NormBall`] reads its radius bound at.
///
/// `Sup` takes the upper endpoint at the smallest sampled level, which by
/// cut nesting dominates every other level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormLevel {
    At(f64),
    Sup,
}

/// Crisp regions for indicator sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Ball { center: Vec<f64>, radius: f64, open: bool },
    BoxRegion { bounds: Vec<(f64, f64)>, open: bool },
    Halfspace { normal: Vec<f64>, offset: f64, open: bool },
    /// Origin-centered set of points whose norm cut endpoint stays below
    /// `radius` (always a strict bound, hence always open for the shipped
    /// norm catalog).
    NormBall { norm: FelbinNorm, level: NormLevel, radius: f64 },
}

impl Predicate {
    pub fn open_ball(center: Vec<f64>, radius: f64) -> Self {
        Predicate::Ball { center, radius, open: true }
    }

    pub fn closed_ball(center: Vec<f64>, radius: f64) -> Self {
        Predicate::Ball { center, radius, open: false }
    }

    pub fn open_interval(lo: f64, hi: f64) -> Self {
        Predicate::BoxRegion { bounds: vec![(lo, hi)], open: true }
    }

    pub fn closed_interval(lo: f64, hi: f64) -> Self {
        Predicate::BoxRegion { bounds: vec![(lo, hi)], open: false }
    }

    pub fn holds(&self, x: &[f64]) -> bool {
        match self {
            Predicate::Ball { center, radius, open } => {
                let mut acc = 0.0;
                for i in 0..x.len() {
                    let d = x[i] - center[i];
                    acc += d * d;
                }
                let dist = acc.sqrt();
                if *open {
                    dist < *radius
                } else {
                    dist <= *radius
                }
            }
            Predicate::BoxRegion { bounds, open } => {
                x.iter().zip(bounds).all(|(&xi, &(lo, hi))| {
                    if *open {
                        xi > lo && xi < hi
                    } else {
                        xi >= lo && xi <= hi
                    }
                })
            }
            Predicate::Halfspace { normal, offset, open } => {
                let s = dot(normal, x);
                if *open {
                    s < *offset
                } else {
                    s <= *offset
                }
            }
            Predicate::NormBall { norm, level, radius } => {
                let v = match level {
                    NormLevel::At(alpha) => norm.upper(x, *alpha),
                    NormLevel::Sup => norm.sup_upper(x),
                };
                v < *radius
            }
        }
    }

    /// Whether the region is topologically open in R^n.
    pub fn is_open(&self) -> bool {
        match self {
            Predicate::Ball { open, .. }
            | Predicate::BoxRegion { open, .. }
            | Predicate::Halfspace { open, .. } => *open,
            Predicate::NormBall { .. } => true,
        }
    }

    fn dimension(&self) -> usize {
        match self {
            Predicate::Ball { center, .. } => center.len(),
            Predicate::BoxRegion { bounds, .. } => bounds.len(),
            Predicate::Halfspace { normal, .. } => normal.len(),
            Predicate::NormBall { norm, .. } => norm.dim(),
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.dimension() != dim {
            return Err(CoreError::DimensionMismatch { expected: dim, got: self.dimension() });
        }
        let finite = match self {
            Predicate::Ball { center, radius, .. } => {
                center.iter().all(|c| c.is_finite()) && radius.is_finite() && *radius >= 0.0
            }
            Predicate::BoxRegion { bounds, .. } => {
                bounds.iter().all(|(lo, hi)| lo.is_finite() && hi.is_finite() && lo <= hi)
            }
            Predicate::Halfspace { normal, offset, .. } => {
                normal.iter().all(|c| c.is_finite()) && offset.is_finite()
            }
            Predicate::NormBall { radius, level, .. } => {
                radius.is_finite()
                    && *radius >= 0.0
                    && match level {
                        NormLevel::At(a) => *a > 0.0 && *a <= 1.0,
                        NormLevel::Sup => true,
                    }
            }
        };
        if finite {
            Ok(())
        } else {
            Err(CoreError::InvalidSet("predicate has non-finite or inverted parameters".into()))
        }
    }
}

/// Grades sampled on a domain lattice; lookup snaps to the nearest lattice
/// point, and anything outside the stored box reads as 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridData {
    pub domain: Domain,
    pub values: Vec<f64>,
}

impl GridData {
    pub fn eval(&self, x: &[f64]) -> f64 {
        if !self.domain.contains(x) {
            return 0.0;
        }
        match self.domain.nearest_index(x) {
            Some(i) => self.values[i],
            None => 0.0,
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.domain.dimension() != dim {
            return Err(CoreError::DimensionMismatch { expected: dim, got: self.domain.dimension() });
        }
        if self.values.len() != self.domain.lattice_len() {
            return Err(CoreError::InvalidSet(format!(
                "grid has {} values for a lattice of {}",
                self.values.len(),
                self.domain.lattice_len()
            )));
        }
        if self.values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(CoreError::InvalidSet("grid value outside [0, 1]".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FuzzyExpr {
    /// Constant grade in [0, 1].
    Constant(f64),
    /// Crisp indicator of a region.
    Indicator(Predicate),
    /// Triangular ramp on the line: 0 outside [a, c], 1 at b.
    Triangular { a: f64, b: f64, c: f64 },
    /// Sampled grid with nearest-point lookup.
    Grid(GridData),
    /// Pointwise minimum of the children.
    Meet(Vec<FuzzyExpr>),
    /// Pointwise maximum of the children.
    Join(Vec<FuzzyExpr>),
    /// Scalar multiple for nonzero factors: evaluates the child at `x / t`.
    Scale { factor: f64, inner: Box<FuzzyExpr> },
    /// Shift: evaluates the child at `x - shift`.
    Translate { shift: Vec<f64>, inner: Box<FuzzyExpr> },
    /// Composition with an affine map into another set's domain. The inner
    /// set is evaluated through its own domain gate, so map values outside
    /// the inner box read as 0.
    Pullback { map: AffineMap, inner: Box<FuzzySet> },
    /// Convolution-style sum, materialized on a grid at construction time.
    /// The operands ride along for inspection; the grid is authoritative.
    SupMinSum { left: Box<FuzzySet>, right: Box<FuzzySet>, grid: GridData },
}

impl FuzzyExpr {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            FuzzyExpr::Constant(c) => *c,
            FuzzyExpr::Indicator(p) => {
                if p.holds(x) {
                    1.0
                } else {
                    0.0
                }
            }
            FuzzyExpr::Triangular { a, b, c } => {
                let t = x[0];
                if t < *a || t > *c {
                    0.0
                } else if t == *b {
                    1.0
                } else if t < *b {
                    (t - a) / (b - a)
                } else {
                    (c - t) / (c - b)
                }
            }
            FuzzyExpr::Grid(g) => g.eval(x),
            FuzzyExpr::Meet(children) => {
                children.iter().map(|c| c.eval(x)).fold(1.0, f64::min)
            }
            FuzzyExpr::Join(children) => {
                children.iter().map(|c| c.eval(x)).fold(0.0, f64::max)
            }
            FuzzyExpr::Scale { factor, inner } => {
                let y: Vec<f64> = x.iter().map(|&xi| xi / factor).collect();
                inner.eval(&y)
            }
            FuzzyExpr::Translate { shift, inner } => {
                let y: Vec<f64> = x.iter().zip(shift).map(|(&xi, &si)| xi - si).collect();
                inner.eval(&y)
            }
            FuzzyExpr::Pullback { map, inner } => {
                let y = map.apply(x);
                inner.eval(&y)
            }
            FuzzyExpr::SupMinSum { grid, .. } => grid.eval(x),
        }
    }

    /// Structural validation against the dimension of the carrying domain.
    pub fn validate(&self, dim: usize) -> Result<()> {
        match self {
            FuzzyExpr::Constant(c) => {
                if (0.0..=1.0).contains(c) {
                    Ok(())
                } else {
                    Err(CoreError::InvalidSet(format!("constant grade {c} outside [0, 1]")))
                }
            }
            FuzzyExpr::Indicator(p) => p.validate(dim),
            FuzzyExpr::Triangular { a, b, c } => {
                if dim != 1 {
                    return Err(CoreError::DimensionMismatch { expected: 1, got: dim });
                }
                if a.is_finite() && b.is_finite() && c.is_finite() && a <= b && b <= c {
                    Ok(())
                } else {
                    Err(CoreError::InvalidSet(format!(
                        "triangular parameters ({a}, {b}, {c}) must be finite and ordered"
                    )))
                }
            }
            FuzzyExpr::Grid(g) => g.validate(dim),
            FuzzyExpr::Meet(children) | FuzzyExpr::Join(children) => {
                if children.is_empty() {
                    return Err(CoreError::EmptyOperands);
                }
                children.iter().try_for_each(|c| c.validate(dim))
            }
            FuzzyExpr::Scale { factor, inner } => {
                if !factor.is_finite() || *factor == 0.0 {
                    return Err(CoreError::InvalidSet(
                        "scale factor must be finite and nonzero".into(),
                    ));
                }
                inner.validate(dim)
            }
            FuzzyExpr::Translate { shift, inner } => {
                if shift.len() != dim {
                    return Err(CoreError::DimensionMismatch { expected: dim, got: shift.len() });
                }
                if shift.iter().any(|s| !s.is_finite()) {
                    return Err(CoreError::InvalidSet("translation shift must be finite".into()));
                }
                inner.validate(dim)
            }
            FuzzyExpr::Pullback { map, inner } => {
                if map.cols() != dim {
                    return Err(CoreError::DimensionMismatch { expected: dim, got: map.cols() });
                }
                if map.rows() != inner.domain().dimension() {
                    return Err(CoreError::DimensionMismatch {
                        expected: inner.domain().dimension(),
                        got: map.rows(),
                    });
                }
                Ok(())
            }
            FuzzyExpr::SupMinSum { grid, .. } => grid.validate(dim),
        }
    }
}
