//! Fuzzy sets on box domains and the vector-space operations on them.
//!
//! Evaluation is gated by the domain box: a point outside the box has grade
//! 0 no matter what the body says. The point transformations (scale,
//! translate) apply to the body only, so an expression like `2 * constant`
//! still behaves like the constant it is on all of R^n.

use serde::{Deserialize, Serialize};

use crate::affine::AffineMap;
use crate::domain::Domain;
use crate::error::{CoreError, Result};
use crate::expr::{FuzzyExpr, GridData, Predicate};

/// A membership function `E -> [0, 1]` carried by a box domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzySet {
    domain: Domain,
    body: FuzzyExpr,
}

impl FuzzySet {
    pub fn new(domain: Domain, body: FuzzyExpr) -> Result<Self> {
        body.validate(domain.dimension())?;
        Ok(FuzzySet { domain, body })
    }

    pub fn constant(domain: Domain, grade: f64) -> Result<Self> {
        FuzzySet::new(domain, FuzzyExpr::Constant(grade))
    }

    pub fn indicator(domain: Domain, predicate: Predicate) -> Result<Self> {
        FuzzySet::new(domain, FuzzyExpr::Indicator(predicate))
    }

    pub fn triangular(domain: Domain, a: f64, b: f64, c: f64) -> Result<Self> {
        FuzzySet::new(domain, FuzzyExpr::Triangular { a, b, c })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn body(&self) -> &FuzzyExpr {
        &self.body
    }

    /// Grade at `x`; zero outside the domain box.
    pub fn eval(&self, x: &[f64]) -> f64 {
        if !self.domain.contains(x) {
            return 0.0;
        }
        self.body.eval(x)
    }

    /// Grades at every lattice point, in flat-index order.
    pub fn materialize(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.domain.lattice_len());
        let mut p = Vec::with_capacity(self.domain.dimension());
        for i in 0..self.domain.lattice_len() {
            self.domain.point_into(i, &mut p);
            out.push(self.body.eval(&p));
        }
        out
    }

    /// Largest grade attained on the lattice.
    pub fn height(&self) -> f64 {
        let mut best = 0.0f64;
        let mut p = Vec::with_capacity(self.domain.dimension());
        for i in 0..self.domain.lattice_len() {
            self.domain.point_into(i, &mut p);
            best = best.max(self.body.eval(&p));
        }
        best
    }

    /// Shift by `v`: the result's grade at `y` is this set's grade at `y - v`.
    pub fn translate(&self, v: &[f64]) -> Result<FuzzySet> {
        if v.len() != self.domain.dimension() {
            return Err(CoreError::DimensionMismatch {
                expected: self.domain.dimension(),
                got: v.len(),
            });
        }
        FuzzySet::new(
            self.domain.clone(),
            FuzzyExpr::Translate { shift: v.to_vec(), inner: Box::new(self.body.clone()) },
        )
    }
}

/// Lattice points at or above a membership level.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaCut {
    pub level: f64,
    pub domain: Domain,
    /// Parallel to the flat lattice indexing of `domain`.
    pub members: Vec<bool>,
}

/// Cut of `set` at `level` in (0, 1].
pub fn alpha_cut(set: &FuzzySet, level: f64) -> Result<AlphaCut> {
    if !(level > 0.0 && level <= 1.0) {
        return Err(CoreError::InvalidLevel(level));
    }
    let members = set.materialize().into_iter().map(|v| v >= level).collect();
    Ok(AlphaCut { level, domain: set.domain().clone(), members })
}

/// Pointwise minimum. All operands must share one domain.
pub fn meet(sets: &[FuzzySet]) -> Result<FuzzySet> {
    combine(sets, FuzzyExpr::Meet)
}

/// Pointwise maximum. All operands must share one domain.
pub fn join(sets: &[FuzzySet]) -> Result<FuzzySet> {
    combine(sets, FuzzyExpr::Join)
}

fn combine(sets: &[FuzzySet], node: fn(Vec<FuzzyExpr>) -> FuzzyExpr) -> Result<FuzzySet> {
    let first = sets.first().ok_or(CoreError::EmptyOperands)?;
    if sets.iter().any(|s| s.domain() != first.domain()) {
        return Err(CoreError::DomainMismatch);
    }
    FuzzySet::new(first.domain().clone(), node(sets.iter().map(|s| s.body.clone()).collect()))
}

/// Scalar multiple. For `t != 0` the grade at `x` is the operand's grade at
/// `x / t`. For `t = 0` the result is the crisp singleton at the origin
/// carrying the operand's lattice height.
pub fn scalar_mul(t: f64, set: &FuzzySet) -> FuzzySet {
    let domain = set.domain().clone();
    let body = if t == 0.0 {
        let origin = vec![0.0; domain.dimension()];
        FuzzyExpr::Meet(vec![
            FuzzyExpr::Constant(set.height()),
            FuzzyExpr::Indicator(Predicate::closed_ball(origin, 0.0)),
        ])
    } else {
        FuzzyExpr::Scale { factor: t, inner: Box::new(set.body.clone()) }
    };
    FuzzySet { domain, body }
}

/// Sup-min convolution sum, materialized on the shared lattice:
/// `out(x) = max over lattice x1 of min(a(x1), b(x - x1))`, where the
/// second operand is read through its domain gate (decompositions leaving
/// the box contribute nothing).
pub fn add(a: &FuzzySet, b: &FuzzySet) -> Result<FuzzySet> {
    if a.domain() != b.domain() {
        return Err(CoreError::DomainMismatch);
    }
    let domain = a.domain().clone();
    let n = domain.lattice_len();
    let a_vals = a.materialize();
    let mut out = vec![0.0f64; n];
    let dim = domain.dimension();
    let steps: Vec<f64> = (0..dim).map(|k| domain.step(k)).collect();
    let mut multis = vec![0usize; n * dim];
    for i in 0..n {
        multis[i * dim..(i + 1) * dim].copy_from_slice(&domain.index_to_multi(i));
    }
    let mut diff = vec![0.0; dim];
    let mut snapped = Vec::with_capacity(dim);
    for i in 0..n {
        let mi = &multis[i * dim..(i + 1) * dim];
        let mut best = 0.0f64;
        for j in 0..n {
            if a_vals[j] <= best {
                continue;
            }
            let mj = &multis[j * dim..(j + 1) * dim];
            for k in 0..dim {
                // The lattice offsets cancel, so the remainder is the index
                // gap times the step, rounded once; coordinate subtraction
                // can drift an edge value outside the box.
                diff[k] = (mi[k] as f64 - mj[k] as f64) * steps[k];
            }
            let grade = if domain.contains(&diff) {
                b.eval(&diff)
            } else if let Some(cell) = domain.nearest_index(&diff) {
                // Half-step overhang belongs to the edge cell.
                domain.point_into(cell, &mut snapped);
                b.eval(&snapped)
            } else {
                0.0
            };
            let cand = a_vals[j].min(grade);
            if cand > best {
                best = cand;
            }
        }
        out[i] = best;
    }
    let grid = GridData { domain: domain.clone(), values: out };
    Ok(FuzzySet {
        domain,
        body: FuzzyExpr::SupMinSum {
            left: Box::new(a.clone()),
            right: Box::new(b.clone()),
            grid,
        },
    })
}

/// Product set on the concatenated domain:
/// grade at `(x1, x2)` is `min(a(x1), b(x2))`, realized as a meet of
/// coordinate-projection pullbacks so evaluation stays exact.
pub fn product(a: &FuzzySet, b: &FuzzySet) -> FuzzySet {
    let split = a.domain().dimension();
    let domain = a.domain().product(b.domain());
    let total = domain.dimension();
    let body = FuzzyExpr::Meet(vec![
        FuzzyExpr::Pullback {
            map: AffineMap::projection(total, 0..split),
            inner: Box::new(a.clone()),
        },
        FuzzyExpr::Pullback {
            map: AffineMap::projection(total, split..total),
            inner: Box::new(b.clone()),
        },
    ]);
    FuzzySet { domain, body }
}

/// Forward image under an affine map, materialized on `target`: each target
/// cell takes the best grade among source lattice points landing in it.
/// Cells with empty preimage stay at 0.
pub fn image(map: &AffineMap, set: &FuzzySet, target: &Domain) -> Result<FuzzySet> {
    if map.cols() != set.domain().dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: set.domain().dimension(),
            got: map.cols(),
        });
    }
    if map.rows() != target.dimension() {
        return Err(CoreError::DimensionMismatch { expected: target.dimension(), got: map.rows() });
    }
    let mut out = vec![0.0f64; target.lattice_len()];
    let src = set.domain();
    let mut x = Vec::with_capacity(src.dimension());
    let mut y = Vec::with_capacity(target.dimension());
    for j in 0..src.lattice_len() {
        src.point_into(j, &mut x);
        map.apply_into(&x, &mut y);
        if let Some(k) = target.nearest_index(&y) {
            let v = set.body.eval(&x);
            if v > out[k] {
                out[k] = v;
            }
        }
    }
    FuzzySet::new(target.clone(), FuzzyExpr::Grid(GridData { domain: target.clone(), values: out }))
}

/// Lazy preimage under an affine map: the grade at `x` is `set`'s grade at
/// `map(x)`, exactly, with map values outside `set`'s box reading 0.
pub fn preimage(map: &AffineMap, set: &FuzzySet, source: Domain) -> Result<FuzzySet> {
    if map.cols() != source.dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: source.dimension(),
            got: map.cols(),
        });
    }
    if map.rows() != set.domain().dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: set.domain().dimension(),
            got: map.rows(),
        });
    }
    FuzzySet::new(source, FuzzyExpr::Pullback { map: map.clone(), inner: Box::new(set.clone()) })
}
