//! Fuzzy real numbers as sampled level-cut families, and fuzzy vector norms
//! valued in the non-negative fuzzy reals.
//!
//! A fuzzy real is stored as a finite family of closed intervals indexed by
//! an ascending level grid, together with the point of full membership.
//! Queries between sampled levels snap down to the nearest sampled level;
//! queries below the grid floor snap up to the floor.

use serde::{Deserialize, Serialize};

use crate::affine::dot;
use crate::error::{CoreError, Result};
use crate::report::{CheckReport, Witness};

/// Default level grid: 0.01, then 0.05 through 1.0 in steps of 0.05.
pub fn default_alpha_grid() -> Vec<f64> {
    let mut grid = vec![0.01];
    for k in 1..=20 {
        grid.push(k as f64 * 0.05);
    }
    grid
}

/// Index of the largest sampled level at or below `alpha` (floor snap).
fn snap_down(levels: &[f64], alpha: f64) -> usize {
    let above = levels.partition_point(|&l| l <= alpha);
    above.saturating_sub(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.lo && t <= self.hi
    }
}

/// Violations of the fuzzy-real axioms found by [`FuzzyReal::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum RealViolation {
    /// The declared point of full membership is outside the level-1 cut.
    NotNormal { point: f64, cut: Interval },
    /// A cut is empty (lo > hi) or has a non-finite endpoint.
    BadCut { level: f64, cut: Interval },
    /// A higher level's cut is not contained in a lower level's cut.
    NotNested { lower_level: f64, upper_level: f64 },
}

impl std::fmt::Display for RealViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RealViolation::NotNormal { point, cut } => {
                write!(f, "normal point {point} outside level-1 cut [{}, {}]", cut.lo, cut.hi)
            }
            RealViolation::BadCut { level, cut } => {
                write!(f, "cut at level {level} is not a bounded closed interval [{}, {}]", cut.lo, cut.hi)
            }
            RealViolation::NotNested { lower_level, upper_level } => {
                write!(f, "cut at level {upper_level} is not nested inside cut at level {lower_level}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealValidation {
    pub pass: bool,
    pub violations: Vec<RealViolation>,
}

/// A fuzzy real number: closed-interval cuts sampled on a level grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyReal {
    levels: Vec<f64>,
    cuts: Vec<Interval>,
    normal_point: f64,
}

impl FuzzyReal {
    /// Builds from parallel level/cut lists. Levels must be strictly
    /// ascending within (0, 1] and end at 1. Axiom violations (bad cuts,
    /// broken nesting) are representable; only malformed containers are
    /// rejected here.
    pub fn new(levels: Vec<f64>, cuts: Vec<Interval>, normal_point: f64) -> Result<Self> {
        if levels.is_empty() || levels.len() != cuts.len() {
            return Err(CoreError::InvalidParameter(
                "levels and cuts must be nonempty parallel lists".into(),
            ));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) || levels[0] <= 0.0 {
            return Err(CoreError::InvalidParameter(
                "levels must be strictly ascending within (0, 1]".into(),
            ));
        }
        if *levels.last().unwrap() != 1.0 {
            return Err(CoreError::InvalidParameter("level grid must end at 1.0".into()));
        }
        Ok(FuzzyReal { levels, cuts, normal_point })
    }

    /// The crisp number `v`: every cut is the point interval at `v`.
    pub fn crisp(v: f64, levels: Vec<f64>) -> Result<Self> {
        let cuts = vec![Interval::point(v); levels.len()];
        FuzzyReal::new(levels, cuts, v)
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn cuts(&self) -> &[Interval] {
        &self.cuts
    }

    pub fn normal_point(&self) -> f64 {
        self.normal_point
    }

    /// Cut at an arbitrary level in (0, 1], snapped onto the sampled grid.
    pub fn cut_at(&self, alpha: f64) -> Result<Interval> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(CoreError::InvalidLevel(alpha));
        }
        Ok(self.cuts[snap_down(&self.levels, alpha)])
    }

    pub fn upper_at(&self, alpha: f64) -> Result<f64> {
        Ok(self.cut_at(alpha)?.hi)
    }

    pub fn lower_at(&self, alpha: f64) -> Result<f64> {
        Ok(self.cut_at(alpha)?.lo)
    }

    /// Membership grade of `t`: the largest sampled level whose cut
    /// contains `t`, or 0 when no cut does.
    pub fn membership(&self, t: f64) -> f64 {
        for i in (0..self.levels.len()).rev() {
            if self.cuts[i].contains(t) {
                return self.levels[i];
            }
        }
        0.0
    }

    /// Checks normality, boundedness of cuts, and nesting. Violations are
    /// returned as data rather than errors.
    pub fn validate(&self) -> RealValidation {
        let mut violations = Vec::new();
        for (i, cut) in self.cuts.iter().enumerate() {
            if !cut.lo.is_finite() || !cut.hi.is_finite() || cut.lo > cut.hi {
                violations.push(RealViolation::BadCut { level: self.levels[i], cut: *cut });
            }
        }
        let top = *self.cuts.last().unwrap();
        if !top.contains(self.normal_point) {
            violations.push(RealViolation::NotNormal { point: self.normal_point, cut: top });
        }
        for i in 1..self.cuts.len() {
            let (outer, inner) = (self.cuts[i - 1], self.cuts[i]);
            if inner.lo < outer.lo || inner.hi > outer.hi {
                violations.push(RealViolation::NotNested {
                    lower_level: self.levels[i - 1],
                    upper_level: self.levels[i],
                });
            }
        }
        RealValidation { pass: violations.is_empty(), violations }
    }
}

/// Scalar multiple of a fuzzy real: every cut endpoint scales by `|r|`.
pub fn scalar_scale(r: f64, eta: &FuzzyReal) -> FuzzyReal {
    let a = r.abs();
    FuzzyReal {
        levels: eta.levels.clone(),
        cuts: eta.cuts.iter().map(|c| Interval::new(a * c.lo, a * c.hi)).collect(),
        normal_point: a * eta.normal_point,
    }
}

/// A fuzzy real whose cuts stay within the non-negative half line.
#[derive(Debug, Clone, PartialEq)]
pub struct NonNegFuzzyReal(FuzzyReal);

impl NonNegFuzzyReal {
    pub fn new(real: FuzzyReal) -> Result<Self> {
        if real.cuts.iter().any(|c| c.lo < 0.0) {
            return Err(CoreError::InvalidParameter(
                "a non-negative fuzzy real cannot have a cut below zero".into(),
            ));
        }
        Ok(NonNegFuzzyReal(real))
    }

    pub fn as_real(&self) -> &FuzzyReal {
        &self.0
    }

    pub fn into_real(self) -> FuzzyReal {
        self.0
    }
}

/// Euclidean length with a fixed accumulation order.
pub fn euclid_len(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// How two membership grades combine on the right/left side of the
/// triangle-style axioms. Only min and max ship.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombinationMap {
    Min,
    Max,
}

impl CombinationMap {
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            CombinationMap::Min => a.min(b),
            CombinationMap::Max => a.max(b),
        }
    }
}

/// The shipped norm catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    /// Crisp Euclidean length.
    Euclidean,
    /// On the scalar field only: membership `1 - t/|x|` on `[0, |x|]`,
    /// so the cut at level `a` is `[0, |x|(1 - a)]`.
    Star,
    /// Crisp `sqrt(sum w_i x_i^2) + offset`. A positive offset deliberately
    /// breaks the zero axiom and exists for negative tests.
    WeightedCrisp { weights: Vec<f64>, offset: f64 },
}

/// A fuzzy norm: vectors to non-negative fuzzy reals, plus the grade
/// combination maps used by the triangle-style axioms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FelbinNorm {
    kind: NormKind,
    dim: usize,
    left: CombinationMap,
    right: CombinationMap,
    levels: Vec<f64>,
}

impl FelbinNorm {
    pub fn euclidean(dim: usize) -> Self {
        FelbinNorm {
            kind: NormKind::Euclidean,
            dim,
            left: CombinationMap::Min,
            right: CombinationMap::Max,
            levels: default_alpha_grid(),
        }
    }

    pub fn star() -> Self {
        FelbinNorm {
            kind: NormKind::Star,
            dim: 1,
            left: CombinationMap::Min,
            right: CombinationMap::Max,
            levels: default_alpha_grid(),
        }
    }

    pub fn weighted_crisp(weights: Vec<f64>, offset: f64) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|&w| !(w > 0.0)) {
            return Err(CoreError::InvalidParameter("weights must be positive".into()));
        }
        if offset < 0.0 {
            return Err(CoreError::InvalidParameter("offset must be non-negative".into()));
        }
        let dim = weights.len();
        Ok(FelbinNorm {
            kind: NormKind::WeightedCrisp { weights, offset },
            dim,
            left: CombinationMap::Min,
            right: CombinationMap::Max,
            levels: default_alpha_grid(),
        })
    }

    pub fn with_levels(mut self, levels: Vec<f64>) -> Result<Self> {
        // Reuse the container validation from FuzzyReal.
        FuzzyReal::new(levels.clone(), vec![Interval::point(0.0); levels.len()], 0.0)?;
        self.levels = levels;
        Ok(self)
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn left_map(&self) -> CombinationMap {
        self.left
    }

    pub fn right_map(&self) -> CombinationMap {
        self.right
    }

    fn crisp_value(&self, x: &[f64]) -> f64 {
        match &self.kind {
            NormKind::Euclidean => euclid_len(x),
            NormKind::Star => x[0].abs(),
            NormKind::WeightedCrisp { weights, offset } => {
                let mut acc = 0.0;
                for i in 0..x.len() {
                    acc += weights[i] * x[i] * x[i];
                }
                acc.sqrt() + offset
            }
        }
    }

    /// The norm of `x` as a non-negative fuzzy real on the sampled grid.
    pub fn map(&self, x: &[f64]) -> Result<NonNegFuzzyReal> {
        if x.len() != self.dim {
            return Err(CoreError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let real = match &self.kind {
            NormKind::Euclidean | NormKind::WeightedCrisp { .. } => {
                FuzzyReal::crisp(self.crisp_value(x), self.levels.clone())?
            }
            NormKind::Star => {
                let a = x[0].abs();
                let cuts = self.levels.iter().map(|&lv| Interval::new(0.0, a * (1.0 - lv))).collect();
                FuzzyReal::new(self.levels.clone(), cuts, 0.0)?
            }
        };
        NonNegFuzzyReal::new(real)
    }

    /// Upper endpoint of the cut of `|| x ||` at `alpha` (floor-snapped),
    /// evaluated in closed form. Agrees with `map(x).upper_at(alpha)`.
    pub fn upper(&self, x: &[f64], alpha: f64) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        match &self.kind {
            NormKind::Euclidean | NormKind::WeightedCrisp { .. } => self.crisp_value(x),
            NormKind::Star => {
                let lv = self.levels[snap_down(&self.levels, alpha)];
                x[0].abs() * (1.0 - lv)
            }
        }
    }

    /// Lower endpoint of the cut at `alpha`.
    pub fn lower(&self, x: &[f64], alpha: f64) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        match &self.kind {
            NormKind::Euclidean | NormKind::WeightedCrisp { .. } => self.crisp_value(x),
            NormKind::Star => {
                let _ = alpha;
                0.0
            }
        }
    }

    /// Upper endpoint at the smallest sampled level; by cut nesting this is
    /// the supremum of the upper endpoints over the whole grid.
    pub fn sup_upper(&self, x: &[f64]) -> f64 {
        self.upper(x, self.levels[0])
    }

    /// A Euclidean radius `R` such that the cut condition
    /// `upper(d, alpha) < eps` forces `|d| <= R`. Infinite when the cut
    /// ball is unbounded (star norm near level 1).
    pub fn ball_bounding_radius(&self, alpha: f64, eps: f64) -> f64 {
        match &self.kind {
            NormKind::Euclidean => eps,
            NormKind::Star => {
                let lv = self.levels[snap_down(&self.levels, alpha)];
                if 1.0 - lv <= 0.0 {
                    f64::INFINITY
                } else {
                    eps / (1.0 - lv)
                }
            }
            NormKind::WeightedCrisp { weights, offset } => {
                if eps <= *offset {
                    0.0
                } else {
                    let wmin = weights.iter().cloned().fold(f64::INFINITY, f64::min);
                    (eps - offset) / wmin.sqrt()
                }
            }
        }
    }
}

/// Checks the fuzzy-norm axioms on sampled vectors and scalars.
///
/// Returns one report per axiom: the zero axiom, absolute homogeneity, and
/// the two triangle-style inequalities. The triangle checks sample (s, t)
/// from `scalars` plus the exact guard endpoints, so the guard conditions
/// activate rather than holding vacuously.
pub fn felbin_axioms_check(
    norm: &FelbinNorm,
    vectors: &[Vec<f64>],
    scalars: &[f64],
) -> Result<Vec<CheckReport>> {
    const TOL: f64 = 1e-9;
    for v in vectors {
        if v.len() != norm.dim() {
            return Err(CoreError::DimensionMismatch { expected: norm.dim(), got: v.len() });
        }
    }

    // F1: the zero vector maps to crisp 0, and nothing else collapses to it.
    let zero = vec![0.0; norm.dim()];
    let mut f1_violation: f64 = 0.0;
    let mut f1_witness = None;
    let at_zero = norm.map(&zero)?;
    for cut in at_zero.as_real().cuts() {
        let size = cut.lo.abs().max(cut.hi.abs());
        if size > f1_violation {
            f1_violation = size;
            f1_witness = Some(Witness {
                point: zero.clone(),
                detail: format!("norm of 0 has cut [{}, {}]", cut.lo, cut.hi),
            });
        }
    }
    for v in vectors.iter().filter(|v| v.iter().any(|&c| c != 0.0)) {
        let n = norm.map(v)?;
        let size = n
            .as_real()
            .cuts()
            .iter()
            .map(|c| c.lo.abs().max(c.hi.abs()))
            .fold(0.0, f64::max);
        if size == 0.0 {
            f1_violation = f64::max(f1_violation, 1.0);
            f1_witness = Some(Witness {
                point: v.clone(),
                detail: "nonzero vector maps to crisp 0".into(),
            });
        }
    }
    let f1 = CheckReport::from_violation("felbin-f1", f1_violation, TOL, f1_witness);

    // F2: ||r x|| equals |r| * ||x|| cut-for-cut.
    let mut f2_violation: f64 = 0.0;
    let mut f2_witness = None;
    for v in vectors {
        for &r in scalars {
            let scaled: Vec<f64> = v.iter().map(|&c| r * c).collect();
            let lhs = norm.map(&scaled)?;
            let rhs = scalar_scale(r, norm.map(v)?.as_real());
            for (a, b) in lhs.as_real().cuts().iter().zip(rhs.cuts()) {
                let d = (a.lo - b.lo).abs().max((a.hi - b.hi).abs());
                if d > f2_violation {
                    f2_violation = d;
                    f2_witness = Some(Witness {
                        point: v.clone(),
                        detail: format!("homogeneity off by {d} at scalar {r}"),
                    });
                }
            }
        }
    }
    let f2 = CheckReport::from_violation("felbin-f2", f2_violation, TOL, f2_witness);

    // F3, right side: for s >= lower(x, 1), t >= lower(y, 1) with
    // s + t >= lower(x+y, 1), the grade of ||x+y|| at s+t must not exceed
    // R(grade of ||x|| at s, grade of ||y|| at t).
    let mut f3r_violation: f64 = 0.0;
    let mut f3r_witness = None;
    // F3, left side: mirrored with <= guards and the L map.
    let mut f3l_violation: f64 = 0.0;
    let mut f3l_witness = None;
    for x in vectors {
        for y in vectors {
            let sum: Vec<f64> = x.iter().zip(y).map(|(&a, &b)| a + b).collect();
            let nx = norm.map(x)?.into_real();
            let ny = norm.map(y)?.into_real();
            let nsum = norm.map(&sum)?.into_real();
            let x1 = nx.lower_at(1.0)?;
            let y1 = ny.lower_at(1.0)?;
            let s1 = nsum.lower_at(1.0)?;
            let mut s_pool = scalars.to_vec();
            s_pool.push(x1);
            let mut t_pool = scalars.to_vec();
            t_pool.push(y1);
            for &s in &s_pool {
                for &t in &t_pool {
                    if s >= x1 && t >= y1 && s + t >= s1 {
                        let lhs = nsum.membership(s + t);
                        let rhs = norm.right_map().apply(nx.membership(s), ny.membership(t));
                        let gap = lhs - rhs;
                        if gap > f3r_violation {
                            f3r_violation = gap;
                            f3r_witness = Some(Witness {
                                point: vec![s, t],
                                detail: format!("grade {lhs} exceeds combined bound {rhs}"),
                            });
                        }
                    }
                    if s <= x1 && t <= y1 && s + t <= s1 {
                        let lhs = nsum.membership(s + t);
                        let rhs = norm.left_map().apply(nx.membership(s), ny.membership(t));
                        let gap = rhs - lhs;
                        if gap > f3l_violation {
                            f3l_violation = gap;
                            f3l_witness = Some(Witness {
                                point: vec![s, t],
                                detail: format!("grade {lhs} falls below combined bound {rhs}"),
                            });
                        }
                    }
                }
            }
        }
    }
    let f3r = CheckReport::from_violation("felbin-f3-right", f3r_violation, TOL, f3r_witness);
    let f3l = CheckReport::from_violation("felbin-f3-left", f3l_violation, TOL, f3l_witness);

    Ok(vec![f1, f2, f3r, f3l])
}
