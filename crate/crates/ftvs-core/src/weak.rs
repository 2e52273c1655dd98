//! Weak fuzzy topologies over dual pairs: neighborhood evaluation,
//! net-convergence certification, span decomposition with witnesses,
//! Hausdorff separation, adjoints, and the weak seminorm.
//!
//! Scalar-side fuzzy sets live on a one-dimensional domain; every pairing
//! value is computed through the shared [`dot`] accumulation so that the
//! same functional evaluated two ways agrees bit-for-bit.

use serde::{Deserialize, Serialize};

use crate::affine::{dot, AffineMap};
use crate::domain::Domain;
use crate::error::{CoreError, Result};
use crate::expr::{FuzzyExpr, Predicate};
use crate::linalg;
use crate::lsc;
use crate::norms::{self, BaseNeighborhood};
use crate::report::{CheckReport, Verdict, Witness};
use crate::set::{self, FuzzySet};

/// Residual bound for span decompositions and witness orthogonality.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// Scalar gap below which two functional values count as equal when
/// searching for a separating functional.
pub const SEPARATION_TOL: f64 = 1e-12;

/// Default tolerance for the scalar convergence criterion: tail pairing
/// gaps must stay within this bound.
pub const DEFAULT_SCALAR_TOL: f64 = 0.05;

/// A linear functional on E stored by its coefficient vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearFunctional {
    coefficients: Vec<f64>,
}

impl LinearFunctional {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(CoreError::InvalidParameter("functional has no coefficients".into()));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(CoreError::InvalidParameter("functional coefficients must be finite".into()));
        }
        Ok(LinearFunctional { coefficients })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        LinearFunctional::new(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0.0)
    }

    /// The pairing ⟨x, x'⟩.
    pub fn apply(&self, x: &[f64]) -> f64 {
        dot(&self.coefficients, x)
    }

    pub fn scale(&self, t: f64) -> LinearFunctional {
        LinearFunctional { coefficients: self.coefficients.iter().map(|&c| t * c).collect() }
    }

    /// The functional as a 1-row linear map, for pullbacks and images.
    pub fn as_map(&self) -> AffineMap {
        AffineMap::linear(1, self.dim(), self.coefficients.clone())
            .expect("coefficients were validated at construction")
    }
}

/// A dual pair at desk scale: the space dimension, a finite catalog of
/// functionals standing in for E', and the scalar-side lattice domain.
///
/// The catalog may not contain the zero functional. Whether the catalog
/// separates points is a property of the data, exposed by
/// [`DualPairScenario::separates_points`] rather than forced here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualPairScenario {
    dimension: usize,
    functionals: Vec<LinearFunctional>,
    scalar_domain: Domain,
}

impl DualPairScenario {
    pub fn new(
        dimension: usize,
        functionals: Vec<LinearFunctional>,
        scalar_domain: Domain,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(CoreError::InvalidParameter("dimension must be positive".into()));
        }
        if scalar_domain.dimension() != 1 {
            return Err(CoreError::InvalidDomain(
                "the scalar domain must be one-dimensional".into(),
            ));
        }
        if functionals.is_empty() {
            return Err(CoreError::EmptyOperands);
        }
        for f in &functionals {
            if f.dim() != dimension {
                return Err(CoreError::DimensionMismatch { expected: dimension, got: f.dim() });
            }
            if f.is_zero() {
                return Err(CoreError::InvalidParameter(
                    "the functional catalog may not contain the zero functional".into(),
                ));
            }
        }
        Ok(DualPairScenario { dimension, functionals, scalar_domain })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn functionals(&self) -> &[LinearFunctional] {
        &self.functionals
    }

    pub fn scalar_domain(&self) -> &Domain {
        &self.scalar_domain
    }

    /// Whether the catalog separates points of E, i.e. no nonzero vector
    /// is annihilated by every functional.
    pub fn separates_points(&self) -> bool {
        let rows: Vec<Vec<f64>> =
            self.functionals.iter().map(|f| f.coefficients.clone()).collect();
        linalg::rank(&rows) == self.dimension
    }
}

/// A basic weak neighborhood: finitely many (functional, scalar fuzzy set)
/// pairs, evaluated as the min of the scalar grades at the pairing values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakNeighborhood {
    pairs: Vec<(LinearFunctional, FuzzySet)>,
}

impl WeakNeighborhood {
    pub fn new(pairs: Vec<(LinearFunctional, FuzzySet)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(CoreError::EmptyOperands);
        }
        let dim = pairs[0].0.dim();
        for (f, scalar) in &pairs {
            if f.dim() != dim {
                return Err(CoreError::DimensionMismatch { expected: dim, got: f.dim() });
            }
            if scalar.domain().dimension() != 1 {
                return Err(CoreError::InvalidDomain(
                    "scalar fuzzy sets must live on a one-dimensional domain".into(),
                ));
            }
        }
        Ok(WeakNeighborhood { pairs })
    }

    pub fn pairs(&self) -> &[(LinearFunctional, FuzzySet)] {
        &self.pairs
    }

    pub fn dimension(&self) -> usize {
        self.pairs[0].0.dim()
    }

    /// The same neighborhood recentered at `x`: each scalar set is shifted
    /// by the pairing value ⟨x, fᵢ⟩.
    pub fn translate_to(&self, x: &[f64]) -> Result<WeakNeighborhood> {
        if x.len() != self.dimension() {
            return Err(CoreError::DimensionMismatch {
                expected: self.dimension(),
                got: x.len(),
            });
        }
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for (f, scalar) in &self.pairs {
            pairs.push((f.clone(), scalar.translate(&[f.apply(x)])?));
        }
        Ok(WeakNeighborhood { pairs })
    }

    /// The neighborhood as a single fuzzy set on `domain`: the meet of the
    /// scalar sets pulled back along their functionals. Evaluating it
    /// agrees bit-for-bit with [`weak_eval`] because both sides compute
    /// each pairing through the same accumulation.
    pub fn to_fuzzy_set(&self, domain: &Domain) -> Result<FuzzySet> {
        if domain.dimension() != self.dimension() {
            return Err(CoreError::DimensionMismatch {
                expected: self.dimension(),
                got: domain.dimension(),
            });
        }
        let children = self
            .pairs
            .iter()
            .map(|(f, scalar)| FuzzyExpr::Pullback {
                map: f.as_map(),
                inner: Box::new(scalar.clone()),
            })
            .collect();
        FuzzySet::new(domain.clone(), FuzzyExpr::Meet(children))
    }
}

/// Grade of `x` in the weak neighborhood: the min over pairs of the scalar
/// set evaluated at the pairing value.
pub fn weak_eval(v: &WeakNeighborhood, x: &[f64]) -> Result<f64> {
    if x.len() != v.dimension() {
        return Err(CoreError::DimensionMismatch { expected: v.dimension(), got: x.len() });
    }
    let mut grade = 1.0_f64;
    for (f, scalar) in v.pairs() {
        grade = grade.min(scalar.eval(&[f.apply(x)]));
        if grade <= 0.0 {
            break;
        }
    }
    Ok(grade)
}

/// The unit scalar band: crisp indicator of (-1, 1) on `scalar_domain`.
pub fn scalar_unit_ball(scalar_domain: &Domain) -> Result<FuzzySet> {
    if scalar_domain.dimension() != 1 {
        return Err(CoreError::InvalidDomain("the scalar domain must be one-dimensional".into()));
    }
    FuzzySet::indicator(scalar_domain.clone(), Predicate::open_interval(-1.0, 1.0))
}

/// Canonical basic neighborhood of zero: pairs fᵢ with θᵢ ∧ (tᵢ · unit
/// band) on the scalar domain.
pub fn weak_base_neighborhood(
    functionals: &[LinearFunctional],
    thetas: &[f64],
    ts: &[f64],
    scalar_domain: &Domain,
) -> Result<WeakNeighborhood> {
    if functionals.len() != thetas.len() || functionals.len() != ts.len() {
        return Err(CoreError::InvalidParameter(format!(
            "got {} functionals, {} thetas, {} dilations; the lists must have equal length",
            functionals.len(),
            thetas.len(),
            ts.len()
        )));
    }
    let band = scalar_unit_ball(scalar_domain)?;
    let mut pairs = Vec::with_capacity(functionals.len());
    for ((f, &theta), &t) in functionals.iter().zip(thetas).zip(ts) {
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(CoreError::InvalidLevel(theta));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(CoreError::InvalidParameter(format!(
                "dilation factor must be positive and finite, got {t}"
            )));
        }
        let body = FuzzyExpr::Meet(vec![
            FuzzyExpr::Constant(theta),
            FuzzyExpr::Scale { factor: t, inner: Box::new(band.body().clone()) },
        ]);
        pairs.push((f.clone(), FuzzySet::new(scalar_domain.clone(), body)?));
    }
    WeakNeighborhood::new(pairs)
}

/// Outcome of the two net-convergence criteria on the same data. The
/// wrapped report fails when either criterion fails; the flags preserve
/// which one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetConvergence {
    pub neighborhood_pass: bool,
    pub scalar_pass: bool,
    pub report: CheckReport,
}

impl NetConvergence {
    pub fn criteria_agree(&self) -> bool {
        self.neighborhood_pass == self.scalar_pass
    }
}

/// Certifies convergence of a finite sequence tail to `x` two ways: every
/// catalog neighborhood recentered at `x` must eventually hold the tail
/// above each sampled grade below its own grade at `x`, and every scenario
/// functional must squeeze the tail pairing gaps within `scalar_tol`.
pub fn net_converges_weakly(
    sequence: &[Vec<f64>],
    x: &[f64],
    scenario: &DualPairScenario,
    catalog: &[WeakNeighborhood],
    tail: usize,
    grades: &[f64],
    scalar_tol: f64,
) -> Result<NetConvergence> {
    if sequence.is_empty() {
        return Err(CoreError::EmptyOperands);
    }
    if tail >= sequence.len() {
        return Err(CoreError::InvalidParameter(format!(
            "tail index {tail} leaves no entries in a sequence of length {}",
            sequence.len()
        )));
    }
    if !(scalar_tol.is_finite() && scalar_tol > 0.0) {
        return Err(CoreError::InvalidParameter(format!(
            "scalar tolerance must be positive, got {scalar_tol}"
        )));
    }
    let dim = scenario.dimension();
    if x.len() != dim {
        return Err(CoreError::DimensionMismatch { expected: dim, got: x.len() });
    }
    for entry in sequence {
        if entry.len() != dim {
            return Err(CoreError::DimensionMismatch { expected: dim, got: entry.len() });
        }
    }
    for v in catalog {
        if v.dimension() != dim {
            return Err(CoreError::DimensionMismatch { expected: dim, got: v.dimension() });
        }
    }

    let mut neighborhood_worst = 0.0_f64;
    let mut neighborhood_witness: Option<Witness> = None;
    for (vi, v) in catalog.iter().enumerate() {
        let centered = v.translate_to(x)?;
        let center_grade = weak_eval(&centered, x)?;
        for &r in grades {
            if r >= center_grade {
                continue;
            }
            for (j, entry) in sequence.iter().enumerate().skip(tail) {
                let grade = weak_eval(&centered, entry)?;
                if grade <= r {
                    let gap = r - grade;
                    if gap >= neighborhood_worst {
                        neighborhood_worst = gap.max(f64::MIN_POSITIVE);
                        neighborhood_witness = Some(Witness {
                            point: entry.clone(),
                            detail: format!(
                                "entry {j} sits at grade {grade} in catalog neighborhood {vi}, not above {r}"
                            ),
                        });
                    }
                }
            }
        }
    }
    let neighborhood_pass = neighborhood_witness.is_none();

    let mut scalar_worst = 0.0_f64;
    let mut scalar_witness: Option<Witness> = None;
    for (fi, f) in scenario.functionals().iter().enumerate() {
        let at_x = f.apply(x);
        for (j, entry) in sequence.iter().enumerate().skip(tail) {
            let gap = (f.apply(entry) - at_x).abs();
            if gap > scalar_tol && gap - scalar_tol > scalar_worst {
                scalar_worst = gap - scalar_tol;
                scalar_witness = Some(Witness {
                    point: entry.clone(),
                    detail: format!("entry {j} pairs {gap} away from the limit under functional {fi}"),
                });
            }
        }
    }
    let scalar_pass = scalar_witness.is_none();

    let worst = neighborhood_worst.max(scalar_worst);
    let witness = if neighborhood_worst >= scalar_worst && !neighborhood_pass {
        neighborhood_witness
    } else {
        scalar_witness
    };
    let mut report = CheckReport::from_violation("net-convergence", worst, 0.0, witness)
        .with_note(format!(
            "neighborhood criterion: {}; scalar criterion (tolerance {scalar_tol}): {}",
            if neighborhood_pass { "pass" } else { "fail" },
            if scalar_pass { "pass" } else { "fail" },
        ))
        .with_note(format!(
            "{} catalog neighborhoods, {} functionals, tail starts at entry {tail}",
            catalog.len(),
            scenario.functionals().len()
        ));
    if neighborhood_pass != scalar_pass {
        report = report.with_note("the two criteria disagree on this data".to_string());
    }
    Ok(NetConvergence { neighborhood_pass, scalar_pass, report })
}

/// Either the coefficients expressing a functional over a catalog, or a
/// vector witnessing that it lies outside the span.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DecomposeResult {
    /// f₀ = Σ λᵢ fᵢ with the residual within [`RESIDUAL_TOL`].
    Coefficients(Vec<f64>),
    /// A vector `a` with f₀(a) = 1 and fᵢ(a) = 0 for every catalog fᵢ.
    Witness(Vec<f64>),
}

/// Expresses `f0` over the catalog span, or produces a witness vector
/// annihilated by the catalog but not by `f0`. Both branches are total:
/// when `f0` is not a combination, the null space of the catalog must meet
/// the complement of f0's kernel.
pub fn decompose_or_witness(
    f0: &LinearFunctional,
    catalog: &[LinearFunctional],
) -> Result<DecomposeResult> {
    let dim = f0.dim();
    for f in catalog {
        if f.dim() != dim {
            return Err(CoreError::DimensionMismatch { expected: dim, got: f.dim() });
        }
    }
    let rows: Vec<Vec<f64>> = catalog.iter().map(|f| f.coefficients.clone()).collect();
    if let Some(coefficients) = linalg::combination_coefficients(f0.coefficients(), &rows) {
        return Ok(DecomposeResult::Coefficients(coefficients));
    }
    let candidates = linalg::null_space_basis(&rows, dim);
    let best = candidates
        .into_iter()
        .map(|v| (f0.apply(&v).abs(), v))
        .max_by(|a, b| a.0.total_cmp(&b.0));
    match best {
        Some((mag, v)) if mag > 0.0 => {
            let value = f0.apply(&v);
            let a: Vec<f64> = v.iter().map(|&c| c / value).collect();
            Ok(DecomposeResult::Witness(a))
        }
        _ => Err(CoreError::InvalidSet(
            "elimination found no combination and no witness; the system is numerically degenerate"
                .into(),
        )),
    }
}

/// Builds a separating functional and two crisp open scalar intervals for
/// a pair of distinct points: the first catalog functional telling the
/// points apart, with intervals around the two pairing values meeting at
/// their shared midpoint so their pointwise min is 0 by construction.
pub fn hausdorff_witness(
    x: &[f64],
    y: &[f64],
    scenario: &DualPairScenario,
) -> Result<(LinearFunctional, FuzzySet, FuzzySet)> {
    let dim = scenario.dimension();
    if x.len() != dim || y.len() != dim {
        return Err(CoreError::DimensionMismatch {
            expected: dim,
            got: if x.len() != dim { x.len() } else { y.len() },
        });
    }
    if x == y {
        return Err(CoreError::IdenticalPoints);
    }
    let found = scenario
        .functionals()
        .iter()
        .find(|f| (f.apply(x) - f.apply(y)).abs() > SEPARATION_TOL);
    let functional = match found {
        Some(f) => f.clone(),
        None => return Err(CoreError::NoSeparatingFunctional),
    };
    let cx = functional.apply(x);
    let cy = functional.apply(y);
    let scalar_domain = scenario.scalar_domain();
    if !scalar_domain.contains(&[cx]) || !scalar_domain.contains(&[cy]) {
        return Err(CoreError::InvalidDomain(format!(
            "pairing values {cx} and {cy} fall outside the scalar domain box"
        )));
    }
    let mid = (cx + cy) / 2.0;
    let half = (cy - cx).abs() / 2.0;
    let (beta, eta) = if cx < cy {
        (
            Predicate::open_interval(cx - half, mid),
            Predicate::open_interval(mid, cy + half),
        )
    } else {
        (
            Predicate::open_interval(mid, cx + half),
            Predicate::open_interval(cy - half, mid),
        )
    };
    Ok((
        functional,
        FuzzySet::indicator(scalar_domain.clone(), beta)?,
        FuzzySet::indicator(scalar_domain.clone(), eta)?,
    ))
}

/// Lower-semicontinuity of the neighborhood as a whole: materializes the
/// meet-of-pullbacks composite on `domain` and runs the semicontinuity
/// check on it, noting each scalar set's own verdict alongside.
pub fn weakly_lsc_check(v: &WeakNeighborhood, domain: &Domain) -> Result<CheckReport> {
    let composite = v.to_fuzzy_set(domain)?;
    let mut report = lsc::is_lsc(&composite);
    report.name = "weakly-lsc".into();
    for (i, (_, scalar)) in v.pairs().iter().enumerate() {
        let sub = lsc::is_lsc(scalar);
        let verdict = match sub.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unknown => "unknown",
        };
        report = report.with_note(format!("scalar set {i} semicontinuity: {verdict}"));
    }
    Ok(report)
}

/// The adjoint of a linear map as the transpose action on coefficient
/// vectors. Rejects maps with a nonzero offset: those are affine, not
/// linear, and have no adjoint in this sense.
pub fn adjoint(map: &AffineMap) -> Result<AffineMap> {
    if map.offset().iter().any(|&c| c != 0.0) {
        return Err(CoreError::InvalidParameter(
            "the map has a nonzero offset; adjoints exist only for linear maps".into(),
        ));
    }
    let (rows, cols) = (map.rows(), map.cols());
    let mut transposed = vec![0.0; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            transposed[c * rows + r] = map.matrix()[r * cols + c];
        }
    }
    AffineMap::linear(cols, rows, transposed)
}

/// The adjoint applied to one functional: coefficients Tᵀ·y'.
pub fn adjoint_apply(map: &AffineMap, y_prime: &LinearFunctional) -> Result<LinearFunctional> {
    if y_prime.dim() != map.rows() {
        return Err(CoreError::DimensionMismatch { expected: map.rows(), got: y_prime.dim() });
    }
    let transpose = adjoint(map)?;
    LinearFunctional::new(transpose.apply(y_prime.coefficients()))
}

/// Weak continuity of `map` from the E scenario into the F scenario: every
/// catalog functional of F must pull back along the map into the span of
/// E's catalog.
pub fn weakly_continuous_check(
    map: &AffineMap,
    e_scenario: &DualPairScenario,
    f_scenario: &DualPairScenario,
) -> Result<CheckReport> {
    if map.cols() != e_scenario.dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: e_scenario.dimension(),
            got: map.cols(),
        });
    }
    if map.rows() != f_scenario.dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: f_scenario.dimension(),
            got: map.rows(),
        });
    }
    let mut failing = 0usize;
    let mut witness = None;
    for (i, y_prime) in f_scenario.functionals().iter().enumerate() {
        let pulled = adjoint_apply(map, y_prime)?;
        match decompose_or_witness(&pulled, e_scenario.functionals())? {
            DecomposeResult::Coefficients(_) => {}
            DecomposeResult::Witness(a) => {
                failing += 1;
                if witness.is_none() {
                    witness = Some(Witness {
                        point: a,
                        detail: format!(
                            "adjoint image of functional {i} escapes the domain catalog span; the witness vector separates them"
                        ),
                    });
                }
            }
        }
    }
    let violation = if failing > 0 { 1.0 } else { 0.0 };
    Ok(CheckReport::from_violation("weakly-continuous", violation, 0.0, witness).with_note(
        format!(
            "{} of {} adjoint images decompose over the domain catalog",
            f_scenario.functionals().len() - failing,
            f_scenario.functionals().len()
        ),
    ))
}

/// The seminorm value: the lattice height of the image of `set` under the
/// functional, pushed onto `scalar_domain`.
pub fn weak_seminorm(
    set: &FuzzySet,
    x_prime: &LinearFunctional,
    scalar_domain: &Domain,
) -> Result<f64> {
    if x_prime.dim() != set.domain().dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: set.domain().dimension(),
            got: x_prime.dim(),
        });
    }
    if scalar_domain.dimension() != 1 {
        return Err(CoreError::InvalidDomain("the scalar domain must be one-dimensional".into()));
    }
    let image = set::image(&x_prime.as_map(), set, scalar_domain)?;
    Ok(image.height())
}

/// Audits the seminorm's scaling invariance over the sampled factors and
/// its value at the zero functional, and records that the literal formula
/// collapses to the set's height for every functional.
pub fn weak_seminorm_check(
    set: &FuzzySet,
    x_prime: &LinearFunctional,
    factors: &[f64],
    scalar_domain: &Domain,
) -> Result<CheckReport> {
    if factors.is_empty() {
        return Err(CoreError::EmptyOperands);
    }
    for &t in factors {
        if !(t.is_finite() && t != 0.0 && t.abs() <= 1.0) {
            return Err(CoreError::InvalidParameter(format!(
                "scaling factors must be nonzero with |t| <= 1, got {t}"
            )));
        }
    }
    let reference = weak_seminorm(set, x_prime, scalar_domain)?;
    let mut worst = 0.0_f64;
    let mut witness = None;
    for &t in factors {
        let scaled = weak_seminorm(set, &x_prime.scale(t), scalar_domain)?;
        let gap = (scaled - reference).abs();
        if gap > worst {
            worst = gap;
            witness = Some(Witness {
                point: vec![t],
                detail: format!("seminorm moved from {reference} to {scaled} under this factor"),
            });
        }
    }
    let zero = weak_seminorm(set, &LinearFunctional::zero(x_prime.dim())?, scalar_domain)?;
    let zero_gap = (zero - set.height()).abs();
    if zero_gap > worst {
        worst = zero_gap;
        witness = Some(Witness {
            point: vec![0.0],
            detail: format!(
                "the zero functional gives {zero}, but the set's height is {}",
                set.height()
            ),
        });
    }
    Ok(CheckReport::from_violation("weak-seminorm", worst, 0.0, witness)
        .with_note(format!("{} scaling factors checked against the unscaled value", factors.len()))
        .with_note(
            "degeneracy: the literal sup-of-image formula yields the set's height for every \
             functional whose image meets the scalar box, so the seminorm is constant there",
        ))
}

/// Weak boundedness: the image of the set under every catalog functional
/// must be absorbed by every element of the scalar-side base catalog.
pub fn weakly_bounded_check(
    set: &FuzzySet,
    scenario: &DualPairScenario,
    base: &[BaseNeighborhood],
    thetas: &[f64],
    t_grid: &[f64],
) -> Result<CheckReport> {
    if set.domain().dimension() != scenario.dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: scenario.dimension(),
            got: set.domain().dimension(),
        });
    }
    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut any_unknown = false;
    for (i, f) in scenario.functionals().iter().enumerate() {
        let image = match set.body() {
            // A constant body pushes forward to the same constant: the
            // catalog has no zero functional, so every scalar value has a
            // nonempty preimage. Keeping the analytic form preserves the
            // constant's tail beyond the box, which grid materialization
            // would truncate.
            FuzzyExpr::Constant(c) => {
                FuzzySet::new(scenario.scalar_domain().clone(), FuzzyExpr::Constant(*c))?
            }
            _ => set::image(&f.as_map(), set, scenario.scalar_domain())?,
        };
        let sub = norms::is_bounded(&image, base, thetas, t_grid)?;
        match sub.verdict {
            Verdict::Unknown => any_unknown = true,
            _ => {
                if sub.max_violation > worst {
                    worst = sub.max_violation;
                    witness = sub.witness.map(|w| Witness {
                        point: w.point,
                        detail: format!("image under functional {i}: {}", w.detail),
                    });
                }
            }
        }
    }
    let mut report = CheckReport::from_violation("weakly-bounded", worst, norms::NUMERIC_TOL, witness)
        .with_note(format!(
            "{} functional images tested against {} base elements",
            scenario.functionals().len(),
            base.len()
        ));
    if any_unknown && report.verdict == Verdict::Pass {
        report.verdict = Verdict::Unknown;
        report = report.with_note("some base elements vanish at the origin; their absorption is undefined");
    }
    Ok(report)
}
