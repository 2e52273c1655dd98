//! Katsaras-style norms, neighborhood bases, and the fuzzy-topology
//! property checkers (convexity, balancedness, absorption, boundedness,
//! topology axioms, Hausdorff separation).
//!
//! Every checker sweeps declared finite grids and reports the worst
//! violation it saw. Checks that compare grades at lattice points use
//! tolerance 0; checks whose probes leave the lattice (convex combinations,
//! scalar dilations) use [`NUMERIC_TOL`] as floating-point headroom.

use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::{CoreError, Result};
use crate::expr::{FuzzyExpr, NormLevel, Predicate};
use crate::lsc::stencil_directions;
use crate::reals::FelbinNorm;
use crate::report::{CheckReport, Verdict, Witness};
use crate::set::FuzzySet;

/// Headroom for checks that evaluate at points computed by floating-point
/// arithmetic rather than read off the lattice.
pub const NUMERIC_TOL: f64 = 1e-9;

/// Default dilation grid: 61 log-spaced values covering [1e-3, 1e3].
pub fn default_t_grid() -> Vec<f64> {
    (0..=60).map(|k| 10f64.powf((k as f64 - 30.0) / 10.0)).collect()
}

/// Default grade grid {0.1, 0.2, ..., 1.0}.
pub fn default_alpha_grid() -> Vec<f64> {
    (1..=10).map(|k| k as f64 / 10.0).collect()
}

/// Default level grid {0.1, ..., 0.9} for neighborhood and absorption sweeps.
pub fn default_theta_grid() -> Vec<f64> {
    (1..=9).map(|k| k as f64 / 10.0).collect()
}

/// Default convex-combination weights {0, 0.1, ..., 1}.
pub fn default_convexity_weights() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 10.0).collect()
}

/// Default balancedness factors {-1, -0.9, ..., 1}.
pub fn default_balance_factors() -> Vec<f64> {
    (0..=20).map(|k| (k as f64 - 10.0) / 10.0).collect()
}

/// Default sphere-radius search grid: descending powers of two from 8 down
/// to 2^-8. Powers of two keep radius scaling exact in floating point.
pub fn default_radius_grid() -> Vec<f64> {
    (0..=11).map(|k| 2f64.powi(3 - k)).collect()
}

/// A candidate Katsaras norm: a fuzzy set on E expected to be convex,
/// balanced, absorbing, and with vanishing dilations off the origin.
///
/// The wrapper itself does not enforce those properties; they are audited
/// by [`katsaras_axioms_check`]. Construct one from a Felbin norm with
/// [`katsaras_from_felbin`], or wrap any candidate set to audit it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KatsarasNorm {
    rho: FuzzySet,
}

impl KatsarasNorm {
    pub fn new(rho: FuzzySet) -> Self {
        KatsarasNorm { rho }
    }

    pub fn rho(&self) -> &FuzzySet {
        &self.rho
    }

    pub fn domain(&self) -> &Domain {
        self.rho.domain()
    }
}

/// One element of the canonical neighborhood base at zero: the data
/// (theta, t) realizing the set theta ∧ (t·rho).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseNeighborhood {
    theta: f64,
    t: f64,
    rho: KatsarasNorm,
}

impl BaseNeighborhood {
    pub fn new(theta: f64, t: f64, rho: &KatsarasNorm) -> Result<Self> {
        validate_level(theta)?;
        validate_dilation(t)?;
        Ok(BaseNeighborhood { theta, t, rho: rho.clone() })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn rho(&self) -> &KatsarasNorm {
        &self.rho
    }

    /// The fuzzy set this base element stands for.
    pub fn realize(&self) -> FuzzySet {
        base_neighborhood(self.theta, self.t, &self.rho)
            .expect("parameters were validated at construction")
    }
}

fn validate_level(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(CoreError::InvalidLevel(theta));
    }
    Ok(())
}

fn validate_dilation(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(CoreError::InvalidParameter(format!(
            "dilation factor must be positive and finite, got {t}"
        )));
    }
    Ok(())
}

fn validate_grid(name: &str, grid: &[f64], lo: f64, hi: f64) -> Result<()> {
    if grid.is_empty() {
        return Err(CoreError::InvalidParameter(format!("{name} grid is empty")));
    }
    for &v in grid {
        if !(v.is_finite() && v >= lo && v <= hi) {
            return Err(CoreError::InvalidParameter(format!(
                "{name} grid value {v} outside [{lo}, {hi}]"
            )));
        }
    }
    Ok(())
}

fn validate_positive_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(CoreError::InvalidParameter(format!("{name} grid is empty")));
    }
    for &v in grid {
        if !(v.is_finite() && v > 0.0) {
            return Err(CoreError::InvalidParameter(format!(
                "{name} grid value {v} must be positive and finite"
            )));
        }
    }
    Ok(())
}

/// All lattice coordinates, flattened row-major with stride `dimension`.
fn lattice_coords(domain: &Domain) -> Vec<f64> {
    let dim = domain.dimension();
    let mut out = Vec::with_capacity(domain.lattice_len() * dim);
    let mut buf = Vec::with_capacity(dim);
    for idx in 0..domain.lattice_len() {
        domain.point_into(idx, &mut buf);
        out.extend_from_slice(&buf);
    }
    out
}

/// Converts a Felbin norm into a crisp candidate Katsaras norm on `domain`:
/// grade 1 where the largest sampled upper cut endpoint stays below 1, and
/// grade 0 elsewhere. The α quantifier is universal over the norm's sampled
/// level grid; by cut nesting the supremum is the endpoint at the smallest
/// sampled level.
pub fn katsaras_from_felbin(norm: &FelbinNorm, domain: Domain) -> Result<KatsarasNorm> {
    if norm.dim() != domain.dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: domain.dimension(),
            got: norm.dim(),
        });
    }
    let ball = Predicate::NormBall {
        norm: norm.clone(),
        level: NormLevel::Sup,
        radius: 1.0,
    };
    Ok(KatsarasNorm::new(FuzzySet::indicator(domain, ball)?))
}

/// The sphere of grade `alpha` and radius `radius` around `center`: value
/// `alpha` where the level-`alpha` upper norm of `y - center` stays below
/// `radius`, and 0 elsewhere.
pub fn alpha_sphere(
    norm: &FelbinNorm,
    domain: Domain,
    alpha: f64,
    center: &[f64],
    radius: f64,
) -> Result<FuzzySet> {
    validate_level(alpha)?;
    validate_dilation(radius)?;
    if center.len() != domain.dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: domain.dimension(),
            got: center.len(),
        });
    }
    if norm.dim() != domain.dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: domain.dimension(),
            got: norm.dim(),
        });
    }
    let ball = Predicate::NormBall {
        norm: norm.clone(),
        level: NormLevel::At(alpha),
        radius,
    };
    let body = FuzzyExpr::Meet(vec![
        FuzzyExpr::Constant(alpha),
        FuzzyExpr::Translate {
            shift: center.to_vec(),
            inner: Box::new(FuzzyExpr::Indicator(ball)),
        },
    ]);
    FuzzySet::new(domain, body)
}

/// The base element theta ∧ (t·rho) as a fuzzy set on rho's domain.
pub fn base_neighborhood(theta: f64, t: f64, rho: &KatsarasNorm) -> Result<FuzzySet> {
    validate_level(theta)?;
    validate_dilation(t)?;
    let body = FuzzyExpr::Meet(vec![
        FuzzyExpr::Constant(theta),
        FuzzyExpr::Scale { factor: t, inner: Box::new(rho.rho().body().clone()) },
    ]);
    FuzzySet::new(rho.domain().clone(), body)
}

/// Convexity sweep: for every pair of support lattice points and every
/// sampled weight w, the grade at the combination w·a + (1-w)·b must not
/// drop below the smaller endpoint grade.
pub fn is_convex(set: &FuzzySet, weights: &[f64]) -> Result<CheckReport> {
    validate_grid("weight", weights, 0.0, 1.0)?;
    let dim = set.domain().dimension();
    let vals = set.materialize();
    let coords = lattice_coords(set.domain());
    let support: Vec<usize> =
        (0..vals.len()).filter(|&i| vals[i] > 0.0).collect();

    // A point's combination with itself is the point, so self-pairs hold
    // identically; only distinct pairs are swept.
    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut combo = vec![0.0; dim];
    for (pos, &i) in support.iter().enumerate() {
        let a = &coords[i * dim..(i + 1) * dim];
        for &j in &support[pos + 1..] {
            let b = &coords[j * dim..(j + 1) * dim];
            let floor = vals[i].min(vals[j]);
            for &w in weights {
                for k in 0..dim {
                    combo[k] = w * a[k] + (1.0 - w) * b[k];
                }
                let gap = floor - set.eval(&combo);
                if gap > worst {
                    worst = gap;
                    witness = Some(Witness {
                        point: combo.clone(),
                        detail: format!(
                            "weight {w} combination of support points with grades {} and {}",
                            vals[i], vals[j]
                        ),
                    });
                }
            }
        }
    }
    Ok(CheckReport::from_violation("convex", worst, NUMERIC_TOL, witness)
        .with_note(format!("{} weights sampled in [0, 1]", weights.len())))
}

/// Balancedness sweep: grades must not drop under scaling by any sampled
/// factor with |t| <= 1, i.e. value(t·x) >= value(x).
pub fn is_balanced(set: &FuzzySet, factors: &[f64]) -> Result<CheckReport> {
    validate_grid("factor", factors, -1.0, 1.0)?;
    let dim = set.domain().dimension();
    let vals = set.materialize();
    let coords = lattice_coords(set.domain());

    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut scaled = vec![0.0; dim];
    for (i, &v) in vals.iter().enumerate() {
        if v <= 0.0 {
            continue;
        }
        let x = &coords[i * dim..(i + 1) * dim];
        for &t in factors {
            for k in 0..dim {
                scaled[k] = t * x[k];
            }
            let gap = v - set.eval(&scaled);
            if gap > worst {
                worst = gap;
                witness = Some(Witness {
                    point: scaled.clone(),
                    detail: format!("scaling a grade-{v} point by {t} lost grade"),
                });
            }
        }
    }
    Ok(CheckReport::from_violation("balanced", worst, NUMERIC_TOL, witness)
        .with_note(format!("{} factors sampled in [-1, 1]", factors.len())))
}

/// Absorption sweep: for each lattice point x inside the absorption box,
/// some sampled dilation t must give (t·set)(x) within [`NUMERIC_TOL`] of 1.
/// `absorption_box` defaults to the whole domain box.
pub fn is_absorbing(
    set: &FuzzySet,
    t_grid: &[f64],
    absorption_box: Option<&[(f64, f64)]>,
) -> Result<CheckReport> {
    validate_positive_grid("dilation", t_grid)?;
    let dim = set.domain().dimension();
    if let Some(bounds) = absorption_box {
        if bounds.len() != dim {
            return Err(CoreError::DimensionMismatch { expected: dim, got: bounds.len() });
        }
        for &(lo, hi) in bounds {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(CoreError::InvalidParameter(format!(
                    "absorption box interval [{lo}, {hi}] is invalid"
                )));
            }
        }
    }
    let bounds = absorption_box.unwrap_or_else(|| set.domain().bounds());
    let coords = lattice_coords(set.domain());

    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut scaled = vec![0.0; dim];
    for i in 0..set.domain().lattice_len() {
        let x = &coords[i * dim..(i + 1) * dim];
        if x.iter().zip(bounds).any(|(&c, &(lo, hi))| c < lo || c > hi) {
            continue;
        }
        let mut sup = 0.0_f64;
        for &t in t_grid {
            for k in 0..dim {
                scaled[k] = x[k] / t;
            }
            sup = sup.max(set.body().eval(&scaled));
            if sup >= 1.0 {
                break;
            }
        }
        let deficit = 1.0 - sup;
        if deficit > worst {
            worst = deficit;
            witness = Some(Witness {
                point: x.to_vec(),
                detail: format!("largest dilation grade reached only {sup}"),
            });
        }
    }
    Ok(CheckReport::from_violation("absorbing", worst, NUMERIC_TOL, witness)
        .with_note(format!("{} dilations sampled", t_grid.len())))
}

/// Vanishing-dilation sweep: off the origin, the smallest sampled dilation
/// grade must sit within [`NUMERIC_TOL`] of 0.
pub fn vanishing_dilations(set: &FuzzySet, t_grid: &[f64]) -> Result<CheckReport> {
    validate_positive_grid("dilation", t_grid)?;
    let dim = set.domain().dimension();
    let coords = lattice_coords(set.domain());

    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut scaled = vec![0.0; dim];
    for i in 0..set.domain().lattice_len() {
        let x = &coords[i * dim..(i + 1) * dim];
        if x.iter().all(|&c| c == 0.0) {
            continue;
        }
        let mut inf = 1.0_f64;
        for &t in t_grid {
            for k in 0..dim {
                scaled[k] = x[k] / t;
            }
            inf = inf.min(set.body().eval(&scaled));
            if inf <= 0.0 {
                break;
            }
        }
        if inf > worst {
            worst = inf;
            witness = Some(Witness {
                point: x.to_vec(),
                detail: format!("smallest dilation grade stayed at {inf}"),
            });
        }
    }
    Ok(CheckReport::from_violation("vanishing-dilation", worst, NUMERIC_TOL, witness)
        .with_note(format!("{} dilations sampled", t_grid.len())))
}

/// Audits all four Katsaras-norm obligations on the wrapped set: convexity,
/// balancedness, absorption over the whole box, and vanishing dilations.
pub fn katsaras_axioms_check(
    k: &KatsarasNorm,
    weights: &[f64],
    factors: &[f64],
    t_grid: &[f64],
) -> Result<Vec<CheckReport>> {
    let mut reports = vec![
        is_convex(k.rho(), weights)?,
        is_balanced(k.rho(), factors)?,
        is_absorbing(k.rho(), t_grid, None)?,
        vanishing_dilations(k.rho(), t_grid)?,
    ];
    for r in &mut reports {
        r.name = format!("katsaras-{}", r.name);
    }
    Ok(reports)
}

/// Searches the (theta, t) grids for a translated base element sitting
/// under `set` pointwise on the lattice, with positive grade at its center.
pub fn is_neighborhood_of(
    set: &FuzzySet,
    x: &[f64],
    rho: &KatsarasNorm,
    thetas: &[f64],
    t_grid: &[f64],
) -> Result<CheckReport> {
    validate_grid("theta", thetas, f64::MIN_POSITIVE, 1.0)?;
    validate_positive_grid("dilation", t_grid)?;
    if set.domain() != rho.domain() {
        return Err(CoreError::DomainMismatch);
    }
    let dim = set.domain().dimension();
    if x.len() != dim {
        return Err(CoreError::DimensionMismatch { expected: dim, got: x.len() });
    }
    let vals = set.materialize();
    let coords = lattice_coords(set.domain());
    let rho_body = rho.rho().body();
    let rho_at_zero = rho_body.eval(&vec![0.0; dim]);
    if rho_at_zero <= 0.0 {
        return Ok(CheckReport::from_violation("neighborhood-of", 1.0, 0.0, None)
            .with_note("every base element has grade 0 at its center"));
    }

    let mut best = f64::INFINITY;
    let mut best_at = (0usize, 0.0, 0.0);
    let mut z = vec![0.0; dim];
    for &theta in thetas {
        for &t in t_grid {
            let mut pair_worst = 0.0_f64;
            let mut pair_idx = 0usize;
            for (i, &v) in vals.iter().enumerate() {
                let y = &coords[i * dim..(i + 1) * dim];
                for k in 0..dim {
                    z[k] = (y[k] - x[k]) / t;
                }
                let gap = theta.min(rho_body.eval(&z)) - v;
                if gap > pair_worst {
                    pair_worst = gap;
                    pair_idx = i;
                    if pair_worst >= best {
                        break;
                    }
                }
            }
            if pair_worst <= 0.0 {
                return Ok(CheckReport::pass("neighborhood-of").with_note(format!(
                    "translated base element with theta={theta}, t={t} fits under the set"
                )));
            }
            if pair_worst < best {
                best = pair_worst;
                best_at = (pair_idx, theta, t);
            }
        }
    }
    let (idx, theta, t) = best_at;
    let witness = Witness {
        point: coords[idx * dim..(idx + 1) * dim].to_vec(),
        detail: format!("closest attempt theta={theta}, t={t} still exceeds the set here"),
    };
    Ok(CheckReport::from_violation("neighborhood-of", best, 0.0, Some(witness))
        .with_note(format!("{} theta values and {} dilations searched", thetas.len(), t_grid.len())))
}

/// Sphere-openness sweep: every support lattice point x and sampled grade
/// alpha < value(x) must admit a radius from the search grid whose sphere
/// sits under the set, probed at window lattice points and at sub-lattice
/// radial points inside the sphere. Probes outside the domain box are
/// skipped: the box is the whole universe here.
pub fn is_linearly_open(
    set: &FuzzySet,
    norm: &FelbinNorm,
    alphas: &[f64],
    radii: &[f64],
) -> Result<CheckReport> {
    validate_grid("alpha", alphas, f64::MIN_POSITIVE, 1.0)?;
    validate_positive_grid("radius", radii)?;
    let domain = set.domain();
    let dim = domain.dimension();
    if norm.dim() != dim {
        return Err(CoreError::DimensionMismatch { expected: dim, got: norm.dim() });
    }
    let mut radii_desc = radii.to_vec();
    radii_desc.sort_by(|a, b| b.total_cmp(a));
    let vals = set.materialize();
    let coords = lattice_coords(domain);
    let dirs = stencil_directions(dim);
    let fracs = [0.25, 0.5, 0.75];
    let diagonal = domain
        .bounds()
        .iter()
        .map(|&(lo, hi)| (hi - lo) * (hi - lo))
        .sum::<f64>()
        .sqrt();

    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut failures = 0usize;
    let mut d = vec![0.0; dim];
    let mut probe = vec![0.0; dim];
    let mut window_multi = vec![0usize; dim];
    for idx in 0..vals.len() {
        if vals[idx] <= 0.0 {
            continue;
        }
        let x = &coords[idx * dim..(idx + 1) * dim];
        for &alpha in alphas {
            if alpha >= vals[idx] {
                continue;
            }
            let mut fitted = false;
            let mut best_deficit = f64::INFINITY;
            for &radius in &radii_desc {
                let mut reach = norm.ball_bounding_radius(alpha, radius);
                if !reach.is_finite() {
                    reach = diagonal;
                }
                let mut deficit = 0.0_f64;

                // Lattice points inside a bounding index window. The window
                // is widened by one cell per side; actual membership is
                // decided by the norm, so the widening is harmless.
                let mut ranges = Vec::with_capacity(dim);
                for a in 0..dim {
                    let (lo, _) = domain.bounds()[a];
                    let step = domain.step(a);
                    let raw_lo = ((x[a] - reach - lo) / step).floor() as isize - 1;
                    let raw_hi = ((x[a] + reach - lo) / step).ceil() as isize + 1;
                    let top = domain.resolution()[a] as isize - 1;
                    ranges.push((raw_lo.clamp(0, top) as usize, raw_hi.clamp(0, top) as usize));
                }
                for (a, r) in ranges.iter().enumerate() {
                    window_multi[a] = r.0;
                }
                'window: loop {
                    let flat = domain.multi_to_flat(&window_multi);
                    let y = &coords[flat * dim..(flat + 1) * dim];
                    for k in 0..dim {
                        d[k] = y[k] - x[k];
                    }
                    if norm.upper(&d, alpha) < radius && vals[flat] < alpha {
                        deficit = deficit.max(alpha - vals[flat]);
                    }
                    for a in (0..dim).rev() {
                        if window_multi[a] < ranges[a].1 {
                            window_multi[a] += 1;
                            for r in a + 1..dim {
                                window_multi[r] = ranges[r].0;
                            }
                            continue 'window;
                        }
                        if a == 0 {
                            break 'window;
                        }
                    }
                }

                // Sub-lattice radial probes inside the sphere.
                for dir in &dirs {
                    for &frac in &fracs {
                        for k in 0..dim {
                            d[k] = dir[k] * (reach * frac);
                            probe[k] = x[k] + d[k];
                        }
                        if !domain.contains(&probe) {
                            continue;
                        }
                        if norm.upper(&d, alpha) < radius {
                            let v = set.eval(&probe);
                            if v < alpha {
                                deficit = deficit.max(alpha - v);
                            }
                        }
                    }
                }

                if deficit <= 0.0 {
                    fitted = true;
                    break;
                }
                best_deficit = best_deficit.min(deficit);
            }
            if !fitted {
                failures += 1;
                if best_deficit > worst {
                    worst = best_deficit;
                    witness = Some(Witness {
                        point: x.to_vec(),
                        detail: format!(
                            "no sphere radius from the search grid fits at grade {alpha} around this support point"
                        ),
                    });
                }
            }
        }
    }
    let mut report = CheckReport::from_violation("linearly-open", worst, 0.0, witness)
        .with_note(format!("{} radii searched per support point and grade", radii_desc.len()));
    if failures > 0 {
        report = report.with_note(format!("{failures} (point, grade) pairs admit no sphere"));
    }
    Ok(report)
}

/// Absorption of `absorbed` by `absorber`: every sampled grade theta below
/// the absorber's origin grade must admit a sampled dilation t with
/// theta ∧ (t·absorbed) under the absorber pointwise. Reports "not
/// applicable" when the absorber vanishes at the origin.
pub fn absorbs(
    absorber: &FuzzySet,
    absorbed: &FuzzySet,
    thetas: &[f64],
    t_grid: &[f64],
) -> Result<CheckReport> {
    validate_grid("theta", thetas, f64::MIN_POSITIVE, 1.0)?;
    validate_positive_grid("dilation", t_grid)?;
    if absorber.domain() != absorbed.domain() {
        return Err(CoreError::DomainMismatch);
    }
    let dim = absorber.domain().dimension();
    let origin_grade = absorber.eval(&vec![0.0; dim]);
    if origin_grade <= 0.0 {
        return Ok(CheckReport::unknown(
            "absorbs",
            "not applicable: the absorbing set has grade 0 at the origin",
        ));
    }
    let absorber_vals = absorber.materialize();
    let coords = lattice_coords(absorber.domain());
    let absorbed_body = absorbed.body();

    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut tested = 0usize;
    let mut z = vec![0.0; dim];
    for &theta in thetas {
        if theta >= origin_grade {
            continue;
        }
        tested += 1;
        let mut theta_best = f64::INFINITY;
        let mut theta_at = (0usize, 0.0);
        for &t in t_grid {
            let mut pair_worst = 0.0_f64;
            let mut pair_idx = 0usize;
            for (i, &v) in absorber_vals.iter().enumerate() {
                let y = &coords[i * dim..(i + 1) * dim];
                for k in 0..dim {
                    z[k] = y[k] / t;
                }
                let gap = theta.min(absorbed_body.eval(&z)) - v;
                if gap > pair_worst {
                    pair_worst = gap;
                    pair_idx = i;
                    if pair_worst >= theta_best {
                        break;
                    }
                }
            }
            if pair_worst < theta_best {
                theta_best = pair_worst;
                theta_at = (pair_idx, t);
            }
            if theta_best <= NUMERIC_TOL {
                break;
            }
        }
        if theta_best > worst {
            worst = theta_best;
            let (idx, t) = theta_at;
            witness = Some(Witness {
                point: coords[idx * dim..(idx + 1) * dim].to_vec(),
                detail: format!(
                    "grade theta={theta}: closest dilation t={t} still overshoots the absorber here"
                ),
            });
        }
    }
    let mut report = CheckReport::from_violation("absorbs", worst, NUMERIC_TOL, witness);
    if tested == 0 {
        report = report.with_note(format!(
            "vacuous: no sampled grade lies below the origin grade {origin_grade}"
        ));
    }
    Ok(report)
}

/// Boundedness against a finite base catalog: the set must be absorbed by
/// every supplied base element.
pub fn is_bounded(
    set: &FuzzySet,
    base: &[BaseNeighborhood],
    thetas: &[f64],
    t_grid: &[f64],
) -> Result<CheckReport> {
    if base.is_empty() {
        return Err(CoreError::EmptyOperands);
    }
    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut any_unknown = false;
    for nu in base {
        let sub = absorbs(&nu.realize(), set, thetas, t_grid)?;
        match sub.verdict {
            Verdict::Unknown => any_unknown = true,
            _ => {
                if sub.max_violation > worst {
                    worst = sub.max_violation;
                    witness = sub.witness.map(|w| Witness {
                        point: w.point,
                        detail: format!(
                            "base element theta={}, t={}: {}",
                            nu.theta, nu.t, w.detail
                        ),
                    });
                }
            }
        }
    }
    let mut report = CheckReport::from_violation("bounded", worst, NUMERIC_TOL, witness)
        .with_note(format!("{} base elements tested", base.len()));
    if any_unknown && report.verdict == Verdict::Pass {
        report.verdict = Verdict::Unknown;
        report = report.with_note("some base elements vanish at the origin; their absorption is undefined");
    }
    Ok(report)
}

/// Closure audit for a finite family: every sampled constant, every
/// pairwise meet, and every pairwise join must equal some member pointwise
/// on the lattice. Pairwise closure extends to all finite meets and joins
/// by associativity.
pub fn topology_axioms_check(family: &[FuzzySet], constants: &[f64]) -> Result<CheckReport> {
    if family.is_empty() {
        return Err(CoreError::EmptyOperands);
    }
    let domain = family[0].domain();
    for member in &family[1..] {
        if member.domain() != domain {
            return Err(CoreError::DomainMismatch);
        }
    }
    validate_grid("constant", constants, 0.0, 1.0)?;
    let mats: Vec<Vec<f64>> = family.iter().map(|m| m.materialize()).collect();
    let len = domain.lattice_len();

    let closest = |target: &dyn Fn(usize) -> f64| -> (f64, usize) {
        let mut best = f64::INFINITY;
        let mut best_idx = 0usize;
        for mat in &mats {
            let mut sup = 0.0_f64;
            let mut sup_idx = 0usize;
            for i in 0..len {
                let diff = (mat[i] - target(i)).abs();
                if diff > sup {
                    sup = diff;
                    sup_idx = i;
                    if sup >= best {
                        break;
                    }
                }
            }
            if sup < best {
                best = sup;
                best_idx = sup_idx;
                if best == 0.0 {
                    break;
                }
            }
        }
        (best, best_idx)
    };

    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut record = |gap: f64, idx: usize, desc: String, witness_slot: &mut Option<Witness>| {
        if gap > worst {
            worst = gap;
            *witness_slot = Some(Witness { point: domain.point(idx), detail: desc });
        }
    };

    for &c in constants {
        let (gap, idx) = closest(&|_| c);
        record(gap, idx, format!("constant {c} is not in the family"), &mut witness);
    }
    for i in 0..mats.len() {
        for j in i..mats.len() {
            let (a, b) = (&mats[i], &mats[j]);
            let (gap, idx) = closest(&|p| a[p].min(b[p]));
            record(gap, idx, format!("meet of members {i} and {j} is not in the family"), &mut witness);
            let (gap, idx) = closest(&|p| a[p].max(b[p]));
            record(gap, idx, format!("join of members {i} and {j} is not in the family"), &mut witness);
        }
    }
    Ok(CheckReport::from_violation("topology-axioms", worst, 0.0, witness)
        .with_note(format!(
            "{} members, {} constants, all pairwise meets and joins audited",
            family.len(),
            constants.len()
        )))
}

/// Hausdorff separation: some ordered pair of family members must hit
/// grade 1 at `x` and `y` respectively while their pointwise minimum is 0
/// across the whole lattice. The two points must differ.
pub fn hausdorff_check(family: &[FuzzySet], x: &[f64], y: &[f64]) -> Result<CheckReport> {
    if family.is_empty() {
        return Err(CoreError::EmptyOperands);
    }
    let domain = family[0].domain();
    for member in &family[1..] {
        if member.domain() != domain {
            return Err(CoreError::DomainMismatch);
        }
    }
    let dim = domain.dimension();
    if x.len() != dim || y.len() != dim {
        return Err(CoreError::DimensionMismatch {
            expected: dim,
            got: if x.len() != dim { x.len() } else { y.len() },
        });
    }
    if x == y {
        return Err(CoreError::IdenticalPoints);
    }
    let mats: Vec<Vec<f64>> = family.iter().map(|m| m.materialize()).collect();
    let at_x: Vec<f64> = family.iter().map(|m| m.eval(x)).collect();
    let at_y: Vec<f64> = family.iter().map(|m| m.eval(y)).collect();
    let len = domain.lattice_len();

    let mut best = f64::INFINITY;
    let mut best_witness = None;
    for i in 0..family.len() {
        for j in 0..family.len() {
            if i == j {
                continue;
            }
            let mut overlap = 0.0_f64;
            let mut overlap_idx = 0usize;
            for p in 0..len {
                let m = mats[i][p].min(mats[j][p]);
                if m > overlap {
                    overlap = m;
                    overlap_idx = p;
                }
            }
            let deficit = (1.0 - at_x[i]).max(1.0 - at_y[j]).max(overlap);
            if deficit == 0.0 {
                return Ok(CheckReport::pass("hausdorff").with_note(format!(
                    "members {i} and {j} separate the points with disjoint support"
                )));
            }
            if deficit < best {
                best = deficit;
                best_witness = Some(if overlap >= (1.0 - at_x[i]).max(1.0 - at_y[j]) {
                    Witness {
                        point: domain.point(overlap_idx),
                        detail: format!("members {i} and {j} overlap with grade {overlap} here"),
                    }
                } else {
                    Witness {
                        point: x.to_vec(),
                        detail: format!(
                            "members {i} and {j} reach only grades {} and {} at the two points",
                            at_x[i], at_y[j]
                        ),
                    }
                });
            }
        }
    }
    Ok(CheckReport::from_violation("hausdorff", best, 0.0, best_witness)
        .with_note(format!("{} ordered member pairs examined", family.len() * (family.len() - 1))))
}

/// Pointwise comparison of grade-alpha spheres at the origin against the
/// base elements alpha ∧ (radius·rho) of the converted norm, over the full
/// lattice and the sampled (alpha, radius) grid. For crisp norms the two
/// constructions agree exactly.
pub fn base_equivalence_check(
    norm: &FelbinNorm,
    rho: &KatsarasNorm,
    alphas: &[f64],
    radii: &[f64],
) -> Result<CheckReport> {
    validate_grid("alpha", alphas, f64::MIN_POSITIVE, 1.0)?;
    validate_positive_grid("radius", radii)?;
    let domain = rho.domain();
    if norm.dim() != domain.dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: domain.dimension(),
            got: norm.dim(),
        });
    }
    let zeros = vec![0.0; domain.dimension()];

    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut buf = Vec::with_capacity(domain.dimension());
    for &alpha in alphas {
        for &radius in radii {
            let sphere = alpha_sphere(norm, domain.clone(), alpha, &zeros, radius)?;
            let base = base_neighborhood(alpha, radius, rho)?;
            for idx in 0..domain.lattice_len() {
                domain.point_into(idx, &mut buf);
                let diff = (sphere.eval(&buf) - base.eval(&buf)).abs();
                if diff > worst {
                    worst = diff;
                    witness = Some(Witness {
                        point: buf.clone(),
                        detail: format!("sphere and base element differ at alpha={alpha}, radius={radius}"),
                    });
                }
            }
        }
    }
    Ok(CheckReport::from_violation("base-equivalence", worst, 0.0, witness)
        .with_note(format!("{} grades x {} radii swept", alphas.len(), radii.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Predicate;

    fn line41() -> Domain {
        Domain::line(-5.0, 5.0, 41).unwrap()
    }

    fn plane(bound: f64, res: usize) -> Domain {
        Domain::cube(2, -bound, bound, res).unwrap()
    }

    fn unit_ball_rho(domain: Domain) -> KatsarasNorm {
        let norm = FelbinNorm::euclidean(domain.dimension());
        katsaras_from_felbin(&norm, domain).unwrap()
    }

    #[test]
    fn conversion_is_the_crisp_open_unit_ball() {
        let rho = unit_ball_rho(plane(3.0, 61));
        assert_eq!(rho.rho().eval(&[0.5, 0.5]), 1.0);
        assert_eq!(rho.rho().eval(&[1.0, 1.0]), 0.0);
        assert_eq!(rho.rho().eval(&[0.0, 0.0]), 1.0);
    }

    #[test]
    fn converted_norm_passes_all_four_axioms() {
        let rho = unit_ball_rho(plane(2.0, 41));
        let reports = katsaras_axioms_check(
            &rho,
            &default_convexity_weights(),
            &default_balance_factors(),
            &default_t_grid(),
        )
        .unwrap();
        for r in &reports {
            assert!(r.passed(), "{} failed with violation {}", r.name, r.max_violation);
        }
        assert_eq!(reports[0].max_violation, 0.0);
        assert_eq!(reports[1].max_violation, 0.0);
    }

    #[test]
    fn two_point_indicator_is_not_convex() {
        let domain = line41();
        let body = FuzzyExpr::Join(vec![
            FuzzyExpr::Indicator(Predicate::closed_interval(-1.0, -1.0)),
            FuzzyExpr::Indicator(Predicate::closed_interval(1.0, 1.0)),
        ]);
        let set = FuzzySet::new(domain, body).unwrap();
        let report = is_convex(&set, &default_convexity_weights()).unwrap();
        assert!(!report.passed());
        assert_eq!(report.max_violation, 1.0);
    }

    #[test]
    fn balanced_sets_peak_at_the_origin() {
        let domain = line41();
        let ball = FuzzySet::indicator(domain, Predicate::open_interval(-2.0, 2.0)).unwrap();
        let report = is_balanced(&ball, &default_balance_factors()).unwrap();
        assert!(report.passed());
        let shifted = ball.translate(&[2.0]).unwrap();
        let report = is_balanced(&shifted, &default_balance_factors()).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn base_neighborhood_hits_theta_at_zero_and_scales_the_ball() {
        let rho = unit_ball_rho(plane(3.0, 61));
        let nu = base_neighborhood(0.5, 2.0, &rho).unwrap();
        assert_eq!(nu.eval(&[0.0, 0.0]), 0.5);
        assert_eq!(nu.eval(&[1.5, 0.0]), 0.5);
        assert_eq!(nu.eval(&[2.5, 0.0]), 0.0);
        let same = base_neighborhood(1.0, 1.0, &rho).unwrap();
        for p in rho.domain().points() {
            assert_eq!(same.eval(&p), rho.rho().eval(&p));
        }
    }

    #[test]
    fn neighborhood_search_matches_the_ball_examples() {
        let domain = line41();
        let rho = unit_ball_rho(domain.clone());
        let thetas = default_theta_grid();
        let ts = default_t_grid();

        let everything = FuzzySet::constant(domain.clone(), 1.0).unwrap();
        assert!(is_neighborhood_of(&everything, &[3.0], &rho, &thetas, &ts).unwrap().passed());

        let ball = FuzzySet::indicator(domain, Predicate::open_interval(-1.0, 1.0)).unwrap();
        assert!(is_neighborhood_of(&ball, &[0.0], &rho, &thetas, &ts).unwrap().passed());
        let at_boundary = is_neighborhood_of(&ball, &[1.0], &rho, &thetas, &ts).unwrap();
        assert!(!at_boundary.passed());
    }

    #[test]
    fn sphere_openness_separates_open_from_singleton() {
        let domain = line41();
        let norm = FelbinNorm::euclidean(1);
        let alphas = default_alpha_grid();
        let radii = default_radius_grid();

        let constant = FuzzySet::constant(domain.clone(), 0.7).unwrap();
        assert!(is_linearly_open(&constant, &norm, &alphas, &radii).unwrap().passed());

        let open = FuzzySet::indicator(domain.clone(), Predicate::open_interval(-1.0, 1.0)).unwrap();
        assert!(is_linearly_open(&open, &norm, &alphas, &radii).unwrap().passed());

        let singleton =
            FuzzySet::indicator(domain, Predicate::closed_interval(0.0, 0.0)).unwrap();
        let report = is_linearly_open(&singleton, &norm, &alphas, &radii).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn absorption_examples() {
        let domain = line41();
        let thetas = default_theta_grid();
        let ts = default_t_grid();
        let everything = FuzzySet::constant(domain.clone(), 1.0).unwrap();
        let small = FuzzySet::indicator(domain.clone(), Predicate::open_interval(-0.25, 0.25))
            .unwrap();
        let unit = FuzzySet::indicator(domain.clone(), Predicate::open_interval(-1.0, 1.0))
            .unwrap();

        assert!(absorbs(&everything, &unit, &thetas, &ts).unwrap().passed());
        assert!(absorbs(&unit, &small, &thetas, &ts).unwrap().passed());

        let off_origin = FuzzySet::indicator(domain, Predicate::open_interval(2.0, 3.0)).unwrap();
        let report = absorbs(&off_origin, &unit, &thetas, &ts).unwrap();
        assert_eq!(report.verdict, Verdict::Unknown);
        assert!(report.notes.iter().any(|n| n.contains("not applicable")));
    }

    #[test]
    fn boundedness_against_the_canonical_base() {
        let domain = line41();
        let rho = unit_ball_rho(domain.clone());
        let thetas = default_theta_grid();
        let ts = default_t_grid();
        let base: Vec<BaseNeighborhood> = [(0.3, 0.5), (0.6, 1.0), (0.9, 2.0)]
            .iter()
            .map(|&(theta, t)| BaseNeighborhood::new(theta, t, &rho).unwrap())
            .collect();

        let singleton =
            FuzzySet::indicator(domain.clone(), Predicate::closed_interval(0.0, 0.0)).unwrap();
        assert!(is_bounded(&singleton, &base, &thetas, &ts).unwrap().passed());

        let small = FuzzySet::indicator(domain.clone(), Predicate::open_interval(-0.5, 0.5))
            .unwrap();
        assert!(is_bounded(&small, &base, &thetas, &ts).unwrap().passed());

        let everything = FuzzySet::constant(domain, 1.0).unwrap();
        let report = is_bounded(&everything, &base, &thetas, &ts).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn constant_family_is_closed_and_missing_meets_are_caught() {
        let domain = line41();
        let grades = [0.0, 0.25, 0.5, 0.75, 1.0];
        let family: Vec<FuzzySet> = grades
            .iter()
            .map(|&c| FuzzySet::constant(domain.clone(), c).unwrap())
            .collect();
        let report = topology_axioms_check(&family, &grades).unwrap();
        assert!(report.passed());
        assert_eq!(report.max_violation, 0.0);

        let ramp = FuzzySet::triangular(domain.clone(), -5.0, 0.0, 5.0).unwrap();
        let mut broken = family.clone();
        broken.push(ramp);
        let report = topology_axioms_check(&broken, &grades).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn disjoint_balls_separate_points() {
        let domain = line41();
        let family = vec![
            FuzzySet::indicator(domain.clone(), Predicate::open_interval(-3.0, -1.0)).unwrap(),
            FuzzySet::indicator(domain.clone(), Predicate::open_interval(1.0, 3.0)).unwrap(),
        ];
        let report = hausdorff_check(&family, &[-2.0], &[2.0]).unwrap();
        assert!(report.passed());

        let constants = vec![
            FuzzySet::constant(domain.clone(), 0.5).unwrap(),
            FuzzySet::constant(domain.clone(), 1.0).unwrap(),
        ];
        let report = hausdorff_check(&constants, &[-2.0], &[2.0]).unwrap();
        assert!(!report.passed());

        let same = hausdorff_check(&family, &[2.0], &[2.0]);
        assert!(matches!(same, Err(CoreError::IdenticalPoints)));
    }

    #[test]
    fn spheres_equal_base_elements_for_the_crisp_norm() {
        let domain = plane(3.0, 41);
        let norm = FelbinNorm::euclidean(2);
        let rho = katsaras_from_felbin(&norm, domain).unwrap();
        let report =
            base_equivalence_check(&norm, &rho, &default_alpha_grid(), &[0.5, 1.0, 2.0]).unwrap();
        assert!(report.passed());
        assert_eq!(report.max_violation, 0.0);
    }

    #[test]
    fn sphere_center_grade_is_alpha() {
        let domain = plane(3.0, 41);
        let norm = FelbinNorm::euclidean(2);
        let sphere = alpha_sphere(&norm, domain, 0.3, &[1.0, -1.0], 1.0).unwrap();
        assert_eq!(sphere.eval(&[1.0, -1.0]), 0.3);
        assert_eq!(sphere.eval(&[1.5, -1.0]), 0.3);
        assert_eq!(sphere.eval(&[2.5, -1.0]), 0.0);
    }
}
