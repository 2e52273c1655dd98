//! Scenario file schema and its resolution into core objects. Files are
//! JSON; unknown keys are rejected, defaults are filled at load time so
//! the report can echo the exact configuration that ran.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use ftvs_core::norms::{self, KatsarasNorm};
use ftvs_core::weak::{DualPairScenario, LinearFunctional};
use ftvs_core::{Domain, FelbinNorm, FuzzyExpr, FuzzySet, NormLevel, Predicate};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub domain: DomainSpec,
    #[serde(default)]
    pub scalar_domain: Option<DomainSpec>,
    #[serde(default)]
    pub norm: Option<NormSpec>,
    #[serde(default)]
    pub sets: BTreeMap<String, SetExpr>,
    /// Sets built on `scalar_domain` instead of `domain`, for checks that
    /// pair functionals with scalar-side sets.
    #[serde(default)]
    pub scalar_sets: BTreeMap<String, SetExpr>,
    #[serde(default)]
    pub functionals: Vec<Vec<f64>>,
    #[serde(default)]
    pub sequences: BTreeMap<String, SequenceSpec>,
    pub checks: Vec<CheckEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub bounds: Vec<[f64; 2]>,
    pub resolution: Vec<usize>,
}

impl DomainSpec {
    pub fn build(&self) -> Result<Domain, CliError> {
        let bounds = self.bounds.iter().map(|b| (b[0], b[1])).collect();
        Domain::new(bounds, self.resolution.clone())
            .map_err(|e| CliError::config(format!("domain: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum NormSpec {
    Euclidean,
    Star,
    WeightedCrisp { weights: Vec<f64>, offset: f64 },
}

impl NormSpec {
    pub fn build(&self, dim: usize) -> Result<FelbinNorm, CliError> {
        let norm = match self {
            NormSpec::Euclidean => FelbinNorm::euclidean(dim),
            NormSpec::Star => FelbinNorm::star(),
            NormSpec::WeightedCrisp { weights, offset } => {
                FelbinNorm::weighted_crisp(weights.clone(), *offset)
                    .map_err(|e| CliError::config(format!("norm: {e}")))?
            }
        };
        if norm.dim() != dim {
            return Err(CliError::config(format!(
                "norm is {}-dimensional but the domain is {dim}-dimensional",
                norm.dim()
            )));
        }
        Ok(norm)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum LevelSpec {
    Sup,
    At(f64),
}

impl LevelSpec {
    fn build(&self) -> NormLevel {
        match self {
            LevelSpec::Sup => NormLevel::Sup,
            LevelSpec::At(a) => NormLevel::At(*a),
        }
    }
}

/// Expression-tree literal for a fuzzy set.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum SetExpr {
    Constant { value: f64 },
    OpenBall { center: Vec<f64>, radius: f64 },
    ClosedBall { center: Vec<f64>, radius: f64 },
    OpenBox { bounds: Vec<[f64; 2]> },
    ClosedBox { bounds: Vec<[f64; 2]> },
    Halfspace { normal: Vec<f64>, offset: f64, open: bool },
    Triangular { a: f64, b: f64, c: f64 },
    /// Ball of the scenario norm at a cut level; requires `norm`.
    NormBall { level: LevelSpec, radius: f64 },
    Meet { children: Vec<SetExpr> },
    Join { children: Vec<SetExpr> },
    Scale { factor: f64, inner: Box<SetExpr> },
    Translate { shift: Vec<f64>, inner: Box<SetExpr> },
}

impl SetExpr {
    fn to_expr(&self, norm: Option<&FelbinNorm>) -> Result<FuzzyExpr, CliError> {
        Ok(match self {
            SetExpr::Constant { value } => FuzzyExpr::Constant(*value),
            SetExpr::OpenBall { center, radius } => {
                FuzzyExpr::Indicator(Predicate::open_ball(center.clone(), *radius))
            }
            SetExpr::ClosedBall { center, radius } => {
                FuzzyExpr::Indicator(Predicate::closed_ball(center.clone(), *radius))
            }
            SetExpr::OpenBox { bounds } => FuzzyExpr::Indicator(Predicate::BoxRegion {
                bounds: bounds.iter().map(|b| (b[0], b[1])).collect(),
                open: true,
            }),
            SetExpr::ClosedBox { bounds } => FuzzyExpr::Indicator(Predicate::BoxRegion {
                bounds: bounds.iter().map(|b| (b[0], b[1])).collect(),
                open: false,
            }),
            SetExpr::Halfspace { normal, offset, open } => {
                FuzzyExpr::Indicator(Predicate::Halfspace {
                    normal: normal.clone(),
                    offset: *offset,
                    open: *open,
                })
            }
            SetExpr::Triangular { a, b, c } => FuzzyExpr::Triangular { a: *a, b: *b, c: *c },
            SetExpr::NormBall { level, radius } => {
                let norm = norm.ok_or_else(|| {
                    CliError::config("a norm_ball set requires the scenario to select a norm")
                })?;
                FuzzyExpr::Indicator(Predicate::NormBall {
                    norm: norm.clone(),
                    level: level.build(),
                    radius: *radius,
                })
            }
            SetExpr::Meet { children } => FuzzyExpr::Meet(
                children.iter().map(|c| c.to_expr(norm)).collect::<Result<_, _>>()?,
            ),
            SetExpr::Join { children } => FuzzyExpr::Join(
                children.iter().map(|c| c.to_expr(norm)).collect::<Result<_, _>>()?,
            ),
            SetExpr::Scale { factor, inner } => FuzzyExpr::Scale {
                factor: *factor,
                inner: Box::new(inner.to_expr(norm)?),
            },
            SetExpr::Translate { shift, inner } => FuzzyExpr::Translate {
                shift: shift.clone(),
                inner: Box::new(inner.to_expr(norm)?),
            },
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSpec {
    pub entries: Vec<Vec<f64>>,
    pub tail: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSpec {
    pub theta: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub functional: Vec<f64>,
    pub set: String,
}

/// One requested check: an optional display label plus the typed spec.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckEntry {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(flatten)]
    pub spec: CheckSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "type", rename_all = "kebab-case")]
pub enum CheckSpec {
    Convex { set: String, #[serde(default)] weights: Option<Vec<f64>> },
    Balanced { set: String, #[serde(default)] factors: Option<Vec<f64>> },
    Absorbing { set: String, #[serde(default)] t_grid: Option<Vec<f64>> },
    VanishingDilations { set: String, #[serde(default)] t_grid: Option<Vec<f64>> },
    FelbinAxioms { vectors: Vec<Vec<f64>>, scalars: Vec<f64> },
    KatsarasAxioms {
        #[serde(default)] weights: Option<Vec<f64>>,
        #[serde(default)] factors: Option<Vec<f64>>,
        #[serde(default)] t_grid: Option<Vec<f64>>,
    },
    BaseEquivalence {
        #[serde(default)] alphas: Option<Vec<f64>>,
        #[serde(default)] radii: Option<Vec<f64>>,
    },
    NeighborhoodOf {
        set: String,
        point: Vec<f64>,
        #[serde(default)] thetas: Option<Vec<f64>>,
        #[serde(default)] t_grid: Option<Vec<f64>>,
    },
    LinearlyOpen {
        set: String,
        #[serde(default)] norm: Option<NormSpec>,
        #[serde(default)] alphas: Option<Vec<f64>>,
        #[serde(default)] radii: Option<Vec<f64>>,
    },
    Absorbs {
        absorber: String,
        absorbed: String,
        #[serde(default)] thetas: Option<Vec<f64>>,
        #[serde(default)] t_grid: Option<Vec<f64>>,
    },
    Bounded {
        set: String,
        base: Vec<BaseSpec>,
        #[serde(default)] thetas: Option<Vec<f64>>,
        #[serde(default)] t_grid: Option<Vec<f64>>,
    },
    TopologyAxioms { family: Vec<String>, #[serde(default)] constants: Option<Vec<f64>> },
    Hausdorff { family: Vec<String>, x: Vec<f64>, y: Vec<f64> },
    Lsc { set: String },
    WeaklyLsc { pairs: Vec<PairSpec> },
    NetConvergence {
        sequence: String,
        limit: Vec<f64>,
        #[serde(default)] grades: Option<Vec<f64>>,
        #[serde(default)] scalar_tol: Option<f64>,
    },
    Decompose { target: Vec<f64> },
    HausdorffWitness { x: Vec<f64>, y: Vec<f64> },
    WeaklyContinuous {
        rows: usize,
        cols: usize,
        matrix: Vec<f64>,
        target_functionals: Vec<Vec<f64>>,
    },
    WeakSeminorm {
        set: String,
        functional: Vec<f64>,
        #[serde(default)] factors: Option<Vec<f64>>,
    },
    WeaklyBounded {
        set: String,
        base: Vec<BaseSpec>,
        #[serde(default)] thetas: Option<Vec<f64>>,
        #[serde(default)] t_grid: Option<Vec<f64>>,
    },
    ProductConsistency { left: String, right: String, points: Vec<Vec<f64>> },
}

impl CheckSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            CheckSpec::Convex { .. } => "convex",
            CheckSpec::Balanced { .. } => "balanced",
            CheckSpec::Absorbing { .. } => "absorbing",
            CheckSpec::VanishingDilations { .. } => "vanishing-dilations",
            CheckSpec::FelbinAxioms { .. } => "felbin-axioms",
            CheckSpec::KatsarasAxioms { .. } => "katsaras-axioms",
            CheckSpec::BaseEquivalence { .. } => "base-equivalence",
            CheckSpec::NeighborhoodOf { .. } => "neighborhood-of",
            CheckSpec::LinearlyOpen { .. } => "linearly-open",
            CheckSpec::Absorbs { .. } => "absorbs",
            CheckSpec::Bounded { .. } => "bounded",
            CheckSpec::TopologyAxioms { .. } => "topology-axioms",
            CheckSpec::Hausdorff { .. } => "hausdorff",
            CheckSpec::Lsc { .. } => "lsc",
            CheckSpec::WeaklyLsc { .. } => "weakly-lsc",
            CheckSpec::NetConvergence { .. } => "net-convergence",
            CheckSpec::Decompose { .. } => "decompose",
            CheckSpec::HausdorffWitness { .. } => "hausdorff-witness",
            CheckSpec::WeaklyContinuous { .. } => "weakly-continuous",
            CheckSpec::WeakSeminorm { .. } => "weak-seminorm",
            CheckSpec::WeaklyBounded { .. } => "weakly-bounded",
            CheckSpec::ProductConsistency { .. } => "product-consistency",
        }
    }

    /// Replaces every omitted grid with its default so the echoed
    /// configuration names the values that actually ran.
    fn fill_defaults(&mut self) {
        let fill = |slot: &mut Option<Vec<f64>>, default: fn() -> Vec<f64>| {
            if slot.is_none() {
                *slot = Some(default());
            }
        };
        match self {
            CheckSpec::Convex { weights, .. } => fill(weights, norms::default_convexity_weights),
            CheckSpec::Balanced { factors, .. } => fill(factors, norms::default_balance_factors),
            CheckSpec::Absorbing { t_grid, .. }
            | CheckSpec::VanishingDilations { t_grid, .. } => {
                fill(t_grid, norms::default_t_grid)
            }
            CheckSpec::KatsarasAxioms { weights, factors, t_grid } => {
                fill(weights, norms::default_convexity_weights);
                fill(factors, norms::default_balance_factors);
                fill(t_grid, norms::default_t_grid);
            }
            CheckSpec::BaseEquivalence { alphas, radii } => {
                fill(alphas, norms::default_alpha_grid);
                fill(radii, norms::default_radius_grid);
            }
            CheckSpec::NeighborhoodOf { thetas, t_grid, .. }
            | CheckSpec::Absorbs { thetas, t_grid, .. }
            | CheckSpec::Bounded { thetas, t_grid, .. }
            | CheckSpec::WeaklyBounded { thetas, t_grid, .. } => {
                fill(thetas, norms::default_theta_grid);
                fill(t_grid, norms::default_t_grid);
            }
            CheckSpec::LinearlyOpen { alphas, radii, .. } => {
                fill(alphas, norms::default_alpha_grid);
                fill(radii, norms::default_radius_grid);
            }
            CheckSpec::TopologyAxioms { constants, .. } => {
                fill(constants, norms::default_theta_grid)
            }
            CheckSpec::NetConvergence { grades, scalar_tol, .. } => {
                fill(grades, norms::default_theta_grid);
                if scalar_tol.is_none() {
                    *scalar_tol = Some(ftvs_core::weak::DEFAULT_SCALAR_TOL);
                }
            }
            CheckSpec::WeakSeminorm { factors, .. } => {
                if factors.is_none() {
                    *factors = Some(vec![0.1, -0.1, 0.5, -0.5, 1.0, -1.0]);
                }
            }
            CheckSpec::FelbinAxioms { .. }
            | CheckSpec::Hausdorff { .. }
            | CheckSpec::Lsc { .. }
            | CheckSpec::WeaklyLsc { .. }
            | CheckSpec::Decompose { .. }
            | CheckSpec::HausdorffWitness { .. }
            | CheckSpec::WeaklyContinuous { .. }
            | CheckSpec::ProductConsistency { .. } => {}
        }
    }
}

/// A loaded scenario with every reference resolved and every default
/// filled.
pub struct Resolved {
    pub scenario: Scenario,
    pub domain: Domain,
    pub scalar_domain: Option<Domain>,
    pub norm: Option<FelbinNorm>,
    pub rho: Option<KatsarasNorm>,
    pub sets: BTreeMap<String, FuzzySet>,
    pub scalar_sets: BTreeMap<String, FuzzySet>,
}

impl Resolved {
    pub fn set(&self, name: &str) -> Result<&FuzzySet, CliError> {
        self.sets
            .get(name)
            .ok_or_else(|| CliError::config(format!("check references undefined set '{name}'")))
    }

    pub fn scalar_set(&self, name: &str) -> Result<&FuzzySet, CliError> {
        self.scalar_sets.get(name).ok_or_else(|| {
            CliError::config(format!("check references undefined scalar set '{name}'"))
        })
    }

    pub fn norm(&self) -> Result<&FelbinNorm, CliError> {
        self.norm
            .as_ref()
            .ok_or_else(|| CliError::config("this check requires the scenario to select a norm"))
    }

    pub fn rho(&self) -> Result<&KatsarasNorm, CliError> {
        self.rho
            .as_ref()
            .ok_or_else(|| CliError::config("this check requires the scenario to select a norm"))
    }

    pub fn scalar_domain(&self) -> Result<&Domain, CliError> {
        self.scalar_domain
            .as_ref()
            .ok_or_else(|| CliError::config("this check requires a scalar_domain"))
    }

    pub fn sequence(&self, name: &str) -> Result<&SequenceSpec, CliError> {
        self.scenario.sequences.get(name).ok_or_else(|| {
            CliError::config(format!("check references undefined sequence '{name}'"))
        })
    }

    /// The dual pair built from the functional catalog and scalar domain.
    pub fn dual_pair(&self) -> Result<DualPairScenario, CliError> {
        let functionals = self
            .scenario
            .functionals
            .iter()
            .map(|c| LinearFunctional::new(c.clone()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::config(format!("functionals: {e}")))?;
        DualPairScenario::new(
            self.domain.dimension(),
            functionals,
            self.scalar_domain()?.clone(),
        )
        .map_err(|e| CliError::config(format!("functionals: {e}")))
    }
}

pub fn resolve(mut scenario: Scenario) -> Result<Resolved, CliError> {
    for entry in &mut scenario.checks {
        entry.spec.fill_defaults();
    }
    if scenario.checks.is_empty() {
        return Err(CliError::config("scenario declares no checks"));
    }
    let domain = scenario.domain.build()?;
    let scalar_domain = match &scenario.scalar_domain {
        Some(spec) => {
            let d = spec.build()?;
            if d.dimension() != 1 {
                return Err(CliError::config("scalar_domain must be one-dimensional"));
            }
            Some(d)
        }
        None => None,
    };
    let norm = match &scenario.norm {
        Some(spec) => Some(spec.build(domain.dimension())?),
        None => None,
    };
    let rho = match &norm {
        Some(n) => Some(
            norms::katsaras_from_felbin(n, domain.clone())
                .map_err(|e| CliError::config(format!("norm conversion: {e}")))?,
        ),
        None => None,
    };
    let mut sets = BTreeMap::new();
    for (name, expr) in &scenario.sets {
        let body = expr.to_expr(norm.as_ref())?;
        let set = FuzzySet::new(domain.clone(), body)
            .map_err(|e| CliError::config(format!("set '{name}': {e}")))?;
        sets.insert(name.clone(), set);
    }
    let mut scalar_sets = BTreeMap::new();
    if !scenario.scalar_sets.is_empty() {
        let scalar = scalar_domain
            .as_ref()
            .ok_or_else(|| CliError::config("scalar_sets require a scalar_domain"))?;
        for (name, expr) in &scenario.scalar_sets {
            let body = expr.to_expr(norm.as_ref())?;
            let set = FuzzySet::new(scalar.clone(), body)
                .map_err(|e| CliError::config(format!("scalar set '{name}': {e}")))?;
            scalar_sets.insert(name.clone(), set);
        }
    }
    Ok(Resolved { scenario, domain, scalar_domain, norm, rho, sets, scalar_sets })
}

pub fn load_scenario(path: &std::path::Path) -> Result<Resolved, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let scenario: Scenario = serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
    resolve(scenario)
}
