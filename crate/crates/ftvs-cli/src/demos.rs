//! Built-in scenarios. Each returns the same structure a scenario file
//! would parse to, so demos and file runs share one execution path.

use std::collections::BTreeMap;

use crate::error::CliError;
use crate::scenario::{
    CheckEntry, CheckSpec, DomainSpec, NormSpec, PairSpec, Scenario, SequenceSpec, SetExpr,
};

pub const NAMES: [&str; 4] =
    ["euclidean-equivalence", "product-topology", "polynomial-deltas", "norm-comparison"];

pub fn build(name: &str) -> Result<Scenario, CliError> {
    match name {
        "euclidean-equivalence" => Ok(euclidean_equivalence()),
        "product-topology" => Ok(product_topology()),
        "polynomial-deltas" => Ok(polynomial_deltas()),
        "norm-comparison" => Ok(norm_comparison()),
        other => Err(CliError::config(format!(
            "unknown demo '{other}'; available: {}",
            NAMES.join(", ")
        ))),
    }
}

fn entry(label: &str, spec: CheckSpec) -> CheckEntry {
    CheckEntry { label: Some(label.to_string()), spec }
}

/// The Euclidean norm on the plane, audited both as a fuzzy norm and as
/// the neighborhood base its unit ball generates.
fn euclidean_equivalence() -> Scenario {
    Scenario {
        name: "euclidean-equivalence".into(),
        domain: DomainSpec { bounds: vec![[-3.0, 3.0], [-3.0, 3.0]], resolution: vec![61, 61] },
        scalar_domain: None,
        norm: Some(NormSpec::Euclidean),
        sets: BTreeMap::new(),
        scalar_sets: BTreeMap::new(),
        functionals: vec![],
        sequences: BTreeMap::new(),
        checks: vec![
            entry(
                "norm-axioms",
                CheckSpec::FelbinAxioms {
                    vectors: vec![
                        vec![1.0, 0.0],
                        vec![0.0, 1.0],
                        vec![1.0, 1.0],
                        vec![-1.5, 0.5],
                    ],
                    scalars: vec![-2.0, -1.0, -0.5, 0.5, 1.0, 2.0],
                },
            ),
            entry(
                "converted-ball-axioms",
                CheckSpec::KatsarasAxioms { weights: None, factors: None, t_grid: None },
            ),
            entry(
                "base-equivalence",
                CheckSpec::BaseEquivalence {
                    alphas: None,
                    radii: Some(vec![2.0, 1.0, 0.5, 0.25]),
                },
            ),
        ],
    }
}

/// Product grades against factor-wise minima on a grid of probe points.
fn product_topology() -> Scenario {
    let xs = [-2.0, -1.0, -0.25, 0.5, 1.75];
    let ys = [-1.5, -0.5, 0.25, 1.0];
    let points: Vec<Vec<f64>> =
        xs.iter().flat_map(|&x| ys.iter().map(move |&y| vec![x, y])).collect();
    let mut sets = BTreeMap::new();
    sets.insert("bump".to_string(), SetExpr::Triangular { a: -1.0, b: 0.0, c: 1.0 });
    sets.insert("band".to_string(), SetExpr::OpenBox { bounds: vec![[-1.5, 0.5]] });
    sets.insert("edge".to_string(), SetExpr::ClosedBox { bounds: vec![[0.25, 1.75]] });
    Scenario {
        name: "product-topology".into(),
        domain: DomainSpec { bounds: vec![[-2.0, 2.0]], resolution: vec![41] },
        scalar_domain: None,
        norm: None,
        sets,
        scalar_sets: BTreeMap::new(),
        functionals: vec![],
        sequences: BTreeMap::new(),
        checks: vec![
            entry(
                "bump-x-band",
                CheckSpec::ProductConsistency {
                    left: "bump".into(),
                    right: "band".into(),
                    points: points.clone(),
                },
            ),
            entry(
                "edge-x-bump",
                CheckSpec::ProductConsistency {
                    left: "edge".into(),
                    right: "bump".into(),
                    points,
                },
            ),
        ],
    }
}

/// Cubic polynomials as coefficient vectors, probed through evaluation
/// functionals at five nodes. Five nodes determine a cubic, so every
/// evaluation functional decomposes over the catalog and differentiation
/// is weakly continuous.
fn polynomial_deltas() -> Scenario {
    let nodes = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let delta = |x: f64| vec![1.0, x, x * x, x * x * x];
    let functionals: Vec<Vec<f64>> = nodes.iter().map(|&x| delta(x)).collect();
    let mut sets = BTreeMap::new();
    sets.insert(
        "coefficient-cube".to_string(),
        SetExpr::OpenBox { bounds: vec![[-1.0, 1.0]; 4] },
    );
    let mut scalar_sets = BTreeMap::new();
    scalar_sets.insert("band".to_string(), SetExpr::OpenBox { bounds: vec![[-1.0, 1.0]] });
    let mut sequences = BTreeMap::new();
    sequences.insert(
        "drift".to_string(),
        SequenceSpec {
            entries: (1..=40).map(|j| vec![1.0 / j as f64, 0.0, 1.0, 0.0]).collect(),
            tail: 20,
        },
    );
    let derivative = vec![
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 2.0, 0.0,
        0.0, 0.0, 0.0, 3.0,
        0.0, 0.0, 0.0, 0.0,
    ];
    Scenario {
        name: "polynomial-deltas".into(),
        domain: DomainSpec { bounds: vec![[-2.0, 2.0]; 4], resolution: vec![5; 4] },
        scalar_domain: Some(DomainSpec { bounds: vec![[-4.0, 4.0]], resolution: vec![81] }),
        norm: None,
        sets,
        scalar_sets,
        functionals,
        sequences,
        checks: vec![
            entry(
                "interpolate-new-node",
                CheckSpec::Decompose { target: delta(0.25) },
            ),
            entry(
                "separate-x2-from-x",
                CheckSpec::HausdorffWitness {
                    x: vec![0.0, 0.0, 1.0, 0.0],
                    y: vec![0.0, 1.0, 0.0, 0.0],
                },
            ),
            entry(
                "weak-neighborhood-lsc",
                CheckSpec::WeaklyLsc {
                    pairs: nodes
                        .iter()
                        .map(|&x| PairSpec { functional: delta(x), set: "band".into() })
                        .collect(),
                },
            ),
            entry(
                "drift-to-x2",
                CheckSpec::NetConvergence {
                    sequence: "drift".into(),
                    limit: vec![0.0, 0.0, 1.0, 0.0],
                    grades: None,
                    scalar_tol: None,
                },
            ),
            entry(
                "differentiation-weakly-continuous",
                CheckSpec::WeaklyContinuous {
                    rows: 4,
                    cols: 4,
                    matrix: derivative,
                    target_functionals: vec![delta(-1.0), delta(0.5), delta(1.0)],
                },
            ),
            entry(
                "cube-seminorm",
                CheckSpec::WeakSeminorm {
                    set: "coefficient-cube".into(),
                    functional: delta(0.5),
                    factors: None,
                },
            ),
        ],
    }
}

/// The same scalar sets tested for linear openness under two different
/// fuzzy norms on the line. The star norm's spheres widen as the grade
/// approaches 1, so a steep tent is open under the crisp norm but not
/// under the star norm at the same search resolution.
fn norm_comparison() -> Scenario {
    let mut sets = BTreeMap::new();
    sets.insert("open-interval".to_string(), SetExpr::OpenBox { bounds: vec![[-1.0, 1.0]] });
    sets.insert("closed-interval".to_string(), SetExpr::ClosedBox { bounds: vec![[-1.0, 1.0]] });
    sets.insert("tent".to_string(), SetExpr::Triangular { a: -1.0, b: 0.0, c: 1.0 });
    sets.insert("needle".to_string(), SetExpr::Triangular { a: -0.04, b: 0.0, c: 0.04 });
    sets.insert("plateau".to_string(), SetExpr::Constant { value: 0.8 });
    sets.insert("singleton".to_string(), SetExpr::ClosedBox { bounds: vec![[0.0, 0.0]] });
    let names =
        ["open-interval", "closed-interval", "tent", "needle", "plateau", "singleton"];
    let mut checks = Vec::new();
    for name in names {
        for (tag, norm) in [("crisp", NormSpec::Euclidean), ("star", NormSpec::Star)] {
            checks.push(entry(
                &format!("{name}/{tag}"),
                CheckSpec::LinearlyOpen {
                    set: name.to_string(),
                    norm: Some(norm),
                    alphas: None,
                    radii: None,
                },
            ));
        }
    }
    Scenario {
        name: "norm-comparison".into(),
        domain: DomainSpec { bounds: vec![[-3.0, 3.0]], resolution: vec![121] },
        scalar_domain: None,
        norm: None,
        sets,
        scalar_sets: BTreeMap::new(),
        functionals: vec![],
        sequences: BTreeMap::new(),
        checks,
    }
}
