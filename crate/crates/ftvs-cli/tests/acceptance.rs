//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line and enforcing its runtime budget. Tolerances are pinned
//! here as literals so a regression in the library constants is caught.

use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ftvs_core::norms::{self, KatsarasNorm};
use ftvs_core::weak::{self, DecomposeResult, DualPairScenario, LinearFunctional, WeakNeighborhood};
use ftvs_core::{
    lsc, set, AffineMap, Domain, FelbinNorm, FuzzyExpr, FuzzySet, Predicate, Verdict,
};

const LATTICE_EXACT: f64 = 0.0;
const NUMERIC_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-9;
const SCALAR_TOL: f64 = 0.05;

fn report_line(number: u32, name: &str, started: Instant, budget: Option<Duration>) {
    let elapsed = started.elapsed();
    if let Some(limit) = budget {
        assert!(
            elapsed < limit,
            "criterion {number} exceeded its budget: {elapsed:?} >= {limit:?}"
        );
    }
    println!("[criterion {number:02}] {name}: PASS ({:.2}s)", elapsed.as_secs_f64());
}

fn plane() -> (Domain, FelbinNorm, KatsarasNorm) {
    let domain = Domain::cube(2, -3.0, 3.0, 121).unwrap();
    let norm = FelbinNorm::euclidean(2);
    let rho = norms::katsaras_from_felbin(&norm, domain.clone()).unwrap();
    (domain, norm, rho)
}

#[test]
fn criterion_01_base_equivalence() {
    let started = Instant::now();
    let (domain, norm, rho) = plane();
    let alphas: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
    let mut max_diff = 0.0_f64;
    for &alpha in &alphas {
        for eps in [0.5, 1.0, 2.0] {
            let sphere = norms::alpha_sphere(&norm, domain.clone(), alpha, &[0.0, 0.0], eps)
                .unwrap()
                .materialize();
            let base = norms::base_neighborhood(alpha, eps, &rho).unwrap().materialize();
            for (s, b) in sphere.iter().zip(&base) {
                max_diff = max_diff.max((s - b).abs());
            }
        }
    }
    assert_eq!(max_diff, LATTICE_EXACT, "sphere and base element must agree exactly");
    report_line(1, "base-equivalence", started, Some(Duration::from_secs(5)));
}

#[test]
fn criterion_02_katsaras_axioms_for_converted_rho() {
    let started = Instant::now();
    let (_, _, rho) = plane();
    let reports = norms::katsaras_axioms_check(
        &rho,
        &norms::default_convexity_weights(),
        &norms::default_balance_factors(),
        &norms::default_t_grid(),
    )
    .unwrap();
    let by_name = |name: &str| {
        reports
            .iter()
            .find(|r| r.name == name)
            .unwrap_or_else(|| panic!("report {name} present"))
    };
    assert_eq!(by_name("katsaras-convex").max_violation, LATTICE_EXACT);
    assert_eq!(by_name("katsaras-balanced").max_violation, LATTICE_EXACT);
    for name in ["katsaras-absorbing", "katsaras-vanishing-dilation"] {
        let report = by_name(name);
        assert_eq!(report.tolerance, NUMERIC_TOL);
        assert!(report.passed(), "{name} within 1e-9");
    }
    report_line(2, "katsaras-axioms", started, Some(Duration::from_secs(30)));
}

#[test]
fn criterion_03_decompose_or_witness_against_rank_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let dim = 5usize;
    let pool = [-2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0];
    let draw_vector = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..dim)
                .map(|_| {
                    if rng.gen_bool(0.25) {
                        0.0
                    } else {
                        pool[rng.gen_range(0..pool.len())]
                    }
                })
                .collect();
            if v.iter().any(|&c| c != 0.0) {
                return v;
            }
        }
    };

    let mut combination_branches = 0usize;
    let mut witness_branches = 0usize;
    for instance in 0..100 {
        let m = rng.gen_range(1..=6);
        let catalog_rows: Vec<Vec<f64>> =
            (0..m).map(|_| draw_vector(&mut rng)).collect();
        let target: Vec<f64> = if instance % 2 == 0 {
            let mut t = vec![0.0; dim];
            for row in &catalog_rows {
                let c = pool[rng.gen_range(0..pool.len())];
                for (slot, a) in t.iter_mut().zip(row) {
                    *slot += c * a;
                }
            }
            if t.iter().all(|&c| c == 0.0) {
                t[0] = 1.0;
                catalog_rows[0].clone()
            } else {
                t
            }
        } else {
            draw_vector(&mut rng)
        };

        let flat: Vec<f64> = catalog_rows.iter().flatten().copied().collect();
        let catalog_matrix = DMatrix::from_row_slice(m, dim, &flat);
        let mut stacked = flat.clone();
        stacked.extend_from_slice(&target);
        let stacked_matrix = DMatrix::from_row_slice(m + 1, dim, &stacked);
        let oracle_in_span =
            stacked_matrix.rank(RESIDUAL_TOL) == catalog_matrix.rank(RESIDUAL_TOL);

        let f0 = LinearFunctional::new(target.clone()).unwrap();
        let catalog: Vec<LinearFunctional> = catalog_rows
            .iter()
            .map(|r| LinearFunctional::new(r.clone()).unwrap())
            .collect();
        match weak::decompose_or_witness(&f0, &catalog).unwrap() {
            DecomposeResult::Coefficients(coeffs) => {
                assert!(oracle_in_span, "instance {instance}: branch disagrees with rank oracle");
                combination_branches += 1;
                let mut recon = vec![0.0; dim];
                for (c, row) in coeffs.iter().zip(&catalog_rows) {
                    for (slot, a) in recon.iter_mut().zip(row) {
                        *slot += c * a;
                    }
                }
                let residual = recon
                    .iter()
                    .zip(&target)
                    .map(|(r, t)| (r - t).abs())
                    .fold(0.0_f64, f64::max);
                assert!(residual <= RESIDUAL_TOL, "instance {instance}: residual {residual}");
            }
            DecomposeResult::Witness(v) => {
                assert!(!oracle_in_span, "instance {instance}: branch disagrees with rank oracle");
                witness_branches += 1;
                let annihilation = catalog
                    .iter()
                    .map(|f| f.apply(&v).abs())
                    .fold(0.0_f64, f64::max);
                assert!(annihilation <= RESIDUAL_TOL, "instance {instance}: witness not in kernel");
                assert!(
                    f0.apply(&v).abs() > RESIDUAL_TOL,
                    "instance {instance}: witness does not separate"
                );
            }
        }
    }
    assert!(combination_branches > 0 && witness_branches > 0, "both branches exercised");
    report_line(3, "decompose-or-witness", started, Some(Duration::from_secs(1)));
}

#[test]
fn criterion_04_hausdorff_witnesses() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let scalar_domain = Domain::line(-5.0, 5.0, 41).unwrap();
    let basis = vec![
        LinearFunctional::new(vec![1.0, 0.0, 0.0]).unwrap(),
        LinearFunctional::new(vec![0.0, 1.0, 0.0]).unwrap(),
        LinearFunctional::new(vec![0.0, 0.0, 1.0]).unwrap(),
    ];
    let scenario = DualPairScenario::new(3, basis, scalar_domain.clone()).unwrap();
    let quarter = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..3).map(|_| rng.gen_range(-8..=8) as f64 / 4.0).collect()
    };
    for pair in 0..50 {
        let x = quarter(&mut rng);
        let y = loop {
            let candidate = quarter(&mut rng);
            if candidate != x {
                break candidate;
            }
        };
        let (f, beta, eta) = weak::hausdorff_witness(&x, &y, &scenario).unwrap();
        let overlap = scalar_domain
            .points()
            .map(|p| beta.eval(&p).min(eta.eval(&p)))
            .fold(0.0_f64, f64::max);
        assert_eq!(overlap, LATTICE_EXACT, "pair {pair}: witnesses overlap");
        assert_eq!(beta.eval(&[f.apply(&x)]), 1.0, "pair {pair}: beta misses x");
        assert_eq!(eta.eval(&[f.apply(&y)]), 1.0, "pair {pair}: eta misses y");
        assert!(lsc::is_lsc(&beta).passed(), "pair {pair}: beta not lsc");
        assert!(lsc::is_lsc(&eta).passed(), "pair {pair}: eta not lsc");
    }
    report_line(4, "hausdorff-witnesses", started, Some(Duration::from_secs(5)));
}

#[test]
fn criterion_05_weak_lsc_equivalence() {
    let started = Instant::now();
    let domain = Domain::cube(2, -2.0, 2.0, 21).unwrap();
    let scalar_domain = Domain::line(-5.0, 5.0, 41).unwrap();
    let functionals = [
        vec![1.0, 0.0],
        vec![0.0, 1.0],
        vec![1.0, 1.0],
        vec![1.0, -1.0],
    ];
    let lsc_bodies = [
        FuzzyExpr::Indicator(Predicate::open_interval(-1.0, 1.0)),
        FuzzyExpr::Triangular { a: -1.0, b: 0.0, c: 1.0 },
        FuzzyExpr::Constant(0.6),
        FuzzyExpr::Indicator(Predicate::Halfspace {
            normal: vec![1.0],
            offset: 0.5,
            open: true,
        }),
        FuzzyExpr::Join(vec![
            FuzzyExpr::Indicator(Predicate::open_interval(-2.0, -0.5)),
            FuzzyExpr::Indicator(Predicate::open_interval(0.5, 2.0)),
        ]),
        FuzzyExpr::Meet(vec![
            FuzzyExpr::Triangular { a: -2.0, b: 0.0, c: 2.0 },
            FuzzyExpr::Constant(0.8),
        ]),
    ];
    let scalar_sets: Vec<FuzzySet> = lsc_bodies
        .iter()
        .map(|b| FuzzySet::new(scalar_domain.clone(), b.clone()).unwrap())
        .collect();
    let functional = |i: usize| LinearFunctional::new(functionals[i].clone()).unwrap();

    let mut neighborhoods = Vec::new();
    for i in 0..functionals.len() {
        for s in &scalar_sets {
            neighborhoods
                .push(WeakNeighborhood::new(vec![(functional(i), s.clone())]).unwrap());
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3), (1, 2)] {
        neighborhoods.push(
            WeakNeighborhood::new(vec![
                (functional(i), scalar_sets[i % scalar_sets.len()].clone()),
                (functional(j), scalar_sets[(j + 2) % scalar_sets.len()].clone()),
            ])
            .unwrap(),
        );
    }
    neighborhoods.push(
        WeakNeighborhood::new(
            (0..4).map(|i| (functional(i), scalar_sets[i].clone())).collect(),
        )
        .unwrap(),
    );

    for (k, v) in neighborhoods.iter().enumerate() {
        let report = weak::weakly_lsc_check(v, &domain).unwrap();
        assert!(report.passed(), "neighborhood {k} was falsified: {report:?}");
    }

    let closed = FuzzySet::indicator(
        scalar_domain.clone(),
        Predicate::closed_interval(-1.0, 1.0),
    )
    .unwrap();
    let closed_neighborhood =
        WeakNeighborhood::new(vec![(functional(0), closed)]).unwrap();
    let report = weak::weakly_lsc_check(&closed_neighborhood, &domain).unwrap();
    assert_eq!(report.verdict, Verdict::Fail, "closed indicator must be falsified");
    report_line(5, "weak-lsc-equivalence", started, Some(Duration::from_secs(10)));
}

/// Independent shape formulas for the algebra oracle. These restate the
/// membership functions from their parameters so the comparison does not
/// route through the expression evaluator.
#[derive(Clone, Copy)]
enum Shape {
    Tri(f64, f64, f64),
    Band(f64, f64, bool),
}

impl Shape {
    fn value(&self, z: f64) -> f64 {
        match *self {
            Shape::Tri(a, b, c) => {
                if z < a || z > c {
                    0.0
                } else if z == b {
                    1.0
                } else if z < b {
                    (z - a) / (b - a)
                } else {
                    (c - z) / (c - b)
                }
            }
            Shape::Band(lo, hi, open) => {
                let inside = if open { z > lo && z < hi } else { z >= lo && z <= hi };
                if inside {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    fn to_set(self, domain: &Domain) -> FuzzySet {
        let body = match self {
            Shape::Tri(a, b, c) => FuzzyExpr::Triangular { a, b, c },
            Shape::Band(lo, hi, true) => {
                FuzzyExpr::Indicator(Predicate::open_interval(lo, hi))
            }
            Shape::Band(lo, hi, false) => {
                FuzzyExpr::Indicator(Predicate::closed_interval(lo, hi))
            }
        };
        FuzzySet::new(domain.clone(), body).unwrap()
    }
}

#[test]
fn criterion_06_sup_min_algebra_matches_brute_force() {
    let started = Instant::now();
    let domain = Domain::line(-5.0, 5.0, 41).unwrap();
    let n = domain.lattice_len();
    let step = domain.step(0);
    let lo = domain.bounds()[0].0;
    let coord = |i: usize| lo + i as f64 * step;

    let add_oracle = |a: Shape, b: Shape| -> Vec<f64> {
        (0..n)
            .map(|i| {
                let mut best = 0.0_f64;
                for j in 0..n {
                    let d = (i as f64 - j as f64) * step;
                    if d < -5.0 || d > 5.0 {
                        continue;
                    }
                    best = best.max(a.value(coord(j)).min(b.value(d)));
                }
                best
            })
            .collect()
    };
    let image_oracle = |f: &dyn Fn(f64) -> f64, a: Shape| -> Vec<f64> {
        (0..n)
            .map(|k| {
                let y = coord(k);
                let mut best = 0.0_f64;
                for j in 0..n {
                    if (f(coord(j)) - y).abs() <= step / 2.0 {
                        best = best.max(a.value(coord(j)));
                    }
                }
                best
            })
            .collect()
    };
    let scale_oracle = |t: f64, a: Shape| -> Vec<f64> {
        (0..n).map(|k| a.value(coord(k) / t)).collect()
    };

    let assert_pointwise = |case: &str, got: &FuzzySet, expect: &[f64]| {
        let vals = got.materialize();
        for (i, (g, e)) in vals.iter().zip(expect).enumerate() {
            assert_eq!(g, e, "{case}: cell {i} differs");
        }
    };

    let add_cases: [(Shape, Shape); 4] = [
        (Shape::Band(0.0, 1.0, false), Shape::Band(2.0, 3.0, false)),
        (Shape::Tri(0.0, 1.0, 2.0), Shape::Tri(0.0, 1.0, 2.0)),
        (Shape::Tri(-2.0, -1.0, 0.0), Shape::Band(-1.0, 0.0, false)),
        (Shape::Band(-1.0, 0.0, true), Shape::Band(0.5, 1.5, false)),
    ];
    for (k, (a, b)) in add_cases.iter().enumerate() {
        let got = set::add(&a.to_set(&domain), &b.to_set(&domain)).unwrap();
        assert_pointwise(&format!("add case {k}"), &got, &add_oracle(*a, *b));
    }

    let identity = AffineMap::identity(1);
    let negate = AffineMap::linear(1, 1, vec![-1.0]).unwrap();
    let shift = AffineMap::new(1, 1, vec![1.0], vec![-1.0]).unwrap();
    let image_cases: [(&AffineMap, &dyn Fn(f64) -> f64, Shape); 3] = [
        (&identity, &|x| x, Shape::Tri(-1.0, 0.0, 1.0)),
        (&negate, &|x| -x, Shape::Tri(-2.0, -1.0, 0.0)),
        (&shift, &|x| x - 1.0, Shape::Band(-1.0, 0.0, false)),
    ];
    for (k, (map, f, a)) in image_cases.iter().enumerate() {
        let got = set::image(map, &a.to_set(&domain), &domain).unwrap();
        assert_pointwise(&format!("image case {k}"), &got, &image_oracle(f, *a));
    }

    let scale_cases: [(f64, Shape); 3] = [
        (2.0, Shape::Band(-1.0, 1.0, true)),
        (0.5, Shape::Tri(-2.0, 0.0, 2.0)),
        (-1.0, Shape::Tri(-2.0, -1.0, 0.0)),
    ];
    for (k, (t, a)) in scale_cases.iter().enumerate() {
        let got = set::scalar_mul(*t, &a.to_set(&domain));
        assert_pointwise(&format!("scalar case {k}"), &got, &scale_oracle(*t, *a));
    }

    report_line(6, "sup-min-algebra-oracle", started, Some(Duration::from_secs(2)));
}

#[test]
fn criterion_07_weak_seminorm_invariance_and_degeneracy() {
    let started = Instant::now();
    let domain = Domain::cube(2, -2.0, 2.0, 21).unwrap();
    let scalar_domain = Domain::line(-5.0, 5.0, 41).unwrap();
    let body = FuzzyExpr::Meet(vec![
        FuzzyExpr::Constant(0.8),
        FuzzyExpr::Indicator(Predicate::BoxRegion {
            bounds: vec![(-1.0, 1.0), (-1.0, 1.0)],
            open: true,
        }),
    ]);
    let mu = FuzzySet::new(domain, body).unwrap();
    let x_prime = LinearFunctional::new(vec![1.0, 1.0]).unwrap();

    let reference = weak::weak_seminorm(&mu, &x_prime, &scalar_domain).unwrap();
    for t in [0.1, -0.1, 0.5, -0.5, 1.0, -1.0] {
        let scaled = weak::weak_seminorm(&mu, &x_prime.scale(t), &scalar_domain).unwrap();
        assert_eq!(scaled, reference, "scaling by {t} changed the seminorm");
    }
    let zero = LinearFunctional::zero(2).unwrap();
    assert_eq!(
        weak::weak_seminorm(&mu, &zero, &scalar_domain).unwrap(),
        mu.height(),
        "zero functional must give the height"
    );

    let report = weak::weak_seminorm_check(
        &mu,
        &x_prime,
        &[0.1, -0.1, 0.5, -0.5, 1.0, -1.0],
        &scalar_domain,
    )
    .unwrap();
    assert!(report.passed());
    assert!(
        report.notes.iter().any(|n| n.contains("degeneracy")),
        "degeneracy note missing: {:?}",
        report.notes
    );
    report_line(7, "weak-seminorm", started, None);
}

#[test]
fn criterion_08_net_convergence_triple() {
    let started = Instant::now();
    let scalar_domain = Domain::line(-5.0, 5.0, 41).unwrap();
    let functionals = vec![
        LinearFunctional::new(vec![1.0, 0.0]).unwrap(),
        LinearFunctional::new(vec![0.0, 1.0]).unwrap(),
    ];
    let scenario = DualPairScenario::new(2, functionals.clone(), scalar_domain.clone()).unwrap();
    let catalog = vec![weak::weak_base_neighborhood(
        &functionals,
        &[1.0, 1.0],
        &[1.0, 1.0],
        &scalar_domain,
    )
    .unwrap()];
    let grades = norms::default_theta_grid();

    let reciprocal: Vec<Vec<f64>> =
        (1..=40).map(|j| vec![1.0 / j as f64, 0.0]).collect();
    let constant: Vec<Vec<f64>> = vec![vec![0.25, -0.5]; 40];
    let alternating: Vec<Vec<f64>> = (1..=40)
        .map(|j| vec![if j % 2 == 0 { -1.0 } else { 1.0 }, 0.0])
        .collect();

    let run = |seq: &[Vec<f64>], x: &[f64]| {
        weak::net_converges_weakly(seq, x, &scenario, &catalog, 20, &grades, SCALAR_TOL).unwrap()
    };
    let r1 = run(&reciprocal, &[0.0, 0.0]);
    let r2 = run(&constant, &[0.25, -0.5]);
    let r3 = run(&alternating, &[0.0, 0.0]);

    assert!(r1.neighborhood_pass && r1.scalar_pass, "reciprocal sequence converges");
    assert!(r2.neighborhood_pass && r2.scalar_pass, "constant sequence converges");
    assert!(!r3.neighborhood_pass && !r3.scalar_pass, "alternating sequence diverges");
    for (name, r) in [("reciprocal", &r1), ("constant", &r2), ("alternating", &r3)] {
        assert!(r.criteria_agree(), "{name}: criteria disagree");
    }
    report_line(8, "net-convergence", started, Some(Duration::from_secs(1)));
}

#[test]
fn criterion_09_product_topology_consistency() {
    let started = Instant::now();
    let domain = Domain::cube(2, -2.0, 2.0, 21).unwrap();
    let scalar_domain = Domain::line(-2.0, 2.0, 21).unwrap();
    let e1 = LinearFunctional::new(vec![1.0, 0.0]).unwrap();
    let e2 = LinearFunctional::new(vec![0.0, 1.0]).unwrap();
    let bodies = [
        FuzzyExpr::Indicator(Predicate::open_interval(-1.0, 1.0)),
        FuzzyExpr::Triangular { a: -1.0, b: 0.0, c: 1.0 },
        FuzzyExpr::Constant(0.7),
        FuzzyExpr::Indicator(Predicate::closed_interval(-0.5, 0.5)),
        FuzzyExpr::Join(vec![
            FuzzyExpr::Indicator(Predicate::open_interval(-2.0, -1.0)),
            FuzzyExpr::Triangular { a: 0.0, b: 1.0, c: 2.0 },
        ]),
    ];
    let factors: Vec<FuzzySet> = bodies
        .iter()
        .map(|b| FuzzySet::new(scalar_domain.clone(), b.clone()).unwrap())
        .collect();

    let mut cases = 0usize;
    for i in 0..factors.len() {
        for j in 0..factors.len() {
            if i == j {
                continue;
            }
            cases += 1;
            let v = WeakNeighborhood::new(vec![
                (e1.clone(), factors[i].clone()),
                (e2.clone(), factors[j].clone()),
            ])
            .unwrap();
            let composite = v.to_fuzzy_set(&domain).unwrap();
            for p in domain.points() {
                let expected = factors[i].eval(&p[..1]).min(factors[j].eval(&p[1..]));
                assert_eq!(
                    weak::weak_eval(&v, &p).unwrap(),
                    expected,
                    "pair ({i},{j}) at {p:?}"
                );
                assert_eq!(composite.eval(&p), expected, "composite ({i},{j}) at {p:?}");
            }
        }
    }
    assert_eq!(cases, 20);
    report_line(9, "product-topology", started, None);
}

#[test]
fn criterion_10_reports_are_deterministic() {
    let started = Instant::now();
    let bin = env!("CARGO_BIN_EXE_ftvs");
    let scenario_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let strip_timing = |raw: &[u8]| -> String {
        String::from_utf8_lossy(raw)
            .lines()
            .filter(|l| !l.contains("elapsed_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let run = |args: &[&str]| -> String {
        let out = std::process::Command::new(bin)
            .args(args)
            .output()
            .expect("binary runs");
        strip_timing(&out.stdout)
    };

    for file in ["unit-ball.json", "weak-pair.json", "topology-family.json"] {
        let path = scenario_dir.join(file);
        let args = ["check", path.to_str().unwrap()];
        let first = run(&args);
        let second = run(&args);
        assert!(!first.is_empty(), "{file} produced a report");
        assert_eq!(first, second, "{file}: reports differ between runs");
    }
    for demo in ["euclidean-equivalence", "product-topology", "polynomial-deltas", "norm-comparison"]
    {
        let first = run(&["demo", demo]);
        let second = run(&["demo", demo]);
        assert!(!first.is_empty(), "{demo} produced a report");
        assert_eq!(first, second, "{demo}: reports differ between runs");
    }
    report_line(10, "determinism", started, None);
}
