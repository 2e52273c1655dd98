//! Dispatch from scenario check specs to the core verification routines.

use ftvs_core::norms::{self, BaseNeighborhood};
use ftvs_core::weak::{self, DecomposeResult, LinearFunctional, WeakNeighborhood, RESIDUAL_TOL};
use ftvs_core::{lsc, reals, set as sets, AffineMap, CheckReport, CoreError, FelbinNorm};

use crate::error::CliError;
use crate::scenario::{BaseSpec, CheckSpec, Resolved};

/// Runs one check spec. Most specs yield a single report; the axiom
/// bundles yield one report per axiom.
pub fn run_spec(spec: &CheckSpec, res: &Resolved) -> Result<Vec<CheckReport>, CliError> {
    let reports = match spec {
        CheckSpec::Convex { set, weights } => {
            vec![norms::is_convex(res.set(set)?, grid(weights))?]
        }
        CheckSpec::Balanced { set, factors } => {
            vec![norms::is_balanced(res.set(set)?, grid(factors))?]
        }
        CheckSpec::Absorbing { set, t_grid } => {
            vec![norms::is_absorbing(res.set(set)?, grid(t_grid), None)?]
        }
        CheckSpec::VanishingDilations { set, t_grid } => {
            vec![norms::vanishing_dilations(res.set(set)?, grid(t_grid))?]
        }
        CheckSpec::FelbinAxioms { vectors, scalars } => {
            reals::felbin_axioms_check(res.norm()?, vectors, scalars)?
        }
        CheckSpec::KatsarasAxioms { weights, factors, t_grid } => {
            norms::katsaras_axioms_check(res.rho()?, grid(weights), grid(factors), grid(t_grid))?
        }
        CheckSpec::BaseEquivalence { alphas, radii } => {
            vec![norms::base_equivalence_check(res.norm()?, res.rho()?, grid(alphas), grid(radii))?]
        }
        CheckSpec::NeighborhoodOf { set, point, thetas, t_grid } => {
            vec![norms::is_neighborhood_of(
                res.set(set)?,
                point,
                res.rho()?,
                grid(thetas),
                grid(t_grid),
            )?]
        }
        CheckSpec::LinearlyOpen { set, norm, alphas, radii } => {
            let owned;
            let norm = match norm {
                Some(spec) => {
                    owned = spec.build(res.domain.dimension())?;
                    &owned
                }
                None => res.norm()?,
            };
            vec![norms::is_linearly_open(res.set(set)?, norm, grid(alphas), grid(radii))?]
        }
        CheckSpec::Absorbs { absorber, absorbed, thetas, t_grid } => {
            vec![norms::absorbs(
                res.set(absorber)?,
                res.set(absorbed)?,
                grid(thetas),
                grid(t_grid),
            )?]
        }
        CheckSpec::Bounded { set, base, thetas, t_grid } => {
            let base = realize_base(base, res.rho()?)?;
            vec![norms::is_bounded(res.set(set)?, &base, grid(thetas), grid(t_grid))?]
        }
        CheckSpec::TopologyAxioms { family, constants } => {
            let members = family
                .iter()
                .map(|name| res.set(name).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            vec![norms::topology_axioms_check(&members, grid(constants))?]
        }
        CheckSpec::Hausdorff { family, x, y } => {
            let members = family
                .iter()
                .map(|name| res.set(name).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            vec![norms::hausdorff_check(&members, x, y)?]
        }
        CheckSpec::Lsc { set } => vec![lsc::is_lsc(res.set(set)?)],
        CheckSpec::WeaklyLsc { pairs } => {
            let mut built = Vec::with_capacity(pairs.len());
            for pair in pairs {
                let f = LinearFunctional::new(pair.functional.clone())?;
                built.push((f, res.scalar_set(&pair.set)?.clone()));
            }
            let v = WeakNeighborhood::new(built)?;
            vec![weak::weakly_lsc_check(&v, &res.domain)?]
        }
        CheckSpec::NetConvergence { sequence, limit, grades, scalar_tol } => {
            let scenario = res.dual_pair()?;
            let n = scenario.functionals().len();
            let catalog = vec![weak::weak_base_neighborhood(
                scenario.functionals(),
                &vec![1.0; n],
                &vec![1.0; n],
                res.scalar_domain()?,
            )?];
            let seq = res.sequence(sequence)?;
            let nc = weak::net_converges_weakly(
                &seq.entries,
                limit,
                &scenario,
                &catalog,
                seq.tail,
                grid(grades),
                scalar_tol.expect("defaulted at load"),
            )?;
            vec![nc.report]
        }
        CheckSpec::Decompose { target } => vec![decompose_report(target, res)?],
        CheckSpec::HausdorffWitness { x, y } => vec![hausdorff_witness_report(x, y, res)?],
        CheckSpec::WeaklyContinuous { rows, cols, matrix, target_functionals } => {
            let map = AffineMap::linear(*rows, *cols, matrix.clone())?;
            let e_scenario = res.dual_pair()?;
            let targets = target_functionals
                .iter()
                .map(|c| LinearFunctional::new(c.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            let f_scenario = weak::DualPairScenario::new(
                *rows,
                targets,
                res.scalar_domain()?.clone(),
            )?;
            vec![weak::weakly_continuous_check(&map, &e_scenario, &f_scenario)?]
        }
        CheckSpec::WeakSeminorm { set, functional, factors } => {
            let f = LinearFunctional::new(functional.clone())?;
            vec![weak::weak_seminorm_check(
                res.set(set)?,
                &f,
                grid(factors),
                res.scalar_domain()?,
            )?]
        }
        CheckSpec::WeaklyBounded { set, base, thetas, t_grid } => {
            let scalar_rho = norms::katsaras_from_felbin(
                &FelbinNorm::euclidean(1),
                res.scalar_domain()?.clone(),
            )?;
            let base = realize_base(base, &scalar_rho)?;
            vec![weak::weakly_bounded_check(
                res.set(set)?,
                &res.dual_pair()?,
                &base,
                grid(thetas),
                grid(t_grid),
            )?]
        }
        CheckSpec::ProductConsistency { left, right, points } => {
            vec![product_consistency_report(left, right, points, res)?]
        }
    };
    Ok(reports)
}

fn grid(slot: &Option<Vec<f64>>) -> &[f64] {
    slot.as_deref().expect("defaulted at load")
}

fn realize_base(
    specs: &[BaseSpec],
    rho: &norms::KatsarasNorm,
) -> Result<Vec<BaseNeighborhood>, CliError> {
    if specs.is_empty() {
        return Err(CliError::config("the base list must not be empty"));
    }
    specs
        .iter()
        .map(|b| BaseNeighborhood::new(b.theta, b.t, rho).map_err(CliError::from))
        .collect()
}

/// Reports which branch of the span test fired and re-measures its
/// certificate: reconstruction residual for a combination, annihilation
/// residual for a witness.
fn decompose_report(target: &[f64], res: &Resolved) -> Result<CheckReport, CliError> {
    let f0 = LinearFunctional::new(target.to_vec())?;
    let scenario = res.dual_pair()?;
    let catalog = scenario.functionals();
    match weak::decompose_or_witness(&f0, catalog) {
        Ok(DecomposeResult::Coefficients(coeffs)) => {
            let dim = f0.dim();
            let mut recon = vec![0.0; dim];
            for (c, f) in coeffs.iter().zip(catalog) {
                for (r, a) in recon.iter_mut().zip(f.coefficients()) {
                    *r += c * a;
                }
            }
            let residual = recon
                .iter()
                .zip(f0.coefficients())
                .map(|(r, t)| (r - t).abs())
                .fold(0.0_f64, f64::max);
            Ok(CheckReport::from_violation("decompose", residual, RESIDUAL_TOL, None)
                .with_note(format!("combination branch with coefficients {coeffs:?}")))
        }
        Ok(DecomposeResult::Witness(v)) => {
            let annihilation = catalog
                .iter()
                .map(|f| f.apply(&v).abs())
                .fold(0.0_f64, f64::max);
            let separation = f0.apply(&v).abs();
            let violation =
                if separation <= RESIDUAL_TOL { 1.0 } else { annihilation };
            Ok(CheckReport::from_violation("decompose", violation, RESIDUAL_TOL, None)
                .with_note(format!(
                    "witness branch: vector {v:?} annihilates the catalog but the target maps it to {separation:.6e}"
                )))
        }
        Err(CoreError::InvalidSet(msg)) => Ok(CheckReport::from_violation(
            "decompose",
            1.0,
            RESIDUAL_TOL,
            None,
        )
        .with_note(format!("neither branch produced a certificate: {msg}"))),
        Err(e) => Err(e.into()),
    }
}

/// Builds the separating pair for two points and certifies it: disjoint
/// open scalar sets, full grade at the images of x and y, both lower
/// semicontinuous.
fn hausdorff_witness_report(
    x: &[f64],
    y: &[f64],
    res: &Resolved,
) -> Result<CheckReport, CliError> {
    let scenario = res.dual_pair()?;
    let (f, beta, eta) = match weak::hausdorff_witness(x, y, &scenario) {
        Ok(triple) => triple,
        Err(e @ (CoreError::IdenticalPoints | CoreError::NoSeparatingFunctional)) => {
            return Ok(CheckReport::from_violation("hausdorff-witness", 1.0, 0.0, None)
                .with_note(format!("no separating pair exists: {e}")));
        }
        Err(e) => return Err(e.into()),
    };
    let at_x = beta.eval(&[f.apply(x)]);
    let at_y = eta.eval(&[f.apply(y)]);
    let overlap = res
        .scalar_domain()?
        .points()
        .map(|p| beta.eval(&p).min(eta.eval(&p)))
        .fold(0.0_f64, f64::max);
    let beta_lsc = lsc::is_lsc(&beta).passed();
    let eta_lsc = lsc::is_lsc(&eta).passed();
    let mut violation = overlap.max(1.0 - at_x).max(1.0 - at_y);
    if !beta_lsc || !eta_lsc {
        violation = violation.max(1.0);
    }
    Ok(CheckReport::from_violation("hausdorff-witness", violation, 0.0, None)
        .with_note(format!("separating functional {:?}", f.coefficients()))
        .with_note(format!(
            "grade at the image of x: {at_x}, at the image of y: {at_y}, worst joint grade: {overlap}"
        ))
        .with_note(format!(
            "lower semicontinuity: first set {}, second set {}",
            if beta_lsc { "pass" } else { "fail" },
            if eta_lsc { "pass" } else { "fail" }
        )))
}

/// Compares the product set against the factor-wise minimum at the given
/// points of the product space.
fn product_consistency_report(
    left: &str,
    right: &str,
    points: &[Vec<f64>],
    res: &Resolved,
) -> Result<CheckReport, CliError> {
    if points.is_empty() {
        return Err(CliError::config("product-consistency needs at least one point"));
    }
    let a = res.set(left)?;
    let b = res.set(right)?;
    let prod = sets::product(a, b);
    let split = a.domain().dimension();
    let total = split + b.domain().dimension();
    let mut worst = 0.0_f64;
    let mut witness = None;
    for p in points {
        if p.len() != total {
            return Err(CliError::config(format!(
                "product point has {} coordinates, the product space has {total}",
                p.len()
            )));
        }
        let expected = a.eval(&p[..split]).min(b.eval(&p[split..]));
        let got = prod.eval(p);
        let diff = (expected - got).abs();
        if diff > worst {
            worst = diff;
            witness = Some(ftvs_core::Witness {
                point: p.clone(),
                detail: format!("factor minimum {expected}, product grade {got}"),
            });
        }
    }
    Ok(CheckReport::from_violation("product-consistency", worst, 0.0, witness)
        .with_note(format!("{} points compared", points.len())))
}
