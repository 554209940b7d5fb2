use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{PreparationMap, Theory};
use crate::error::Result;
use crate::linalg::{compose_across, schmidt_decomposition, Bipartition, CVector, PureState};
use crate::measures::optimizer::{maximize_over_products, OptimizerOptions, StateOverlap};
use crate::random::{
    derive_seed, random_biseparable_state, random_product_state, random_unit_vector, rng_from_seed,
    SeededRng,
};

/// A random pure state of the free set: a product of random local vectors
/// (FSP) or a random cut with random vectors on both sides (BSP).
pub fn random_free_state(theory: Theory, n: usize, d: usize, seed: u64) -> Result<PureState> {
    let mut rng = rng_from_seed(seed);
    match theory {
        Theory::Fsp => random_product_state(n, d, &mut rng),
        Theory::Bsp => random_biseparable_state(n, d, &mut rng),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreservationReport {
    pub samples: usize,
    /// Samples drawn close to the free states of largest overlap with `ψ₁`.
    pub targeted_samples: usize,
    pub violations: usize,
    /// `min (1 - G(ψ₁)) - tr(ψ₁ σ)` over samples.
    pub worst_overlap_margin: f64,
    /// `min s_out - R(ψ₂‖σ_mix)` over samples with nonzero overlap.
    pub worst_mixing_margin: f64,
}

const VIOLATION_TOL: f64 = 1e-9;

fn perturb<R: Rng + ?Sized>(v: &CVector, rng: &mut R) -> CVector {
    let scale = 10f64.powf(-4.0 * rng.random::<f64>());
    v + random_unit_vector(v.len(), rng) * crate::linalg::C64::new(scale, 0.0)
}

/// Free states with the largest overlap with `ψ₁`, used as centres for
/// targeted samples.
enum Anchors {
    /// Top Schmidt pair for every cut.
    Cuts(Vec<(Bipartition, CVector, CVector)>),
    Product(Vec<CVector>),
}

fn anchors(map: &PreparationMap, seed: u64) -> Result<Anchors> {
    let psi = &map.psi1;
    Ok(match map.theory {
        Theory::Bsp => Anchors::Cuts(
            Bipartition::all(psi.n())?
                .into_iter()
                .map(|cut| {
                    let dec = schmidt_decomposition(psi, cut)?;
                    Ok((cut, dec.left[0].clone(), dec.right[0].clone()))
                })
                .collect::<Result<_>>()?,
        ),
        Theory::Fsp => {
            let best =
                maximize_over_products(&StateOverlap(psi), &OptimizerOptions::with_seed(seed))?;
            Anchors::Product(best.factors)
        }
    })
}

fn targeted(anchors: &Anchors, d: usize, rng: &mut SeededRng) -> Result<PureState> {
    match anchors {
        Anchors::Cuts(list) => {
            let (cut, a, b) = &list[rng.random_range(0..list.len())];
            compose_across(*cut, d, &perturb(a, rng), &perturb(b, rng))
        }
        Anchors::Product(factors) => {
            let fs: Vec<CVector> = factors.iter().map(|f| perturb(f, rng)).collect();
            PureState::product(d, &fs)
        }
    }
}

/// Checks the two preservation conditions on random free pure states:
/// `tr(ψ₁σ) <= 1 - G(ψ₁)` and `(1/p)(1/tr(ψ₁σ) - 1) >= R(ψ₂‖mixer)`.
///
/// Odd-numbered samples are uniform draws from the free set; even-numbered
/// ones are perturbations (log-uniform size in `[1e-4, 1]`) of the free
/// states closest to `ψ₁`, where the conditions are tight.
pub fn verify_preservation_sampled(
    map: &PreparationMap,
    samples: usize,
    seed: u64,
) -> Result<PreservationReport> {
    let (n, d) = (map.psi1.n(), map.psi1.d());
    let centres = anchors(map, derive_seed(seed, u64::MAX))?;
    let limit = 1.0 - map.g_source;
    let r = map.mixer.weight();
    let outcomes: Vec<(bool, f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<(bool, f64, f64)> {
            let mut rng = rng_from_seed(derive_seed(seed, i as u64));
            let sigma = if i % 2 == 0 {
                targeted(&centres, d, &mut rng)?
            } else {
                match map.theory {
                    Theory::Fsp => random_product_state(n, d, &mut rng)?,
                    Theory::Bsp => random_biseparable_state(n, d, &mut rng)?,
                }
            };
            let t = sigma.overlap(&map.psi1);
            let overlap_margin = limit - t;
            let mixing_margin = if t > 0.0 {
                (1.0 / t - 1.0) / map.p - r
            } else {
                f64::INFINITY
            };
            let bad = overlap_margin < -VIOLATION_TOL || mixing_margin < -VIOLATION_TOL;
            Ok((bad, overlap_margin, mixing_margin))
        })
        .collect::<Result<_>>()?;
    Ok(PreservationReport {
        samples,
        targeted_samples: samples.div_ceil(2),
        violations: outcomes.iter().filter(|o| o.0).count(),
        worst_overlap_margin: outcomes.iter().map(|o| o.1).fold(f64::INFINITY, f64::min),
        worst_mixing_margin: outcomes.iter().map(|o| o.2).fold(f64::INFINITY, f64::min),
    })
}
