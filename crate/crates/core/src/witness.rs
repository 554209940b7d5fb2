//! Entanglement witnesses normalized to `[0, 1]` on fully separable states,
//! and the robustness lower bound `max(0, -tr(W ρ))` they give.

use num_rational::BigRational;
use serde::Serialize;

use crate::catalog::{ghz, ghz_minus, w_bar, w_state};
use crate::error::{Error, Result};
use crate::ghz_symmetric::{polytope_vertices, ExactGhzParams, SymmetricTriple};
use crate::linalg::{
    c, hermiticity_error, projector, CMatrix, CVector, DensityMatrix, PureState, C64,
};
use crate::measures::optimizer::{maximize_over_products, OperatorExpectation, OptimizerOptions};
use crate::measures::DickeWeights;
use crate::polytope::Scalar;

/// Slack allowed when admitting a witness by its verified range.
pub const ADMISSION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRange {
    pub min: f64,
    pub max: f64,
    pub argmin: PureState,
    pub argmax: PureState,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifiedRange {
    pub min: f64,
    pub max: f64,
    pub method: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub name: String,
    pub n: usize,
    pub d: usize,
    #[serde(skip)]
    operator: CMatrix,
    pub verified_range: Option<VerifiedRange>,
}

impl Witness {
    pub fn new(name: &str, n: usize, d: usize, operator: CMatrix) -> Result<Self> {
        let dim = d.pow(n as u32);
        if operator.nrows() != dim || operator.ncols() != dim {
            return Err(Error::InvalidDimensions(format!(
                "witness operator is {}x{}, expected {dim}x{dim}",
                operator.nrows(),
                operator.ncols()
            )));
        }
        let herm = hermiticity_error(&operator);
        if herm > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "witness operator is not Hermitian (deviation {herm:e})"
            )));
        }
        Ok(Witness {
            name: name.into(),
            n,
            d,
            operator,
            verified_range: None,
        })
    }

    pub fn operator(&self) -> &CMatrix {
        &self.operator
    }

    /// `tr(W ρ)`
    pub fn value(&self, rho: &DensityMatrix) -> Result<f64> {
        rho.same_shape(self.n, self.d)?;
        Ok(rho.expectation(&self.operator))
    }

    /// `<ψ|W|ψ>`
    pub fn value_pure(&self, psi: &PureState) -> Result<f64> {
        psi.same_shape(self.n, self.d)?;
        let v = psi.amplitudes();
        Ok((v.adjoint() * &self.operator * v)[(0, 0)].re)
    }

    /// Runs [`witness_range_over_fs`] and records the result.
    pub fn verified(mut self, opts: &OptimizerOptions) -> Result<Self> {
        let range = witness_range_over_fs(&self, opts)?;
        self.verified_range = Some(VerifiedRange {
            min: range.min,
            max: range.max,
            method: format!(
                "product-state optimization ({} restarts, seed {})",
                opts.restarts, opts.seed
            ),
        });
        Ok(self)
    }

    pub fn is_admissible(&self) -> bool {
        self.verified_range
            .as_ref()
            .is_some_and(|r| r.min >= -ADMISSION_TOL && r.max <= 1.0 + ADMISSION_TOL)
    }
}

/// `(2/3) 1 - (8/3) GHZ + (4/3) GHZ₋`
pub fn ghz_robustness_witness() -> Witness {
    let g = projector(ghz(3, 2).expect("valid").amplitudes());
    let gm = projector(ghz_minus().amplitudes());
    let op = CMatrix::identity(8, 8).scale(2.0 / 3.0) - g.scale(8.0 / 3.0) + gm.scale(4.0 / 3.0);
    Witness::new("ghz", 3, 2, op).expect("Hermitian 8x8")
}

/// `|000><000| - 3 W + P_001 + P_010 + P_100 + 3 W̄`
pub fn w_robustness_witness() -> Witness {
    let mut op =
        projector(w_bar().amplitudes()).scale(3.0) - projector(w_state().amplitudes()).scale(3.0);
    for i in [0, 1, 2, 4] {
        op[(i, i)] += c(1.0);
    }
    Witness::new("w", 3, 2, op).expect("Hermitian 8x8")
}

/// Extremes of `tr(W φ)` over product pure states `φ` (maximum directly,
/// minimum through `-W`).
pub fn witness_range_over_fs(w: &Witness, opts: &OptimizerOptions) -> Result<WitnessRange> {
    let hi = maximize_over_products(
        &OperatorExpectation {
            operator: &w.operator,
            n: w.n,
            d: w.d,
        },
        opts,
    )?;
    let neg = -w.operator.clone();
    let lo = maximize_over_products(
        &OperatorExpectation {
            operator: &neg,
            n: w.n,
            d: w.d,
        },
        opts,
    )?;
    Ok(WitnessRange {
        min: -lo.value,
        max: hi.value,
        argmin: lo.state,
        argmax: hi.state,
        converged: lo.converged && hi.converged,
    })
}

/// `max(0, -tr(W ρ))`, for witnesses whose verified range lies in `[0, 1]`.
pub fn robustness_lower_from_witness(rho: &DensityMatrix, w: &Witness) -> Result<f64> {
    if !w.is_admissible() {
        return Err(Error::UnverifiedWitness(match &w.verified_range {
            None => format!("witness `{}` has no verified range", w.name),
            Some(r) => format!(
                "witness `{}` ranges over [{}, {}] on product states",
                w.name, r.min, r.max
            ),
        }));
    }
    Ok((-w.value(rho)?).max(0.0))
}

/// `tr(𝒲 ρ(λ+, λ-, λ)) = 2/3 - (8/3) λ+ + (4/3) λ-`, exactly.
pub fn ghz_witness_value_exact(p: &ExactGhzParams) -> BigRational {
    let q = <BigRational as Scalar>::ratio;
    q(2, 3) - q(8, 3) * p.plus.clone() + q(4, 3) * p.minus.clone()
}

/// [`ghz_witness_value_exact`] at the four vertices of the separable polytope.
pub fn ghz_witness_vertex_values() -> Vec<BigRational> {
    let q = <BigRational as Scalar>::ratio;
    let exact = [
        ((0, 1), (0, 1), (1, 1)),
        ((0, 1), (1, 4), (3, 4)),
        ((1, 2), (1, 2), (0, 1)),
        ((1, 4), (0, 1), (3, 4)),
    ];
    debug_assert_eq!(exact.len(), polytope_vertices().len());
    exact
        .iter()
        .map(|&(a, b, r)| {
            ghz_witness_value_exact(&SymmetricTriple {
                plus: q(a.0, a.1),
                minus: q(b.0, b.1),
                rest: q(r.0, r.1),
            })
        })
        .collect()
}

/// `tr(A ρ) = D₀ - 2 D_W + 3 D_W̄` for a Dicke-diagonal `ρ`, exactly.
pub fn w_witness_value_exact(weights: &DickeWeights) -> BigRational {
    let q = <BigRational as Scalar>::ratio;
    weights.zero.clone() - q(2, 1) * weights.w.clone() + q(3, 1) * weights.w_bar.clone()
}

/// `tr((A - 1/2) |aaa><aaa|)` with `|a> = cos α |0> + e^{iβ} sin α |1>`.
pub fn symmetric_triform_value(alpha: f64, beta: f64) -> f64 {
    let a = CVector::from_vec(vec![c(alpha.cos()), C64::from_polar(alpha.sin(), beta)]);
    let phi = PureState::product(2, &[a.clone(), a.clone(), a]).expect("qubit factors");
    w_robustness_witness().value_pure(&phi).expect("3 qubits") - 0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{w_robustness_mixer, w_robustness_mixture};
    use crate::ghz_symmetric::params_to_density;
    use crate::measures::{robustness_fs_upper_via_mix, MixOptions};
    use crate::random::{random_product_state, rng_from_seed};
    use std::f64::consts::PI;

    #[test]
    fn ghz_witness_values() {
        let w = ghz_robustness_witness();
        assert!((w.value_pure(&ghz(3, 2).unwrap()).unwrap() + 2.0).abs() < 1e-14);
        assert!((w.value_pure(&ghz_minus()).unwrap() - 2.0).abs() < 1e-14);
        let q = <BigRational as Scalar>::ratio;
        assert_eq!(
            ghz_witness_vertex_values(),
            vec![q(2, 3), q(1, 1), q(0, 1), q(0, 1)]
        );
        for (v, exact) in polytope_vertices().iter().zip(ghz_witness_vertex_values()) {
            let val = w.value(&params_to_density(v)).unwrap();
            assert!((val - exact.to_f64()).abs() < 1e-14);
        }
        let ghz_exact = ExactGhzParams::from_ratios((1, 1), (0, 1), (0, 1)).unwrap();
        assert_eq!(ghz_witness_value_exact(&ghz_exact), q(-2, 1));
    }

    #[test]
    fn w_witness_values() {
        let a = w_robustness_witness();
        assert!((a.value_pure(&w_state()).unwrap() + 2.0).abs() < 1e-14);
        assert!((a.value_pure(&PureState::basis(3, 2, 0).unwrap()).unwrap() - 1.0).abs() < 1e-15);
        assert!(
            a.value_pure(&PureState::basis(3, 2, 7).unwrap())
                .unwrap()
                .abs()
                < 1e-15
        );
        let q = <BigRational as Scalar>::ratio;
        assert_eq!(w_witness_value_exact(&DickeWeights::pure_w()), q(-2, 1));
        // the W mixer is in the kernel of A
        let eta = DickeWeights::new((9, 16), (3, 16), (1, 16), (3, 16));
        assert_eq!(w_witness_value_exact(&eta), q(1, 1));
        let tau = DickeWeights::new((3, 8), (1, 8), (3, 8), (1, 8));
        assert_eq!(w_witness_value_exact(&tau), q(0, 1));
        assert!((a.value(&w_robustness_mixture()).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn ranges_over_products() {
        let opts = OptimizerOptions::default();
        for w in [ghz_robustness_witness(), w_robustness_witness()] {
            let r = witness_range_over_fs(&w, &opts).unwrap();
            assert!(
                r.min >= -1e-6 && r.max <= 1.0 + 1e-6,
                "{}: {:?}",
                w.name,
                (r.min, r.max)
            );
        }
        let id = Witness::new("identity", 3, 2, CMatrix::identity(8, 8)).unwrap();
        let r = witness_range_over_fs(&id, &opts).unwrap();
        assert!((r.min - 1.0).abs() < 1e-12 && (r.max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sandwich_on_random_products() {
        let mut rng = rng_from_seed(2024);
        let ws = [ghz_robustness_witness(), w_robustness_witness()];
        for _ in 0..100_000 {
            let phi = random_product_state(3, 2, &mut rng).unwrap();
            for w in &ws {
                let v = w.value_pure(&phi).unwrap();
                assert!((-1e-9..=1.0 + 1e-9).contains(&v), "{} gave {v}", w.name);
            }
        }
    }

    #[test]
    fn triform_closed_form() {
        for i in 0..64 {
            let alpha = i as f64 * PI / 32.0;
            for j in 0..8 {
                let beta = j as f64 * PI / 4.0;
                let got = symmetric_triform_value(alpha, beta);
                assert!((got - 0.5 * (6.0 * alpha).cos()).abs() < 1e-10);
            }
        }
        assert!((symmetric_triform_value(0.0, 0.0) - 0.5).abs() < 1e-15);
        assert!(symmetric_triform_value(PI / 12.0, 1.0).abs() < 1e-15);
    }

    #[test]
    fn shifted_w_witness_peaks_at_one_half() {
        let shifted =
            w_robustness_witness().operator().clone() - CMatrix::identity(8, 8).scale(0.5);
        let wit = Witness::new("a-shifted", 3, 2, shifted).unwrap();
        let r = witness_range_over_fs(&wit, &OptimizerOptions::default()).unwrap();
        let peak = r.max.abs().max(r.min.abs());
        assert!((peak - 0.5).abs() < 1e-6);
    }

    #[test]
    fn lower_bounds_and_duality() {
        let opts = OptimizerOptions::default();
        let g = ghz_robustness_witness();
        assert!(robustness_lower_from_witness(&ghz(3, 2).unwrap().density(), &g).is_err());
        let g = g.verified(&opts).unwrap();
        let ghz_lb = robustness_lower_from_witness(&ghz(3, 2).unwrap().density(), &g).unwrap();
        assert!((ghz_lb - 2.0).abs() < 1e-14);
        let zero = PureState::basis(3, 2, 0).unwrap().density();
        assert_eq!(robustness_lower_from_witness(&zero, &g).unwrap(), 0.0);

        let a = w_robustness_witness().verified(&opts).unwrap();
        let w_lb = robustness_lower_from_witness(&w_state().density(), &a).unwrap();
        let w_ub = robustness_fs_upper_via_mix(
            &w_state().density(),
            &w_robustness_mixer(),
            &MixOptions::default(),
        )
        .unwrap()
        .value;
        assert!(w_lb <= w_ub + 1e-6);
        assert!((w_lb - 2.0).abs() < 1e-14 && (w_ub - 2.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_operators() {
        let mut m = CMatrix::zeros(8, 8);
        m[(0, 1)] = c(1.0);
        assert!(Witness::new("x", 3, 2, m).is_err());
        assert!(Witness::new("x", 3, 2, CMatrix::zeros(4, 4)).is_err());
        let big = Witness::new("big", 3, 2, CMatrix::identity(8, 8).scale(2.0))
            .unwrap()
            .verified(&OptimizerOptions::default())
            .unwrap();
        assert!(!big.is_admissible());
    }
}
