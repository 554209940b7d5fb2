//! Sufficient tests for full separability (and its failure) of mixed states.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use super::optimizer::{
    improve_product, maximize_over_products, OperatorExpectation, OptimizerOptions, ProductOptimum,
};
use crate::catalog::{dicke_diagonal, w_bar, w_state};
use crate::ghz_symmetric::{as_ghz_symmetric, is_fs_symmetric};
use crate::linalg::{
    c, max_abs_diff, min_eigenvalue, partial_transpose, Bipartition, CMatrix, CVector,
    DensityMatrix, PureState, C64,
};
use crate::random::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedFs,
    CertifiedNotFs,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Three qubits supported on the symmetric subspace and PPT.
    SymmetricPpt,
    /// Diagonal in the three-qubit Dicke basis with a feasible product
    /// decomposition.
    DickeDiagonal,
    /// Member of the GHZ-symmetric family; decides both ways.
    GhzSymmetric,
    /// Numerical fit by a mixture of product states (heuristic).
    DecompositionFit,
    /// Negative partial transpose across some cut.
    NptCut,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FsCertifierOptions {
    /// Tried in order; the first conclusive route wins.
    pub routes: Vec<Route>,
    pub psd_tol: f64,
    pub structure_tol: f64,
    pub fit_terms: usize,
    pub fit_tol: f64,
    pub fit_iterations: usize,
    pub optimizer: OptimizerOptions,
}

impl Default for FsCertifierOptions {
    fn default() -> Self {
        FsCertifierOptions {
            routes: vec![
                Route::SymmetricPpt,
                Route::DickeDiagonal,
                Route::GhzSymmetric,
                Route::NptCut,
                Route::DecompositionFit,
            ],
            psd_tol: 1e-10,
            structure_tol: 1e-10,
            fit_terms: 20,
            fit_tol: 1e-6,
            fit_iterations: 200,
            optimizer: OptimizerOptions {
                restarts: 4,
                ..OptimizerOptions::default()
            },
        }
    }
}

impl FsCertifierOptions {
    pub fn only(routes: &[Route]) -> Self {
        FsCertifierOptions {
            routes: routes.to_vec(),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightedState {
    pub weight: f64,
    pub state: PureState,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertResult {
    pub verdict: Verdict,
    pub route: Option<Route>,
    pub reason: String,
    /// Product-state decomposition when the route is constructive.
    pub decomposition: Option<Vec<WeightedState>>,
}

impl CertResult {
    pub fn is_fs(&self) -> bool {
        self.verdict == Verdict::CertifiedFs
    }

    fn fs(route: Route, reason: String, decomposition: Option<Vec<WeightedState>>) -> Self {
        CertResult {
            verdict: Verdict::CertifiedFs,
            route: Some(route),
            reason,
            decomposition,
        }
    }

    fn not_fs(route: Route, reason: String) -> Self {
        CertResult {
            verdict: Verdict::CertifiedNotFs,
            route: Some(route),
            reason,
            decomposition: None,
        }
    }
}

pub fn fs_certificate(rho: &DensityMatrix, opts: &FsCertifierOptions) -> CertResult {
    for route in &opts.routes {
        let found = match route {
            Route::SymmetricPpt => symmetric_ppt(rho, opts),
            Route::DickeDiagonal => dicke_route(rho, opts),
            Route::GhzSymmetric => ghz_symmetric_route(rho, opts),
            Route::NptCut => npt_cut(rho, opts),
            Route::DecompositionFit => decomposition_fit(rho, opts),
        };
        if let Some(res) = found {
            return res;
        }
    }
    CertResult {
        verdict: Verdict::Unknown,
        route: None,
        reason: "no route was conclusive".into(),
        decomposition: None,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Projector onto the symmetric subspace of `(C^d)^{⊗n}`.
pub fn symmetric_projector(n: usize, d: usize) -> CMatrix {
    let dim = d.pow(n as u32);
    let perms = permutations(n);
    let weight = 1.0 / perms.len() as f64;
    let mut m = CMatrix::zeros(dim, dim);
    for perm in &perms {
        for i in 0..dim {
            let digits: Vec<usize> = (0..n)
                .map(|k| (i / d.pow((n - 1 - k) as u32)) % d)
                .collect();
            let j = perm.iter().fold(0, |acc, &k| acc * d + digits[k]);
            m[(j, i)] += c(weight);
        }
    }
    m
}

fn min_pt_eigenvalue(rho: &DensityMatrix) -> Option<(f64, Bipartition)> {
    Bipartition::all(rho.n())
        .ok()?
        .into_iter()
        .filter_map(|cut| {
            partial_transpose(rho, cut.side())
                .ok()
                .map(|pt| (min_eigenvalue(&pt), cut))
        })
        .min_by(|a, b| a.0.total_cmp(&b.0))
}

fn symmetric_ppt(rho: &DensityMatrix, opts: &FsCertifierOptions) -> Option<CertResult> {
    if (rho.n(), rho.d()) != (3, 2) {
        return None;
    }
    let p = symmetric_projector(3, 2);
    let projected = &p * rho.entries() * &p;
    if max_abs_diff(&projected, rho.entries()) > opts.structure_tol {
        return None;
    }
    let (worst, _) = min_pt_eigenvalue(rho)?;
    (worst >= -opts.psd_tol).then(|| {
        CertResult::fs(
            Route::SymmetricPpt,
            format!(
                "symmetric three-qubit state, PPT across every cut (min eigenvalue {worst:.3e})"
            ),
            None,
        )
    })
}

/// Product vector `cos α |0> + e^{iβ} sin α |1>`.
fn qubit(alpha: f64, beta: f64) -> CVector {
    CVector::from_vec(vec![c(alpha.cos()), C64::from_polar(alpha.sin(), beta)])
}

fn dicke_route(rho: &DensityMatrix, opts: &FsCertifierOptions) -> Option<CertResult> {
    if (rho.n(), rho.d()) != (3, 2) {
        return None;
    }
    let e = rho.entries();
    let (d0, d3) = (e[(0, 0)].re, e[(7, 7)].re);
    let (d1, d2) = (rho.fidelity_with(&w_state()), rho.fidelity_with(&w_bar()));
    let rebuilt = dicke_diagonal(d0, d3, d1, d2).ok()?;
    if max_abs_diff(rebuilt.entries(), e) > opts.structure_tol {
        return None;
    }
    let tol = opts.psd_tol;
    let zero = PureState::basis(3, 2, 0).ok()?;
    let one = PureState::basis(3, 2, 7).ok()?;
    let mut terms = Vec::new();
    let (alpha, q0, q1) = if d1 <= tol && d2 <= tol {
        (0.0, d0, d3)
    } else if d1 <= tol || d2 <= tol {
        return None;
    } else {
        let alpha = (d2 / d1).sqrt().atan();
        let (co, si) = (alpha.cos(), alpha.sin());
        let r = d1 / (3.0 * co.powi(4) * si.powi(2));
        for k in 0..4 {
            let a = qubit(alpha, k as f64 * FRAC_PI_2);
            let phi = PureState::product(2, &[a.clone(), a.clone(), a]).ok()?;
            terms.push(WeightedState {
                weight: r / 4.0,
                state: phi,
            });
        }
        (alpha, d0 - r * co.powi(6), d3 - r * si.powi(6))
    };
    if q0 < -tol || q1 < -tol {
        return None;
    }
    for (q, s) in [(q0, zero), (q1, one)] {
        if q > 0.0 {
            terms.push(WeightedState {
                weight: q,
                state: s,
            });
        }
    }
    Some(CertResult::fs(
        Route::DickeDiagonal,
        format!(
            "Dicke-diagonal with product parameter alpha = {:.12} pi",
            alpha / std::f64::consts::PI
        ),
        Some(terms),
    ))
}

fn ghz_symmetric_route(rho: &DensityMatrix, opts: &FsCertifierOptions) -> Option<CertResult> {
    if (rho.n(), rho.d()) != (3, 2) {
        return None;
    }
    let p = as_ghz_symmetric(rho, opts.structure_tol)?;
    let desc = format!(
        "GHZ-symmetric with (lambda+, lambda-, lambda) = ({:.12}, {:.12}, {:.12})",
        p.plus, p.minus, p.rest
    );
    Some(if is_fs_symmetric(&p, opts.psd_tol) {
        CertResult::fs(
            Route::GhzSymmetric,
            format!("{desc}, |lambda+ - lambda-| <= lambda/3"),
            None,
        )
    } else {
        CertResult::not_fs(
            Route::GhzSymmetric,
            format!("{desc}, |lambda+ - lambda-| > lambda/3"),
        )
    })
}

fn npt_cut(rho: &DensityMatrix, opts: &FsCertifierOptions) -> Option<CertResult> {
    let (worst, cut) = min_pt_eigenvalue(rho)?;
    (worst < -opts.psd_tol).then(|| {
        CertResult::not_fs(
            Route::NptCut,
            format!("partial transpose across {cut} has eigenvalue {worst:.6e}"),
        )
    })
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, x) in u.iter().enumerate() {
        cum += x;
        let t = (cum - 1.0) / (i + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

/// Best weights for fixed atoms: minimizes `|Σ w_k P_k - ρ|²` over the
/// simplex by projected gradient.
fn reweight(atoms: &[PureState], rho: &DensityMatrix, start: Vec<f64>) -> Vec<f64> {
    let k = atoms.len();
    let gram: Vec<Vec<f64>> = atoms
        .iter()
        .map(|a| atoms.iter().map(|b| a.overlap(b)).collect())
        .collect();
    let lin: Vec<f64> = atoms.iter().map(|a| rho.fidelity_with(a)).collect();
    let lipschitz = 2.0
        * gram
            .iter()
            .map(|row| row.iter().sum::<f64>())
            .fold(0.0, f64::max);
    let step = 1.0 / lipschitz.max(1e-12);
    let mut w = start;
    for _ in 0..500 {
        let grad: Vec<f64> = (0..k)
            .map(|i| 2.0 * ((0..k).map(|j| gram[i][j] * w[j]).sum::<f64>() - lin[i]))
            .collect();
        let next = project_simplex(&(0..k).map(|i| w[i] - step * grad[i]).collect::<Vec<_>>());
        let moved = next
            .iter()
            .zip(&w)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        w = next;
        if moved < 1e-15 {
            break;
        }
    }
    w
}

fn assemble(atoms: &[PureState], w: &[f64], dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for (a, &x) in atoms.iter().zip(w) {
        let v = a.amplitudes();
        m += (v * v.adjoint()).scale(x);
    }
    m
}

/// Fully corrective Frank-Wolfe over the convex hull of product states. The
/// linear step is a product-state optimization of `-(σ - ρ)`; after each
/// reweighting every atom is also moved locally to reduce the residual.
fn decomposition_fit(rho: &DensityMatrix, opts: &FsCertifierOptions) -> Option<CertResult> {
    let (n, d, dim) = (rho.n(), rho.d(), rho.dim());
    let mut atoms: Vec<ProductOptimum> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut sigma = CMatrix::zeros(dim, dim);
    let local = OptimizerOptions {
        restarts: 1,
        max_iterations: 20,
        ..opts.optimizer
    };
    let states = |atoms: &[ProductOptimum]| -> Vec<PureState> {
        atoms.iter().map(|a| a.state.clone()).collect()
    };
    for it in 0..opts.fit_iterations {
        let residual = &sigma - rho.entries();
        if residual.norm() < opts.fit_tol {
            break;
        }
        let neg = -residual.clone();
        let lmo = maximize_over_products(
            &OperatorExpectation {
                operator: &neg,
                n,
                d,
            },
            &OptimizerOptions {
                seed: derive_seed(opts.optimizer.seed, it as u64),
                ..opts.optimizer
            },
        )
        .ok()?;
        // Frank-Wolfe gap: tr(Gσ) - min_φ <φ|G|φ> with G = σ - ρ
        let gap = lmo.value + (&residual * &sigma).trace().re;
        if it > 0 && gap < 1e-14 {
            break;
        }
        atoms.push(lmo);
        weights.push(if atoms.len() == 1 { 1.0 } else { 0.0 });
        weights = reweight(&states(&atoms), rho, weights);
        for _ in 0..3 {
            sigma = assemble(&states(&atoms), &weights, dim);
            for k in 0..atoms.len() {
                let v = atoms[k].state.amplitudes();
                let own = (v * v.adjoint()).scale(weights[k]);
                let others = &sigma - &own - rho.entries();
                let neg = -others.clone();
                let obj = OperatorExpectation {
                    operator: &neg,
                    n,
                    d,
                };
                let moved = improve_product(&obj, atoms[k].factors.clone(), &local).ok()?;
                let w = moved.state.amplitudes();
                sigma = others + (w * w.adjoint()).scale(weights[k]) + rho.entries();
                atoms[k] = moved;
            }
            weights = reweight(&states(&atoms), rho, weights);
        }
        let mut keep: Vec<usize> = (0..atoms.len()).filter(|&i| weights[i] > 1e-14).collect();
        if keep.len() > opts.fit_terms {
            keep.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]));
            keep.truncate(opts.fit_terms);
            keep.sort_unstable();
        }
        atoms = keep.iter().map(|&i| atoms[i].clone()).collect();
        weights = project_simplex(&keep.iter().map(|&i| weights[i]).collect::<Vec<_>>());
        sigma = assemble(&states(&atoms), &weights, dim);
    }
    let dist = (&sigma - rho.entries()).norm();
    (dist < opts.fit_tol).then(|| {
        let terms = atoms
            .into_iter()
            .zip(weights)
            .map(|(a, weight)| WeightedState {
                weight,
                state: a.state,
            })
            .collect();
        CertResult::fs(
            Route::DecompositionFit,
            format!(
                "mixture of product states within Frobenius distance {dist:.3e} (numerical fit)"
            ),
            Some(terms),
        )
    })
}

/// `Σ w_k |φ_k><φ_k|` of a decomposition, for auditing.
pub fn decomposition_matrix(terms: &[WeightedState]) -> CMatrix {
    let dim = terms[0].state.dim();
    let atoms: Vec<PureState> = terms.iter().map(|t| t.state.clone()).collect();
    let w: Vec<f64> = terms.iter().map(|t| t.weight).collect();
    assemble(&atoms, &w, dim)
}
