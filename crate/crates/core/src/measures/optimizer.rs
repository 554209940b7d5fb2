//! Maximization of multilinear objectives over product pure states by
//! alternating single-party updates (higher-order power method).

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{top_eigenpair, CMatrix, CVector, IndexSplit, Parties, PureState};
use crate::random::{derive_seed, random_unit_vector, rng_from_seed};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerOptions {
    pub restarts: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        OptimizerOptions {
            restarts: 32,
            max_iterations: 500,
            tolerance: 1e-12,
            seed: 0,
        }
    }
}

impl OptimizerOptions {
    pub fn with_seed(seed: u64) -> Self {
        OptimizerOptions {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidParams(
                "restarts and max_iterations must be at least 1".into(),
            ));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParams(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// An objective `f(a_0 ⊗ ... ⊗ a_{n-1})` that is a Hermitian form in each
/// factor when the others are held fixed.
pub trait ProductObjective: Sync {
    fn n(&self) -> usize;
    fn d(&self) -> usize;

    /// `M` with `f = <a_k|M|a_k>`, given the product `others` of the
    /// remaining factors in ascending party order.
    fn local_matrix(&self, split: &IndexSplit, others: &CVector) -> CMatrix;
}

/// `|<φ|ψ>|²`
pub struct StateOverlap<'a>(pub &'a PureState);

impl ProductObjective for StateOverlap<'_> {
    fn n(&self) -> usize {
        self.0.n()
    }

    fn d(&self) -> usize {
        self.0.d()
    }

    fn local_matrix(&self, split: &IndexSplit, others: &CVector) -> CMatrix {
        let amps = self.0.amplitudes();
        let v = CVector::from_fn(split.dim_a, |i, _| {
            (0..split.dim_b)
                .map(|b| others[b].conj() * amps[split.full(i, b)])
                .sum()
        });
        &v * v.adjoint()
    }
}

/// `<φ|H|φ>` for a Hermitian operator `H`.
pub struct OperatorExpectation<'a> {
    pub operator: &'a CMatrix,
    pub n: usize,
    pub d: usize,
}

impl ProductObjective for OperatorExpectation<'_> {
    fn n(&self) -> usize {
        self.n
    }

    fn d(&self) -> usize {
        self.d
    }

    fn local_matrix(&self, split: &IndexSplit, others: &CVector) -> CMatrix {
        let h = self.operator;
        // (H o)[row] restricted to rows, then contract with o*
        CMatrix::from_fn(split.dim_a, split.dim_a, |i, j| {
            let mut acc = crate::linalg::c(0.0);
            for b in 0..split.dim_b {
                let ob = others[b].conj();
                if ob.norm_sqr() == 0.0 {
                    continue;
                }
                let row = split.full(i, b);
                let inner: crate::linalg::C64 = (0..split.dim_b)
                    .map(|b2| h[(row, split.full(j, b2))] * others[b2])
                    .sum();
                acc += ob * inner;
            }
            acc
        })
    }
}

#[derive(Debug, Clone)]
pub struct ProductOptimum {
    pub value: f64,
    pub state: PureState,
    pub factors: Vec<CVector>,
    /// Sweeps used by the winning restart.
    pub iterations: usize,
    pub converged: bool,
    pub restart: usize,
}

fn kron_except(factors: &[CVector], skip: usize) -> CVector {
    let mut out = CVector::from_element(1, crate::linalg::c(1.0));
    for (k, f) in factors.iter().enumerate() {
        if k != skip {
            out = out.kronecker(f);
        }
    }
    out
}

struct Run {
    value: f64,
    factors: Vec<CVector>,
    iterations: usize,
    converged: bool,
}

fn run_from<O: ProductObjective + ?Sized>(
    obj: &O,
    splits: &[IndexSplit],
    mut factors: Vec<CVector>,
    opts: &OptimizerOptions,
) -> Run {
    let n = factors.len();
    let mut value = f64::NEG_INFINITY;
    for it in 1..=opts.max_iterations {
        let mut last = value;
        for k in 0..n {
            let m = obj.local_matrix(&splits[k], &kron_except(&factors, k));
            let (val, vec) = top_eigenpair(&m);
            factors[k] = vec;
            last = val;
        }
        let gain = last - value;
        value = last;
        if gain.abs() < opts.tolerance {
            return Run {
                value,
                factors,
                iterations: it,
                converged: true,
            };
        }
    }
    Run {
        value,
        factors,
        iterations: opts.max_iterations,
        converged: false,
    }
}

/// Best value over `opts.restarts` random starts. Restarts run in parallel;
/// the winner is the largest value, ties going to the lowest restart index,
/// so the result depends only on the seed.
pub fn maximize_over_products<O: ProductObjective + ?Sized>(
    obj: &O,
    opts: &OptimizerOptions,
) -> Result<ProductOptimum> {
    opts.validate()?;
    let (n, d) = (obj.n(), obj.d());
    let splits: Vec<IndexSplit> = (0..n)
        .map(|k| Parties::new(n, &[k]).map(|p| IndexSplit::new(n, d, p)))
        .collect::<Result<_>>()?;
    let runs: Vec<Run> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_from_seed(derive_seed(opts.seed, r as u64));
            let start = (0..n).map(|_| random_unit_vector(d, &mut rng)).collect();
            run_from(obj, &splits, start, opts)
        })
        .collect();
    let (restart, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.value > a.1.value { b } else { a })
        .expect("at least one restart");
    Ok(ProductOptimum {
        value: best.value,
        state: PureState::product(d, &best.factors)?,
        factors: best.factors,
        iterations: best.iterations,
        converged: best.converged,
        restart,
    })
}

/// Local ascent from the given factors (no restarts).
pub fn improve_product<O: ProductObjective + ?Sized>(
    obj: &O,
    start: Vec<CVector>,
    opts: &OptimizerOptions,
) -> Result<ProductOptimum> {
    opts.validate()?;
    let (n, d) = (obj.n(), obj.d());
    let splits: Vec<IndexSplit> = (0..n)
        .map(|k| Parties::new(n, &[k]).map(|p| IndexSplit::new(n, d, p)))
        .collect::<Result<_>>()?;
    let run = run_from(obj, &splits, start, opts);
    Ok(ProductOptimum {
        value: run.value,
        state: PureState::product(d, &run.factors)?,
        factors: run.factors,
        iterations: run.iterations,
        converged: run.converged,
        restart: 0,
    })
}
