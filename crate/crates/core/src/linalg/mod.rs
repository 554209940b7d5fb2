//! Dense complex tensor algebra for `n` parties of local dimension `d`.
//!
//! Basis index `i` of `(C^d)^{⊗n}` is read as `n` base-`d` digits with
//! party 0 the most significant digit, so `|0 0 1>` is index 1.

mod ops;
mod parties;
mod state;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub use ops::{
    apply_local, compose_across, is_ppt, partial_transpose, reduced_density, reduced_pure,
    schmidt_decomposition, schmidt_spectrum, tensor_product, SchmidtDecomposition, SchmidtSpectrum,
};
pub use parties::{Bipartition, Parties, MAX_PARTIES};
pub use state::{DensityMatrix, PureState};

pub type C64 = Complex64;
pub type CVector = DVector<C64>;
pub type CMatrix = DMatrix<C64>;

/// Tolerances for structural checks (norm, trace, hermiticity) and for
/// positivity of spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub structural: f64,
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structural: 1e-12,
            psd: 1e-10,
        }
    }
}

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `|v><v|`
pub fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest entrywise deviation from hermiticity.
pub fn hermiticity_error(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = SymmetricEigen::new(hermitize(m))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(f64::total_cmp);
    vals
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m)
        .first()
        .copied()
        .unwrap_or(f64::NAN)
}

/// Largest eigenvalue of a Hermitian matrix and a unit eigenvector for it.
pub fn top_eigenpair(m: &CMatrix) -> (f64, CVector) {
    let eig = SymmetricEigen::new(hermitize(m));
    let (k, val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, v)| (k, *v))
        .expect("empty matrix");
    (val, eig.eigenvectors.column(k).into_owned())
}

/// Index bookkeeping for splitting `(C^d)^{⊗n}` into the parties of a subset
/// `A` (kept in ascending party order) and the rest `B`.
pub struct IndexSplit {
    pub dim_a: usize,
    pub dim_b: usize,
    /// `to_full[a * dim_b + b]` is the full basis index with `A`-digits `a`
    /// and `B`-digits `b`.
    pub to_full: Vec<usize>,
}

impl IndexSplit {
    pub fn new(n: usize, d: usize, a: Parties) -> Self {
        let dim = d.pow(n as u32);
        let dim_a = d.pow(a.len() as u32);
        let dim_b = dim / dim_a;
        let mut to_full = vec![0; dim];
        for full in 0..dim {
            let (mut ia, mut ib) = (0, 0);
            for k in 0..n {
                let digit = (full / d.pow((n - 1 - k) as u32)) % d;
                if a.contains(k) {
                    ia = ia * d + digit;
                } else {
                    ib = ib * d + digit;
                }
            }
            to_full[ia * dim_b + ib] = full;
        }
        IndexSplit {
            dim_a,
            dim_b,
            to_full,
        }
    }

    pub fn full(&self, a: usize, b: usize) -> usize {
        self.to_full[a * self.dim_b + b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_split_is_a_bijection() {
        let a = Parties::new(4, &[1, 3]).unwrap();
        let split = IndexSplit::new(4, 3, a);
        let mut seen = split.to_full.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..81).collect::<Vec<_>>());
        // digits (p1, p3) = (2, 1), (p0, p2) = (0, 2) -> 0 2 2 1 in base 3
        assert_eq!(split.full(2 * 3 + 1, 2), 2 * 9 + 2 * 3 + 1);
    }

    #[test]
    fn top_eigenpair_of_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.1), c(0.7), c(0.2)]));
        let (val, vec) = top_eigenpair(&m);
        assert!((val - 0.7).abs() < 1e-14);
        assert!((vec[1].norm() - 1.0).abs() < 1e-14);
    }
}
