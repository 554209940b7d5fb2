use super::{
    c, min_eigenvalue, Bipartition, CMatrix, CVector, DensityMatrix, IndexSplit, Parties, PureState,
};
use crate::error::{Error, Result};

/// `|a> ⊗ |b>`; the parties of `b` follow those of `a`.
pub fn tensor_product(a: &PureState, b: &PureState) -> Result<PureState> {
    if a.d() != b.d() {
        return Err(Error::InvalidDimensions(format!(
            "local dimensions differ: {} vs {}",
            a.d(),
            b.d()
        )));
    }
    PureState::normalized(
        a.n() + b.n(),
        a.d(),
        a.amplitudes().kronecker(b.amplitudes()),
    )
}

/// Partial trace over every party not in `keep`.
pub fn reduced_density(rho: &DensityMatrix, keep: Parties) -> Result<DensityMatrix> {
    if keep.n() != rho.n() {
        return Err(Error::InvalidSubset(format!(
            "subset is over {} parties, state has {}",
            keep.n(),
            rho.n()
        )));
    }
    if keep.is_empty() {
        return Err(Error::InvalidSubset("cannot keep an empty subset".into()));
    }
    let split = IndexSplit::new(rho.n(), rho.d(), keep);
    let m = rho.entries();
    let reduced = CMatrix::from_fn(split.dim_a, split.dim_a, |a1, a2| {
        (0..split.dim_b)
            .map(|b| m[(split.full(a1, b), split.full(a2, b))])
            .sum()
    });
    Ok(DensityMatrix::from_parts_unchecked(
        keep.len(),
        rho.d(),
        reduced,
    ))
}

/// Reduced state of a pure state, computed from the amplitudes directly.
pub fn reduced_pure(psi: &PureState, keep: Parties) -> Result<DensityMatrix> {
    if keep.n() != psi.n() || keep.is_empty() {
        return Err(Error::InvalidSubset(format!("bad subset {keep}")));
    }
    let m = reshape(psi, keep);
    Ok(DensityMatrix::from_parts_unchecked(
        keep.len(),
        psi.d(),
        &m * m.adjoint(),
    ))
}

/// Amplitudes as a `d^|A| x d^|rest|` matrix.
fn reshape(psi: &PureState, a: Parties) -> CMatrix {
    let split = IndexSplit::new(psi.n(), psi.d(), a);
    let amps = psi.amplitudes();
    CMatrix::from_fn(split.dim_a, split.dim_b, |i, j| amps[split.full(i, j)])
}

/// Squared Schmidt coefficients across a cut, in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub cut: Bipartition,
    pub values: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.values.iter().filter(|&&v| v > tol).count()
    }
}

/// `ψ = Σ_i √λ_i |u_i>|v_i>` across `cut`, `u_i` on the side containing
/// party 0.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub cut: Bipartition,
    pub values: Vec<f64>,
    pub left: Vec<CVector>,
    pub right: Vec<CVector>,
}

pub fn schmidt_decomposition(psi: &PureState, cut: Bipartition) -> Result<SchmidtDecomposition> {
    if cut.n() != psi.n() {
        return Err(Error::InvalidSubset(format!(
            "cut is over {} parties, state has {}",
            cut.n(),
            psi.n()
        )));
    }
    let m = reshape(psi, cut.side());
    let svd = m.svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let values = order
        .iter()
        .map(|&i| svd.singular_values[i].powi(2))
        .collect();
    let left = order.iter().map(|&i| u.column(i).into_owned()).collect();
    let right = order
        .iter()
        .map(|&i| v_t.row(i).transpose().into_owned())
        .collect();
    Ok(SchmidtDecomposition {
        cut,
        values,
        left,
        right,
    })
}

/// Eigenvalues of the reduced state on the side of `cut` containing party 0,
/// padded with zeros to that side's dimension.
pub fn schmidt_spectrum(psi: &PureState, cut: Bipartition) -> Result<SchmidtSpectrum> {
    let dec = schmidt_decomposition(psi, cut)?;
    let side_dim = psi.d().pow(cut.side().len() as u32);
    let mut values = dec.values;
    values.resize(side_dim, 0.0);
    Ok(SchmidtSpectrum { cut, values })
}

/// Transposes the indices of the parties in `subset`.
pub fn partial_transpose(rho: &DensityMatrix, subset: Parties) -> Result<CMatrix> {
    if subset.n() != rho.n() {
        return Err(Error::InvalidSubset(format!(
            "subset is over {} parties, state has {}",
            subset.n(),
            rho.n()
        )));
    }
    let split = IndexSplit::new(rho.n(), rho.d(), subset);
    let m = rho.entries();
    let mut out = CMatrix::zeros(rho.dim(), rho.dim());
    for a1 in 0..split.dim_a {
        for a2 in 0..split.dim_a {
            for b1 in 0..split.dim_b {
                for b2 in 0..split.dim_b {
                    out[(split.full(a1, b1), split.full(a2, b2))] =
                        m[(split.full(a2, b1), split.full(a1, b2))];
                }
            }
        }
    }
    Ok(out)
}

/// True iff the partial transpose over `subset` has no eigenvalue below `-tol`.
pub fn is_ppt(rho: &DensityMatrix, subset: Parties, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(&partial_transpose(rho, subset)?) >= -tol)
}

/// Applies `ops[k]` to party `k`. Operators need not be unitary; the result is
/// renormalized.
pub fn apply_local(psi: &PureState, ops: &[CMatrix]) -> Result<PureState> {
    let (n, d) = (psi.n(), psi.d());
    if ops.len() != n {
        return Err(Error::InvalidDimensions(format!(
            "need {n} local operators, got {}",
            ops.len()
        )));
    }
    let mut amps = psi.amplitudes().clone();
    for (k, op) in ops.iter().enumerate() {
        if op.nrows() != d || op.ncols() != d {
            return Err(Error::InvalidDimensions(format!(
                "local operator {k} is {}x{}, expected {d}x{d}",
                op.nrows(),
                op.ncols()
            )));
        }
        let split = IndexSplit::new(n, d, Parties::new(n, &[k])?);
        let mut next = CVector::zeros(amps.len());
        for b in 0..split.dim_b {
            for i in 0..d {
                let mut acc = c(0.0);
                for j in 0..d {
                    acc += op[(i, j)] * amps[split.full(j, b)];
                }
                next[split.full(i, b)] = acc;
            }
        }
        amps = next;
    }
    PureState::normalized(n, d, amps)
}

/// `|a>_M ⊗ |b>_rest` placed into the global party order of `cut`.
pub fn compose_across(cut: Bipartition, d: usize, a: &CVector, b: &CVector) -> Result<PureState> {
    let split = IndexSplit::new(cut.n(), d, cut.side());
    if a.len() != split.dim_a || b.len() != split.dim_b {
        return Err(Error::InvalidDimensions(format!(
            "factor lengths ({}, {}) do not match cut {cut} with d = {d}",
            a.len(),
            b.len()
        )));
    }
    let mut amps = CVector::zeros(split.dim_a * split.dim_b);
    for i in 0..split.dim_a {
        for j in 0..split.dim_b {
            amps[split.full(i, j)] = a[i] * b[j];
        }
    }
    PureState::normalized(cut.n(), d, amps)
}
