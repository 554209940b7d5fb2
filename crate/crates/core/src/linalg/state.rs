use super::{c, hermiticity_error, min_eigenvalue, projector, CMatrix, CVector, Tolerances, C64};
use crate::error::{Error, Result};

fn checked_dim(n: usize, d: usize) -> Result<usize> {
    if n == 0 || d < 2 {
        return Err(Error::InvalidDimensions(format!(
            "need n >= 1 and d >= 2, got n = {n}, d = {d}"
        )));
    }
    if n > super::MAX_PARTIES {
        return Err(Error::InvalidDimensions(format!("n = {n} is too large")));
    }
    (d as u64)
        .checked_pow(n as u32)
        .filter(|&dim| dim <= 1 << 24)
        .map(|dim| dim as usize)
        .ok_or_else(|| Error::InvalidDimensions(format!("d^n too large for n = {n}, d = {d}")))
}

/// A normalized pure state of `n` parties with local dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    d: usize,
    amplitudes: CVector,
}

impl PureState {
    pub fn new(n: usize, d: usize, amplitudes: CVector) -> Result<Self> {
        Self::with_tolerance(n, d, amplitudes, Tolerances::default().structural)
    }

    pub fn with_tolerance(n: usize, d: usize, amplitudes: CVector, tol: f64) -> Result<Self> {
        let dim = checked_dim(n, d)?;
        if amplitudes.len() != dim {
            return Err(Error::InvalidDimensions(format!(
                "expected {dim} amplitudes for n = {n}, d = {d}, got {}",
                amplitudes.len()
            )));
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized(norm));
        }
        Ok(PureState { n, d, amplitudes })
    }

    /// Normalizes `amplitudes` before validating.
    pub fn normalized(n: usize, d: usize, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Self::new(n, d, amplitudes.unscale(norm))
    }

    pub fn from_real(n: usize, d: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(
            n,
            d,
            CVector::from_iterator(amplitudes.len(), amplitudes.iter().map(|&a| c(a))),
        )
    }

    pub fn basis(n: usize, d: usize, index: usize) -> Result<Self> {
        let dim = checked_dim(n, d)?;
        if index >= dim {
            return Err(Error::InvalidDimensions(format!(
                "basis index {index} out of range {dim}"
            )));
        }
        let mut amps = CVector::zeros(dim);
        amps[index] = c(1.0);
        Self::new(n, d, amps)
    }

    /// `|f_0> ⊗ |f_1> ⊗ ...`, each factor normalized first.
    pub fn product(d: usize, factors: &[CVector]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidDimensions("product of zero factors".into()));
        }
        let mut amps = CVector::from_element(1, c(1.0));
        for f in factors {
            if f.len() != d {
                return Err(Error::InvalidDimensions(format!(
                    "local factor has length {}, expected {d}",
                    f.len()
                )));
            }
            amps = amps.kronecker(&f.normalize());
        }
        Self::normalized(factors.len(), d, amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    /// `<self|other>`
    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|<self|other>|^2`
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            n: self.n,
            d: self.d,
            entries: projector(&self.amplitudes),
        }
    }

    pub fn same_shape(&self, n: usize, d: usize) -> Result<()> {
        if self.n != n || self.d != d {
            return Err(Error::ShapeMismatch {
                expected_n: n,
                expected_d: d,
                n: self.n,
                d: self.d,
            });
        }
        Ok(())
    }
}

/// A unit-trace, Hermitian, positive semidefinite operator on `(C^d)^{⊗n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    d: usize,
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(n: usize, d: usize, entries: CMatrix) -> Result<Self> {
        Self::with_tolerances(n, d, entries, &Tolerances::default())
    }

    pub fn with_tolerances(n: usize, d: usize, entries: CMatrix, tol: &Tolerances) -> Result<Self> {
        let dim = checked_dim(n, d)?;
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::InvalidDimensions(format!(
                "expected a {dim}x{dim} matrix, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let herm = hermiticity_error(&entries);
        if !(herm <= tol.structural) {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (max deviation {herm:e})"
            )));
        }
        let trace = entries.trace();
        if !((trace.re - 1.0).abs() <= tol.structural && trace.im.abs() <= tol.structural) {
            return Err(Error::InvalidDensity(format!(
                "trace is {trace}, expected 1"
            )));
        }
        let min = min_eigenvalue(&entries);
        if !(min >= -tol.psd) {
            return Err(Error::InvalidDensity(format!(
                "not positive semidefinite (min eigenvalue {min:e})"
            )));
        }
        Ok(DensityMatrix { n, d, entries })
    }

    /// Skips validation; for values that are correct by construction.
    pub(crate) fn from_parts_unchecked(n: usize, d: usize, entries: CMatrix) -> Self {
        DensityMatrix { n, d, entries }
    }

    pub fn maximally_mixed(n: usize, d: usize) -> Result<Self> {
        let dim = checked_dim(n, d)?;
        Ok(DensityMatrix {
            n,
            d,
            entries: CMatrix::identity(dim, dim).unscale(dim as f64),
        })
    }

    /// Convex combination `Σ w_k ρ_k`. Weights must be nonnegative and sum to 1.
    pub fn mixture(terms: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::InvalidDensity("empty mixture".into()))?;
        let (n, d) = (first.n, first.d);
        let mut acc = CMatrix::zeros(first.dim(), first.dim());
        let mut total = 0.0;
        for (w, rho) in terms {
            if rho.n != n || rho.d != d {
                return Err(Error::ShapeMismatch {
                    expected_n: n,
                    expected_d: d,
                    n: rho.n,
                    d: rho.d,
                });
            }
            if *w < 0.0 {
                return Err(Error::OutOfRange(format!("negative mixture weight {w}")));
            }
            acc += rho.entries.scale(*w);
            total += w;
        }
        if (total - 1.0).abs() > Tolerances::default().structural {
            return Err(Error::OutOfRange(format!("mixture weights sum to {total}")));
        }
        Ok(DensityMatrix { n, d, entries: acc })
    }

    /// `(ρ + s σ) / (1 + s)` for `s >= 0`.
    pub fn mix_with(&self, other: &DensityMatrix, s: f64) -> Result<Self> {
        let w = 1.0 / (1.0 + s);
        Self::mixture(&[(w, self), (1.0 - w, other)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    /// `Re tr(op ρ)`
    pub fn expectation(&self, op: &CMatrix) -> f64 {
        // tr(AB) = Σ_ij A_ij B_ji
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += op[(i, j)] * self.entries[(j, i)];
            }
        }
        acc.re
    }

    /// `<ψ|ρ|ψ>`
    pub fn fidelity_with(&self, psi: &PureState) -> f64 {
        let a = psi.amplitudes();
        a.dotc(&(&self.entries * a)).re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.entries)
    }

    pub fn same_shape(&self, n: usize, d: usize) -> Result<()> {
        if self.n != n || self.d != d {
            return Err(Error::ShapeMismatch {
                expected_n: n,
                expected_d: d,
                n: self.n,
                d: self.d,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalized() {
        let v = CVector::from_vec(vec![c(1.0), c(1.0)]);
        assert!(matches!(
            PureState::new(1, 2, v.clone()),
            Err(Error::NotNormalized(_))
        ));
        assert!(PureState::normalized(1, 2, v).is_ok());
        assert!(PureState::normalized(1, 2, CVector::zeros(2)).is_err());
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(PureState::new(2, 2, CVector::from_element(3, c(1.0))).is_err());
        assert!(PureState::basis(2, 1, 0).is_err());
    }

    #[test]
    fn density_validation() {
        let mut m = CMatrix::identity(2, 2).scale(0.5);
        assert!(DensityMatrix::new(1, 2, m.clone()).is_ok());
        m[(0, 0)] = c(1.5);
        m[(1, 1)] = c(-0.5);
        assert!(matches!(
            DensityMatrix::new(1, 2, m.clone()),
            Err(Error::InvalidDensity(_))
        ));
        m[(0, 1)] = C64::new(0.0, 0.1);
        assert!(DensityMatrix::new(1, 2, m).is_err());
    }

    #[test]
    fn mixture_weights_must_sum_to_one() {
        let a = PureState::basis(1, 2, 0).unwrap().density();
        let b = PureState::basis(1, 2, 1).unwrap().density();
        let mixed = DensityMatrix::mixture(&[(0.25, &a), (0.75, &b)]).unwrap();
        assert!((mixed.entries()[(1, 1)].re - 0.75).abs() < 1e-15);
        assert!(DensityMatrix::mixture(&[(0.5, &a), (0.4, &b)]).is_err());
        let halfway = a.mix_with(&b, 1.0).unwrap();
        assert!((halfway.entries()[(0, 0)].re - 0.5).abs() < 1e-15);
    }
}
