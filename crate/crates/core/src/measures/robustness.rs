use num_rational::BigRational;
use num_traits::{One, Zero};

use super::certify::{fs_certificate, FsCertifierOptions};
use super::{Certificate, MeasureResult};
use crate::error::{Error, Result};
use crate::linalg::{schmidt_spectrum, Bipartition, DensityMatrix, PureState};

/// `(Σ_i √λ_i)² - 1` across `cut`.
pub fn robustness_bipartite_pure(psi: &PureState, cut: Bipartition) -> Result<f64> {
    let spec = schmidt_spectrum(psi, cut)?;
    let root_sum: f64 = spec.values.iter().map(|l| l.max(0.0).sqrt()).sum();
    Ok((root_sum * root_sum - 1.0).max(0.0))
}

/// Upper bound on the biseparable robustness: the smallest bipartite pure
/// robustness over canonical cuts, with the minimizing cut.
pub fn robustness_bs_upper(psi: &PureState) -> Result<MeasureResult> {
    let mut best: Option<(f64, Bipartition)> = None;
    for cut in Bipartition::all(psi.n())? {
        let r = robustness_bipartite_pure(psi, cut)?;
        if best.is_none_or(|(b, _)| r < b) {
            best = Some((r, cut));
        }
    }
    let (value, cut) = best.ok_or_else(|| {
        Error::InvalidDimensions("biseparability needs at least two parties".into())
    })?;
    Ok(MeasureResult {
        value,
        certificate: Some(Certificate::Cut(cut)),
        iterations: 0,
        converged: true,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixOptions {
    /// Largest mixing weight tried.
    pub cap: f64,
    pub tolerance: f64,
    pub certifier: FsCertifierOptions,
}

impl Default for MixOptions {
    fn default() -> Self {
        MixOptions {
            cap: 16.0,
            tolerance: 1e-6,
            certifier: FsCertifierOptions::default(),
        }
    }
}

/// Smallest `s` (to within `opts.tolerance`, from above) for which
/// `(ρ + s·mixer)/(1 + s)` is certified fully separable. An upper bound on the
/// FS robustness of `ρ`; the certificate is the mixture at that `s`.
pub fn robustness_fs_upper_via_mix(
    rho: &DensityMatrix,
    mixer: &DensityMatrix,
    opts: &MixOptions,
) -> Result<MeasureResult> {
    rho.same_shape(mixer.n(), mixer.d())?;
    let cert = fs_certificate(mixer, &opts.certifier);
    if !cert.is_fs() {
        return Err(Error::UncertifiedMixer(cert.reason));
    }
    let done = |value: f64, mixture: DensityMatrix, iterations| MeasureResult {
        value,
        certificate: Some(Certificate::Mixture(mixture)),
        iterations,
        converged: true,
    };
    if fs_certificate(rho, &opts.certifier).is_fs() {
        return Ok(done(0.0, rho.clone(), 0));
    }
    let passes = |s: f64| -> Result<bool> {
        Ok(fs_certificate(&rho.mix_with(mixer, s)?, &opts.certifier).is_fs())
    };
    if !passes(opts.cap)? {
        return Err(Error::NoCertifiedMixture { cap: opts.cap });
    }
    let (mut lo, mut hi) = (0.0, opts.cap);
    let mut steps = 0;
    while hi - lo > opts.tolerance {
        let mid = 0.5 * (lo + hi);
        if passes(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
    }
    Ok(done(hi, rho.mix_with(mixer, hi)?, steps))
}

/// Weights on `(|000>, |111>, W, W̄)` of a Dicke-diagonal three-qubit state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DickeWeights {
    pub zero: BigRational,
    pub one: BigRational,
    pub w: BigRational,
    pub w_bar: BigRational,
}

impl DickeWeights {
    pub fn new(zero: (i64, i64), one: (i64, i64), w: (i64, i64), w_bar: (i64, i64)) -> Self {
        let q = |(a, b): (i64, i64)| BigRational::new(a.into(), b.into());
        DickeWeights {
            zero: q(zero),
            one: q(one),
            w: q(w),
            w_bar: q(w_bar),
        }
    }

    pub fn pure_w() -> Self {
        Self::new((0, 1), (0, 1), (1, 1), (0, 1))
    }

    pub fn sum(&self) -> BigRational {
        self.zero.clone() + self.one.clone() + self.w.clone() + self.w_bar.clone()
    }
}

/// `(t + s·m)/(1 + s)` in exact arithmetic.
pub fn dicke_mix_exact(t: &DickeWeights, m: &DickeWeights, s: &BigRational) -> DickeWeights {
    let norm = BigRational::one() / (BigRational::one() + s.clone());
    let f = |a: &BigRational, b: &BigRational| (a.clone() + s.clone() * b.clone()) * norm.clone();
    DickeWeights {
        zero: f(&t.zero, &m.zero),
        one: f(&t.one, &m.one),
        w: f(&t.w, &m.w),
        w_bar: f(&t.w_bar, &m.w_bar),
    }
}

impl Default for DickeWeights {
    fn default() -> Self {
        DickeWeights {
            zero: BigRational::zero(),
            one: BigRational::zero(),
            w: BigRational::zero(),
            w_bar: BigRational::zero(),
        }
    }
}
