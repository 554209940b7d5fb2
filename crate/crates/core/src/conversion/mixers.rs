use serde::Serialize;

use super::Theory;
use crate::catalog::{psi_w, w_robustness_mixer, w_robustness_mixture, w_state};
use crate::error::{Error, Result};
use crate::linalg::{
    c, compose_across, max_abs_diff, schmidt_decomposition, Bipartition, CMatrix, CVector,
    DensityMatrix, PureState, C64,
};
use crate::measures::{
    decomposition_matrix, fs_certificate, robustness_bs_upper, FsCertifierOptions, Route,
    WeightedState,
};

/// A free state `σ` together with the weight `s` at which `(ψ₂ + s σ)/(1 + s)`
/// is known to be free.
#[derive(Debug, Clone, Serialize)]
pub struct FreeMixer {
    state: DensityMatrix,
    weight: f64,
    theory: Theory,
    evidence: String,
}

impl FreeMixer {
    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn evidence(&self) -> &str {
        &self.evidence
    }

    /// Certifies an FS mixer for `target` at `weight` with the FS certifier:
    /// both the mixer and the mixture must pass.
    pub fn certify_fs(
        target: &PureState,
        mixer: DensityMatrix,
        weight: f64,
        certifier: &FsCertifierOptions,
    ) -> Result<Self> {
        let cert = fs_certificate(&mixer, certifier);
        if !cert.is_fs() {
            return Err(Error::UncertifiedMixer(format!("mixer: {}", cert.reason)));
        }
        let mixture = target.density().mix_with(&mixer, weight)?;
        let mix_cert = fs_certificate(&mixture, certifier);
        if !mix_cert.is_fs() {
            return Err(Error::UncertifiedMixer(format!(
                "mixture at weight {weight}: {}",
                mix_cert.reason
            )));
        }
        Ok(FreeMixer {
            state: mixer,
            weight,
            theory: Theory::Fsp,
            evidence: format!("mixer: {}; mixture: {}", cert.reason, mix_cert.reason),
        })
    }

    /// No checks at all; for probing maps outside their certified range.
    pub fn unchecked(state: DensityMatrix, weight: f64, theory: Theory) -> Self {
        FreeMixer {
            state,
            weight,
            theory,
            evidence: "unchecked".into(),
        }
    }
}

/// Biseparable mixer for a pure target across one cut, with an explicit
/// decomposition of the mixture into states that are product across it.
#[derive(Debug, Clone, Serialize)]
pub struct BsMixer {
    pub cut: Bipartition,
    pub weight: f64,
    pub mixer: DensityMatrix,
    /// Decomposition of `(ψ + weight·mixer) / (1 + weight)`; omitted when the
    /// Schmidt rank makes it too long.
    pub mixture_decomposition: Option<Vec<WeightedState>>,
    pub reconstruction_error: Option<f64>,
}

impl From<BsMixer> for FreeMixer {
    fn from(m: BsMixer) -> Self {
        FreeMixer {
            evidence: format!(
                "separable across {} by construction{}",
                m.cut,
                m.reconstruction_error
                    .map(|e| format!(" (decomposition error {e:.1e})"))
                    .unwrap_or_default()
            ),
            state: m.mixer,
            weight: m.weight,
            theory: Theory::Bsp,
        }
    }
}

const MAX_PHASE_RANK: usize = 9;

/// The mixer achieving the bipartite pure robustness `(Σ√λ)² - 1` across
/// `cut`: `σ = (1/s) Σ_{i≠j} √(λ_i λ_j) |u_i v_j><u_i v_j|`.
///
/// The mixture is the uniform average over phases `ω^{k_i}` (`ω³ = 1`) of
/// `|a><a| ⊗ |b><b|` with `a = Σ λ_i^{1/4} ω^{k_i} u_i` and
/// `b = Σ λ_j^{1/4} ω^{-k_j} v_j`, which is how the decomposition is built.
pub fn bs_mixer_across(psi: &PureState, cut: Bipartition) -> Result<BsMixer> {
    let d = psi.d();
    let dec = schmidt_decomposition(psi, cut)?;
    let rank = dec.values.iter().filter(|&&l| l > 1e-14).count();
    let lambdas = &dec.values[..rank];
    let root_sum: f64 = lambdas.iter().map(|l| l.sqrt()).sum();
    let s = root_sum * root_sum - 1.0;
    if rank <= 1 {
        return Ok(BsMixer {
            cut,
            weight: 0.0,
            mixer: psi.density(),
            mixture_decomposition: Some(vec![WeightedState {
                weight: 1.0,
                state: psi.clone(),
            }]),
            reconstruction_error: Some(0.0),
        });
    }
    let dim = psi.dim();
    let mut sigma = CMatrix::zeros(dim, dim);
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            let v = compose_across(cut, d, &dec.left[i], &dec.right[j])?;
            let a = v.amplitudes();
            sigma += (a * a.adjoint()).scale((lambdas[i] * lambdas[j]).sqrt() / s);
        }
    }
    let mixer = DensityMatrix::new(psi.n(), d, sigma)?;
    let (mixture_decomposition, reconstruction_error) = if rank <= MAX_PHASE_RANK {
        let terms = phase_average_terms(&dec.left, &dec.right, lambdas, cut, d)?;
        let target = psi.density().mix_with(&mixer, s)?;
        let err = max_abs_diff(&decomposition_matrix(&terms), target.entries());
        (Some(terms), Some(err))
    } else {
        (None, None)
    };
    Ok(BsMixer {
        cut,
        weight: s,
        mixer,
        mixture_decomposition,
        reconstruction_error,
    })
}

fn phase_average_terms(
    left: &[CVector],
    right: &[CVector],
    lambdas: &[f64],
    cut: Bipartition,
    d: usize,
) -> Result<Vec<WeightedState>> {
    let rank = lambdas.len();
    let count = 3usize.pow(rank as u32 - 1);
    let omega = |k: usize| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
    let mut terms = Vec::with_capacity(count);
    for code in 0..count {
        // phase of index 0 fixed to 1 (global phase)
        let mut digits = vec![0usize; rank];
        let mut rest = code;
        for digit in digits.iter_mut().skip(1) {
            *digit = rest % 3;
            rest /= 3;
        }
        let mut a = CVector::zeros(left[0].len());
        let mut b = CVector::zeros(right[0].len());
        for i in 0..rank {
            let amp = lambdas[i].powf(0.25);
            a += &left[i] * (omega(digits[i]) * amp);
            b += &right[i] * (omega(digits[i]).conj() * amp);
        }
        terms.push(WeightedState {
            weight: 1.0 / count as f64,
            state: compose_across(cut, d, &a, &b)?,
        });
    }
    Ok(terms)
}

/// [`bs_mixer_across`] at the cut minimizing the bipartite robustness.
pub fn bs_mixer_for(psi: &PureState) -> Result<BsMixer> {
    let best = robustness_bs_upper(psi)?;
    let cut = best.cut().expect("robustness_bs_upper reports its cut");
    bs_mixer_across(psi, cut)
}

/// FS robustness bound for `√x1 |001> + √x2 |010> + √x3 |100>` from local
/// filtering of the W-state mixture.
///
/// With `D_k = diag(1, r c_k)`, `c = (√x3, √x2, √x1)`, the filter maps `W` to
/// a multiple of the target and the fully separable pair (mixer, mixture)
/// for `W` to a fully separable pair for the target. The filter strength `r`
/// is optimized.
#[derive(Debug, Clone, Serialize)]
pub struct FilterBound {
    pub value: f64,
    /// `r²` at the optimum.
    pub filter_strength: f64,
    pub mixer: DensityMatrix,
    pub mixer_decomposition: Vec<WeightedState>,
    pub mixture_decomposition: Vec<WeightedState>,
    pub reconstruction_error: f64,
}

impl From<FilterBound> for FreeMixer {
    fn from(b: FilterBound) -> Self {
        FreeMixer {
            evidence: format!(
                "filtered W-state decomposition ({} product terms, error {:.1e})",
                b.mixture_decomposition.len(),
                b.reconstruction_error
            ),
            state: b.mixer,
            weight: b.value,
            theory: Theory::Fsp,
        }
    }
}

fn filter_diagonal(cs: [f64; 3], r: f64) -> Vec<f64> {
    (0..8)
        .map(|i: usize| {
            (0..3)
                .filter(|k| (i >> (2 - k)) & 1 == 1)
                .map(|k| r * cs[k])
                .product()
        })
        .collect()
}

fn filtered(m: &CMatrix, diag: &[f64]) -> CMatrix {
    CMatrix::from_fn(8, 8, |i, j| m[(i, j)] * c(diag[i] * diag[j]))
}

fn filter_terms(terms: &[WeightedState], diag: &[f64], norm: f64) -> Result<Vec<WeightedState>> {
    terms
        .iter()
        .map(|t| {
            let v = CVector::from_fn(8, |i, _| t.state.amplitudes()[i] * diag[i]);
            let w = v.norm_squared();
            Ok(WeightedState {
                weight: t.weight * w / norm,
                state: PureState::normalized(3, 2, v)?,
            })
        })
        .collect()
}

pub fn w_class_filter_bound(x1: f64, x2: f64, x3: f64) -> Result<FilterBound> {
    let target = psi_w(x1, x2, x3)?;
    if [x1, x2, x3].iter().any(|&x| x <= 0.0) {
        return Err(Error::OutOfRange(
            "filter construction needs all three weights positive".into(),
        ));
    }
    let cs = [x3.sqrt(), x2.sqrt(), x1.sqrt()];
    let e2 = x1 * x2 + x1 * x3 + x2 * x3;
    let e3 = x1 * x2 * x3;
    // bound as a function of u = r²; convex in u
    let f =
        |u: f64| 6.0 * (9.0 / (16.0 * u) + 3.0 / 16.0 * u * u * e3 + 1.0 / 48.0 + u * e2 / 16.0);
    let (mut lo, mut hi) = ((1e-6f64).ln(), (1e6f64).ln());
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..200 {
        let a = hi - g * (hi - lo);
        let b = lo + g * (hi - lo);
        if f(a.exp()) < f(b.exp()) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let u = (0.5 * (lo + hi)).exp();
    let diag = filter_diagonal(cs, u.sqrt());

    let w_f = filtered(&w_state().density().into_entries(), &diag);
    let eta_f = filtered(&w_robustness_mixer().into_entries(), &diag);
    let tau_f = filtered(&w_robustness_mixture().into_entries(), &diag);
    let (nw, ne, nt) = (w_f.trace().re, eta_f.trace().re, tau_f.trace().re);
    let value = 2.0 * ne / nw;
    let mixer = DensityMatrix::new(3, 2, eta_f.unscale(ne))?;
    let mixture = DensityMatrix::new(3, 2, tau_f.unscale(nt))?;

    let dicke = FsCertifierOptions::only(&[Route::DickeDiagonal]);
    let eta_terms = fs_certificate(&w_robustness_mixer(), &dicke)
        .decomposition
        .ok_or_else(|| Error::Inconsistent("W mixer lost its decomposition".into()))?;
    let tau_terms = fs_certificate(&w_robustness_mixture(), &dicke)
        .decomposition
        .ok_or_else(|| Error::Inconsistent("W mixture lost its decomposition".into()))?;
    let mixer_decomposition = filter_terms(&eta_terms, &diag, ne)?;
    let mixture_decomposition = filter_terms(&tau_terms, &diag, nt)?;

    let expected = target.density().mix_with(&mixer, value)?;
    let err = [
        max_abs_diff(expected.entries(), mixture.entries()),
        max_abs_diff(
            &decomposition_matrix(&mixture_decomposition),
            mixture.entries(),
        ),
        max_abs_diff(&decomposition_matrix(&mixer_decomposition), mixer.entries()),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if err > 1e-9 {
        return Err(Error::Inconsistent(format!(
            "filtered decomposition off by {err:e}"
        )));
    }
    debug_assert!((value - f(u)).abs() < 1e-9 * value.max(1.0));
    Ok(FilterBound {
        value,
        filter_strength: u,
        mixer,
        mixer_decomposition,
        mixture_decomposition,
        reconstruction_error: err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{four_qubit_phi, ghz};
    use crate::linalg::{is_ppt, tensor_product};
    use crate::random::{random_state, rng_from_seed};

    #[test]
    fn bell_mixer_reaches_separable_boundary() {
        let bell = ghz(2, 2).unwrap();
        let m = bs_mixer_for(&bell).unwrap();
        assert!((m.weight - 1.0).abs() < 1e-12);
        let mix = bell.density().mix_with(&m.mixer, m.weight).unwrap();
        let pt = crate::linalg::partial_transpose(&mix, m.cut.side()).unwrap();
        assert!(crate::linalg::min_eigenvalue(&pt).abs() < 1e-12);
        assert!(m.reconstruction_error.unwrap() < 1e-12);
    }

    #[test]
    fn ghz_mixtures_are_ppt_across_cut() {
        for (n, d) in [(3, 2), (3, 3), (4, 2)] {
            let g = ghz(n, d).unwrap();
            for cut in Bipartition::all(n).unwrap() {
                let m = bs_mixer_across(&g, cut).unwrap();
                assert!((m.weight - (d as f64 - 1.0)).abs() < 1e-12);
                let mix = g.density().mix_with(&m.mixer, m.weight).unwrap();
                assert!(is_ppt(&mix, cut.side(), 1e-10).unwrap());
                assert!(m.reconstruction_error.unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn product_target_is_its_own_mixer() {
        let bell0 =
            tensor_product(&PureState::basis(1, 2, 0).unwrap(), &ghz(2, 2).unwrap()).unwrap();
        let m = bs_mixer_for(&bell0).unwrap();
        assert_eq!(m.weight, 0.0);
        assert_eq!(m.mixer, bell0.density());
    }

    #[test]
    fn random_targets_decompose() {
        let mut rng = rng_from_seed(77);
        for _ in 0..10 {
            let psi = random_state(3, 3, &mut rng).unwrap();
            let m = bs_mixer_for(&psi).unwrap();
            assert!(m.reconstruction_error.unwrap() < 1e-10);
            let terms = m.mixture_decomposition.unwrap();
            assert_eq!(terms.len(), 9);
        }
        let phi = four_qubit_phi(0.25).unwrap();
        assert!(bs_mixer_for(&phi).unwrap().weight <= 1.0 + 1e-12);
    }

    #[test]
    fn filter_bound_reproduces_w() {
        let b = w_class_filter_bound(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        assert!((b.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn filter_bound_below_one_near_product() {
        let b = w_class_filter_bound(0.9, 0.05, 0.05).unwrap();
        assert!(b.value < 1.0, "{}", b.value);
        assert!(b.reconstruction_error < 1e-10);
        assert!(b.mixer_decomposition.iter().all(|t| t.weight >= 0.0));
        let fm: FreeMixer = b.into();
        assert_eq!(fm.theory(), Theory::Fsp);
    }

    #[test]
    fn certify_fs_checks_both_states() {
        let w = w_state();
        let ok = FreeMixer::certify_fs(
            &w,
            w_robustness_mixer(),
            2.0,
            &FsCertifierOptions::default(),
        );
        assert!(ok.is_ok());
        let short = FreeMixer::certify_fs(
            &w,
            w_robustness_mixer(),
            1.5,
            &FsCertifierOptions::default(),
        );
        assert!(matches!(short, Err(Error::UncertifiedMixer(_))));
    }
}
