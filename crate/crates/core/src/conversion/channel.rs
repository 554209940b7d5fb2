use serde::Serialize;

use super::mixers::{bs_mixer_for, FreeMixer};
use super::{certificate_from_bounds, ConversionCertificate, RobustnessBound, Theory};
use crate::catalog::ghz;
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, PureState};
use crate::measures::geometric_bs;

/// `Λ(ρ) = p t ψ₂ + (1 - p t) σ` with `t = tr(ψ₁ ρ)`: filter on `ψ₁`, prepare
/// `ψ₂` with probability `p`, otherwise (or on failure) prepare the mixer.
#[derive(Debug, Clone, Serialize)]
pub struct PreparationMap {
    pub psi1: PureState,
    pub p: f64,
    pub psi2: PureState,
    pub mixer: FreeMixer,
    pub theory: Theory,
    /// `G(ψ₁)` used for the preservation check.
    pub g_source: f64,
}

impl PreparationMap {
    /// A map with no certificate checks, for probing beyond `p_max`.
    pub fn unchecked(
        psi1: PureState,
        p: f64,
        psi2: PureState,
        mixer: FreeMixer,
        g_source: f64,
    ) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::OutOfRange(format!("p = {p} must lie in (0, 1]")));
        }
        psi2.same_shape(psi1.n(), psi1.d())?;
        mixer.state().same_shape(psi1.n(), psi1.d())?;
        Ok(PreparationMap {
            theory: mixer.theory(),
            psi1,
            p,
            psi2,
            mixer,
            g_source,
        })
    }

    /// `(p t, 1 - p t)`: weights of `ψ₂` and the mixer in the output.
    pub fn output_weights(&self, t: f64) -> (f64, f64) {
        let a = self.p * t.clamp(0.0, 1.0);
        (a, 1.0 - a)
    }

    pub fn apply_channel(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        rho.same_shape(self.psi1.n(), self.psi1.d())?;
        self.mix(rho.fidelity_with(&self.psi1))
    }

    pub fn apply_pure(&self, phi: &PureState) -> Result<DensityMatrix> {
        phi.same_shape(self.psi1.n(), self.psi1.d())?;
        self.mix(phi.overlap(&self.psi1))
    }

    fn mix(&self, t: f64) -> Result<DensityMatrix> {
        let (a, b) = self.output_weights(t);
        let entries =
            self.psi2.density().into_entries().scale(a) + self.mixer.state().entries().scale(b);
        DensityMatrix::new(self.psi1.n(), self.psi1.d(), entries)
    }
}

/// Builds the conversion map, refusing `p` above the certificate or a mixer
/// that does not match it.
pub fn build_filter_map(
    cert: &ConversionCertificate,
    psi1: &PureState,
    psi2: &PureState,
    p: f64,
    mixer: FreeMixer,
) -> Result<PreparationMap> {
    if p > cert.p_max + 1e-12 {
        return Err(Error::ProbabilityExceedsBound {
            p,
            p_max: cert.p_max,
        });
    }
    if mixer.theory() != cert.theory {
        return Err(Error::UncertifiedMixer(format!(
            "mixer is free for {:?}, certificate is for {:?}",
            mixer.theory(),
            cert.theory
        )));
    }
    if mixer.weight() > cert.r_target + 1e-9 {
        return Err(Error::UncertifiedMixer(format!(
            "mixer needs weight {} but the certificate assumes {}",
            mixer.weight(),
            cert.r_target
        )));
    }
    PreparationMap::unchecked(psi1.clone(), p.min(1.0), psi2.clone(), mixer, cert.g_source)
}

/// `Λ(GHZ(n, d)) = ψ` with certainty, for any `ψ` on `(C^d)^{⊗n}`.
pub fn ghz_to_any_bsp(psi: &PureState) -> Result<PreparationMap> {
    let source = ghz(psi.n(), psi.d())?;
    let g = geometric_bs(&source)?.value;
    let mixer = bs_mixer_for(psi)?;
    let bound = RobustnessBound::new(mixer.weight, "bipartite robustness at the best cut")?;
    let cert = certificate_from_bounds(
        Theory::Bsp,
        g,
        "geometric_bs (closed form over cuts)",
        &bound,
    )?;
    build_filter_map(&cert, &source, psi, 1.0, mixer.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{four_qubit_phi, w_state};
    use crate::conversion::{max_probability, ConversionOptions};
    use crate::linalg::max_abs_diff;
    use crate::random::{random_state, rng_from_seed};

    #[test]
    fn ghz_maps_to_w() {
        let map = ghz_to_any_bsp(&w_state()).unwrap();
        let out = map.apply_pure(&ghz(3, 2).unwrap()).unwrap();
        assert!(max_abs_diff(out.entries(), w_state().density().entries()) < 1e-12);
        assert_eq!(map.p, 1.0);
    }

    #[test]
    fn ghz_self_target_and_phi() {
        let g = ghz(3, 2).unwrap();
        let map = ghz_to_any_bsp(&g).unwrap();
        let out = map.apply_channel(&g.density()).unwrap();
        assert!(max_abs_diff(out.entries(), g.density().entries()) < 1e-12);
        let phi = four_qubit_phi(0.25).unwrap();
        assert!(ghz_to_any_bsp(&phi).is_ok());
    }

    #[test]
    fn partial_probability_output() {
        let mut rng = rng_from_seed(5);
        let a = random_state(3, 2, &mut rng).unwrap();
        let b = random_state(3, 2, &mut rng).unwrap();
        let cert = max_probability(&a, &b, Theory::Bsp, &ConversionOptions::default()).unwrap();
        let mixer = bs_mixer_for(&b).unwrap();
        let mixer_state = mixer.mixer.clone();
        let map = build_filter_map(&cert, &a, &b, cert.p_max, mixer.into()).unwrap();
        let out = map.apply_pure(&a).unwrap();
        let want =
            DensityMatrix::mixture(&[(cert.p_max, &b.density()), (1.0 - cert.p_max, &mixer_state)])
                .unwrap();
        assert!(max_abs_diff(out.entries(), want.entries()) < 1e-12);

        let over = build_filter_map(
            &cert,
            &a,
            &b,
            cert.p_max * 1.5,
            bs_mixer_for(&b).unwrap().into(),
        );
        if cert.p_max < 1.0 / 1.5 {
            assert!(matches!(over, Err(Error::ProbabilityExceedsBound { .. })));
        }
    }

    #[test]
    fn orthogonal_input_gives_mixer() {
        let map = ghz_to_any_bsp(&w_state()).unwrap();
        let orth = PureState::basis(3, 2, 1).unwrap();
        let out = map.apply_pure(&orth).unwrap();
        assert_eq!(out.entries(), map.mixer.state().entries());
    }
}
