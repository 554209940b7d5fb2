//! Conversion between resource states by measure-and-prepare maps that
//! preserve the free set (fully separable or biseparable states).
//!
//! `Λ(ρ) = p tr(ψ₁ρ) ψ₂ + (1 - p tr(ψ₁ρ)) σ` with `σ` a free mixer. It maps
//! free states to free states whenever
//! `p <= G(ψ₁) / ((1 - G(ψ₁)) R(ψ₂))`.

mod channel;
mod mixers;
mod sampling;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::PureState;
use crate::measures::{geometric_bs, geometric_fs, robustness_bs_upper, OptimizerOptions};

pub use channel::{build_filter_map, ghz_to_any_bsp, PreparationMap};
pub use mixers::{
    bs_mixer_across, bs_mixer_for, w_class_filter_bound, BsMixer, FilterBound, FreeMixer,
};
pub use sampling::{random_free_state, verify_preservation_sampled, PreservationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theory {
    #[serde(rename = "FSP")]
    Fsp,
    #[serde(rename = "BSP")]
    Bsp,
}

impl std::str::FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fsp" | "fs" => Ok(Theory::Fsp),
            "bsp" | "bs" => Ok(Theory::Bsp),
            _ => Err(Error::InvalidParams(format!(
                "unknown theory `{s}` (use fsp or bsp)"
            ))),
        }
    }
}

/// An upper bound on the robustness of a target, with how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustnessBound {
    pub value: f64,
    pub method: String,
}

impl RobustnessBound {
    pub fn new(value: f64, method: &str) -> Result<Self> {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::OutOfRange(format!(
                "robustness bound {value} must be finite and >= 0"
            )));
        }
        Ok(RobustnessBound {
            value,
            method: method.into(),
        })
    }

    pub fn supplied(value: f64) -> Result<Self> {
        Self::new(value, "supplied upper bound")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub g_source: String,
    pub r_target: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConversionCertificate {
    pub theory: Theory,
    pub g_source: f64,
    pub r_target: f64,
    pub p_max: f64,
    pub deterministic: bool,
    pub provenance: Provenance,
}

/// `min(1, G / ((1 - G) R))`; a target with `R = 0` is free and reachable
/// with certainty.
pub fn p_max_from(g: f64, r: f64) -> f64 {
    if r <= 0.0 || g >= 1.0 {
        1.0
    } else {
        (g / ((1.0 - g) * r)).min(1.0)
    }
}

/// Certificate from already known `G` and an upper bound on `R`.
pub fn certificate_from_bounds(
    theory: Theory,
    g: f64,
    g_method: &str,
    r: &RobustnessBound,
) -> Result<ConversionCertificate> {
    if !(g > 1e-10) {
        return Err(Error::FreeSource(g));
    }
    let p_max = p_max_from(g, r.value);
    Ok(ConversionCertificate {
        theory,
        g_source: g,
        r_target: r.value,
        p_max,
        deterministic: p_max >= 1.0,
        provenance: Provenance {
            g_source: g_method.into(),
            r_target: r.method.clone(),
        },
    })
}

#[derive(Debug, Clone, Default)]
pub struct ConversionOptions {
    pub optimizer: OptimizerOptions,
    /// Required for FSP targets; overrides the computed bound for BSP.
    pub r_upper: Option<RobustnessBound>,
}

/// Geometric measure of the source in the given theory, with its method tag.
pub fn source_measure(
    psi: &PureState,
    theory: Theory,
    opts: &OptimizerOptions,
) -> Result<(f64, String)> {
    Ok(match theory {
        Theory::Bsp => (
            geometric_bs(psi)?.value,
            "geometric_bs (closed form over cuts)".into(),
        ),
        Theory::Fsp => (
            geometric_fs(psi, opts)?.value,
            format!(
                "geometric_fs (product-state optimizer, {} restarts)",
                opts.restarts
            ),
        ),
    })
}

/// Largest `p` for which the conversion map is certified to preserve the
/// free set, from `G(ψ₁)` and an upper bound on `R(ψ₂)`.
pub fn max_probability(
    psi1: &PureState,
    psi2: &PureState,
    theory: Theory,
    opts: &ConversionOptions,
) -> Result<ConversionCertificate> {
    psi2.same_shape(psi1.n(), psi1.d())?;
    let (g, g_method) = source_measure(psi1, theory, &opts.optimizer)?;
    if !(g > 1e-10) {
        return Err(Error::FreeSource(g));
    }
    let r = match (&opts.r_upper, theory) {
        (Some(r), _) => r.clone(),
        (None, Theory::Bsp) => RobustnessBound::new(
            robustness_bs_upper(psi2)?.value,
            "robustness_bs_upper (minimum over cuts)",
        )?,
        (None, Theory::Fsp) => return Err(Error::MissingRobustnessBound),
    };
    certificate_from_bounds(theory, g, &g_method, &r)
}

/// Closed-form FS robustness bound `(4 - c) / (2 (1 + c))` of
/// [`psi_ghz_plus`](crate::catalog::psi_ghz_plus), `c = cos α cos β cos γ`.
pub fn ghz_plus_robustness_bound(alpha: f64, beta: f64, gamma: f64) -> Result<RobustnessBound> {
    crate::catalog::psi_ghz_plus(alpha, beta, gamma)?;
    let c = alpha.cos() * beta.cos() * gamma.cos();
    RobustnessBound::new(
        (4.0 - c) / (2.0 * (1.0 + c)),
        "closed-form bound for psi_ghz_plus",
    )
}

/// Smallest `c = cos α cos β cos γ` for which the bound above is at most
/// `G_FS(W) / (1 - G_FS(W)) = 5/4`.
pub const GHZ_PLUS_DETERMINISTIC_C: f64 = 3.0 / 7.0;

/// Bisection for the boundary of a monotone predicate on `[lo, hi]`:
/// `pred(lo)` true, `pred(hi)` false. Returns the last point where it holds.
pub fn bisect_threshold(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    pred: impl Fn(f64) -> Result<bool>,
) -> Result<f64> {
    if !pred(lo)? || pred(hi)? {
        return Err(Error::InvalidParams(format!(
            "predicate must hold at {lo} and fail at {hi}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{fully_supported_example, ghz, psi_ghz_plus, w_state};
    use crate::linalg::{reduced_pure, Parties};

    #[test]
    fn bsp_ghz_to_ghz_is_deterministic() {
        let g = ghz(3, 2).unwrap();
        let cert = max_probability(&g, &g, Theory::Bsp, &ConversionOptions::default()).unwrap();
        assert!((cert.g_source - 0.5).abs() < 1e-12);
        assert!((cert.r_target - 1.0).abs() < 1e-12);
        assert_eq!(cert.p_max, 1.0);
        assert!(cert.deterministic);
    }

    #[test]
    fn fsp_w_to_ghz() {
        let opts = ConversionOptions {
            r_upper: Some(RobustnessBound::supplied(2.0).unwrap()),
            ..Default::default()
        };
        let cert = max_probability(&w_state(), &ghz(3, 2).unwrap(), Theory::Fsp, &opts).unwrap();
        assert!((cert.p_max - 5.0 / 8.0).abs() < 1e-6);
        assert!(!cert.deterministic);
        let missing = max_probability(
            &w_state(),
            &ghz(3, 2).unwrap(),
            Theory::Fsp,
            &ConversionOptions::default(),
        );
        assert!(matches!(missing, Err(Error::MissingRobustnessBound)));
    }

    #[test]
    fn free_source_rejected() {
        let zero = PureState::basis(3, 2, 0).unwrap();
        let r = max_probability(
            &zero,
            &w_state(),
            Theory::Bsp,
            &ConversionOptions::default(),
        );
        assert!(matches!(r, Err(Error::FreeSource(_))));
    }

    #[test]
    fn fully_supported_targets_become_deterministic() {
        let eps_star = bisect_threshold(1e-6, 0.5, 1e-10, |eps| {
            let t = fully_supported_example(3, 2, eps)?;
            Ok(
                max_probability(&w_state(), &t, Theory::Bsp, &ConversionOptions::default())?
                    .deterministic,
            )
        })
        .unwrap();
        let oracle = (1.0 - 0.75f64.sqrt()) / 2.0;
        assert!((eps_star - oracle).abs() < 1e-8, "{eps_star} vs {oracle}");
        let t = fully_supported_example(3, 2, eps_star).unwrap();
        for k in 0..3 {
            let marg = reduced_pure(&t, Parties::new(3, &[k]).unwrap()).unwrap();
            assert!(marg.min_eigenvalue() > 1e-3);
        }
    }

    #[test]
    fn ghz_plus_threshold() {
        let q = |c: f64| (4.0 - c) / (2.0 * (1.0 + c));
        assert!((q(GHZ_PLUS_DETERMINISTIC_C) - 1.25).abs() < 1e-12);
        let b = ghz_plus_robustness_bound(0.3, 0.2, 0.4).unwrap();
        let c = 0.3f64.cos() * 0.2f64.cos() * 0.4f64.cos();
        assert!(c >= 3.0 / 7.0 && b.value <= 1.25);
        let opts = ConversionOptions {
            r_upper: Some(b),
            ..Default::default()
        };
        let cert = max_probability(
            &w_state(),
            &psi_ghz_plus(0.3, 0.2, 0.4).unwrap(),
            Theory::Fsp,
            &opts,
        )
        .unwrap();
        assert!(cert.deterministic);
        let flat = ghz_plus_robustness_bound(
            std::f64::consts::FRAC_PI_2,
            std::f64::consts::FRAC_PI_2,
            0.1,
        )
        .unwrap();
        assert!((flat.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn p_max_formula() {
        assert_eq!(p_max_from(0.5, 0.0), 1.0);
        assert!((p_max_from(1.0 / 3.0, 2.0) - 0.25).abs() < 1e-15);
    }
}
