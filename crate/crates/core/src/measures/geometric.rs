use super::optimizer::{maximize_over_products, OptimizerOptions, StateOverlap};
use super::{Certificate, MeasureResult};
use crate::error::{Error, Result};
use crate::linalg::{schmidt_spectrum, Bipartition, PureState};

/// `1 - max_M λ₁(M)` over canonical cuts, with the maximizing cut (the
/// first one in mask order on ties).
pub fn geometric_bs(psi: &PureState) -> Result<MeasureResult> {
    let cuts = Bipartition::all(psi.n())?;
    let mut best: Option<(f64, Bipartition)> = None;
    for cut in cuts {
        let top = schmidt_spectrum(psi, cut)?.largest();
        if best.is_none_or(|(b, _)| top > b) {
            best = Some((top, cut));
        }
    }
    let (top, cut) = best.ok_or_else(|| {
        Error::InvalidDimensions("biseparability needs at least two parties".into())
    })?;
    Ok(MeasureResult {
        value: (1.0 - top).clamp(0.0, 1.0),
        certificate: Some(Certificate::Cut(cut)),
        iterations: 0,
        converged: true,
    })
}

/// `1 - max |<φ|ψ>|²` over product states `φ`.
pub fn geometric_fs(psi: &PureState, opts: &OptimizerOptions) -> Result<MeasureResult> {
    let best = maximize_over_products(&StateOverlap(psi), opts)?;
    Ok(MeasureResult {
        value: (1.0 - best.value).clamp(0.0, 1.0),
        certificate: Some(Certificate::ProductState(best.state)),
        iterations: best.iterations,
        converged: best.converged,
    })
}
