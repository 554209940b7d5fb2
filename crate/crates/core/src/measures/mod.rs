//! Geometric measures, robustness bounds and separability certificates.

mod certify;
mod geometric;
pub mod optimizer;
mod robustness;

use serde::Serialize;

use crate::linalg::{Bipartition, DensityMatrix, PureState};

pub use certify::{
    decomposition_matrix, fs_certificate, symmetric_projector, CertResult, FsCertifierOptions,
    Route, Verdict, WeightedState,
};
pub use geometric::{geometric_bs, geometric_fs};
pub use optimizer::OptimizerOptions;
pub use robustness::{
    dicke_mix_exact, robustness_bipartite_pure, robustness_bs_upper, robustness_fs_upper_via_mix,
    DickeWeights, MixOptions,
};

/// What achieved a measure's value.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Certificate {
    ProductState(PureState),
    Cut(Bipartition),
    Mixture(DensityMatrix),
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureResult {
    pub value: f64,
    pub certificate: Option<Certificate>,
    pub iterations: usize,
    pub converged: bool,
}

impl MeasureResult {
    pub fn cut(&self) -> Option<Bipartition> {
        match &self.certificate {
            Some(Certificate::Cut(c)) => Some(*c),
            _ => None,
        }
    }
}
