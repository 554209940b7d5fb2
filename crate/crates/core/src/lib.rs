//! Entanglement measures, robustness bounds, separability certificates and
//! explicit state-conversion channels for multipartite pure states under
//! full-separability-preserving (FSP) and biseparability-preserving (BSP)
//! operations.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod conversion;
pub mod error;
pub mod ghz_symmetric;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod polytope;
pub mod random;
pub mod witness;

pub use error::{Error, Result};
pub use linalg::{Bipartition, DensityMatrix, Parties, PureState};
