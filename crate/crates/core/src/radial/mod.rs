//! Generator spectra of radially symmetric Hamiltonians with piecewise-linear
//! profiles, and the barcodes such spectra can support.

pub mod feasible;
pub mod homotopy;
pub mod piq;
pub mod profile;
pub mod spectrum;

pub use feasible::{feasible_barcodes, forced_bar_bound};
pub use homotopy::homotopy_filter;
pub use piq::PiQ;
pub use profile::{FoldingFamily, LagrangianParams, RadialProfile};
pub use spectrum::{degree_actions, generators, GeneratorSpectrum, Source, SpectrumEntry};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RadialError {
    #[error("invalid profile: {0}")]
    Profile(String),
    #[error("segment {segment} has integer slope {slope}")]
    IntegerSlope { segment: usize, slope: PiQ },
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("no barcode realizes ranks {0}")]
    Infeasible(String),
    #[error("matching search exceeded {0} nodes")]
    SearchLimit(usize),
    #[error("no barcode survives continuity pruning at sample {sample}")]
    EmptyPruned { sample: usize },
}
