//! Seidel-element averaging bounds for one-generator quantum homology rings.

pub mod averaging;
pub mod cases;
pub mod ring;

pub use averaging::{averaging_bound, quasimorphism_defect_bound, telescoping_check, Hypothesis, TelescopingReport};
pub use cases::{example_case, verify_hypotheses, CaseName, SeidelCase};
pub use ring::{qh_mul, Monomial, QHElement, QHPresentation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeidelError {
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("hypotheses fail: {0}")]
    Hypotheses(String),
    #[error("telescoping leaves residual terms: {0}")]
    Residual(String),
    #[error("unknown example case {0:?}")]
    UnknownCase(String),
}
