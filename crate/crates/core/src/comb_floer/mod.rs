//! Combinatorial Floer complexes of two curves on the sphere or the annulus.
//!
//! Lunes are nonnegative domains with convex-corner index
//! 2(m_x + m_y) = 1, m being the mean of the four quadrant multiplicities
//! at a corner point. This criterion is a reconstruction; every built
//! complex is checked for d² = 0 and for consistency of lune areas with
//! the grading, and failures are reported rather than repaired.

mod complex;
pub mod diagram;
pub mod lunes;
pub mod meander;

pub use complex::{build_complex, diagram_beta, diagram_gamma, point_id, sphere_spec, CombFloer, LuneRecord, DEFAULT_MAX_WIND};
pub use diagram::{Arc, Curve, Dir, Face, Surface, TwoCurveDiagram};

use crate::filtered_complex::ComplexError;
use crate::novikov::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("arc incidence: {0}")]
    Incidence(String),
    #[error("Euler count {found}, expected {expected}")]
    Euler { found: i64, expected: i64 },
    #[error("curve {curve} does not bisect the area (sides {sides})")]
    Bisection { curve: String, sides: String },
    #[error("no admissible trace from the base point to {0}")]
    NoTrace(u32),
    #[error("inconsistent grading: {0}")]
    Grading(String),
    #[error("lune {from}→{to} has area {area} but the action drops by {drop}")]
    Action {
        from: u32,
        to: u32,
        area: Rational,
        drop: Rational,
    },
    #[error("built complex is invalid: {0}")]
    Complex(#[from] ComplexError),
}
