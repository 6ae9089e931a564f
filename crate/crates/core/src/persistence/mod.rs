//! Barcodes, bottleneck/interleaving distances and the shift-quotient distance.

mod bar;
mod bottleneck;
mod matching;
pub mod random;
pub mod reference;
mod value;

pub use bar::{bar_length_spectrum, boundary_depth, shift_barcode, Bar, Barcode};
pub use bottleneck::{
    bottleneck_distance, interleaving_distance, is_delta_matchable, shifted_bottleneck,
    shifted_bottleneck_with,
};
pub use matching::BipartiteGraph;
pub use value::{Extended, Filtration};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PersistenceError {
    #[error("invalid bar {0}")]
    InvalidBar(String),
}
