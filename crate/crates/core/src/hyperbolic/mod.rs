//! Matrix representation of the surface group in PSL₂(R), traces and lengths.

mod mat2;
mod representation;
mod scalar;

pub use mat2::{length_from_trace, length_of, LengthNorm, Mat2};
pub use representation::{load_preset, Representation};
pub use scalar::{ScalarHP, DEFAULT_PRECISION};
