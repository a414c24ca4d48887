//! Slice-regular functions of several quaternionic variables over
//! path-connected slice domains.

pub mod campaign;
pub mod domain;
pub mod error;
pub mod function;
pub mod path;
pub mod quaternion;
pub mod sample;
pub mod star;
pub mod stem;

pub use error::{Error, Result};
pub use function::{PathSlice, PolyFunction, SliceFunction, SliceFunctionSpec};
pub use path::PLPath;
pub use quaternion::{ImaginaryUnit, Quaternion, SlicePoint, StemMatrix, StemVector};
pub use star::StarProduct;
pub use stem::StemQuery;
