//! A computational laboratory for slice geometry in classical sequence
//! spaces and the James tree space: exact tree norms, slice samplers,
//! distance certificates, and the constructions around almost-diametral
//! points.

pub mod delta;
pub mod error;
pub mod jt;
pub mod report;
pub mod slices;
pub mod spaces;
pub mod tree;

pub use error::{Error, Result};
