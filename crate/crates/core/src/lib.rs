pub mod entropy;
pub mod error;
pub mod format;
pub mod haar;
pub mod lattice;
pub mod nocomm;
pub mod page_curve;
pub mod paradox;
pub mod register;
pub mod state;

pub use error::{Error, Result};
