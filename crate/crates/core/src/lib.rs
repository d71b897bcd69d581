pub mod algebra;
pub mod convergence;
pub mod derivation;
pub mod diffop;
pub mod error;
pub mod models;
pub mod moyal;
pub mod parse;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
