pub mod controllability;
pub mod designer;
pub mod destructive;
pub mod error;
pub mod exact;
pub mod graph;
pub mod report;
pub mod spectral;
pub mod verifier;

pub use error::{Error, Result};
