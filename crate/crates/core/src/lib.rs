//! Causal-tensor partial information decomposition for discrete systems.

pub mod channel;
pub mod error;
pub mod pid;
pub mod prob;
pub mod structure;
pub mod te;

pub use error::{Error, Result};
