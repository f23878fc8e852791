//! Causal tensors, cascades and path mutual information.

pub mod path;
pub mod tensor;

pub use path::{channel_information, path_mutual_information, path_tensor, Path};
pub use tensor::{CausalTensor, DEFAULT_TOLERANCE};
