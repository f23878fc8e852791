//! Discrete probability foundation: alphabets, exact or float probabilities,
//! joints, marginals, conditionals and Shannon quantities.

pub mod alphabet;
pub mod info;
pub mod joint;
pub mod value;

pub use alphabet::{Alphabet, Domain, Symbol};
pub use info::{
    conditional_mutual_information, entropy, interaction_information, joint_entropy,
    joint_from_samples, mutual_information,
};
pub use joint::{JointDistribution, VarSet};
pub use value::{Mode, Pmf, Prob};
