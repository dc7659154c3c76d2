//! Picard and Chazy solutions of the sixth Painlevé equation at resonant
//! parameter `2μ ∈ ℤ`: evaluation, birational symmetries, monodromy data and
//! numerical verification.

pub mod chazy;
pub mod error;
pub mod hypergeom;
pub mod monodromy;
pub mod picard;
pub mod symmetry;
pub mod verify;
pub mod weierstrass;

pub use error::{Error, Result};
