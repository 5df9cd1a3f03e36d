//! Exact computations with reduced leaf-labeled trees: canonical forms,
//! amalgamations, the measure `mu_t`, the ring `Z[u,v]/(uv)` and the
//! endomorphism algebras built from self-amalgamations.

pub mod amalgam;
pub mod arith;
pub mod category;
pub mod checks;
pub mod error;
pub mod fixtures;
pub mod measure;
pub mod theta;
pub mod tree;

pub use error::{Error, Result};
