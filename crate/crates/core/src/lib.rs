//! Numerical criteria for deciding whether a bipartite d⊗d mixed state is a
//! useful resource for standard quantum teleportation.
//!
//! The crate is split into a small dense complex kernel ([`linalg`]), a
//! validated density-matrix model with a catalog of named states
//! ([`states`]), the usefulness criteria themselves ([`criteria`]), and
//! brute-force verifiers used to audit the criteria ([`oracle`]).

pub mod criteria;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{c64, ComplexMatrix, EigenDecomposition};
pub use num_complex::Complex64;
pub use states::{DensityMatrix, MaximallyEntangledVector};
