//! Exact arithmetic behind the `Z/p`-gaugings of the anisotropic plane
//! `(F_{q^2}, N)`: finite fields, quadratic spaces, orthogonal groups, fusion
//! rings and censuses, and the eigenvalue test for group-theoreticality.
//!
//! Everything is computed exactly over `F_q` / `F_{q^2}` or the integers;
//! there is no floating point in any verdict.

pub mod error;
pub mod exec;
pub mod ffield;
pub mod fusionring;
pub mod gtcheck;
pub mod linalg;
pub mod orthogroup;
pub mod quadspace;

pub use error::{Error, Result};
pub use exec::Exec;
