//! Numerical laboratory for the matrix-level geometry of concrete operator
//! spaces: certified M_n(X) norms over a catalog of homogeneous Hilbertian
//! spaces, the first-column invariant kappa_n, amplification moduli of
//! nonlinear maps, and rigidity experiments including a deterministic
//! restricted-invertibility selection.

pub mod error;
pub mod linalg;
pub mod sampling;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::CMatrix;
