//! Exact computations on symmetric determinantal representations, Schur quadrics,
//! rank-2 bundle monads and logarithmic bundles of line arrangements.

pub mod certificate;
pub mod curve;
pub mod families;
pub mod detrep;
pub mod error;
pub mod logbundle;
pub mod matrix;
pub mod monad;
pub mod pipeline;
pub mod poly;
pub mod runs;
pub mod scalar;
pub mod schur;
pub mod subspace;
pub mod upoly;
pub mod zeros;

pub use error::{Error, Result};
pub use matrix::{MatrixF, Vector};
pub use poly::HomPoly;
pub use scalar::{Field, Scalar};
pub use subspace::{ProjSubspace, SymForm};
