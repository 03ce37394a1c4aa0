//! Exact verification engine for a strongly essential flow on an affine
//! chart of Gr(2,n) and its invariant family of deformed almost-Grassmannian
//! structures.

pub mod curvature;
pub mod deform;
pub mod error;
pub mod exactalg;
pub mod linalg;
pub mod model;
pub mod reptheory;
pub mod sampling;
pub mod torsion;

pub use error::{Error, Result};
