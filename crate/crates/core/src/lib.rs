//! Orthogonal matroids over tracts: Wick functions, restricted
//! Grassmann-Plücker functions, circuit signatures and the maps between them,
//! with an exact skew-symmetric-matrix realization backend.

pub mod crypto;
pub mod enveloping;
pub mod error;
pub mod functions;
pub mod groundset;
pub mod json;
pub mod matroid;
pub mod oracle;
pub mod realization;
pub mod signature;
pub mod tract;
pub mod violation;

pub use error::{Error, Result};
pub use functions::{RgpFunction, Strength, WickFunction};
pub use groundset::{Element, Subset};
pub use matroid::{EvenAntisymmetricMatroid, OrthogonalMatroid};
pub use signature::{CircuitVector, Signature};
pub use tract::{Field, FormalSum, Tract, TractKind};
pub use violation::{Verdict, Violation};
