//! Exact eigenfunctions of Calogero–Sutherland type operators.
//!
//! The crate builds singular eigenfunctions as truncated Laurent series by a
//! triangular recursion on the index lattice, maps them to regular symmetric
//! polynomial eigenfunctions (Jack polynomials) by exact constant-term
//! extraction, and checks the results against independent oracles and
//! high-precision evaluations of the underlying analytic identities.
//!
//! All coefficient arithmetic is done over [`Rat`]; floating point only enters
//! in [`verify`], at a configurable working precision.

pub mod error;
pub mod generalized;
pub mod hp;
pub mod lattice;
pub mod oracle;
pub mod rational;
pub mod series;
pub mod singular;
pub mod spectrum;
pub mod sympoly;
pub mod transform;
pub mod triangular;
pub mod verify;

pub type Rat = num_rational::BigRational;

pub use error::{Error, Result};
pub use lattice::{IntVec, MuVector, Partition};
pub use series::LaurentSeries;
pub use singular::AlphaTable;
pub use spectrum::ModelParams;
pub use sympoly::SymPoly;
pub use transform::TransformConfig;
