//! Exact computations for Lie algebras with derivations.
//!
//! The crate verifies and constructs non-abelian extensions of LieDer pairs,
//! realizes them as Maurer-Cartan elements of a differential graded Lie
//! algebra, decides integrability of kernels through a degree-3 obstruction
//! class, and decides when a pair of derivations lifts across an extension.
//! All arithmetic is over exact rationals.

pub mod cochain;
pub mod dgla;
pub mod error;
pub mod exactlin;
pub mod extendder;
pub mod format;
pub mod kernel;
pub mod lie;
pub mod lie2;
pub mod nonabelian;

pub use error::{Error, Result};
pub use exactlin::{Matrix, QuotientSpace, Rational, Subspace};
pub use lie::{LieAlgebra, LieDerPair};
