//! Persistent Laplacians of weight-preserving simplicial maps.
//!
//! Given a simplicial map `f: K -> L` between weighted simplicial complexes
//! that preserves weights, [`plap`] builds matrix representations of the up,
//! down and full persistent Laplacians on `Im(f_q)` using generalized Schur
//! complements. Their nullity is the persistent Betti number of `f`, which
//! [`oracle`] recomputes independently from homology ranks.
//!
//! All structural computations use exact rational arithmetic; floats are only
//! used for eigenvalues.

pub mod chains;
pub mod cli;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod oracle;
pub mod plap;
pub mod tower;

pub use complex::{SimplicialComplex, SimplicialMap};
pub use error::{Error, Result};
pub use linalg::{ExactMatrix, FloatMatrix, Rational, Spectrum};
