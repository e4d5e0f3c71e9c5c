//! Classical simulator and verifier for compressed oracles that reproduce
//! queries to a Haar-random group element in a given unitary representation.
//!
//! The oracles are built from (dual) Clebsch-Gordan transforms. Three
//! backends are provided: an efficient compressed Gelfand-Tsetlin engine for
//! U(d) forward queries, a dense numeric engine for U(d) at desk scale, and
//! an exact engine for finite groups with explicit irreps. Haar moments
//! computed through the oracles are verified against independent ground
//! truth (Weingarten calculus for U(d), uniform averaging for finite groups),
//! and the supermap-twirling application converts an approximate
//! unitary-inversion comb into depolarized exact inversion.

pub mod cg;
pub mod codec;
pub mod error;
pub mod finite;
pub mod gtcompress;
pub mod haar;
pub mod oracle;
pub mod perm;
pub mod query;
pub mod repcore;
pub mod twirl;
pub mod verify;

pub use error::{Error, Result};

/// Complex double, the scalar type of all numeric engines.
pub type C64 = num_complex::Complex64;
