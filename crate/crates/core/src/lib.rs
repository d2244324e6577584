//! Exact factorization statistics for iterated compositions `f(g^(n)(x))`
//! over finite fields.
//!
//! The crate computes, for each `n`, the multiplicity and degree statistics of
//! the irreducible factors of `f(g^(n)(x))`. Profiles can be obtained by direct
//! factorization, through a root of `f` in an extension field, or from closed
//! forms for monomial and linearized `g`.

pub mod arith;
pub mod classify;
pub mod cli;
pub mod closedform;
mod config;
mod error;
pub mod field;
pub mod poly;
pub mod profile;
pub mod report;
pub mod verify;

pub use config::Config;
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use poly::{Factorization, Poly};
pub use profile::IterProfile;
