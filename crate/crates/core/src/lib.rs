//! Exact computation engine for Eulerian-type polynomials.
//!
//! Each polynomial family is produced along independent routes (formal
//! derivatives of context-free grammars, recurrence tables, exponential
//! generating functions and exhaustive enumeration of permutations, Stirling
//! words and increasing trees) so that expansion identities can be checked as
//! exact polynomial equalities.

pub mod error;
pub mod exactalg;
pub mod expand;
pub mod grammar;
pub mod permstats;
pub mod series;
pub mod stirlingperm;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use exactalg::{Monomial, Poly, Rational, Var};
