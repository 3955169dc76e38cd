//! Exact computational algebra for homogeneous coordinate rings: Gröbner
//! bases, Koszul homology and Betti tables, Gorenstein and Frobenius
//! verdicts, and the root-theoretic subcanonicity test for highest-weight
//! orbits.

pub mod catalog;
pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod exactalg;
pub mod groebner;
pub mod koszul;
pub mod rootsys;

pub use error::{Error, Result};
