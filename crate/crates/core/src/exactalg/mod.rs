//! Exact coefficient fields, monomials, sparse polynomials and exact linear
//! algebra.

mod field;
mod matrix;
mod monomial;
mod order;
mod poly;

pub use field::{is_prime, Field, FieldMode, Rational, Zp, DEFAULT_PRIME, SECOND_PRIME};
pub use matrix::{rank_and_kernel, Echelon, ExactMatrix, SparseVec};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use poly::{Homogeneity, Polynomial};
