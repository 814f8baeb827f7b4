//! Exact computer algebra for Charlier polynomials and their generalization
//! with a point mass at the origin.
//!
//! - [`poly`]: sparse polynomials in `x`, `a`, `N` with rational coefficients
//!   and the difference calculus in `x`.
//! - [`charlier`]: the classical family, Laguerre connection, Poisson moments.
//! - [`generalized`]: the point-mass family and its inner product.
//! - [`diffeq`]: coefficients of the infinite-order difference equation and
//!   the checks around it.
//! - [`suite`]: batch runner producing machine-readable reports.

pub mod charlier;
pub mod diffeq;
pub mod generalized;
pub mod poly;
pub mod suite;
pub mod verdict;

pub use poly::{Poly, Rational, Var};
pub use verdict::{Failure, Verdict};
