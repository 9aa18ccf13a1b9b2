//! Exact type 2 Bernoulli and Euler families, their degenerate variants, the
//! bosonic and fermionic p-adic integrals on polynomials, and a verifier for
//! the identities relating them.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod families;
pub mod format;
pub mod identities;
pub mod padic;
pub mod series;

pub use algebra::{BiPoly, Rational, UniPoly, Var};
pub use error::{Error, Result};
