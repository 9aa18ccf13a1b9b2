//! Exact scalars and polynomial rings shared by every other module.

pub mod combinatorics;
pub mod poly;
pub mod rational;

pub use combinatorics::{binomial, factorial, falling_factorial, multinomial};
pub use poly::{BiPoly, UniPoly, Var};
pub use rational::Rational;
