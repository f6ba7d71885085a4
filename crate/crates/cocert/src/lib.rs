//! Exact copositivity certificates for sparse Laurent polynomials.
//!
//! The library certifies strict positivity on the positive orthant (and on
//! the closure of the associated toric cone) through multiplier power
//! searches with exact rational arithmetic: the sparse support multiplier,
//! the classical simplex multiplier, and Cox-coordinate variants driven by
//! primitive collections or the irrelevant ideal of the normal fan. A
//! Symanzik-polynomial front end builds the graph polynomials of Feynman
//! diagrams, decides Euclidean-region membership, and assembles an integral
//! convergence check on top of the certifiers.

pub mod cox;
pub mod feynman;
pub mod geom;
pub mod jsonio;
mod linalg;
pub mod poly;
pub mod polya;
pub mod rational;

pub use poly::{ExponentVector, PolyError, SparsePoly};
pub use rational::{parse_rational, Rational};
