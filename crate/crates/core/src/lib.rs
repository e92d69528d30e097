//! Logarithmic Picard groups of number rings with marked primes, Kummer
//! log-flat mu_n torsors, Néron component groups of elliptic curves, and the
//! logarithmic class pairing on their points.

mod arith;
mod error;
mod lattice;
pub mod numring;
pub mod parse;
mod qmodz;
pub mod logdiv;
pub mod neron;
pub mod pairing;

pub use error::{Error, ErrorKind, Result};
pub use qmodz::QmodZ;
