//! Exact arithmetic for isogeny-class mass formulas over finite fields.
//!
//! The crate is organized around the places of `Q`: exact local densities at
//! finite primes, an interval-certified archimedean density, a brute-force
//! enumeration oracle over symplectic similitude groups mod prime powers, and
//! the cohomological Tamagawa-number factor of the global mass.

pub mod arith;
pub mod densities;
pub mod error;
pub mod oracle;
pub mod real;
pub mod tamagawa;
pub mod weil;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
