//! Measurement statistics for spectrum-{+1, -1} gate observables on Bell
//! pairs: joint outcome distributions (a general Born-rule route and a
//! trigonometric closed form that cross-validate), entropy and information
//! flow between the two sides, and certification of which gate-angle
//! configurations are statistically independent.
//!
//! Conventions shared by every module:
//! - angles are radians; polar angles live in [0, π], azimuths in [0, 2π)
//! - the joint outcome order is ((+1,+1), (+1,-1), (-1,+1), (-1,-1))
//! - inner products conjugate the first argument
//! - entropies and flows are in nats

pub mod cli;
pub mod error;
pub mod independence;
pub mod information;
pub mod measurement;
pub mod operator;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
