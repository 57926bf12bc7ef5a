//! Simulation of low-energy quantum particles whose mass-energy carries
//! internal structure.
//!
//! The crate is organised bottom-up:
//!
//! * [`hilbert`] discretises the centre-of-mass line and the internal levels
//!   into a [`CompositeState`](hilbert::CompositeState).
//! * [`symmetry`] holds the Galilei group, its central extension and their
//!   unitary action on states (translations, boosts, loop phases).
//! * [`dynamics`] provides the family of Hamiltonians, the split-operator
//!   propagator, proper-time functionals and the accelerated-frame map.
//! * [`experiments`] turns each physical claim into a reproducible
//!   measured-versus-predicted record.
//! * [`cli`] reads run configurations and persists experiment artifacts.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod fit;
pub mod hilbert;
pub mod symmetry;

pub use error::{Error, Result};
