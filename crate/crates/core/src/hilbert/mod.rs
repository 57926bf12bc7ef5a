//! Discretised Hilbert space: a periodic centre-of-mass grid tensored with a
//! finite set of internal energy levels.

mod grid;
mod params;
mod spectral;
mod state;

pub use grid::GridSpec;
pub use params::{InternalSpace, PhysicalParams, Potential};
pub use spectral::Spectral;
pub use state::{
    branch_phase, gaussian_packet, make_superposition, overlap, principal, BranchPhase,
    CompositeState, Spatial, Wavefunction, CLEARANCE_SIGMAS,
};
