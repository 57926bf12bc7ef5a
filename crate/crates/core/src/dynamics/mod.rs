//! Hamiltonians of a particle with internal structure, their split-operator
//! propagation, and the proper-time bookkeeping along classical paths.

mod clock;
mod frame;
mod hamiltonian;
mod propagate;
mod residual;
mod trajectory;

pub use clock::{clock_phase, fit_clock_frequency, internal_frequency};
pub use frame::{frame_transform, frame_transform_inverse};
pub use hamiltonian::{branch_kinetic, branch_potential, BranchHamiltonian, HamiltonianKind};
pub use propagate::{propagate, Propagator};
pub use residual::{primed_history, schrodinger_residual};
pub use trajectory::{closed_path_phase, proper_time, ProperTime, Trajectory};
