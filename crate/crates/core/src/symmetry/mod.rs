//! The Galilei group, its central extension, and their unitary action on
//! [`CompositeState`](crate::hilbert::CompositeState)s.
//!
//! Conventions: a translation by `a` maps `psi(x) -> psi(x - a)`; a boost by
//! `w` at time `t` maps branch `i` to
//! `exp(i (M_i w x - M_i w^2 t / 2) / hbar) psi_i(x - w t)`, so the branch's
//! mean momentum grows by `M_i w`. The boost generator is `K = M x - t p`.

mod group;
mod representation;

pub use group::{
    bargmann_loop_element, extended_loop_element, ExtendedGalileiElement, GalileiElement,
};
pub use representation::{
    apply_boost, apply_boost_reporting, apply_translation, commutator_residual, loop_phase,
    seam_mismatch, BoostReport,
};
