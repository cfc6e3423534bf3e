//! The three worked applications of the SNR bound: coherent-state
//! detection on a truncated Fock space, switching power consumption, and
//! fidelity estimation from measurement statistics.

pub mod coherent;
pub mod estimation;
pub mod switching;

pub use coherent::{
    coherent_fidelity, coherent_snr_bound, truncated_coherent_state, BoundVariant, CoherentSpec,
};
pub use estimation::{
    compare_fidelity_bounds, fidelity_upper_bound_from_snr, FidelityBoundComparison, Tighter,
};
pub use switching::{switching_power, switching_power_bound, SwitchingSystem};
