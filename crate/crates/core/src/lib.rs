//! Quantum correlations of generalized Werner-like two-qubit states.
//!
//! A Werner-like state mixes white noise with an arbitrary pure state,
//! `ρ(ψ, p) = (1-p)/4 · 1 + p |ψ⟩⟨ψ|`. This crate computes its entanglement
//! of formation and quantum discord in closed form ([`measures`]) and
//! cross-checks them against brute-force minimization over projective
//! measurements ([`oracle`]).

pub mod error;
pub mod measures;
pub mod numkernel;
pub mod oracle;
pub mod states;

pub use error::{Error, Result};
pub use measures::{
    binary_entropy, conditional_entropy_analytic, discord_analytic, eof, eof_from_concurrence,
    gwl_concurrence, gwl_entropy, p_critical, pure_concurrence, reduced_entropy,
    wootters_concurrence, Concurrence, CorrelationReport, Delta,
};
pub use numkernel::{herm_eigvals, kron, psd_sqrt, Mat2, Mat4, C64};
pub use oracle::{
    amplitude_check, bell_threshold, conditional_entropy_numeric, discord_numeric,
    intersection_point, luders_update, outcome_probability, projector_pair, DiscordDirection,
    MeasuredEnsemble, MeasurementDirection, OptimizerConfig,
};
pub use states::{
    apply_unitary, gwl, named_state, reduced, spin_flip, werner, DensityMatrix4, MixingParameter,
    NamedState, Partition, PureState, StateSpec, WMatrix,
};
