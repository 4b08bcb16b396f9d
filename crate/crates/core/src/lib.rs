//! Dynamics of two iso-spectral bosonic modes coupled through a single
//! qubit (a mode-symmetric two-mode Jaynes–Cummings model): entanglement
//! between the modes quantified by negativity, at zero and finite
//! temperature, the entangling power of the interaction over temperature
//! and detuning, and two-qubit gates built on commensurable Rabi
//! frequencies with a Bell virtual bipartition.
//!
//! Everything is deterministic: fixed basis enumeration, closed-form
//! amplitudes, and eigendecomposition-based propagation. Parameter sweeps
//! parallelize over grid points with order-restoring collection, so results
//! are bitwise reproducible.

pub mod dynamics;
pub mod eigh;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod gatekit;
pub mod sweeps;

pub use dynamics::{
    amplitudes, effective_frequency, evolve_excited_basis, evolve_ground_basis, evolve_thermal,
    exact_propagator, rabi_frequency, reduced_boson_state, thermal_density, Amplitudes,
    EffectiveFrequency, JCParams, Propagator, QubitBosonState, QubitLevel, ThermalSpec,
};
pub use entanglement::{
    linear_entropy, negativity, negativity_timeseries, vacuum_negativity_closed, InitialState,
    NegativityResult, TimePoint,
};
pub use error::{Error, Result};
pub use fock::{
    pm_coefficients, BasisTag, FockIndex, PmTransform, TruncationPolicy, TwoModeDensity,
};
pub use gatekit::{
    gate_fidelity, logical_gate_matrix, logical_gate_matrix_at, probe_gate_time,
    solve_gate_params, w_full_transfer_time, w_state, FidelityReport, GateMatrix, GateSolution,
    GateTarget, GateTimeProbe, LogicalEncoding, WState,
};
pub use sweeps::{
    entangling_power, ep_surface, ep_vs_detuning, ep_vs_temperature, EPSurface, TimeWindow,
};
