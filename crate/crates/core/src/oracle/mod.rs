//! Grid-based verification layer, in scaled units with hbar = 1.
//!
//! The closed forms elsewhere in the crate are checked here against direct
//! numerical evolution of the Schrödinger equation with
//! `H = p^2 / 2 m_i + m_g g x`: the kinetic term carries the inertial mass and
//! the potential the gravitational mass.

mod double_slit;
mod fringes;
mod grid;
mod interferometer;
mod photon;
mod propagator;
mod pulses;
mod wavefunction;

pub use double_slit::{double_slit_propagate, DoubleSlitOptions, DoubleSlitProfile, DoubleSlitSetup, SlitMask};
pub use fringes::{extract_fringe_spacing, fringe_visibility};
pub use grid::Grid1D;
pub use interferometer::{
    run_interferometer_numeric, wrap_phase, OracleDiagnostics, OracleOutcome, OracleParams,
};
pub use photon::photon_double_slit_phase;
pub use propagator::{split_step_evolve, Hamiltonian1D, Propagator};
pub use pulses::{apply_beamsplitter, BranchPair};
pub use wavefunction::Wavefunction1D;

/// Packets must stay this many standard deviations inside the grid.
pub const BOUNDARY_SIGMAS: f64 = 5.0;
