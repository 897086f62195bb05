//! Periodic pseudo-spectral KdV and generalized mKdV solvers with the Miura
//! pipeline and the AKNS zero-curvature check.

pub mod akns;
pub mod diagnostics;
pub mod evolve;
pub mod grid;
pub mod init;

pub use akns::{
    akns_commutator_residual, akns_d, gmkdv_d, lax_l, lax_m, AKNSParams, JetPoint, Mat2,
};
pub use diagnostics::{
    conserved_quantities, gmkdv_residual, invariant_drift, kdv_residual, miura_map, Invariants,
    ResidualMonitor,
};
pub use evolve::{
    evolve, evolve_trajectory, evolve_with, step_count, Equation, Evolver, Trajectory,
};
pub use grid::{dealiased, spectral_derivative, Field1D, FieldRole, Grid1D, Spectral};
pub use init::{gmkdv_cnoidal, gmkdv_soliton, kdv_soliton, CnoidalWave};
