//! Genus-two hyperelliptic functions and their differential identities.
//!
//! Every identity is reduced to a single field element which must be zero.
//! Derivatives along `u₁`, `u₂` come from the flows of Jacobi inversion, so no
//! σ-function or potential is ever constructed.

pub mod dual;
pub mod flow;
pub mod functions;
pub mod identity;
pub mod verify;

pub use dual::{dual_flow_residual, dual_triple_residuals};
pub use flow::{flow_derivative, FlowDirection, Flows};
pub use functions::{
    build_functions, build_functions_shared, f_polynomial, Base, Deriv, G2Functions,
};
pub use identity::{
    halfperiod_check, kummer_k1, kummer_k2, residual, weierstrass_q_defect, Constraint, IdentityId,
    IdentitySet, G_II,
};
pub use verify::{
    classify, find_witness, verify_all, verify_with, Status, VerifyEntry, VerifyReport, Witness,
};
