//! Genus-one elliptic functions and the static KdV/mKdV transformations.

pub mod jacobi;
pub mod jet;
pub mod transforms;
pub mod weierstrass;

pub use jacobi::{
    agm, cn, complete_k, dn, halfperiod_residual_g1, halfperiod_residual_shift,
    pythagorean_residuals, sn, sn_ode_residual, sncndn, HalfPeriodShift, JacobiParams,
};
pub use jet::{sncndn_jet, Jet};
pub use transforms::{
    sn_pair_check, sn_pair_consistency, static_transformation_residuals, v_equation_residual,
    GmkdvParams, Profile, Transformation, TrigPoly,
};
pub use weierstrass::{
    p_ode_residual, weierstrass_p, weierstrass_p_and_prime, weierstrass_p_shifted, WeierstrassRoots,
};
