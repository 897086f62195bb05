//! Exact verification of genus-two hyperelliptic differential equations,
//! plus numeric genus-one elliptic functions and a pseudo-spectral
//! KdV / generalized mKdV solver.
//!
//! * [`ring`]: arithmetic in the function field of
//!   `y² = λ₆x⁶ + … + λ₀` on the symmetric product of two curve points.
//! * [`g2`]: the u₁/u₂ flows as derivations, the Weierstrass-type and
//!   Jacobi-type function triples and the identity catalog.
//! * [`g1`]: Jacobi `sn/cn/dn`, Weierstrass `℘`, static KdV/mKdV transformations.
//! * [`pde`]: periodic ETDRK4 evolution, the Miura map and the AKNS check.
//! * [`sweep`]: seeded random curve sampling for verification sweeps.

pub mod error;
pub mod g1;
pub mod g2;
pub mod pde;
pub mod ring;
pub mod sweep;

pub use error::{EllipticError, PdeError, RingError, VerifyError};
