//! Exact arithmetic in the coordinate ring and function field of a genus-two curve.

mod field;
mod params;
mod poly;
mod probe;

pub use field::{FieldOp, Fld};
pub use params::{parse_rat, CurveParams};
pub use poly::{Mono, Poly, RawMono};
pub use probe::{eval_complex, eval_probe, Branch, ProbeMode, ProbePoint, ProbeValue, QuadExt};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;
