//! The dual transformation `x → 1/x`, `y → y/x³`, `λⱼ → λ₆₋ⱼ`.
//!
//! It carries the Weierstrass triple of the dual curve onto the Jacobi triple
//! and exchanges the two flows: `u₁ ↔ −u₂`.

use std::sync::Arc;

use super::flow::{FlowDirection, Flows};
use super::functions::{build_functions_shared, G2Functions};
use crate::error::VerifyError;
use crate::ring::{CurveParams, Fld};

/// `pullback(℘′₂₂, ℘′₂₁, Q′) − (℘̂₁₁, ℘̂₂₁, Q̂)`, where primes live on the dual curve.
pub fn dual_triple_residuals(fns: &G2Functions) -> Result<[Fld; 3], VerifyError> {
    let target = fns.params();
    let dual = build_functions_shared(&Arc::new(target.dual()));
    let (dp22, dp21) = dual.require_weierstrass()?;
    let (hp11, hp21) = fns.require_jacobi()?;
    Ok([
        &dp22.pullback_dual(target) - hp11,
        &dp21.pullback_dual(target) - hp21,
        &dual.q.pullback_dual(target) - &fns.hq,
    ])
}

/// `pullback(D′_dir g) + D_other(pullback g)` for `g` on the dual of `target`.
pub fn dual_flow_residual(g: &Fld, target: &Arc<CurveParams>, dir: FlowDirection) -> Fld {
    let dual_flows = Flows::new(g.params());
    let flows = Flows::new(target);
    let other = match dir {
        FlowDirection::U1 => FlowDirection::U2,
        FlowDirection::U2 => FlowDirection::U1,
    };
    let lhs = dual_flows.derive(g, dir).pullback_dual(target);
    let rhs = flows.derive(&g.pullback_dual(target), other);
    &lhs + &rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::build_functions;

    #[test]
    fn weierstrass_triple_maps_to_jacobi_triple() {
        let fns = build_functions(&CurveParams::from_ints([3, 2, -1, 3, 1, 4, 5]).unwrap());
        for r in dual_triple_residuals(&fns).unwrap() {
            assert!(r.is_zero(), "{r}");
        }
    }

    #[test]
    fn flows_are_exchanged() {
        let target = Arc::new(CurveParams::from_ints([3, 2, -1, 3, 1, 4, 5]).unwrap());
        let dual = Arc::new(target.dual());
        let g = &(&Fld::x1(&dual) * &Fld::y2(&dual)) + &Fld::x2(&dual);
        for dir in [FlowDirection::U1, FlowDirection::U2] {
            assert!(dual_flow_residual(&g, &target, dir).is_zero());
        }
    }
}
