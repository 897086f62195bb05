use std::sync::Arc;

use hyperell::g2::{build_functions, FlowDirection, Flows};
use hyperell::ring::{eval_complex, Branch, CurveParams, Fld, Mono, Poly, Rat};
use num_complex::Complex64;
use proptest::prelude::*;

const DIRS: [FlowDirection; 2] = [FlowDirection::U1, FlowDirection::U2];

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Exponents of x₁, x₂, y₁, y₂ with an integer coefficient.
type Term = ((u32, u32, u8, u8), i64);

/// A polynomial in x₁, x₂, y₁, y₂ with small integer coefficients.
fn poly_strategy() -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u8..2, 0u8..2), -4i64..=4), 1..4)
}

fn curve_strategy() -> impl Strategy<Value = [i64; 7]> {
    prop::array::uniform7(-5i64..=5).prop_filter("nonzero curve", |l| l.iter().any(|c| *c != 0))
}

fn build(params: &Arc<CurveParams>, terms: &[Term]) -> Fld {
    let p = terms
        .iter()
        .fold(Poly::zero(params), |acc, ((a, b, c, d), k)| {
            &acc + &Poly::monomial(params, Mono::new(*a, *b, *c, *d), rat(*k))
        });
    Fld::from_poly(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leibniz_rule(lambda in curve_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let params = Arc::new(CurveParams::from_ints(lambda).unwrap());
        let flows = Flows::new(&params);
        let (g, h) = (build(&params, &g), build(&params, &h));
        for dir in DIRS {
            let lhs = flows.derive(&(&g * &h), dir);
            let rhs = &(&g * &flows.derive(&h, dir)) + &(&h * &flows.derive(&g, dir));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn additivity_and_constants(lambda in curve_strategy(), g in poly_strategy(), h in poly_strategy(), c in -9i64..=9) {
        let params = Arc::new(CurveParams::from_ints(lambda).unwrap());
        let flows = Flows::new(&params);
        let (g, h) = (build(&params, &g), build(&params, &h));
        for dir in DIRS {
            prop_assert_eq!(flows.derive(&(&g + &h), dir), &flows.derive(&g, dir) + &flows.derive(&h, dir));
            prop_assert_eq!(flows.derive(&g.scale(&rat(c)), dir), flows.derive(&g, dir).scale(&rat(c)));
            prop_assert!(flows.derive(&Fld::constant(&params, rat(c)), dir).is_zero());
        }
    }

    #[test]
    fn flows_commute(lambda in curve_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let params = Arc::new(CurveParams::from_ints(lambda).unwrap());
        let flows = Flows::new(&params);
        let g = build(&params, &g);
        // a quotient with a y-free denominator exercises the quotient rule
        let y_free: Vec<_> = h.iter().map(|((a, b, _, _), k)| ((*a, *b, 0, 0), *k)).collect();
        let den = &build(&params, &y_free) + &Fld::x1(&params);
        let q = g.checked_div(&den).unwrap_or_else(|_| g.clone());
        for f in [&g, &q] {
            let a = flows.derive_seq(f, &[FlowDirection::U1, FlowDirection::U2]);
            let b = flows.derive_seq(f, &[FlowDirection::U2, FlowDirection::U1]);
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn flows_respect_point_exchange(lambda in curve_strategy(), g in poly_strategy()) {
        let params = Arc::new(CurveParams::from_ints(lambda).unwrap());
        let flows = Flows::new(&params);
        let g = build(&params, &g);
        for dir in DIRS {
            prop_assert_eq!(flows.derive(&g.swap_points(), dir), flows.derive(&g, dir).swap_points());
        }
    }
}

/// Velocity of (x₁, x₂) along `u_dir`, from inverting `du₁ = dx₁/y₁ + dx₂/y₂`,
/// `du₂ = x₁dx₁/y₁ + x₂dx₂/y₂`.
fn velocity(x: [f64; 2], y: [f64; 2], dir: FlowDirection) -> [f64; 2] {
    let m = [[1.0 / y[0], 1.0 / y[1]], [x[0] / y[0], x[1] / y[1]]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let inv = [
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ];
    let col = if dir == FlowDirection::U1 { 0 } else { 1 };
    [inv[0][col], inv[1][col]]
}

/// Fourth-order central difference of `g` along the flow, evaluated in double precision.
fn numeric_derivative(
    g: &Fld,
    x: [f64; 2],
    branches: [Branch; 2],
    dir: FlowDirection,
) -> Complex64 {
    let p = g.params();
    let y = [0, 1].map(|i| p.eval_f_f64(x[i]).sqrt() * branches[i].as_f64());
    let v = velocity(x, y, dir);
    let at = |s: f64| eval_complex(g, x[0] + s * v[0], x[1] + s * v[1], branches).unwrap();
    let h = 1e-3;
    (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h)
}

#[test]
fn exact_flows_match_numeric_differentiation() {
    let params = CurveParams::from_ints([1, 2, 1, 3, 1, 4, 5]).unwrap();
    let fns = build_functions(&params);
    let flows = fns.flows();
    let shared = fns.params().clone();
    let mut targets = vec![
        Fld::x1(&shared),
        Fld::y2(&shared),
        fns.q.clone(),
        fns.hq.clone(),
    ];
    targets.extend(
        [&fns.p22, &fns.p21, &fns.hp21, &fns.hp11]
            .into_iter()
            .flatten()
            .cloned(),
    );
    let points = [
        ([0.7, -0.4], [Branch::Plus, Branch::Minus]),
        ([1.3, 0.2], [Branch::Minus, Branch::Minus]),
    ];
    for (x, branches) in points {
        assert!(x.iter().all(|xi| params.eval_f_f64(*xi) > 0.1));
        for g in &targets {
            for dir in DIRS {
                let d = flows.derive(g, dir);
                let exact = eval_complex(&d, x[0], x[1], branches).unwrap();
                let numeric = numeric_derivative(g, x, branches, dir);
                assert!(
                    (exact - numeric).norm() < 1e-7 * (1.0 + exact.norm()),
                    "{exact} vs {numeric}"
                );
                // second application: the exact first derivative, differentiated numerically
                let dd = flows.derive(&d, FlowDirection::U2);
                let exact2 = eval_complex(&dd, x[0], x[1], branches).unwrap();
                let numeric2 = numeric_derivative(&d, x, branches, FlowDirection::U2);
                assert!(
                    (exact2 - numeric2).norm() < 1e-6 * (1.0 + exact2.norm()),
                    "{exact2} vs {numeric2}"
                );
            }
        }
    }
}
