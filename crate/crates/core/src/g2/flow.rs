use std::sync::Arc;

use crate::ring::{CurveParams, Fld, Poly, Rat};

/// Selects `∂/∂u₁` or `∂/∂u₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlowDirection {
    U1,
    U2,
}

impl FlowDirection {
    pub fn index(self) -> u8 {
        match self {
            FlowDirection::U1 => 1,
            FlowDirection::U2 => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(FlowDirection::U1),
            2 => Some(FlowDirection::U2),
            _ => None,
        }
    }
}

/// Numerators of `D x₁, D x₂, D y₁, D y₂`; each is over the common denominator `x₁ − x₂`.
#[derive(Clone, Debug)]
struct Generators([Poly; 4]);

/// The two commuting vector fields induced on the function field by Jacobi inversion.
///
/// `∂x₁/∂u₂ = y₁/(x₁−x₂)`, `∂x₂/∂u₂ = −y₂/(x₁−x₂)`, `∂x₁/∂u₁ = −x₂y₁/(x₁−x₂)`,
/// `∂x₂/∂u₁ = x₁y₂/(x₁−x₂)`, and `∂yᵢ = f′(xᵢ)/(2yᵢ) ∂xᵢ`, where the `yᵢ` cancels.
#[derive(Clone, Debug)]
pub struct Flows {
    params: Arc<CurveParams>,
    diff: Poly,
    u1: Generators,
    u2: Generators,
}

impl Flows {
    pub fn new(params: &Arc<CurveParams>) -> Self {
        let x1 = Poly::x1(params);
        let x2 = Poly::x2(params);
        let y1 = Poly::y1(params);
        let y2 = Poly::y2(params);
        let hf = params.half_f_prime();
        let hf1 = Poly::univariate(params, 1, &hf);
        let hf2 = Poly::univariate(params, 2, &hf);
        let u2 = Generators([y1.clone(), -&y2, hf1.clone(), -&hf2]);
        let u1 = Generators([-&(&x2 * &y1), &x1 * &y2, -&(&x2 * &hf1), &x1 * &hf2]);
        Self {
            params: Arc::clone(params),
            diff: Poly::diff_x(params),
            u1,
            u2,
        }
    }

    pub fn params(&self) -> &Arc<CurveParams> {
        &self.params
    }

    /// `(x₁ − x₂) · D p`, a polynomial.
    fn scaled_poly_derivative(&self, p: &Poly, dir: FlowDirection) -> Poly {
        let gens = match dir {
            FlowDirection::U1 => &self.u1,
            FlowDirection::U2 => &self.u2,
        };
        let mut acc = Poly::zero(&self.params);
        for (var, g) in gens.0.iter().enumerate() {
            let part = p.partial(var);
            if !part.is_zero() {
                acc = &acc + &(&part * g);
            }
        }
        acc
    }

    /// `D_dir g` by the quotient rule over the polynomial derivation.
    pub fn derive(&self, g: &Fld, dir: FlowDirection) -> Fld {
        let (a, b) = (g.num(), g.den());
        let da = self.scaled_poly_derivative(a, dir);
        if let Some(c) = b.as_constant() {
            // den is a constant: D(a/c) = D(a)/c
            let den = &self.diff * &Poly::constant(&self.params, c);
            return Fld::new(da, den).expect("nonzero denominator");
        }
        let db = self.scaled_poly_derivative(b, dir);
        let num = &(&da * b) - &(a * &db);
        let den = &self.diff * &(b * b);
        Fld::new(num, den).expect("nonzero denominator")
    }

    /// Apply derivatives right to left: `derive_seq(g, [U1, U2])` is `D₁D₂g`.
    pub fn derive_seq(&self, g: &Fld, dirs: &[FlowDirection]) -> Fld {
        dirs.iter()
            .rev()
            .fold(g.clone(), |acc, d| self.derive(&acc, *d))
    }
}

/// One-shot `D_dir g`; builds the flow generators on every call.
pub fn flow_derivative(g: &Fld, dir: FlowDirection) -> Fld {
    Flows::new(g.params()).derive(g, dir)
}

pub(crate) fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
