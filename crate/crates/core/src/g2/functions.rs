use std::sync::{Arc, OnceLock};

use super::flow::{rat, FlowDirection, Flows};
use crate::error::VerifyError;
use crate::ring::{CurveParams, Fld, Poly, Rat};

/// Functions whose flow derivatives are memoized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    /// ℘₂₂ = (λ₅/4)(x₁+x₂)
    P22,
    /// ℘₂₁ = −(λ₅/4)x₁x₂
    P21,
    /// Q = (F − 2y₁y₂) / (4(x₁−x₂)²)
    Q,
    /// ℘̂₁₁ = (λ₁/4)(1/x₁ + 1/x₂)
    Hp11,
    /// ℘̂₂₁ = −(λ₁/4)/(x₁x₂)
    Hp21,
    /// Q̂ = Q / (x₁x₂)
    Hq,
    R22,
    R21,
    R11,
}

impl Base {
    pub const ALL: [Base; 9] = [
        Base::P22,
        Base::P21,
        Base::Q,
        Base::Hp11,
        Base::Hp21,
        Base::Hq,
        Base::R22,
        Base::R21,
        Base::R11,
    ];

    fn slot(self) -> usize {
        self as usize
    }
}

/// Which derivative: first (`D₁`, `D₂`) or second (`D₁D₁`, `D₁D₂`, `D₂D₂`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deriv {
    D1,
    D2,
    D11,
    D12,
    D22,
}

impl Deriv {
    fn slot(self) -> usize {
        self as usize
    }

    pub fn second(a: FlowDirection, b: FlowDirection) -> Self {
        match (a, b) {
            (FlowDirection::U1, FlowDirection::U1) => Deriv::D11,
            (FlowDirection::U2, FlowDirection::U2) => Deriv::D22,
            _ => Deriv::D12,
        }
    }
}

/// The genus-two function catalog on one curve, with a write-once derivative table.
///
/// Weierstrass-type `℘₂₂, ℘₂₁` need λ₅ ≠ 0 and Jacobi-type `℘̂₁₁, ℘̂₂₁` need
/// λ₁ ≠ 0; absent families are `None`.
pub struct G2Functions {
    params: Arc<CurveParams>,
    flows: Flows,
    /// `F(x₁, x₂; λ)`
    pub f_poly: Poly,
    pub p22: Option<Fld>,
    pub p21: Option<Fld>,
    pub q: Fld,
    pub r22: Fld,
    pub r21: Fld,
    pub r11: Fld,
    pub hp11: Option<Fld>,
    pub hp21: Option<Fld>,
    pub hq: Fld,
    table: [[OnceLock<Fld>; 5]; 9],
}

/// `F(x₁,x₂;λ) = 2λ₆x₁³x₂³ + λ₅x₁²x₂²(x₁+x₂) + 2λ₄x₁²x₂² + λ₃x₁x₂(x₁+x₂) + 2λ₂x₁x₂ + λ₁(x₁+x₂) + 2λ₀`
pub fn f_polynomial(params: &Arc<CurveParams>) -> Poly {
    let x1 = Poly::x1(params);
    let x2 = Poly::x2(params);
    let s = &x1 + &x2;
    let p = &x1 * &x2;
    let l = |j: usize| params.lambda(j).clone();
    let two = rat(2, 1);
    let terms = [
        p.pow(3).scale(&(&two * l(6))),
        (&p.pow(2) * &s).scale(&l(5)),
        p.pow(2).scale(&(&two * l(4))),
        (&p * &s).scale(&l(3)),
        p.scale(&(&two * l(2))),
        s.scale(&l(1)),
        Poly::constant(params, &two * l(0)),
    ];
    terms.iter().fold(Poly::zero(params), |acc, t| &acc + t)
}

impl G2Functions {
    pub fn params(&self) -> &Arc<CurveParams> {
        &self.params
    }

    pub fn flows(&self) -> &Flows {
        &self.flows
    }

    pub fn lambda(&self, j: usize) -> Rat {
        self.params.lambda(j).clone()
    }

    pub fn base(&self, b: Base) -> Result<&Fld, VerifyError> {
        let missing = |what: &str| VerifyError::MissingConstraint(what.to_string());
        match b {
            Base::P22 => self.p22.as_ref().ok_or_else(|| missing("λ5≠0")),
            Base::P21 => self.p21.as_ref().ok_or_else(|| missing("λ5≠0")),
            Base::Hp11 => self.hp11.as_ref().ok_or_else(|| missing("λ1≠0")),
            Base::Hp21 => self.hp21.as_ref().ok_or_else(|| missing("λ1≠0")),
            Base::Q => Ok(&self.q),
            Base::Hq => Ok(&self.hq),
            Base::R22 => Ok(&self.r22),
            Base::R21 => Ok(&self.r21),
            Base::R11 => Ok(&self.r11),
        }
    }

    /// Memoized flow derivative. `D12` is computed as `D₁(D₂ g)`.
    pub fn deriv(&self, b: Base, d: Deriv) -> Result<&Fld, VerifyError> {
        let g = self.base(b)?;
        let cell = &self.table[b.slot()][d.slot()];
        if let Some(v) = cell.get() {
            return Ok(v);
        }
        // compute dependencies outside the cell so no lock is held recursively
        let value = match d {
            Deriv::D1 => self.flows.derive(g, FlowDirection::U1),
            Deriv::D2 => self.flows.derive(g, FlowDirection::U2),
            Deriv::D11 => self
                .flows
                .derive(self.deriv(b, Deriv::D1)?, FlowDirection::U1),
            Deriv::D12 => self
                .flows
                .derive(self.deriv(b, Deriv::D2)?, FlowDirection::U1),
            Deriv::D22 => self
                .flows
                .derive(self.deriv(b, Deriv::D2)?, FlowDirection::U2),
        };
        Ok(cell.get_or_init(|| value))
    }

    pub fn require_weierstrass(&self) -> Result<(&Fld, &Fld), VerifyError> {
        Ok((self.base(Base::P22)?, self.base(Base::P21)?))
    }

    pub fn require_jacobi(&self) -> Result<(&Fld, &Fld), VerifyError> {
        Ok((self.base(Base::Hp11)?, self.base(Base::Hp21)?))
    }
}

/// Build every function of the catalog as an exact field element.
pub fn build_functions(params: &CurveParams) -> G2Functions {
    build_functions_shared(&Arc::new(params.clone()))
}

pub fn build_functions_shared(params: &Arc<CurveParams>) -> G2Functions {
    let x1 = Fld::x1(params);
    let x2 = Fld::x2(params);
    let l = |j: usize| params.lambda(j).clone();
    let quarter = rat(1, 4);
    let half = rat(1, 2);
    let sum = &x1 + &x2;
    let prod = &x1 * &x2;
    let f_poly = f_polynomial(params);

    let diff = &x1 - &x2;
    let y1y2 = Fld::from_poly(&Poly::y1(params) * &Poly::y2(params));
    let q_num = &Fld::from_poly(f_poly.clone()) - &y1y2.scale(&rat(2, 1));
    let q = q_num
        .checked_div(&(&diff * &diff).scale(&rat(4, 1)))
        .expect("x1 - x2 is nonzero in the function field");

    let l5q = &l(5) * &quarter;
    let (p22, p21) = if params.weierstrass_usable() {
        (Some(sum.scale(&l5q)), Some(prod.scale(&-l5q.clone())))
    } else {
        (None, None)
    };

    let l6h = &l(6) * &half;
    let sq_sum = &(&(&x1 * &x1) + &prod) + &(&x2 * &x2);
    let r22 = &sum.scale(&l5q) + &sq_sum.scale(&l6h);
    let r21 = &prod.scale(&-l5q.clone()) - &(&prod * &sum).scale(&l6h);
    let r11 = &q + &(&prod * &prod).scale(&l6h);

    let inv_prod = prod.inv().expect("x1 x2 is nonzero in the function field");
    let l1q = &l(1) * &quarter;
    let (hp11, hp21) = if params.jacobi_usable() {
        let recip_sum = &x1.inv().unwrap() + &x2.inv().unwrap();
        (
            Some(recip_sum.scale(&l1q)),
            Some(inv_prod.scale(&-l1q.clone())),
        )
    } else {
        (None, None)
    };
    let hq = &q * &inv_prod;

    G2Functions {
        params: Arc::clone(params),
        flows: Flows::new(params),
        f_poly,
        p22,
        p21,
        q,
        r22,
        r21,
        r11,
        hp11,
        hp21,
        hq,
        table: Default::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(l: [i64; 7]) -> G2Functions {
        build_functions(&CurveParams::from_ints(l).unwrap())
    }

    #[test]
    fn weierstrass_triple_shapes() {
        let g = curve([1, 2, 1, 3, 1, 4, 5]);
        let p = g.params();
        let x1 = Fld::x1(p);
        let x2 = Fld::x2(p);
        assert_eq!(g.p22.as_ref().unwrap(), &(&x1 + &x2));
        assert_eq!(g.p21.as_ref().unwrap(), &(&x1 * &x2).scale(&rat(-1, 1)));
        // 4(x₁−x₂)² Q = F − 2y₁y₂
        let d = &x1 - &x2;
        let lhs = (&(&d * &d) * &g.q).scale(&rat(4, 1));
        let y1y2 = &Fld::y1(p) * &Fld::y2(p);
        assert_eq!(
            lhs,
            &Fld::from_poly(g.f_poly.clone()) - &y1y2.scale(&rat(2, 1))
        );
    }

    #[test]
    fn jacobi_triple_shapes() {
        let g = curve([1, 2, 1, 3, 1, 4, 5]);
        let p = g.params();
        let x1 = Fld::x1(p);
        let x2 = Fld::x2(p);
        let expect = (&x1.inv().unwrap() + &x2.inv().unwrap()).scale(&rat(1, 2));
        assert_eq!(g.hp11.as_ref().unwrap(), &expect);
        assert_eq!(&g.hq * &(&x1 * &x2), g.q);
    }

    #[test]
    fn r_family_collapses_without_sextic_term() {
        let g = curve([1, 2, 1, 3, 1, 4, 0]);
        assert!((&g.r22 - g.p22.as_ref().unwrap()).is_zero());
        assert!((&g.r21 - g.p21.as_ref().unwrap()).is_zero());
        assert!((&g.r11 - &g.q).is_zero());
    }

    #[test]
    fn absent_families() {
        let g = curve([1, 0, 1, 3, 1, 0, 5]);
        assert!(g.p22.is_none() && g.hp11.is_none());
        assert!(matches!(
            g.require_weierstrass(),
            Err(VerifyError::MissingConstraint(_))
        ));
        assert!(matches!(
            g.deriv(Base::Hp21, Deriv::D1),
            Err(VerifyError::MissingConstraint(_))
        ));
    }

    #[test]
    fn swap_symmetry() {
        let g = curve([2, -1, 3, 1, -2, 4, 1]);
        for f in [
            g.p22.as_ref().unwrap(),
            g.p21.as_ref().unwrap(),
            &g.q,
            g.hp11.as_ref().unwrap(),
            g.hp21.as_ref().unwrap(),
            &g.hq,
        ] {
            assert_eq!(&f.swap_points(), f);
        }
    }

    #[test]
    fn memo_is_stable() {
        let g = curve([1, 2, 1, 3, 1, 4, 5]);
        let a = g.deriv(Base::P22, Deriv::D22).unwrap() as *const Fld;
        let b = g.deriv(Base::P22, Deriv::D22).unwrap() as *const Fld;
        assert_eq!(a, b);
    }
}
