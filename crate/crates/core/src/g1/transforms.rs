//! Static transformations from the generalized mKdV equation to the static KdV equation.
//!
//! Each transformation `u = T(v)` factors `u_xxx − 6uu_x` through a
//! differential operator applied to a residual `R(v)`; when `R(v) = 0`, `u`
//! solves the static KdV equation.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use super::jacobi::sncndn;
use super::jet::{sncndn_jet, Jet};
use crate::error::EllipticError;

const SINGULAR_TOL: f64 = 1e-8;

/// The linear coefficient `a` of `v_t + v_xxx + 6v²v_x + a v_x = 0` (after `v → iv`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GmkdvParams {
    pub a: Complex64,
}

impl GmkdvParams {
    pub fn new(a: f64) -> Self {
        Self {
            a: Complex64::new(a, 0.0),
        }
    }

    /// `a = (1 + k²)/2`, which turns the inverse-square equation into the `sn` equation.
    pub fn standard_sn(k: Complex64) -> Self {
        Self {
            a: (1.0 + k * k) / 2.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transformation {
    /// `u = v² + v_x − a/6`
    Miura,
    /// `u = 2v² − 2a/3`
    Square,
    /// `u = 1/v² − 2a/3`
    InvSquare,
    /// `u = 1/v − a/6`
    InvPower,
}

impl Transformation {
    pub const ALL: [Transformation; 4] = [
        Transformation::Miura,
        Transformation::Square,
        Transformation::InvSquare,
        Transformation::InvPower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Transformation::Miura => "miura",
            Transformation::Square => "square",
            Transformation::InvSquare => "inv_square",
            Transformation::InvPower => "inv_power",
        }
    }

    fn u(self, v: &Jet, a: Complex64) -> Result<Jet, EllipticError> {
        let recip = || {
            v.recip()
                .ok_or_else(|| EllipticError::SingularDenominator("v = 0".into()))
        };
        Ok(match self {
            Transformation::Miura => *v * *v + v.deriv() - Jet::constant(a / 6.0),
            Transformation::Square => *v * *v * 2.0 - Jet::constant(a * 2.0 / 3.0),
            Transformation::InvSquare => recip()?.powi(2) - Jet::constant(a * 2.0 / 3.0),
            Transformation::InvPower => recip()? - Jet::constant(a / 6.0),
        })
    }

    /// The v-equation whose vanishing makes `u` a static KdV solution.
    fn v_residual(self, v: &Jet, a: Complex64) -> Jet {
        let vx = v.deriv();
        match self {
            Transformation::Miura => vx.deriv().deriv() - *v * *v * vx * 6.0 + vx.scale(a),
            Transformation::Square => vx.deriv() - v.powi(3) * 2.0 + v.scale(a),
            Transformation::InvSquare => vx * vx - v.powi(4) + (*v * *v).scale(a) - 0.5,
            Transformation::InvPower => vx * vx - v.powi(4) + (*v * *v).scale(a) - *v * 2.0,
        }
    }

    /// The factorizing operator applied to `R` at the expansion point.
    fn apply_operator(self, v: &Jet, r: &Jet) -> Complex64 {
        let (v0, v1, v2) = (v.d(0), v.d(1), v.d(2));
        let (r0, r1, r2) = (r.d(0), r.d(1), r.d(2));
        match self {
            Transformation::Miura => r1 + 2.0 * v0 * r0,
            Transformation::Square => 4.0 * v0 * r1 + 12.0 * v1 * r0,
            Transformation::InvSquare => {
                -r2 / (v0.powu(3) * v1) + (v2 / (v0.powu(3) * v1 * v1) + 9.0 / v0.powu(4)) * r1
                    - 24.0 * v1 / v0.powu(5) * r0
            }
            Transformation::InvPower => {
                -r2 / (2.0 * v0 * v0 * v1)
                    + (v2 / (2.0 * v0 * v0 * v1 * v1) + 3.0 / v0.powu(3)) * r1
                    - 6.0 * v1 / v0.powu(4) * r0
            }
        }
    }

    fn check_denominators(self, v: &Jet) -> Result<(), EllipticError> {
        if matches!(self, Transformation::InvSquare | Transformation::InvPower) {
            if v.d(0).norm() < SINGULAR_TOL {
                return Err(EllipticError::SingularDenominator("|v| < 1e-8".into()));
            }
            if v.d(1).norm() < SINGULAR_TOL {
                return Err(EllipticError::SingularDenominator("|v_x| < 1e-8".into()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Transformation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s.replace('-', "_"))
            .ok_or_else(|| format!("unknown transformation {s:?}"))
    }
}

/// `offset + Σⱼ (cosⱼ cos(jωx) + sinⱼ sin(jωx))`, j starting at 1.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    pub offset: f64,
    pub omega: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl TrigPoly {
    /// A random smooth profile with three harmonics.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        Self {
            offset: rng.gen_range(0.5..2.0),
            omega: rng.gen_range(0.5..1.5),
            cos: (0..3).map(|_| rng.gen_range(-0.4..0.4)).collect(),
            sin: (0..3).map(|_| rng.gen_range(-0.4..0.4)).collect(),
        }
    }

    fn jet(&self, x: f64) -> Jet {
        let n = super::jet::JET_LEN;
        let mut d = vec![Complex64::new(0.0, 0.0); n];
        d[0] = Complex64::new(self.offset, 0.0);
        for (j, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let w = (j + 1) as f64 * self.omega;
            for (order, slot) in d.iter_mut().enumerate() {
                let phase = w * x + order as f64 * std::f64::consts::FRAC_PI_2;
                *slot += w.powi(order as i32) * (a * phase.cos() + b * phase.sin());
            }
        }
        Jet::from_derivatives(&d)
    }
}

/// A test profile `v(x)` known together with its derivatives.
#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    /// `amp·sn(αx, k)`, or `amp/sn(αx, k)` when `reciprocal`.
    Sn {
        k: Complex64,
        alpha: f64,
        amp: f64,
        reciprocal: bool,
    },
    Trig(TrigPoly),
    Constant(f64),
}

impl Profile {
    /// `v₁(x) = sn(x/√2)` with `k = √2`.
    pub fn sn_standard() -> Self {
        Profile::Sn {
            k: Complex64::new(std::f64::consts::SQRT_2, 0.0),
            alpha: std::f64::consts::FRAC_1_SQRT_2,
            amp: 1.0,
            reciprocal: false,
        }
    }

    /// `v₂(x) = 1/(√2 sn(x/√2))` with `k = √2`.
    pub fn sn_partner() -> Self {
        Profile::Sn {
            k: Complex64::new(std::f64::consts::SQRT_2, 0.0),
            alpha: std::f64::consts::FRAC_1_SQRT_2,
            amp: std::f64::consts::FRAC_1_SQRT_2,
            reciprocal: true,
        }
    }

    pub fn jet(&self, x: f64) -> Result<Jet, EllipticError> {
        match self {
            Profile::Sn {
                k,
                alpha,
                amp,
                reciprocal,
            } => {
                let (s, _, _) = sncndn_jet(Complex64::new(alpha * x, 0.0), *k)?;
                let s = s.rescale_variable(Complex64::new(*alpha, 0.0));
                let s = if *reciprocal {
                    s.recip()
                        .ok_or_else(|| EllipticError::SingularDenominator("sn = 0".into()))?
                } else {
                    s
                };
                Ok(s * *amp)
            }
            Profile::Trig(t) => Ok(t.jet(x)),
            Profile::Constant(c) => Ok(Jet::real(*c)),
        }
    }
}

/// `(u_xxx − 6uu_x, operator·R(v))` at `x`; the two agree for every smooth `v`.
pub fn static_transformation_residuals(
    profile: &Profile,
    which: Transformation,
    x: f64,
    params: &GmkdvParams,
) -> Result<(Complex64, Complex64), EllipticError> {
    let v = profile.jet(x)?;
    which.check_denominators(&v)?;
    let u = which.u(&v, params.a)?;
    let lhs = u.d(3) - 6.0 * u.d(0) * u.d(1);
    let r = which.v_residual(&v, params.a);
    Ok((lhs, which.apply_operator(&v, &r)))
}

/// `R(v)` at `x`: the v-equation paired with `which`.
pub fn v_equation_residual(
    profile: &Profile,
    which: Transformation,
    x: f64,
    params: &GmkdvParams,
) -> Result<Complex64, EllipticError> {
    Ok(which.v_residual(&profile.jet(x)?, params.a).value())
}

/// `ŝn_zz + (1+k²)ŝn − 2k²ŝn³` for `ŝn = 1/(k sn)`, `z = x/√2`, `k = √2`.
pub fn sn_pair_check(x: f64) -> Result<Complex64, EllipticError> {
    let k = Complex64::new(std::f64::consts::SQRT_2, 0.0);
    let z = Complex64::new(x / std::f64::consts::SQRT_2, 0.0);
    let (s, _, _) = sncndn_jet(z, k)?;
    if s.value().norm() < 1e-6 {
        return Err(EllipticError::SingularDenominator(format!(
            "sn({z}) vanishes"
        )));
    }
    let hat = s.scale(k).recip().expect("checked nonzero");
    Ok(hat.d(2) + (1.0 + k * k) * hat.d(0) - 2.0 * k * k * hat.d(0).powu(3))
}

/// `(√2·v₁v₂ − 1, (2v₁² − 2a/3) − (1/v₂² − 2a/3))` with `a = 3/2`.
pub fn sn_pair_consistency(x: f64) -> Result<(Complex64, Complex64), EllipticError> {
    let k = Complex64::new(std::f64::consts::SQRT_2, 0.0);
    let (s, _, _) = sncndn(Complex64::new(x / std::f64::consts::SQRT_2, 0.0), k)?;
    if s.norm() < 1e-6 {
        return Err(EllipticError::SingularDenominator(format!(
            "sn vanishes at x = {x}"
        )));
    }
    let v1 = s;
    let v2 = 1.0 / (std::f64::consts::SQRT_2 * s);
    let a = 1.5;
    let lhs = 2.0 * v1 * v1 - 2.0 * a / 3.0;
    let rhs = 1.0 / (v2 * v2) - 2.0 * a / 3.0;
    Ok((std::f64::consts::SQRT_2 * v1 * v2 - 1.0, lhs - rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factorizations_hold_for_trig_profiles() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let params = GmkdvParams::new(0.8);
        for _ in 0..5 {
            let p = Profile::Trig(TrigPoly::random(&mut rng));
            for t in Transformation::ALL {
                let (l, r) = static_transformation_residuals(&p, t, 0.37, &params).unwrap();
                assert!((l - r).norm() < 1e-8 * (1.0 + l.norm()), "{t}: {l} vs {r}");
            }
        }
    }

    #[test]
    fn sn_profile_solves_inverse_square_equation() {
        let params = GmkdvParams::new(1.5);
        for x in [0.3, 0.8, 1.7] {
            for p in [Profile::sn_standard(), Profile::sn_partner()] {
                assert!(
                    v_equation_residual(&p, Transformation::InvSquare, x, &params)
                        .unwrap()
                        .norm()
                        < 1e-12
                );
                assert!(
                    v_equation_residual(&p, Transformation::Square, x, &params)
                        .unwrap()
                        .norm()
                        < 1e-12
                );
            }
            let (lhs, _) = static_transformation_residuals(
                &Profile::sn_standard(),
                Transformation::InvSquare,
                x,
                &params,
            )
            .unwrap();
            assert!(lhs.norm() < 1e-8);
        }
    }

    #[test]
    fn constant_square_profile() {
        let c = 0.7;
        let params = GmkdvParams::new(2.0 * c * c);
        let (l, r) = static_transformation_residuals(
            &Profile::Constant(c),
            Transformation::Square,
            0.0,
            &params,
        )
        .unwrap();
        assert!(l.norm() < 1e-15 && r.norm() < 1e-15);
    }

    #[test]
    fn singular_denominator_detected() {
        let err = static_transformation_residuals(
            &Profile::Constant(0.0),
            Transformation::InvPower,
            0.0,
            &GmkdvParams::new(1.0),
        );
        assert!(matches!(err, Err(EllipticError::SingularDenominator(_))));
    }

    #[test]
    fn pair_relations() {
        assert!(sn_pair_check(1.1).unwrap().norm() < 1e-8);
        let (a, b) = sn_pair_consistency(1.1).unwrap();
        assert!(a.norm() < 1e-14 && b.norm() < 1e-10);
    }
}
