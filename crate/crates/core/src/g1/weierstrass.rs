use num_complex::Complex64;

use super::jacobi::{sncndn, JacobiParams};
use crate::error::EllipticError;

/// Roots of `4t³ − g₂t − g₃`, so `e₁ + e₂ + e₃ = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeierstrassRoots {
    pub e1: Complex64,
    pub e2: Complex64,
    pub e3: Complex64,
}

impl WeierstrassRoots {
    pub fn new(e1: Complex64, e2: Complex64, e3: Complex64) -> Result<Self, EllipticError> {
        let scale = e1.norm().max(e2.norm()).max(e3.norm()).max(1.0);
        if (e1 + e2 + e3).norm() > 1e-12 * scale {
            return Err(EllipticError::InvalidParams(format!(
                "roots must sum to zero, got {}",
                e1 + e2 + e3
            )));
        }
        if (e1 - e3).norm() <= 1e-14 * scale {
            return Err(EllipticError::DegenerateRoots);
        }
        Ok(Self { e1, e2, e3 })
    }

    pub fn real(e1: f64, e2: f64, e3: f64) -> Result<Self, EllipticError> {
        Self::new(
            Complex64::new(e1, 0.0),
            Complex64::new(e2, 0.0),
            Complex64::new(e3, 0.0),
        )
    }

    /// Roots from the invariants; a real triple is ordered `e₁ ≥ e₂ ≥ e₃`.
    pub fn from_invariants(g2: f64, g3: f64) -> Result<Self, EllipticError> {
        // depressed cubic t³ + pt + q with p = −g₂/4, q = −g₃/4
        let p = Complex64::new(-g2 / 4.0, 0.0);
        let q = Complex64::new(-g3 / 4.0, 0.0);
        let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
        let mut c = (-q / 2.0 + disc).cbrt();
        if c.norm() < 1e-300 {
            c = (-q / 2.0 - disc).cbrt();
        }
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let mut roots: Vec<Complex64> = (0..3)
            .map(|j| {
                let cj = c * omega.powu(j);
                if cj.norm() < 1e-300 {
                    Complex64::new(0.0, 0.0)
                } else {
                    cj - p / (3.0 * cj)
                }
            })
            .collect();
        // polish against 4t³ − g₂t − g₃
        for r in roots.iter_mut() {
            for _ in 0..3 {
                let f = 4.0 * *r * *r * *r - g2 * *r - g3;
                let df = 12.0 * *r * *r - g2;
                if df.norm() > 0.0 {
                    *r -= f / df;
                }
            }
        }
        let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
        if roots.iter().all(|r| r.im.abs() <= 1e-10 * scale) {
            let mut re: Vec<f64> = roots.iter().map(|r| r.re).collect();
            re.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let shift = re.iter().sum::<f64>() / 3.0;
            return Self::real(re[0] - shift, re[1] - shift, re[2] - shift);
        }
        let shift = roots.iter().sum::<Complex64>() / 3.0;
        Self::new(roots[0] - shift, roots[1] - shift, roots[2] - shift)
    }

    pub fn g2(&self) -> Complex64 {
        -4.0 * (self.e1 * self.e2 + self.e1 * self.e3 + self.e2 * self.e3)
    }

    pub fn g3(&self) -> Complex64 {
        4.0 * self.e1 * self.e2 * self.e3
    }

    /// `(√(e₁−e₃), k)` with `k² = (e₂−e₃)/(e₁−e₃)`.
    pub fn scaling(&self) -> (Complex64, Complex64) {
        let d = self.e1 - self.e3;
        (d.sqrt(), ((self.e2 - self.e3) / d).sqrt())
    }

    /// Half periods `ω₁ = K/√(e₁−e₃)` and `ω₃ = iK′/√(e₁−e₃)`.
    pub fn half_periods(&self) -> (Complex64, Complex64) {
        let (s, k) = self.scaling();
        let jp = JacobiParams::new(k);
        (jp.kq / s, Complex64::i() * jp.kq_prime / s)
    }
}

/// `℘(u) = e₃ + (e₁−e₃)/sn²(u√(e₁−e₃), k)`.
pub fn weierstrass_p(u: Complex64, roots: &WeierstrassRoots) -> Result<Complex64, EllipticError> {
    weierstrass_p_and_prime(u, roots).map(|t| t.0)
}

/// `(℘(u), ℘′(u))`.
pub fn weierstrass_p_and_prime(
    u: Complex64,
    roots: &WeierstrassRoots,
) -> Result<(Complex64, Complex64), EllipticError> {
    if u.norm() < 1e-10 {
        return Err(EllipticError::PoleArgument(format!(
            "u = {u} is a pole of ℘"
        )));
    }
    let (s, k) = roots.scaling();
    let d = roots.e1 - roots.e3;
    match sncndn(u * s, k) {
        Ok((sn, cn, dn)) => {
            if sn.norm() < 1e-10 {
                return Err(EllipticError::PoleArgument(format!(
                    "u = {u} lies on the period lattice"
                )));
            }
            let inv2 = (sn * sn).inv();
            Ok((roots.e3 + d * inv2, -2.0 * d * s * cn * dn * inv2 / sn))
        }
        // a pole of sn is the half period where ℘ = e₃
        Err(EllipticError::PoleArgument(_)) => Ok((roots.e3, Complex64::new(0.0, 0.0))),
        Err(e) => Err(e),
    }
}

/// `℘(u + ω₃) = e₃ + (e₁−e₃)k²sn²(u√(e₁−e₃))`, finite for real `u` on a real lattice.
pub fn weierstrass_p_shifted(
    u: Complex64,
    roots: &WeierstrassRoots,
) -> Result<Complex64, EllipticError> {
    let (s, k) = roots.scaling();
    let (sn, _, _) = sncndn(u * s, k)?;
    Ok(roots.e3 + (roots.e1 - roots.e3) * k * k * sn * sn)
}

/// `(℘′² − 4(℘−e₁)(℘−e₂)(℘−e₃)) / max(1, |℘′²|)`.
pub fn p_ode_residual(u: Complex64, roots: &WeierstrassRoots) -> Result<Complex64, EllipticError> {
    let (p, dp) = weierstrass_p_and_prime(u, roots)?;
    let rhs = 4.0 * (p - roots.e1) * (p - roots.e2) * (p - roots.e3);
    Ok((dp * dp - rhs) / (dp * dp).norm().max(1.0))
}
