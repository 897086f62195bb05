//! Closed-form initial data: solitons and cnoidal waves.

use num_complex::Complex64;

use super::grid::{Field1D, FieldRole, Grid1D};
use crate::error::PdeError;
use crate::g1::{complete_k, sn, weierstrass_p_shifted, WeierstrassRoots};

const IMAGES: i32 = 3;

fn periodized(grid: Grid1D, f: impl Fn(f64) -> f64) -> impl Fn(f64) -> f64 {
    let l = grid.length();
    move |x| (-IMAGES..=IMAGES).map(|m| f(x + m as f64 * l)).sum()
}

fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

/// KdV one-soliton `−(c/2)sech²(√c(x − x₀ − ct)/2)`, periodized, at time `t`.
pub fn kdv_soliton(grid: Grid1D, c: f64, x0: f64, t: f64) -> Result<Field1D, PdeError> {
    if !(c.is_finite() && c > 0.0) {
        return Err(PdeError::InvalidInit(format!(
            "soliton speed must be positive, got {c}"
        )));
    }
    let rc = c.sqrt();
    let f = periodized(grid, move |x| {
        -0.5 * c * sech(rc * (x - x0 - c * t) / 2.0).powi(2)
    });
    Ok(Field1D::from_real(grid, FieldRole::U, f))
}

/// Generalized mKdV soliton `i√c·sech(√c(x − x₀ − (c+a)t))`.
///
/// With `v = iw`, `w` solves the focusing equation `w_t + w_xxx + 6w²w_x + a w_x = 0`.
pub fn gmkdv_soliton(grid: Grid1D, c: f64, a: f64, x0: f64, t: f64) -> Result<Field1D, PdeError> {
    if !(c.is_finite() && c > 0.0) {
        return Err(PdeError::InvalidInit(format!(
            "soliton parameter must be positive, got {c}"
        )));
    }
    let rc = c.sqrt();
    let f = periodized(grid, move |x| rc * sech(rc * (x - x0 - (c + a) * t)));
    Ok(Field1D::from_fn(grid, FieldRole::V, |x| {
        Complex64::new(0.0, f(x))
    }))
}

/// Travelling KdV cnoidal wave `u = 2℘(x − ct + ω₃) − c/6` with one period across the domain.
#[derive(Clone, Copy, Debug)]
pub struct CnoidalWave {
    pub roots: WeierstrassRoots,
    pub c: f64,
}

impl CnoidalWave {
    /// Roots chosen so `2ω₁ = L` and `k² = (e₂−e₃)/(e₁−e₃)`.
    pub fn new(grid: Grid1D, k: f64, c: f64) -> Result<Self, PdeError> {
        if !(0.0..1.0).contains(&k) {
            return Err(PdeError::InvalidInit(format!(
                "cnoidal modulus must lie in [0, 1), got {k}"
            )));
        }
        let kk = complete_k(Complex64::new(k, 0.0)).re;
        let s = 2.0 * kk / grid.length();
        let d = s * s;
        let e3 = -(1.0 + k * k) * d / 3.0;
        let roots = WeierstrassRoots::real(e3 + d, e3 + k * k * d, e3)?;
        Ok(Self { roots, c })
    }

    pub fn field(&self, grid: Grid1D, t: f64) -> Result<Field1D, PdeError> {
        let mut samples = Vec::with_capacity(grid.n());
        for x in grid.points() {
            let p = weierstrass_p_shifted(Complex64::new(x - self.c * t, 0.0), &self.roots)?;
            samples.push(2.0 * p - self.c / 6.0);
        }
        Field1D::from_samples(grid, FieldRole::U, samples)
    }
}

/// Static generalized mKdV wave `v = βk·sn(βx, k)` with `β = 4K/L`; it is stationary for
/// `a = β²(1+k²)`, which is returned alongside.
pub fn gmkdv_cnoidal(grid: Grid1D, k: f64) -> Result<(Field1D, f64), PdeError> {
    if !(0.0..1.0).contains(&k) {
        return Err(PdeError::InvalidInit(format!(
            "cnoidal modulus must lie in [0, 1), got {k}"
        )));
    }
    let kc = Complex64::new(k, 0.0);
    let beta = 4.0 * complete_k(kc).re / grid.length();
    let mut samples = Vec::with_capacity(grid.n());
    for x in grid.points() {
        samples.push(beta * k * sn(Complex64::new(beta * x, 0.0), kc)?);
    }
    Ok((
        Field1D::from_samples(grid, FieldRole::V, samples)?,
        beta * beta * (1.0 + k * k),
    ))
}
