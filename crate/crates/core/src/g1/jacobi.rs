use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::EllipticError;

const BASE_MODULUS: f64 = 1e-8;
const POLE_TOL: f64 = 1e-13;

/// Arithmetic-geometric mean with the "right" branch of the geometric mean at every step.
pub fn agm(a: Complex64, b: Complex64) -> Complex64 {
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        let an = (a + b) * 0.5;
        let mut g = (a * b).sqrt();
        if (an - g).norm() > (an + g).norm() {
            g = -g;
        }
        a = an;
        b = g;
        if (a - b).norm() <= 1e-16 * a.norm() {
            break;
        }
    }
    (a + b) * 0.5
}

/// `k′ = √(1 − k²)`, principal branch.
pub fn complementary(k: Complex64) -> Complex64 {
    (Complex64::new(1.0, 0.0) - k * k).sqrt()
}

/// Complete elliptic integral of the first kind, `K(k) = π / (2 AGM(1, k′))`.
pub fn complete_k(k: Complex64) -> Complex64 {
    let m = agm(Complex64::new(1.0, 0.0), complementary(k));
    Complex64::new(PI / 2.0, 0.0) / m
}

/// Modulus with its quarter periods.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiParams {
    pub k: Complex64,
    /// `K(k)`
    pub kq: Complex64,
    /// `K′ = K(k′)`
    pub kq_prime: Complex64,
}

impl JacobiParams {
    pub fn new(k: Complex64) -> Self {
        Self {
            k,
            kq: complete_k(k),
            kq_prime: complete_k(complementary(k)),
        }
    }

    pub fn real(k: f64) -> Self {
        Self::new(Complex64::new(k, 0.0))
    }

    /// Nearest point of the pole lattice `2mK + (2n+1)iK′` to `z`, if the lattice is finite.
    pub fn nearest_pole(&self, z: Complex64) -> Option<Complex64> {
        let i = Complex64::i();
        let w1 = 2.0 * self.kq;
        let w2 = 2.0 * i * self.kq_prime;
        let base = i * self.kq_prime;
        let d = z - base;
        let fin = |w: Complex64| w.re.is_finite() && w.im.is_finite() && w.norm() > 0.0;
        match (fin(w1), fin(w2)) {
            (true, true) => {
                let det = w1.re * w2.im - w1.im * w2.re;
                if det.abs() < 1e-300 {
                    return None;
                }
                let m = (d.re * w2.im - d.im * w2.re) / det;
                let n = (w1.re * d.im - w1.im * d.re) / det;
                let mut best: Option<Complex64> = None;
                for dm in -1..=1 {
                    for dn in -1..=1 {
                        let p = base + (m.round() + dm as f64) * w1 + (n.round() + dn as f64) * w2;
                        if best.is_none_or(|b| (z - b).norm() > (z - p).norm()) {
                            best = Some(p);
                        }
                    }
                }
                best
            }
            (false, true) => {
                // k = ±1: only the imaginary period survives
                let n = (d / w2).re.round();
                Some(base + n * w2)
            }
            _ => None,
        }
    }
}

/// `(sn, cn, dn)` at first order in a tiny modulus.
fn near_zero_modulus(z: Complex64, k: Complex64) -> (Complex64, Complex64, Complex64) {
    let m = k * k;
    let (s, c) = (z.sin(), z.cos());
    let t = (z - s * c) * m * 0.25;
    (
        s - t * c,
        c + t * s,
        Complex64::new(1.0, 0.0) - m * s * s * 0.5,
    )
}

fn landen(z: Complex64, k: Complex64, depth: usize) -> (Complex64, Complex64, Complex64) {
    if k.norm() < BASE_MODULUS || depth > 40 {
        return near_zero_modulus(z, k);
    }
    let kp = complementary(k);
    let one = Complex64::new(1.0, 0.0);
    let k1 = (one - kp) / (one + kp);
    let (s1, c1, d1) = landen(z / (one + k1), k1, depth + 1);
    let q = one + k1 * s1 * s1;
    ((one + k1) * s1 / q, c1 * d1 / q, (one - k1 * s1 * s1) / q)
}

/// Jacobi `(sn, cn, dn)(z, k)` for complex argument and modulus.
pub fn sncndn(
    z: Complex64,
    k: Complex64,
) -> Result<(Complex64, Complex64, Complex64), EllipticError> {
    let one = Complex64::new(1.0, 0.0);
    if !(z.re.is_finite() && z.im.is_finite() && k.re.is_finite() && k.im.is_finite()) {
        return Err(EllipticError::InvalidParams(
            "non-finite argument or modulus".into(),
        ));
    }
    if k.norm() > 1.0 {
        // reciprocal modulus: sn(z,k) = sn(kz,1/k)/k, cn(z,k) = dn(kz,1/k), dn(z,k) = cn(kz,1/k)
        let (s, c, d) = sncndn(k * z, one / k)?;
        return Ok((s / k, d, c));
    }
    let params = JacobiParams::new(k);
    if let Some(p) = params.nearest_pole(z) {
        if (z - p).norm() < POLE_TOL {
            return Err(EllipticError::PoleArgument(format!(
                "z = {z} is a pole of sn for k = {k}"
            )));
        }
    }
    let out = if (k * k - one).norm() < 1e-15 {
        let t = z.tanh();
        let sech = one / z.cosh();
        (t, sech, sech)
    } else {
        landen(z, k, 0)
    };
    let ok = |w: Complex64| w.re.is_finite() && w.im.is_finite();
    if !(ok(out.0) && ok(out.1) && ok(out.2)) {
        return Err(EllipticError::PoleArgument(format!(
            "sn overflows at z = {z}"
        )));
    }
    Ok(out)
}

pub fn sn(z: Complex64, k: Complex64) -> Result<Complex64, EllipticError> {
    sncndn(z, k).map(|t| t.0)
}

pub fn cn(z: Complex64, k: Complex64) -> Result<Complex64, EllipticError> {
    sncndn(z, k).map(|t| t.1)
}

pub fn dn(z: Complex64, k: Complex64) -> Result<Complex64, EllipticError> {
    sncndn(z, k).map(|t| t.2)
}

/// `sn_z² − (1 − sn²)(1 − k²sn²)` with `sn_z = cn·dn`.
pub fn sn_ode_residual(z: Complex64, k: Complex64) -> Result<Complex64, EllipticError> {
    let (s, c, d) = sncndn(z, k)?;
    let one = Complex64::new(1.0, 0.0);
    let sz = c * d;
    Ok(sz * sz - (one - s * s) * (one - k * k * s * s))
}

/// The two algebraic identities `sn² + cn² − 1` and `dn² + k²sn² − 1`.
pub fn pythagorean_residuals(
    z: Complex64,
    k: Complex64,
) -> Result<(Complex64, Complex64), EllipticError> {
    let (s, c, d) = sncndn(z, k)?;
    let one = Complex64::new(1.0, 0.0);
    Ok((s * s + c * c - one, d * d + k * k * s * s - one))
}

/// Imaginary shift used in the half-period relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfPeriodShift {
    /// `z + iK′`
    One,
    /// `z + 3iK′`
    Three,
}

impl HalfPeriodShift {
    pub fn multiple(self) -> f64 {
        match self {
            HalfPeriodShift::One => 1.0,
            HalfPeriodShift::Three => 3.0,
        }
    }
}

/// `k·sn(z)·sn(z + m·iK′) − 1` for `m ∈ {1, 3}`.
pub fn halfperiod_residual_shift(
    z: Complex64,
    k: Complex64,
    shift: HalfPeriodShift,
) -> Result<Complex64, EllipticError> {
    let params = JacobiParams::new(k);
    let s = sn(z, k)?;
    if s.norm() < 1e-6 {
        return Err(EllipticError::PoleArgument(format!(
            "sn({z}) vanishes, 1/(k sn) is singular"
        )));
    }
    let w = z + Complex64::i() * params.kq_prime * shift.multiple();
    let t = sn(w, k)?;
    Ok(k * s * t - 1.0)
}

/// `k·sn(z)·sn(z + 3iK′) − 1`.
pub fn halfperiod_residual_g1(z: Complex64, k: Complex64) -> Result<Complex64, EllipticError> {
    halfperiod_residual_shift(z, k, HalfPeriodShift::Three)
}
