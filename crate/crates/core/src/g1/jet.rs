//! Truncated Taylor series with complex coefficients.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::jacobi::sncndn;
use crate::error::EllipticError;

/// Number of stored Taylor coefficients.
pub const JET_LEN: usize = 9;

/// `Σ cₙ hⁿ`, truncated after `JET_LEN` terms; `cₙ = f⁽ⁿ⁾(x₀)/n!`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub c: [Complex64; JET_LEN],
}

impl Jet {
    pub fn constant(v: Complex64) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); JET_LEN];
        c[0] = v;
        Self { c }
    }

    pub fn real(v: f64) -> Self {
        Self::constant(Complex64::new(v, 0.0))
    }

    /// The independent variable expanded at `x0`.
    pub fn variable(x0: Complex64) -> Self {
        let mut j = Self::constant(x0);
        j.c[1] = Complex64::new(1.0, 0.0);
        j
    }

    /// Build from derivative values `f(x₀), f′(x₀), …`.
    pub fn from_derivatives(d: &[Complex64]) -> Self {
        let mut out = Self::real(0.0);
        let mut fact = 1.0;
        for (n, v) in d.iter().take(JET_LEN).enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            out.c[n] = v / fact;
        }
        out
    }

    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    /// `f⁽ⁿ⁾(x₀)`.
    pub fn d(&self, n: usize) -> Complex64 {
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        self.c[n] * fact
    }

    /// The jet of `f′`; the top coefficient is lost.
    pub fn deriv(&self) -> Self {
        let mut out = Self::real(0.0);
        for n in 0..JET_LEN - 1 {
            out.c[n] = self.c[n + 1] * (n + 1) as f64;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            c: self.c.map(|x| x * s),
        }
    }

    /// Substitute `h → α h`.
    pub fn rescale_variable(&self, alpha: Complex64) -> Self {
        let mut out = *self;
        let mut p = Complex64::new(1.0, 0.0);
        for c in out.c.iter_mut() {
            *c *= p;
            p *= alpha;
        }
        out
    }

    pub fn recip(&self) -> Option<Self> {
        let a0 = self.c[0];
        if a0.norm() == 0.0 {
            return None;
        }
        let mut out = Self::real(0.0);
        out.c[0] = a0.inv();
        for n in 1..JET_LEN {
            let s: Complex64 = (1..=n).map(|j| self.c[j] * out.c[n - j]).sum();
            out.c[n] = -s / a0;
        }
        Some(out)
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::real(1.0), |acc, _| acc * *self)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, o: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(o.c) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            c: self.c.map(|x| -x),
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut out = Jet::real(0.0);
        for n in 0..JET_LEN {
            out.c[n] = (0..=n).map(|j| self.c[j] * o.c[n - j]).sum();
        }
        out
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, s: f64) -> Jet {
        self.scale(Complex64::new(s, 0.0))
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, s: f64) -> Jet {
        self.c[0] += s;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, s: f64) -> Jet {
        self.c[0] -= s;
        self
    }
}

impl Div for Jet {
    type Output = Jet;
    /// Panics on a zero leading coefficient; use [`Jet::recip`] to test first.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip().expect("division by a jet with zero value")
    }
}

/// Jets of `(sn, cn, dn)(z₀ + h, k)` from `s′ = cd`, `c′ = −sd`, `d′ = −k²sc`.
pub fn sncndn_jet(z0: Complex64, k: Complex64) -> Result<(Jet, Jet, Jet), EllipticError> {
    let (s0, c0, d0) = sncndn(z0, k)?;
    let (mut s, mut c, mut d) = (Jet::constant(s0), Jet::constant(c0), Jet::constant(d0));
    let k2 = k * k;
    let conv =
        |a: &Jet, b: &Jet, n: usize| -> Complex64 { (0..=n).map(|j| a.c[j] * b.c[n - j]).sum() };
    for n in 0..JET_LEN - 1 {
        let m = (n + 1) as f64;
        let cd = conv(&c, &d, n);
        let sd = conv(&s, &d, n);
        let sc = conv(&s, &c, n);
        s.c[n + 1] = cd / m;
        c.c[n + 1] = -sd / m;
        d.c[n + 1] = -k2 * sc / m;
    }
    Ok((s, c, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_matches_known_series() {
        let x = Jet::variable(Complex64::new(0.0, 0.0));
        let g = (x + 1.0).recip().unwrap();
        for n in 0..JET_LEN {
            let expect = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((g.c[n].re - expect).abs() < 1e-15);
        }
        let sq = (x + 2.0).powi(2);
        assert!((sq.d(1).re - 4.0).abs() < 1e-15 && (sq.d(2).re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn sn_jet_small_modulus_is_sine() {
        let (s, _, _) = sncndn_jet(Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        assert!((s.d(3).re + 0.3f64.cos()).abs() < 1e-14);
        assert!((s.d(4).re - 0.3f64.sin()).abs() < 1e-14);
    }
}
