//! Point evaluation of field elements at a pair of curve points.
//!
//! `yᵢ = ±√f(xᵢ)` is irrational in general, so exact evaluation lands in the
//! algebra `Q[s₁, s₂] / (s₁² − f(x₁), s₂² − f(x₂))`. Evaluation there is a ring
//! homomorphism from the coordinate ring, so an identity that reduces to zero
//! evaluates to exactly zero for every branch choice.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::params::rat_to_f64;
use super::{Fld, Poly, Rat};
use crate::error::RingError;

/// Branch sign of `yᵢ = ±√f(xᵢ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn rat(self) -> Rat {
        match self {
            Branch::Plus => Rat::one(),
            Branch::Minus => -Rat::one(),
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeMode {
    /// Both `f(xᵢ)` must be rational squares; the value is rational.
    Exact,
    /// Exact value in the quadratic extension.
    Extended,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbePoint {
    pub x1: Rat,
    pub x2: Rat,
    pub branches: [Branch; 2],
}

impl ProbePoint {
    pub fn new(x1: Rat, x2: Rat, branches: [Branch; 2]) -> Self {
        Self { x1, x2, branches }
    }
}

/// `c₀ + c₁s₁ + c₂s₂ + c₃s₁s₂` with `sᵢ² = dᵢ`; `sᵢ` is the principal root
/// (`i√|dᵢ|` when `dᵢ < 0`).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt {
    pub d: [Rat; 2],
    pub c: [Rat; 4],
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProbeValue {
    Rational(Rat),
    Extended(Box<QuadExt>),
}

fn rational_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rat::new(rn, rd))
}

impl QuadExt {
    pub fn zero(d: [Rat; 2]) -> Self {
        Self {
            d,
            c: std::array::from_fn(|_| Rat::zero()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self {
            d: self.d.clone(),
            c: std::array::from_fn(|i| &self.c[i] * k),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.d, o.d);
        Self {
            d: self.d.clone(),
            c: std::array::from_fn(|i| &self.c[i] + &o.c[i]),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.d, o.d);
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &o.c;
        let [d1, d2] = &self.d;
        let d12 = d1 * d2;
        Self {
            d: self.d.clone(),
            c: [
                a0 * b0 + a1 * b1 * d1 + a2 * b2 * d2 + a3 * b3 * &d12,
                a0 * b1 + a1 * b0 + (a2 * b3 + a3 * b2) * d2,
                a0 * b2 + a2 * b0 + (a1 * b3 + a3 * b1) * d1,
                a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
            ],
        }
    }

    fn sqrt_c(d: &Rat) -> Complex64 {
        let v = rat_to_f64(d);
        if v >= 0.0 {
            Complex64::new(v.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-v).sqrt())
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let s1 = Self::sqrt_c(&self.d[0]);
        let s2 = Self::sqrt_c(&self.d[1]);
        let c: [f64; 4] = std::array::from_fn(|i| rat_to_f64(&self.c[i]));
        Complex64::new(c[0], 0.0) + s1 * c[1] + s2 * c[2] + s1 * s2 * c[3]
    }

    /// Real and imaginary parts as decimal strings with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        let approx = self.to_complex();
        let mag = approx.norm();
        let exp10 = if mag > 0.0 && mag.is_finite() {
            mag.log10().floor() as i64
        } else {
            0
        };
        let guard = 8i64;
        let scale_pow = (digits as i64 - exp10 + guard).max(guard) as u32;
        let scale = num_traits::pow(BigInt::from(10), scale_pow as usize);
        // fixed-point √|d| · 10^scale_pow, floor
        let sqrt_fixed = |q: &Rat| -> BigInt {
            let q = q.abs();
            (q.numer() * &scale * &scale / q.denom()).sqrt()
        };
        let times = |c: &Rat, fixed: &BigInt| -> BigInt { c.numer() * fixed / c.denom() };
        let (d1, d2) = (&self.d[0], &self.d[1]);
        let mut re = times(&self.c[0], &scale);
        let mut im = BigInt::zero();
        let t1 = times(&self.c[1], &sqrt_fixed(d1));
        if d1.is_negative() {
            im += t1
        } else {
            re += t1
        }
        let t2 = times(&self.c[2], &sqrt_fixed(d2));
        if d2.is_negative() {
            im += t2
        } else {
            re += t2
        }
        let t3 = times(&self.c[3], &sqrt_fixed(&(d1 * d2)));
        match (d1.is_negative(), d2.is_negative()) {
            (true, true) => re -= t3,
            (false, false) => re += t3,
            _ => im += t3,
        }
        (
            format_sci(&re, scale_pow, digits),
            format_sci(&im, scale_pow, digits),
        )
    }
}

/// `n / 10^scale` in scientific notation with `digits` significant digits (truncated).
fn format_sci(n: &BigInt, scale: u32, digits: usize) -> String {
    if n.is_zero() {
        return "0".to_string();
    }
    let neg = n.sign() == Sign::Minus;
    let s = n.abs().to_string();
    let exp = s.len() as i64 - 1 - i64::from(scale);
    let mant: String = s.chars().take(digits.max(1)).collect();
    let (head, tail) = mant.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

impl ProbeValue {
    pub fn is_zero(&self) -> bool {
        match self {
            ProbeValue::Rational(r) => r.is_zero(),
            ProbeValue::Extended(q) => q.is_zero(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            ProbeValue::Rational(r) => Complex64::new(rat_to_f64(r), 0.0),
            ProbeValue::Extended(q) => q.to_complex(),
        }
    }

    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        match self {
            ProbeValue::Rational(r) => {
                let q = QuadExt {
                    d: [Rat::one(), Rat::one()],
                    c: [r.clone(), Rat::zero(), Rat::zero(), Rat::zero()],
                };
                q.to_decimal(digits)
            }
            ProbeValue::Extended(q) => q.to_decimal(digits),
        }
    }
}

/// Evaluate a polynomial in the extension algebra. For a rational-square `f(xᵢ)`
/// the corresponding `yᵢ` is substituted as a rational.
fn eval_poly_ext(p: &Poly, pt: &ProbePoint, d: &[Rat; 2], roots: &[Option<Rat>; 2]) -> QuadExt {
    let mut out = QuadExt::zero(d.clone());
    let (mut pw1, mut pw2) = (Vec::<Rat>::new(), Vec::<Rat>::new());
    let power = |cache: &mut Vec<Rat>, x: &Rat, e: u32| -> Rat {
        while cache.len() <= e as usize {
            let next = cache.last().map(|l| l * x).unwrap_or_else(Rat::one);
            cache.push(next);
        }
        cache[e as usize].clone()
    };
    for (m, c) in p.terms() {
        let mut coef = c * power(&mut pw1, &pt.x1, m.ex1) * power(&mut pw2, &pt.x2, m.ex2);
        let mut basis = 0usize;
        for (i, e) in [m.ey1, m.ey2].into_iter().enumerate() {
            if e == 0 {
                continue;
            }
            coef *= pt.branches[i].rat();
            match &roots[i] {
                Some(r) => coef *= r,
                None => basis |= 1 << i,
            }
        }
        out.c[basis] += coef;
    }
    out
}

/// Value of `a` at `(x₁, ±√f(x₁)), (x₂, ±√f(x₂))`.
pub fn eval_probe(a: &Fld, pt: &ProbePoint, mode: ProbeMode) -> Result<ProbeValue, RingError> {
    if pt.x1 == pt.x2 {
        return Err(RingError::DiagonalPoint);
    }
    let params = a.params();
    let d = [params.eval_f(&pt.x1), params.eval_f(&pt.x2)];
    let roots = [rational_sqrt(&d[0]), rational_sqrt(&d[1])];
    if mode == ProbeMode::Exact && roots.iter().any(Option::is_none) {
        return Err(RingError::OffCurve);
    }
    let den = eval_poly_ext(a.den(), pt, &d, &roots);
    debug_assert!(
        den.c[1..].iter().all(Zero::is_zero),
        "denominator is y-free"
    );
    let den = den.c[0].clone();
    if den.is_zero() {
        return Err(RingError::PoleAtPoint);
    }
    let num = eval_poly_ext(a.num(), pt, &d, &roots).scale(&den.recip());
    Ok(match mode {
        ProbeMode::Exact => ProbeValue::Rational(num.c[0].clone()),
        ProbeMode::Extended => ProbeValue::Extended(Box::new(num)),
    })
}

/// Double-precision evaluation, `yᵢ = ±√f(xᵢ)` with the principal complex root.
pub fn eval_complex(
    a: &Fld,
    x1: f64,
    x2: f64,
    branches: [Branch; 2],
) -> Result<Complex64, RingError> {
    if x1 == x2 {
        return Err(RingError::DiagonalPoint);
    }
    let params = a.params();
    let y = [
        Complex64::new(params.eval_f_f64(x1), 0.0).sqrt() * branches[0].as_f64(),
        Complex64::new(params.eval_f_f64(x2), 0.0).sqrt() * branches[1].as_f64(),
    ];
    let eval = |p: &Poly| -> Complex64 {
        p.terms()
            .map(|(m, c)| {
                let mut v = Complex64::new(
                    rat_to_f64(c) * x1.powi(m.ex1 as i32) * x2.powi(m.ex2 as i32),
                    0.0,
                );
                if m.ey1 == 1 {
                    v *= y[0];
                }
                if m.ey2 == 1 {
                    v *= y[1];
                }
                v
            })
            .sum()
    };
    let den = eval(a.den());
    if den.norm() == 0.0 || !den.is_finite() {
        return Err(RingError::PoleAtPoint);
    }
    Ok(eval(a.num()) / den)
}
