use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{CurveParams, Mono, Poly, Rat};
use crate::error::RingError;

/// Element `num / den` of the function field of the symmetric square of the curve.
///
/// Invariants: `den` is nonzero, free of `y₁, y₂`, monic under graded-lex, and
/// shares no common `x₁^a x₂^b` or `(x₁ − x₂)` factor with `num`.
#[derive(Clone)]
pub struct Fld {
    num: Poly,
    den: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Flip the sign of every term odd in `y₁` (`which == 1`) or `y₂`.
fn conjugate(p: &Poly, which: u8) -> Poly {
    let terms = p
        .terms()
        .map(|(m, c)| {
            let odd = if which == 1 { m.ey1 == 1 } else { m.ey2 == 1 };
            (*m, if odd { -c.clone() } else { c.clone() })
        })
        .collect();
    Poly::from_terms(p.params(), terms)
}

impl Fld {
    /// Build `num / den`, rationalizing `den` when it contains `y`.
    pub fn new(num: Poly, den: Poly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let (mut num, mut den) = (num, den);
        for which in [1u8, 2] {
            let has = den
                .terms()
                .any(|(m, _)| if which == 1 { m.ey1 == 1 } else { m.ey2 == 1 });
            if has {
                let c = conjugate(&den, which);
                num = &num * &c;
                den = &den * &c;
            }
        }
        if den.is_zero() {
            // den was a zero divisor of the coordinate ring (f a perfect square)
            return Err(RingError::DivisionByZero);
        }
        debug_assert!(!den.has_y());
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: Poly, mut den: Poly) -> Self {
        if num.is_zero() {
            let params = Arc::clone(num.params());
            return Self {
                num,
                den: Poly::one(&params),
            };
        }
        let (na, nb) = num.x_content();
        let (da, db) = den.x_content();
        let (a, b) = (na.min(da), nb.min(db));
        if a > 0 || b > 0 {
            num = num.div_x_monomial(a, b);
            den = den.div_x_monomial(a, b);
        }
        while den.len() > 1 {
            let Some(d) = den.div_x1_minus_x2() else {
                break;
            };
            let Some(n) = num.div_x1_minus_x2() else {
                break;
            };
            num = n;
            den = d;
        }
        let lc = den
            .leading()
            .map(|(_, c)| c.clone())
            .expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let params = Arc::clone(p.params());
        Self {
            num: p,
            den: Poly::one(&params),
        }
    }

    pub fn constant(params: &Arc<CurveParams>, c: Rat) -> Self {
        Self::from_poly(Poly::constant(params, c))
    }

    pub fn zero(params: &Arc<CurveParams>) -> Self {
        Self::from_poly(Poly::zero(params))
    }

    pub fn one(params: &Arc<CurveParams>) -> Self {
        Self::from_poly(Poly::one(params))
    }

    pub fn x1(params: &Arc<CurveParams>) -> Self {
        Self::from_poly(Poly::x1(params))
    }

    pub fn x2(params: &Arc<CurveParams>) -> Self {
        Self::from_poly(Poly::x2(params))
    }

    pub fn y1(params: &Arc<CurveParams>) -> Self {
        Self::from_poly(Poly::y1(params))
    }

    pub fn y2(params: &Arc<CurveParams>) -> Self {
        Self::from_poly(Poly::y2(params))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn params(&self) -> &Arc<CurveParams> {
        self.num.params()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Total number of stored terms, a rough size measure.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, RingError> {
        if rhs.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn arith(&self, rhs: &Self, op: FieldOp) -> Result<Self, RingError> {
        Ok(match op {
            FieldOp::Add => self + rhs,
            FieldOp::Sub => self - rhs,
            FieldOp::Mul => self * rhs,
            FieldOp::Div => self.checked_div(rhs)?,
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.params());
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.params()), |acc, _| &acc * self)
    }

    pub fn swap_points(&self) -> Self {
        Self::normalized(self.num.swap_points(), self.den.swap_points())
    }

    /// Pull back through `x → 1/x`, `y → y/x³`: `self` lives on the curve with
    /// parameters `target.dual()`, the result on `target`.
    pub fn pullback_dual(&self, target: &Arc<CurveParams>) -> Self {
        // x1^a x2^b y1^c y2^d  ↦  x1^(-a-3c) x2^(-b-3d) y1^c y2^d, cleared by x1^M1 x2^M2
        let shift = |p: &Poly| {
            let m1 = p
                .terms()
                .map(|(m, _)| m.ex1 + 3 * u32::from(m.ey1))
                .max()
                .unwrap_or(0);
            let m2 = p
                .terms()
                .map(|(m, _)| m.ex2 + 3 * u32::from(m.ey2))
                .max()
                .unwrap_or(0);
            let terms = p
                .terms()
                .map(|(m, c)| {
                    let mono = Mono {
                        ex1: m1 - m.ex1 - 3 * u32::from(m.ey1),
                        ex2: m2 - m.ex2 - 3 * u32::from(m.ey2),
                        ..*m
                    };
                    (mono, c.clone())
                })
                .collect();
            (Poly::from_terms(target, terms), m1, m2)
        };
        let (num, n1, n2) = shift(&self.num);
        let (den, d1, d2) = shift(&self.den);
        // num/den = (num'/x^n) / (den'/x^d) = num' x^d / (den' x^n)
        let num = num.mul_x_monomial(d1, d2);
        let den = den.mul_x_monomial(n1, n2);
        Self::new(num, den).expect("pullback of a nonzero denominator is nonzero")
    }

    fn add_sub(&self, rhs: &Self, negate: bool) -> Self {
        let rnum = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rnum, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rnum * &self.den);
        Self::normalized(num, &self.den * &rhs.den)
    }
}

impl PartialEq for Fld {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        (&(&self.num * &other.den) - &(&other.num * &self.den)).is_zero()
    }
}

impl<'a> std::ops::Add<&'a Fld> for &'a Fld {
    type Output = Fld;
    fn add(self, rhs: &Fld) -> Fld {
        self.add_sub(rhs, false)
    }
}

impl<'a> std::ops::Sub<&'a Fld> for &'a Fld {
    type Output = Fld;
    fn sub(self, rhs: &Fld) -> Fld {
        self.add_sub(rhs, true)
    }
}

impl<'a> std::ops::Mul<&'a Fld> for &'a Fld {
    type Output = Fld;
    fn mul(self, rhs: &Fld) -> Fld {
        if self.is_zero() || rhs.is_zero() {
            return Fld::zero(self.params());
        }
        Fld::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl std::ops::Neg for &Fld {
    type Output = Fld;
    fn neg(self) -> Fld {
        Fld {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::ops::Neg for Fld {
    type Output = Fld;
    fn neg(self) -> Fld {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl std::ops::$tr<Fld> for Fld {
            type Output = Fld;
            fn $f(self, rhs: Fld) -> Fld { std::ops::$tr::$f(&self, &rhs) }
        }
        impl<'a> std::ops::$tr<&'a Fld> for Fld {
            type Output = Fld;
            fn $f(self, rhs: &Fld) -> Fld { std::ops::$tr::$f(&self, rhs) }
        }
        impl<'a> std::ops::$tr<Fld> for &'a Fld {
            type Output = Fld;
            fn $f(self, rhs: Fld) -> Fld { std::ops::$tr::$f(self, &rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for Fld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Fld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fld({self})")
    }
}
