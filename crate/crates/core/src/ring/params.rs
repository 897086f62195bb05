use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rat;
use crate::error::RingError;

/// Coefficients λ₀…λ₆ of the sextic `f(x) = Σ λⱼ xʲ` defining the curve `y² = f(x)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CurveParams {
    lambda: [Rat; 7],
}

impl CurveParams {
    pub fn new(lambda: [Rat; 7]) -> Result<Self, RingError> {
        if lambda.iter().all(Zero::is_zero) {
            return Err(RingError::InvalidParams("f(x) is identically zero".into()));
        }
        Ok(Self { lambda })
    }

    pub fn from_ints(lambda: [i64; 7]) -> Result<Self, RingError> {
        Self::new(lambda.map(|l| Rat::from_integer(BigInt::from(l))))
    }

    pub fn lambda(&self, j: usize) -> &Rat {
        &self.lambda[j]
    }

    pub fn lambdas(&self) -> &[Rat; 7] {
        &self.lambda
    }

    /// λ₅ ≠ 0: the Weierstrass-type triple divides by λ₅.
    pub fn weierstrass_usable(&self) -> bool {
        !self.lambda[5].is_zero()
    }

    /// λ₁ ≠ 0: the Jacobi-type triple divides by λ₁.
    pub fn jacobi_usable(&self) -> bool {
        !self.lambda[1].is_zero()
    }

    /// Parameters of the image curve under `x → 1/x`, `y → y/x³`, i.e. `λⱼ ↔ λ₆₋ⱼ`.
    pub fn dual(&self) -> Self {
        let mut lambda = self.lambda.clone();
        lambda.reverse();
        Self { lambda }
    }

    /// `f(x)` at a rational point.
    pub fn eval_f(&self, x: &Rat) -> Rat {
        self.lambda
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, l| acc * x + l)
    }

    pub fn eval_f_f64(&self, x: f64) -> f64 {
        self.lambda
            .iter()
            .rev()
            .fold(0.0, |acc, l| acc * x + rat_to_f64(l))
    }

    /// Coefficients of `f'(x)/2`, lowest degree first.
    pub(crate) fn half_f_prime(&self) -> Vec<Rat> {
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        (1..7)
            .map(|j| &self.lambda[j] * Rat::from_integer(BigInt::from(j)) * &half)
            .collect()
    }

    pub fn to_f64(&self) -> [f64; 7] {
        std::array::from_fn(|j| rat_to_f64(&self.lambda[j]))
    }

    /// Entries rendered as `p/q` or integer strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.lambda.iter().map(|l| l.to_string()).collect()
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn parse_rat(s: &str) -> Result<Rat, RingError> {
    let s = s.trim();
    let bad = || RingError::InvalidParams(format!("not a rational literal: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

impl FromStr for CurveParams {
    type Err = RingError;

    /// Accepts `lambda = [l0,l1,l2,l3,l4,l5,l6]` or the bare list `l0,…,l6`;
    /// each entry is `p/q` or an integer literal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut body = s.trim();
        if let Some((key, rest)) = body.split_once('=') {
            if key.trim() != "lambda" {
                return Err(RingError::InvalidParams(format!(
                    "expected `lambda = [...]`, found key {:?}",
                    key.trim()
                )));
            }
            body = rest.trim();
        }
        let body = body
            .strip_prefix('[')
            .map(|b| b.strip_suffix(']').unwrap_or(b))
            .unwrap_or(body);
        let entries = body
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>, _>>()?;
        let lambda: [Rat; 7] = entries.try_into().map_err(|v: Vec<Rat>| {
            RingError::InvalidParams(format!("expected 7 coefficients, got {}", v.len()))
        })?;
        Self::new(lambda)
    }
}

impl fmt::Display for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda = [{}]", self.to_strings().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let p: CurveParams = "lambda = [1, -2/4, 0, 3, 1, 4/1, 5]".parse().unwrap();
        assert_eq!(p.lambda(1), &Rat::new((-1).into(), 2.into()));
        assert_eq!(p.to_string(), "lambda = [1,-1/2,0,3,1,4,5]");
        let q: CurveParams = p.to_string().parse().unwrap();
        assert_eq!(p, q);
        let bare: CurveParams = "1,2,1,3,1,4,5".parse().unwrap();
        assert!(bare.weierstrass_usable() && bare.jacobi_usable());
    }

    #[test]
    fn parse_errors() {
        assert!("lambda = [1,2,3]".parse::<CurveParams>().is_err());
        assert!("lambda = [0,0,0,0,0,0,0]".parse::<CurveParams>().is_err());
        assert!("mu = [1,2,1,3,1,4,5]".parse::<CurveParams>().is_err());
        assert!("1,2,1,3,1,4,5/0".parse::<CurveParams>().is_err());
        assert!("1,2,x,3,1,4,5".parse::<CurveParams>().is_err());
    }

    #[test]
    fn flags_track_values() {
        let p = CurveParams::from_ints([0, 0, 1, 1, 1, 0, 1]).unwrap();
        assert!(!p.weierstrass_usable());
        assert!(!p.jacobi_usable());
        let d = CurveParams::from_ints([1, 2, 3, 4, 5, 6, 7])
            .unwrap()
            .dual();
        assert_eq!(d, CurveParams::from_ints([7, 6, 5, 4, 3, 2, 1]).unwrap());
    }

    #[test]
    fn eval_f_horner() {
        let p = CurveParams::from_ints([1, 2, 1, 3, 1, 4, 5]).unwrap();
        let x = Rat::from_integer(2.into());
        // 1 + 4 + 4 + 24 + 16 + 128 + 320
        assert_eq!(p.eval_f(&x), Rat::from_integer(497.into()));
        assert_eq!(p.eval_f_f64(2.0), 497.0);
    }
}
