use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{CurveParams, Rat};

/// `x₁^ex1 x₂^ex2 y₁^ey1 y₂^ey2` with `ey1, ey2 ∈ {0, 1}`.
///
/// Ordered graded-lexicographically with `x₁ > x₂ > y₁ > y₂`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    pub ex1: u32,
    pub ex2: u32,
    pub ey1: u8,
    pub ey2: u8,
}

impl Mono {
    pub const ONE: Mono = Mono {
        ex1: 0,
        ex2: 0,
        ey1: 0,
        ey2: 0,
    };

    pub fn new(ex1: u32, ex2: u32, ey1: u8, ey2: u8) -> Self {
        assert!(ey1 <= 1 && ey2 <= 1, "y exponents must be reduced");
        Self { ex1, ex2, ey1, ey2 }
    }

    pub fn degree(&self) -> u32 {
        self.ex1 + self.ex2 + u32::from(self.ey1) + u32::from(self.ey2)
    }

    pub fn has_y(&self) -> bool {
        self.ey1 != 0 || self.ey2 != 0
    }

    fn swapped(&self) -> Self {
        Self {
            ex1: self.ex2,
            ex2: self.ex1,
            ey1: self.ey2,
            ey2: self.ey1,
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.ex1.cmp(&other.ex1))
            .then(self.ex2.cmp(&other.ex2))
            .then(self.ey1.cmp(&other.ey1))
            .then(self.ey2.cmp(&other.ey2))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Unreduced exponent vector `[ex1, ex2, ey1, ey2]`, y-exponents unrestricted.
pub type RawMono = [u32; 4];

/// Element of `Q[x₁, x₂, y₁, y₂] / (y₁² − f(x₁), y₂² − f(x₂))` in canonical
/// y-reduced form. Zero coefficients are never stored.
#[derive(Clone)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
    params: Arc<CurveParams>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Coefficients of `f(x)^n`, lowest degree first.
fn f_power(params: &CurveParams, n: u32) -> Vec<Rat> {
    let mut acc = vec![Rat::one()];
    for _ in 0..n {
        let mut next = vec![Rat::zero(); acc.len() + 6];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, l) in params.lambdas().iter().enumerate() {
                if !l.is_zero() {
                    next[i + j] += a * l;
                }
            }
        }
        acc = next;
    }
    acc
}

fn accumulate(terms: &mut BTreeMap<Mono, Rat>, mono: Mono, coeff: Rat) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(mono) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl Poly {
    pub fn zero(params: &Arc<CurveParams>) -> Self {
        Self {
            terms: BTreeMap::new(),
            params: Arc::clone(params),
        }
    }

    pub fn constant(params: &Arc<CurveParams>, c: Rat) -> Self {
        Self::monomial(params, Mono::ONE, c)
    }

    pub fn one(params: &Arc<CurveParams>) -> Self {
        Self::constant(params, Rat::one())
    }

    pub fn monomial(params: &Arc<CurveParams>, mono: Mono, c: Rat) -> Self {
        let mut p = Self::zero(params);
        accumulate(&mut p.terms, mono, c);
        p
    }

    pub fn x1(params: &Arc<CurveParams>) -> Self {
        Self::monomial(params, Mono::new(1, 0, 0, 0), Rat::one())
    }

    pub fn x2(params: &Arc<CurveParams>) -> Self {
        Self::monomial(params, Mono::new(0, 1, 0, 0), Rat::one())
    }

    pub fn y1(params: &Arc<CurveParams>) -> Self {
        Self::monomial(params, Mono::new(0, 0, 1, 0), Rat::one())
    }

    pub fn y2(params: &Arc<CurveParams>) -> Self {
        Self::monomial(params, Mono::new(0, 0, 0, 1), Rat::one())
    }

    /// `x₁ − x₂`.
    pub fn diff_x(params: &Arc<CurveParams>) -> Self {
        &Self::x1(params) - &Self::x2(params)
    }

    /// Univariate polynomial in `x₁` (`which == 1`) or `x₂` from coefficients, lowest first.
    pub fn univariate(params: &Arc<CurveParams>, which: u8, coeffs: &[Rat]) -> Self {
        let mut p = Self::zero(params);
        for (j, c) in coeffs.iter().enumerate() {
            let j = j as u32;
            let mono = if which == 1 {
                Mono::new(j, 0, 0, 0)
            } else {
                Mono::new(0, j, 0, 0)
            };
            accumulate(&mut p.terms, mono, c.clone());
        }
        p
    }

    /// `f(xᵢ)` as a polynomial.
    pub fn f_of(params: &Arc<CurveParams>, which: u8) -> Self {
        Self::univariate(params, which, params.lambdas())
    }

    /// Reduce an arbitrary polynomial in `x₁, x₂, y₁, y₂` modulo `yᵢ² = f(xᵢ)`.
    pub fn reduce_y<I>(params: &Arc<CurveParams>, raw: I) -> Self
    where
        I: IntoIterator<Item = (RawMono, Rat)>,
    {
        let mut out = Self::zero(params);
        let mut powers: BTreeMap<u32, Vec<Rat>> = BTreeMap::new();
        for ([ex1, ex2, ey1, ey2], c) in raw {
            if c.is_zero() {
                continue;
            }
            let (h1, h2) = (ey1 / 2, ey2 / 2);
            for h in [h1, h2] {
                powers.entry(h).or_insert_with(|| f_power(params, h));
            }
            let p1 = &powers[&h1];
            let p2 = &powers[&h2];
            for (i, a) in p1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in p2.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let mono = Mono::new(
                        ex1 + i as u32,
                        ex2 + j as u32,
                        (ey1 % 2) as u8,
                        (ey2 % 2) as u8,
                    );
                    accumulate(&mut out.terms, mono, &c * a * b);
                }
            }
        }
        out
    }

    /// Terms as unreduced exponent vectors (for round trips through [`Poly::reduce_y`]).
    pub fn to_raw(&self) -> Vec<(RawMono, Rat)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                (
                    [m.ex1, m.ex2, u32::from(m.ey1), u32::from(m.ey2)],
                    c.clone(),
                )
            })
            .collect()
    }

    pub fn params(&self) -> &Arc<CurveParams> {
        &self.params
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Mono) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term under graded-lex.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn has_y(&self) -> bool {
        self.terms.keys().any(Mono::has_y)
    }

    /// `Some(c)` when the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.params);
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
            params: Arc::clone(&self.params),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.params);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Swap the two curve points: `x₁ ↔ x₂`, `y₁ ↔ y₂`.
    pub fn swap_points(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swapped(), c.clone()))
                .collect(),
            params: Arc::clone(&self.params),
        }
    }

    /// Largest `(a, b)` with `x₁^a x₂^b` dividing every term.
    pub fn x_content(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|m| m.ex1).min().unwrap_or(0);
        let b = self.terms.keys().map(|m| m.ex2).min().unwrap_or(0);
        (a, b)
    }

    /// Exact division by `x₁^a x₂^b`; caller guarantees divisibility.
    pub fn div_x_monomial(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!(m.ex1 >= a && m.ex2 >= b);
                    (
                        Mono {
                            ex1: m.ex1 - a,
                            ex2: m.ex2 - b,
                            ..*m
                        },
                        c.clone(),
                    )
                })
                .collect(),
            params: Arc::clone(&self.params),
        }
    }

    pub fn mul_x_monomial(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Mono {
                            ex1: m.ex1 + a,
                            ex2: m.ex2 + b,
                            ..*m
                        },
                        c.clone(),
                    )
                })
                .collect(),
            params: Arc::clone(&self.params),
        }
    }

    /// Exact quotient by `(x₁ − x₂)`, or `None` when it does not divide.
    ///
    /// Synthetic division in `x₁` over `Q[x₂, y₁, y₂]`; y-exponents are untouched
    /// so the quotient stays reduced.
    pub fn div_x1_minus_x2(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        // cheap rejection: p(x₂, x₂, y₁, y₂) must vanish identically
        let mut diag: BTreeMap<(u32, u8, u8), Rat> = BTreeMap::new();
        for (m, c) in &self.terms {
            *diag
                .entry((m.ex1 + m.ex2, m.ey1, m.ey2))
                .or_insert_with(Rat::zero) += c;
        }
        if diag.values().any(|c| !c.is_zero()) {
            return None;
        }
        type Coeff = BTreeMap<(u32, u8, u8), Rat>;
        let mut by_x1: BTreeMap<u32, Coeff> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_x1
                .entry(m.ex1)
                .or_default()
                .insert((m.ex2, m.ey1, m.ey2), c.clone());
        }
        let top = *by_x1.keys().next_back()?;
        // d_{i-1} = c_i + x₂ d_i, descending from d_{top-1} = c_top
        let mut quotient = Self::zero(&self.params);
        let mut carry: Coeff = Coeff::new();
        for i in (1..=top).rev() {
            let mut d: Coeff = by_x1.remove(&i).unwrap_or_default();
            for ((e2, y1, y2), c) in carry {
                let slot = d.entry((e2 + 1, y1, y2)).or_insert_with(Rat::zero);
                *slot += c;
            }
            d.retain(|_, c| !c.is_zero());
            for ((e2, y1, y2), c) in &d {
                accumulate(
                    &mut quotient.terms,
                    Mono::new(i - 1, *e2, *y1, *y2),
                    c.clone(),
                );
            }
            carry = d;
        }
        Some(quotient)
    }

    /// Partial derivative with respect to one of the four symbols, treated as
    /// independent (0: x₁, 1: x₂, 2: y₁, 3: y₂).
    pub(crate) fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.params);
        for (m, c) in &self.terms {
            let (e, dm) = match var {
                0 => (
                    m.ex1,
                    Mono {
                        ex1: m.ex1.saturating_sub(1),
                        ..*m
                    },
                ),
                1 => (
                    m.ex2,
                    Mono {
                        ex2: m.ex2.saturating_sub(1),
                        ..*m
                    },
                ),
                2 => (u32::from(m.ey1), Mono { ey1: 0, ..*m }),
                3 => (u32::from(m.ey2), Mono { ey2: 0, ..*m }),
                _ => unreachable!("variable index out of range"),
            };
            if e > 0 {
                accumulate(&mut out.terms, dm, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    pub(crate) fn from_terms(params: &Arc<CurveParams>, terms: BTreeMap<Mono, Rat>) -> Self {
        let mut p = Self::zero(params);
        for (m, c) in terms {
            accumulate(&mut p.terms, m, c);
        }
        p
    }

    fn mul_into(&self, other: &Self, out: &mut BTreeMap<Mono, Rat>) {
        let lambdas = self.params.lambdas();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                let ex1 = ma.ex1 + mb.ex1;
                let ex2 = ma.ex2 + mb.ex2;
                let ey1 = ma.ey1 + mb.ey1;
                let ey2 = ma.ey2 + mb.ey2;
                match (ey1 == 2, ey2 == 2) {
                    (false, false) => accumulate(out, Mono { ex1, ex2, ey1, ey2 }, c),
                    (true, false) => {
                        for (j, l) in lambdas.iter().enumerate() {
                            if !l.is_zero() {
                                let mono = Mono {
                                    ex1: ex1 + j as u32,
                                    ex2,
                                    ey1: 0,
                                    ey2,
                                };
                                accumulate(out, mono, &c * l);
                            }
                        }
                    }
                    (false, true) => {
                        for (j, l) in lambdas.iter().enumerate() {
                            if !l.is_zero() {
                                let mono = Mono {
                                    ex1,
                                    ex2: ex2 + j as u32,
                                    ey1,
                                    ey2: 0,
                                };
                                accumulate(out, mono, &c * l);
                            }
                        }
                    }
                    (true, true) => {
                        for (i, li) in lambdas.iter().enumerate() {
                            if li.is_zero() {
                                continue;
                            }
                            let ci = &c * li;
                            for (j, lj) in lambdas.iter().enumerate() {
                                if !lj.is_zero() {
                                    let mono = Mono {
                                        ex1: ex1 + i as u32,
                                        ex2: ex2 + j as u32,
                                        ey1: 0,
                                        ey2: 0,
                                    };
                                    accumulate(out, mono, &ci * lj);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            accumulate(&mut out.terms, *m, c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut out.terms, *m, -c.clone());
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(&self.params);
        self.mul_into(rhs, &mut out.terms);
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
            params: Arc::clone(&self.params),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl std::ops::$tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { std::ops::$tr::$f(&self, &rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || *m == Mono::ONE {
                factors.push(a.to_string());
            }
            for (name, e) in [
                ("x1", m.ex1),
                ("x2", m.ex2),
                ("y1", u32::from(m.ey1)),
                ("y2", u32::from(m.ey2)),
            ] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
