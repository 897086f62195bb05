use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::flow::rat;
use super::functions::{Base, Deriv, G2Functions};
use crate::error::VerifyError;
use crate::ring::{CurveParams, Fld, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    Lambda6Zero,
    Lambda0Zero,
    Lambda5NonZero,
    Lambda1NonZero,
    /// λ₁ = λ₅ = 4, the normalization under which the projective map is `G_II`.
    Lambda1Lambda5Four,
}

impl Constraint {
    pub fn holds(self, p: &CurveParams) -> bool {
        let four = rat(4, 1);
        match self {
            Constraint::Lambda6Zero => p.lambda(6).is_zero(),
            Constraint::Lambda0Zero => p.lambda(0).is_zero(),
            Constraint::Lambda5NonZero => !p.lambda(5).is_zero(),
            Constraint::Lambda1NonZero => !p.lambda(1).is_zero(),
            Constraint::Lambda1Lambda5Four => *p.lambda(1) == four && *p.lambda(5) == four,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Constraint::Lambda6Zero => "λ6=0",
            Constraint::Lambda0Zero => "λ0=0",
            Constraint::Lambda5NonZero => "λ5≠0",
            Constraint::Lambda1NonZero => "λ1≠0",
            Constraint::Lambda1Lambda5Four => "λ1=λ5=4",
        }
    }
}

macro_rules! identities {
    ($( $v:ident => $tag:literal, [$($c:ident),*], $what:literal; )*) => {
        /// Catalog of exactly checkable genus-two relations.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId { $($v),* }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$v),*];

            pub fn tag(self) -> &'static str {
                match self { $(IdentityId::$v => $tag),* }
            }

            pub fn required_constraints(self) -> &'static [Constraint] {
                match self { $(IdentityId::$v => &[$(Constraint::$c),*]),* }
            }

            pub fn description(self) -> &'static str {
                match self { $(IdentityId::$v => $what),* }
            }
        }
    };
}

identities! {
    W1 => "W1", [Lambda5NonZero], "℘2222 equation, Weierstrass type";
    W2 => "W2", [Lambda5NonZero], "℘2221 equation, Weierstrass type";
    W3 => "W3", [Lambda5NonZero], "℘2211 equation, Weierstrass type";
    W4 => "W4", [Lambda5NonZero], "℘2111 equation, Weierstrass type";
    W5 => "W5", [Lambda5NonZero], "Q11 equation, Weierstrass type";
    W6 => "W6", [Lambda5NonZero], "Q21 equation, Weierstrass type";
    W7 => "W7", [Lambda5NonZero], "Q22 equation, Weierstrass type";
    IntR1 => "INT-R1", [], "∂ℜ22/∂u1 = ∂ℜ21/∂u2";
    IntR2 => "INT-R2", [], "∂ℜ21/∂u1 = ∂ℜ11/∂u2";
    IntW => "INT-W", [], "∂℘22/∂u1 = ∂℘21/∂u2";
    IntWQ => "INT-WQ", [Lambda6Zero], "∂℘21/∂u1 = ∂Q/∂u2";
    Y1Y2 => "Y1Y2", [], "y1y2 = -2(x1-x2)²Q + F/2";
    Kum1 => "KUM1", [Lambda6Zero], "standard Kummer quartic K1 = 0";
    Kum2 => "KUM2", [Lambda5NonZero], "generalized Kummer relation K2 = 0";
    WS1 => "WS1", [Lambda0Zero, Lambda6Zero], "℘2222 equation, λ0=λ6=0";
    WS2 => "WS2", [Lambda0Zero, Lambda6Zero], "℘2221 equation, λ0=λ6=0";
    WS3 => "WS3", [Lambda0Zero, Lambda6Zero], "℘2211 equation, λ0=λ6=0";
    WS4 => "WS4", [Lambda0Zero, Lambda6Zero], "℘2111 equation, λ0=λ6=0";
    WS5 => "WS5", [Lambda0Zero, Lambda6Zero], "℘1111 equation, λ0=λ6=0";
    J1 => "J1", [Lambda1NonZero], "℘̂2221 equation, Jacobi type";
    J2 => "J2", [Lambda1NonZero], "℘̂2211 equation, Jacobi type";
    J3 => "J3", [Lambda1NonZero], "℘̂2111 equation, Jacobi type";
    J4 => "J4", [Lambda1NonZero], "℘̂1111 equation, Jacobi type";
    J5 => "J5", [Lambda1NonZero], "Q̂11 equation, Jacobi type";
    J6 => "J6", [Lambda1NonZero], "Q̂21 equation, Jacobi type";
    J7 => "J7", [Lambda1NonZero], "Q̂22 equation, Jacobi type";
    IntJ => "INT-J", [], "∂℘̂21/∂u1 = ∂℘̂11/∂u2";
    IntJQ => "INT-JQ", [Lambda0Zero], "∂Q̂/∂u1 = ∂℘̂21/∂u2";
    JS1 => "JS1", [Lambda0Zero, Lambda6Zero], "℘̂2222 equation, λ0=λ6=0";
    JS2 => "JS2", [Lambda0Zero, Lambda6Zero], "℘̂2221 equation, λ0=λ6=0";
    JS3 => "JS3", [Lambda0Zero, Lambda6Zero], "℘̂2211 equation, λ0=λ6=0";
    JS4 => "JS4", [Lambda0Zero, Lambda6Zero], "℘̂2111 equation, λ0=λ6=0";
    JS5 => "JS5", [Lambda0Zero, Lambda6Zero], "℘̂1111 equation, λ0=λ6=0";
    Hp1 => "HP1", [Lambda0Zero, Lambda6Zero, Lambda1NonZero, Lambda5NonZero], "℘̂22 = -(λ5/4)℘11/℘21";
    Hp2 => "HP2", [Lambda0Zero, Lambda6Zero, Lambda1NonZero, Lambda5NonZero], "℘̂21 = (λ1λ5/16)/℘21";
    Hp3 => "HP3", [Lambda0Zero, Lambda6Zero, Lambda1NonZero, Lambda5NonZero], "℘̂11 = -(λ1/4)℘22/℘21";
    Gii1 => "GII1", [Lambda0Zero, Lambda6Zero, Lambda1Lambda5Four], "G_II image of ℘22 equals ℘̂22";
    Gii2 => "GII2", [Lambda0Zero, Lambda6Zero, Lambda1Lambda5Four], "G_II image of ℘21 equals ℘̂21";
    Gii3 => "GII3", [Lambda0Zero, Lambda6Zero, Lambda1Lambda5Four], "G_II image of ℘11 equals ℘̂11";
}

impl IdentityId {
    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.tag().eq_ignore_ascii_case(tag))
    }

    pub fn violated_constraints(self, p: &CurveParams) -> Vec<Constraint> {
        self.required_constraints()
            .iter()
            .copied()
            .filter(|c| !c.holds(p))
            .collect()
    }

    /// `"λ0=0, λ6=0 required"` style message, or `None` when the curve qualifies.
    pub fn skip_reason(self, p: &CurveParams) -> Option<String> {
        let v = self.violated_constraints(p);
        if v.is_empty() {
            return None;
        }
        let names: Vec<&str> = v.iter().map(|c| c.describe()).collect();
        Some(format!("{} required", names.join(", ")))
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Named groups of identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentitySet {
    Weierstrass,
    WeierstrassSpecial,
    Jacobi,
    JacobiSpecial,
    Kummer,
    Integrability,
    HalfPeriod,
    Gii,
    Structure,
    All,
}

impl IdentitySet {
    pub const NAMES: &'static [(&'static str, IdentitySet)] = &[
        ("weierstrass", IdentitySet::Weierstrass),
        ("weierstrass-special", IdentitySet::WeierstrassSpecial),
        ("jacobi", IdentitySet::Jacobi),
        ("jacobi-special", IdentitySet::JacobiSpecial),
        ("kummer", IdentitySet::Kummer),
        ("integrability", IdentitySet::Integrability),
        ("half-period", IdentitySet::HalfPeriod),
        ("gii", IdentitySet::Gii),
        ("structure", IdentitySet::Structure),
        ("all", IdentitySet::All),
    ];

    pub fn ids(self) -> Vec<IdentityId> {
        use IdentityId::*;
        match self {
            IdentitySet::Weierstrass => vec![W1, W2, W3, W4, W5, W6, W7],
            IdentitySet::WeierstrassSpecial => vec![WS1, WS2, WS3, WS4, WS5],
            IdentitySet::Jacobi => vec![J1, J2, J3, J4, J5, J6, J7],
            IdentitySet::JacobiSpecial => vec![JS1, JS2, JS3, JS4, JS5],
            IdentitySet::Kummer => vec![Kum1, Kum2],
            IdentitySet::Integrability => vec![IntR1, IntR2, IntW, IntWQ, IntJ, IntJQ],
            IdentitySet::HalfPeriod => vec![Hp1, Hp2, Hp3],
            IdentitySet::Gii => vec![Gii1, Gii2, Gii3],
            IdentitySet::Structure => vec![Y1Y2],
            IdentitySet::All => IdentityId::ALL.to_vec(),
        }
    }

    /// Union of sets written `a,b` or `a+b`; tags such as `W3` are accepted as singletons.
    pub fn parse_many(spec: &str) -> Result<Vec<IdentityId>, String> {
        let mut out: Vec<IdentityId> = Vec::new();
        for part in spec
            .split([',', '+'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            let ids = if let Ok(set) = part.parse::<IdentitySet>() {
                set.ids()
            } else if let Some(id) = IdentityId::from_tag(part) {
                vec![id]
            } else {
                let alias = match part.to_ascii_lowercase().as_str() {
                    "w" => Some(IdentitySet::Weierstrass),
                    "ws" => Some(IdentitySet::WeierstrassSpecial),
                    "j" => Some(IdentitySet::Jacobi),
                    "js" => Some(IdentitySet::JacobiSpecial),
                    "hp" => Some(IdentitySet::HalfPeriod),
                    "kum" => Some(IdentitySet::Kummer),
                    "int" => Some(IdentitySet::Integrability),
                    _ => None,
                };
                alias
                    .ok_or_else(|| format!("unknown identity set or tag: {part:?}"))?
                    .ids()
            };
            out.extend(ids);
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err("empty identity set".into());
        }
        Ok(out)
    }
}

impl FromStr for IdentitySet {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::NAMES
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(s))
            .map(|(_, v)| *v)
            .ok_or_else(|| format!("unknown identity set {s:?}"))
    }
}

/// `base + Σ cᵢ·termᵢ`, skipping zero coefficients.
fn combo(base: Fld, terms: &[(Rat, &Fld)]) -> Fld {
    terms.iter().fold(
        base,
        |acc, (c, t)| if c.is_zero() { acc } else { &acc + &t.scale(c) },
    )
}

/// Exact 4×4 determinant by cofactor expansion along the first row.
pub fn det4(m: &[[Fld; 4]; 4]) -> Fld {
    fn det3(m: [[&Fld; 3]; 3]) -> Fld {
        let minor = |a: &Fld, b: &Fld, c: &Fld, d: &Fld| &(a * d) - &(b * c);
        let t0 = m[0][0] * &minor(m[1][1], m[1][2], m[2][1], m[2][2]);
        let t1 = m[0][1] * &minor(m[1][0], m[1][2], m[2][0], m[2][2]);
        let t2 = m[0][2] * &minor(m[1][0], m[1][1], m[2][0], m[2][1]);
        &(&t0 - &t1) + &t2
    }
    let params = m[0][0].params().clone();
    let mut acc = Fld::zero(&params);
    for col in 0..4 {
        if m[0][col].is_zero() {
            continue;
        }
        let rows: Vec<[&Fld; 3]> = (1..4)
            .map(|r| {
                let mut it = (0..4).filter(|c| *c != col).map(|c| &m[r][c]);
                [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
            })
            .collect();
        let cof = &m[0][col] * &det3([rows[0], rows[1], rows[2]]);
        acc = if col % 2 == 0 {
            &acc + &cof
        } else {
            &acc - &cof
        };
    }
    acc
}

/// `K₁`: the Kummer determinant in `X = ℘₂₂, Y = ℘₂₁, Z = Q`.
pub fn kummer_k1(fns: &G2Functions) -> Result<Fld, VerifyError> {
    let (x, y) = fns.require_weierstrass()?;
    let z = &fns.q;
    let p = fns.params();
    let l = |j: usize| fns.lambda(j);
    let c = |r: Rat| Fld::constant(p, r);
    let two = rat(2, 1);
    let m = [
        [
            c(-l(0)),
            c(l(1) * rat(1, 2)),
            z.scale(&two),
            y.scale(&-two.clone()),
        ],
        [
            c(l(1) * rat(1, 2)),
            &c(-l(2)) - &z.scale(&rat(4, 1)),
            &c(l(3) * rat(1, 2)) + &y.scale(&two),
            x.scale(&two),
        ],
        [
            z.scale(&two),
            &c(l(3) * rat(1, 2)) + &y.scale(&two),
            &c(-l(4)) - &x.scale(&rat(4, 1)),
            c(l(5) * rat(1, 2)),
        ],
        [
            y.scale(&-two.clone()),
            x.scale(&two),
            c(l(5) * rat(1, 2)),
            Fld::zero(p),
        ],
    ];
    Ok(det4(&m))
}

/// `K₂ = K₁ + (4λ₆/λ₅²)(…)`.
pub fn kummer_k2(fns: &G2Functions) -> Result<Fld, VerifyError> {
    let k1 = kummer_k1(fns)?;
    let (x, y) = fns.require_weierstrass()?;
    let z = &fns.q;
    let l = |j: usize| fns.lambda(j);
    if l(6).is_zero() {
        return Ok(k1);
    }
    let x2 = x * x;
    let y2 = y * y;
    let x2y = &x2 * y;
    let xy2 = x * &y2;
    let x4 = &x2 * &x2;
    let x3y = &x2y * x;
    let x2y2 = &x2 * &y2;
    let xy3 = &xy2 * y;
    let y4 = &y2 * &y2;
    let y3z = &(&y2 * y) * z;
    let s16 = rat(16, 1);
    let inner = combo(
        Fld::zero(fns.params()),
        &[
            (-(l(0) * l(5) * l(5)), &y2),
            (rat(-8, 1) * l(0) * l(5), &x2y),
            (rat(4, 1) * l(1) * l(5), &xy2),
            (-&s16 * l(0), &x4),
            (&s16 * l(1), &x3y),
            (-&s16 * l(2), &x2y2),
            (&s16 * l(3), &xy3),
            (-&s16 * l(4), &y4),
            (&s16 * l(5), &y3z),
        ],
    );
    let pref = rat(4, 1) * l(6) / (l(5) * l(5));
    Ok(&k1 + &inner.scale(&pref))
}

/// The three half-period residuals on a λ₀ = λ₆ = 0 curve, with `℘₁₁ := Q` and `℘̂₂₂ := Q̂`.
pub fn halfperiod_check(fns: &G2Functions) -> Result<[Fld; 3], VerifyError> {
    for id in [IdentityId::Hp1, IdentityId::Hp2, IdentityId::Hp3] {
        if let Some(why) = id.skip_reason(fns.params()) {
            return Err(VerifyError::MissingConstraint(why));
        }
    }
    Ok([
        residual(IdentityId::Hp1, fns)?,
        residual(IdentityId::Hp2, fns)?,
        residual(IdentityId::Hp3, fns)?,
    ])
}

/// `G_II`: rows give numerators `(a, b, c)` and the shared denominator `d` of the
/// projective map on `(℘₂₂, ℘₂₁, ℘₁₁, 1)`.
pub const G_II: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]];

/// Apply a projective `4×4` integer matrix to `(℘₂₂, ℘₂₁, ℘₁₁)`.
pub fn projective_image(fns: &G2Functions, g: &[[i64; 4]; 4]) -> Result<[Fld; 3], VerifyError> {
    let (p22, p21) = fns.require_weierstrass()?;
    let p = fns.params();
    let one = Fld::one(p);
    let v = [p22, p21, &fns.q, &one];
    let row = |r: &[i64; 4]| {
        let terms: Vec<(Rat, &Fld)> = r.iter().zip(v).map(|(c, f)| (rat(*c, 1), f)).collect();
        combo(Fld::zero(p), &terms)
    };
    let den = row(&g[3]);
    let out = [row(&g[0]), row(&g[1]), row(&g[2])];
    let div = |n: &Fld| n.checked_div(&den).map_err(VerifyError::from);
    Ok([div(&out[0])?, div(&out[1])?, div(&out[2])?])
}

/// `D₁℘₂₁ − D₂Q`; vanishes iff λ₆ = 0. Reported, no closed form asserted.
pub fn weierstrass_q_defect(fns: &G2Functions) -> Result<Fld, VerifyError> {
    Ok(fns.deriv(Base::P21, Deriv::D1)? - fns.deriv(Base::Q, Deriv::D2)?)
}

/// Assemble the residual of `id`; it reduces to the zero field element iff the relation holds.
pub fn residual(id: IdentityId, fns: &G2Functions) -> Result<Fld, VerifyError> {
    use IdentityId::*;
    if let Some(why) = id.skip_reason(fns.params()) {
        return Err(VerifyError::MissingConstraint(why));
    }
    let p = fns.params();
    let l = |j: usize| fns.lambda(j);
    let one = Fld::one(p);
    let zero = Fld::zero(p);
    let d = |b: Base, k: Deriv| fns.deriv(b, k).cloned();
    let r = rat;

    Ok(match id {
        W1 | W2 | W3 | W4 | W5 | W6 | W7 => {
            let (x, y) = fns.require_weierstrass()?;
            let z = &fns.q;
            let (l0, l1, l2, l3, l4, l5, l6) = (l(0), l(1), l(2), l(3), l(4), l(5), l(6));
            let l55 = &l5 * &l5;
            let kappa = r(32, 1) * &l6 / &l55;
            match id {
                W1 => {
                    let x2 = x * x;
                    let x3 = &x2 * x;
                    let xy = x * y;
                    combo(
                        d(Base::P22, Deriv::D22)?,
                        &[
                            (-kappa, &x3),
                            (r(-12, 1) * &l6 / &l5, &xy),
                            (r(-6, 1), &x2),
                            (-l4, x),
                            (-l5.clone(), y),
                            (-(&l3 * &l5) / r(8, 1), &one),
                        ],
                    )
                }
                W2 => {
                    let x2y = &(x * x) * y;
                    let y2 = y * y;
                    let xy = x * y;
                    combo(
                        d(Base::P22, Deriv::D12)?,
                        &[
                            (-kappa, &x2y),
                            (r(-4, 1) * &l6 / &l5, &y2),
                            (r(-6, 1), &xy),
                            (-l4, y),
                            (&l5 / r(2, 1), z),
                        ],
                    )
                }
                W3 => {
                    let y2 = y * y;
                    let xy2 = x * &y2;
                    let xz = x * z;
                    combo(
                        d(Base::P22, Deriv::D11)?,
                        &[
                            (-kappa, &xy2),
                            (r(-2, 1), &xz),
                            (r(-4, 1), &y2),
                            (-l3 / r(2, 1), y),
                        ],
                    )
                }
                W4 => {
                    let y3 = &(y * y) * y;
                    let yz = y * z;
                    combo(
                        d(Base::P21, Deriv::D11)?,
                        &[
                            (-kappa, &y3),
                            (r(-6, 1), &yz),
                            (&l1 / r(2, 1), x),
                            (-l2, y),
                            (&l0 * &l5 / r(4, 1), &one),
                        ],
                    )
                }
                W5 => {
                    let y2z = &(y * y) * z;
                    let x2 = x * x;
                    let xy = x * y;
                    let z2 = z * z;
                    combo(
                        d(Base::Q, Deriv::D11)?,
                        &[
                            (-kappa, &y2z),
                            (r(16, 1) * &l0 * &l6 / &l55, &x2),
                            (r(-8, 1) * &l1 * &l6 / &l55, &xy),
                            (r(-6, 1), &z2),
                            (r(3, 1) * &l0, x),
                            (-(&l1 - r(2, 1) * &l0 * &l6 / &l5), y),
                            (-l2, z),
                            (&l0 * &l4 / r(2, 1) - &l1 * &l3 / r(8, 1), &one),
                        ],
                    )
                }
                W6 => {
                    let xyz = &(x * y) * z;
                    let x2 = x * x;
                    let xy = x * y;
                    let y2 = y * y;
                    let yz = y * z;
                    combo(
                        d(Base::Q, Deriv::D12)?,
                        &[
                            (-kappa, &xyz),
                            (r(4, 1) * &l1 * &l6 / &l55, &x2),
                            (r(-8, 1) * &l2 * &l6 / &l55, &xy),
                            (r(4, 1) * &l3 * &l6 / &l55, &y2),
                            (r(-6, 1), &yz),
                            (r(2, 1) * &l0 * &l6 / &l5 + &l1 / r(2, 1), x),
                            (-l2, y),
                            (&l0 * &l5 / r(4, 1), &one),
                        ],
                    )
                }
                W7 => {
                    let x2z = &(x * x) * z;
                    let y2 = y * y;
                    let xy = x * y;
                    let xz = x * z;
                    let yz = y * z;
                    combo(
                        d(Base::Q, Deriv::D22)?,
                        &[
                            (-kappa, &x2z),
                            (r(16, 1) * &l4 * &l6 / &l55 - r(4, 1), &y2),
                            (r(-8, 1) * &l3 * &l6 / &l55, &xy),
                            (r(-2, 1), &xz),
                            (r(-20, 1) * &l6 / &l5, &yz),
                            (&l1 * &l6 / &l5, x),
                            (r(-2, 1) * &l2 * &l6 / &l5 - &l3 / r(2, 1), y),
                            (&l0 * &l6 / r(2, 1), &one),
                        ],
                    )
                }
                _ => unreachable!(),
            }
        }
        WS1 | WS2 | WS3 | WS4 | WS5 | JS1 | JS2 | JS3 | JS4 | JS5 => {
            // same system for (℘₂₂, ℘₂₁, ℘₁₁) = (℘₂₂, ℘₂₁, Q) or (Q̂, ℘̂₂₁, ℘̂₁₁)
            let hatted = matches!(id, JS1 | JS2 | JS3 | JS4 | JS5);
            let (b22, b21, b11) = if hatted {
                (Base::Hq, Base::Hp21, Base::Hp11)
            } else {
                (Base::P22, Base::P21, Base::Q)
            };
            let (a22, a21, a11) = (fns.base(b22)?, fns.base(b21)?, fns.base(b11)?);
            let (l1, l2, l3, l4, l5) = (l(1), l(2), l(3), l(4), l(5));
            match id {
                WS1 | JS1 => {
                    let sq = a22 * a22;
                    combo(
                        d(b22, Deriv::D22)?,
                        &[
                            (r(-6, 1), &sq),
                            (-l4, a22),
                            (-l5.clone(), a21),
                            (-(&l3 * &l5) / r(8, 1), &one),
                        ],
                    )
                }
                WS2 | JS2 => {
                    let pr = a22 * a21;
                    combo(
                        d(b22, Deriv::D12)?,
                        &[(r(-6, 1), &pr), (-l4, a21), (&l5 / r(2, 1), a11)],
                    )
                }
                WS3 | JS3 => {
                    let pr = a22 * a11;
                    let sq = a21 * a21;
                    combo(
                        d(b22, Deriv::D11)?,
                        &[(r(-2, 1), &pr), (r(-4, 1), &sq), (-l3 / r(2, 1), a21)],
                    )
                }
                WS4 | JS4 => {
                    let pr = a21 * a11;
                    combo(
                        d(b21, Deriv::D11)?,
                        &[(r(-6, 1), &pr), (&l1 / r(2, 1), a22), (-l2, a21)],
                    )
                }
                WS5 | JS5 => {
                    let sq = a11 * a11;
                    combo(
                        d(b11, Deriv::D11)?,
                        &[
                            (r(-6, 1), &sq),
                            (-l1.clone(), a21),
                            (-l2, a11),
                            (-(&l1 * &l3) / r(8, 1), &one),
                        ],
                    )
                }
                _ => unreachable!(),
            }
        }
        J1 | J2 | J3 | J4 | J5 | J6 | J7 => {
            let (a, b) = fns.require_jacobi()?;
            let c = &fns.hq;
            let (l0, l1, l2, l3, l4, l5, l6) = (l(0), l(1), l(2), l(3), l(4), l(5), l(6));
            let l11 = &l1 * &l1;
            let kappa = r(32, 1) * &l0 / &l11;
            match id {
                J1 => {
                    let bc = b * c;
                    let b3 = &(b * b) * b;
                    combo(
                        d(Base::Hp21, Deriv::D22)?,
                        &[
                            (r(-6, 1), &bc),
                            (-l4, b),
                            (&l5 / r(2, 1), a),
                            (-kappa, &b3),
                            (&l1 * &l6 / r(4, 1), &one),
                        ],
                    )
                }
                J2 => {
                    let ac = a * c;
                    let b2 = b * b;
                    let b2a = &b2 * a;
                    combo(
                        d(Base::Hp11, Deriv::D22)?,
                        &[
                            (r(-2, 1), &ac),
                            (r(-4, 1), &b2),
                            (-l3 / r(2, 1), b),
                            (-kappa, &b2a),
                        ],
                    )
                }
                J3 => {
                    let ba = b * a;
                    let b2 = b * b;
                    let ba2 = &ba * a;
                    combo(
                        d(Base::Hp11, Deriv::D12)?,
                        &[
                            (r(-6, 1), &ba),
                            (&l1 / r(2, 1), c),
                            (-l2, b),
                            (r(-4, 1) * &l0 / &l1, &b2),
                            (-kappa, &ba2),
                        ],
                    )
                }
                J4 => {
                    let a2 = a * a;
                    let ba = b * a;
                    let a3 = &a2 * a;
                    combo(
                        d(Base::Hp11, Deriv::D11)?,
                        &[
                            (r(-6, 1), &a2),
                            (-l1.clone(), b),
                            (-l2, a),
                            (r(-12, 1) * &l0 / &l1, &ba),
                            (-kappa, &a3),
                            (-(&l1 * &l3) / r(8, 1), &one),
                        ],
                    )
                }
                J5 => {
                    let ac = a * c;
                    let b2 = b * b;
                    let bc = b * c;
                    let ba = b * a;
                    let a2c = &(a * a) * c;
                    combo(
                        d(Base::Hq, Deriv::D11)?,
                        &[
                            (r(-2, 1), &ac),
                            (-(r(4, 1) - r(16, 1) * &l0 * &l2 / &l11), &b2),
                            (&l0 * &l5 / &l1, a),
                            (-(&l3 / r(2, 1) + r(2, 1) * &l0 * &l4 / &l1), b),
                            (r(-20, 1) * &l0 / &l1, &bc),
                            (r(-8, 1) * &l0 * &l3 / &l11, &ba),
                            (-kappa, &a2c),
                            (&l0 * &l6 / r(2, 1), &one),
                        ],
                    )
                }
                J6 => {
                    let bc = b * c;
                    let b2 = b * b;
                    let ba = b * a;
                    let a2 = a * a;
                    let bac = &ba * c;
                    combo(
                        d(Base::Hq, Deriv::D12)?,
                        &[
                            (r(-6, 1), &bc),
                            (-l4.clone(), b),
                            (&l5 / r(2, 1) + r(2, 1) * &l0 * &l6 / &l1, a),
                            (r(4, 1) * &l0 * &l3 / &l11, &b2),
                            (r(-8, 1) * &l0 * &l4 / &l11, &ba),
                            (r(4, 1) * &l0 * &l5 / &l11, &a2),
                            (-kappa, &bac),
                            (&l1 * &l6 / r(4, 1), &one),
                        ],
                    )
                }
                J7 => {
                    let c2 = c * c;
                    let ba = b * a;
                    let a2 = a * a;
                    let b2c = &(b * b) * c;
                    combo(
                        d(Base::Hq, Deriv::D22)?,
                        &[
                            (r(-6, 1), &c2),
                            (-l4, c),
                            (r(3, 1) * &l6, a),
                            (-(&l5 - r(2, 1) * &l0 * &l6 / &l1), b),
                            (r(-8, 1) * &l0 * &l5 / &l11, &ba),
                            (r(16, 1) * &l0 * &l6 / &l11, &a2),
                            (-kappa, &b2c),
                            (&l2 * &l6 / r(2, 1) - &l3 * &l5 / r(8, 1), &one),
                        ],
                    )
                }
                _ => unreachable!(),
            }
        }
        IntR1 => &d(Base::R22, Deriv::D1)? - &d(Base::R21, Deriv::D2)?,
        IntR2 => &d(Base::R21, Deriv::D1)? - &d(Base::R11, Deriv::D2)?,
        IntW => &d(Base::P22, Deriv::D1)? - &d(Base::P21, Deriv::D2)?,
        IntWQ => weierstrass_q_defect(fns)?,
        IntJ => &d(Base::Hp21, Deriv::D1)? - &d(Base::Hp11, Deriv::D2)?,
        IntJQ => &d(Base::Hq, Deriv::D1)? - &d(Base::Hp21, Deriv::D2)?,
        Y1Y2 => {
            let x1 = Fld::x1(p);
            let x2 = Fld::x2(p);
            let diff = &x1 - &x2;
            let y1y2 = &Fld::y1(p) * &Fld::y2(p);
            let lhs = (&(&diff * &diff) * &fns.q).scale(&r(4, 1));
            &(&lhs + &y1y2.scale(&r(2, 1))) - &Fld::from_poly(fns.f_poly.clone())
        }
        Kum1 => kummer_k1(fns)?,
        Kum2 => kummer_k2(fns)?,
        Hp1 | Hp2 | Hp3 => {
            let (p22, p21) = fns.require_weierstrass()?;
            let (hp11, hp21) = fns.require_jacobi()?;
            let (l1, l5) = (l(1), l(5));
            match id {
                Hp1 => &fns.hq + &fns.q.checked_div(p21)?.scale(&(&l5 / r(4, 1))),
                Hp2 => hp21 - &p21.inv()?.scale(&(&l1 * &l5 / r(16, 1))),
                Hp3 => hp11 + &p22.checked_div(p21)?.scale(&(&l1 / r(4, 1))),
                _ => unreachable!(),
            }
        }
        Gii1 | Gii2 | Gii3 => {
            let image = projective_image(fns, &G_II)?;
            let (hp11, hp21) = fns.require_jacobi()?;
            match id {
                Gii1 => &image[0] - &fns.hq,
                Gii2 => &image[1] - hp21,
                Gii3 => &image[2] - hp11,
                _ => unreachable!(),
            }
        }
    })
    .map(|f| if f.is_zero() { zero } else { f })
}

/// Constant helper kept public for tests that assemble custom residuals.
pub fn constant(fns: &G2Functions, c: Rat) -> Fld {
    if c.is_one() {
        Fld::one(fns.params())
    } else {
        Fld::constant(fns.params(), c)
    }
}
