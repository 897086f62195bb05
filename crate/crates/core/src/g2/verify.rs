use std::fmt::Write as _;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use super::functions::{build_functions, G2Functions};
use super::identity::{residual, IdentityId};
use crate::error::VerifyError;
use crate::ring::{eval_probe, Branch, CurveParams, Fld, ProbeMode, ProbePoint, ProbeValue, Rat};

/// Decimal digits used when printing witness values; overridden by `PROBE_DIGITS`.
pub fn probe_digits() -> usize {
    std::env::var("PROBE_DIGITS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|d| *d > 0)
        .unwrap_or(30)
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub residual: Fld,
    pub point: ProbePoint,
    pub value: ProbeValue,
}

impl Witness {
    pub fn point_strings(&self) -> Vec<String> {
        vec![
            self.point.x1.to_string(),
            self.point.x2.to_string(),
            self.point.branches[0].symbol().to_string(),
            self.point.branches[1].symbol().to_string(),
        ]
    }
}

#[derive(Clone, Debug)]
pub enum Status {
    ExactZero,
    NonZero(Box<Witness>),
    Skipped(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::ExactZero => "zero",
            Status::NonZero(_) => "nonzero",
            Status::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyEntry {
    pub id: IdentityId,
    pub status: Status,
    pub millis: u64,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub curve: CurveParams,
    pub entries: Vec<VerifyEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JsonEntry {
    pub curve: Vec<String>,
    pub identity: String,
    pub status: &'static str,
    pub witness_point: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_value: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl VerifyReport {
    pub fn count(&self, label: &str) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status.label() == label)
            .count()
    }

    pub fn all_zero(&self) -> bool {
        self.entries
            .iter()
            .all(|e| matches!(e.status, Status::ExactZero))
    }

    pub fn any_nonzero(&self) -> bool {
        self.count("nonzero") > 0
    }

    pub fn status(&self, id: IdentityId) -> Option<&Status> {
        self.entries.iter().find(|e| e.id == id).map(|e| &e.status)
    }

    pub fn json_entries(&self, with_timing: bool) -> Vec<JsonEntry> {
        let digits = probe_digits();
        self.entries
            .iter()
            .map(|e| {
                let (witness_point, witness_value, reason) = match &e.status {
                    Status::ExactZero => (Vec::new(), None, None),
                    Status::NonZero(w) => {
                        let (re, im) = w.value.to_decimal(digits);
                        (w.point_strings(), Some([re, im]), None)
                    }
                    Status::Skipped(r) => (Vec::new(), None, Some(r.clone())),
                };
                JsonEntry {
                    curve: self.curve.to_strings(),
                    identity: e.id.tag().to_string(),
                    status: e.status.label(),
                    witness_point,
                    witness_value,
                    reason,
                    millis: with_timing.then_some(e.millis),
                }
            })
            .collect()
    }

    pub fn table(&self) -> String {
        let mut out = format!("curve {}\n", self.curve);
        let _ = writeln!(out, "{:<8} {:<8} {:>9}  detail", "identity", "status", "ms");
        for e in &self.entries {
            let detail = match &e.status {
                Status::ExactZero => String::new(),
                Status::NonZero(w) => {
                    let (re, im) = w.value.to_decimal(12);
                    format!("at ({}) value {re} + {im}i", w.point_strings().join(", "))
                }
                Status::Skipped(r) => r.clone(),
            };
            let _ = writeln!(
                out,
                "{:<8} {:<8} {:>9}  {detail}",
                e.id.tag(),
                e.status.label(),
                e.millis
            );
        }
        out
    }
}

/// Deterministic probe points with `x₁ > 0 > x₂` of small height.
fn probe_points() -> impl Iterator<Item = ProbePoint> {
    let branches = [
        [Branch::Plus, Branch::Plus],
        [Branch::Plus, Branch::Minus],
        [Branch::Minus, Branch::Plus],
        [Branch::Minus, Branch::Minus],
    ];
    (0..16i64).flat_map(move |k| {
        let x1 = Rat::new((3 * k + 5).into(), 7.into());
        let x2 = Rat::new((-2 * k - 3).into(), 11.into());
        branches
            .into_iter()
            .map(move |b| ProbePoint::new(x1.clone(), x2.clone(), b))
    })
}

/// First probe point where `f` is defined and nonzero.
pub fn find_witness(f: &Fld) -> Option<(ProbePoint, ProbeValue)> {
    probe_points().find_map(|pt| match eval_probe(f, &pt, ProbeMode::Extended) {
        Ok(v) if !v.is_zero() => Some((pt, v)),
        _ => None,
    })
}

/// Turn a reduced residual into a status, attaching a witness when it is nonzero.
pub fn classify(res: Fld) -> Status {
    if res.is_zero() {
        return Status::ExactZero;
    }
    match find_witness(&res) {
        Some((point, value)) => Status::NonZero(Box::new(Witness {
            residual: res,
            point,
            value,
        })),
        None => Status::Skipped("nonzero residual without a usable probe point".into()),
    }
}

/// Wall-clock timer that reads zero on wasm32, where `std` has no clock.
struct Clock(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Clock {
    fn start() -> Self {
        Clock(
            #[cfg(not(target_arch = "wasm32"))]
            std::time::Instant::now(),
        )
    }

    fn millis(&self) -> u64 {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed().as_millis() as u64;
        #[cfg(target_arch = "wasm32")]
        0
    }
}

fn run_one(id: IdentityId, fns: &G2Functions) -> VerifyEntry {
    let clock = Clock::start();
    let status = match residual(id, fns) {
        Ok(r) => classify(r),
        Err(VerifyError::MissingConstraint(why)) => Status::Skipped(why),
        Err(VerifyError::Ring(e)) => Status::Skipped(e.to_string()),
    };
    VerifyEntry {
        id,
        status,
        millis: clock.millis(),
    }
}

/// Check `ids` on a prepared function catalog; entries follow the order of `ids`.
pub fn verify_with(fns: &G2Functions, ids: &[IdentityId]) -> VerifyReport {
    #[cfg(feature = "parallel")]
    let entries = ids.par_iter().map(|id| run_one(*id, fns)).collect();
    #[cfg(not(feature = "parallel"))]
    let entries = ids.iter().map(|id| run_one(*id, fns)).collect();
    VerifyReport {
        curve: (**fns.params()).clone(),
        entries,
    }
}

pub fn verify_all(params: &CurveParams, ids: &[IdentityId]) -> VerifyReport {
    verify_with(&build_functions(params), ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::flow::rat;
    use crate::g2::identity::IdentitySet;

    #[test]
    fn skipped_when_constraints_fail() {
        let p = CurveParams::from_ints([1, 2, 1, 3, 1, 4, 5]).unwrap();
        let report = verify_all(&p, &IdentitySet::JacobiSpecial.ids());
        assert_eq!(report.count("skipped"), 5);
        assert!(
            matches!(report.status(IdentityId::JS1), Some(Status::Skipped(r)) if r == "λ0=0, λ6=0 required")
        );
    }

    #[test]
    fn nonzero_gets_a_witness() {
        let p = std::sync::Arc::new(CurveParams::from_ints([1, 2, 1, 3, 1, 4, 5]).unwrap());
        let f = &Fld::x1(&p) - &Fld::constant(&p, rat(1, 3));
        match classify(f) {
            Status::NonZero(w) => assert!(!w.value.is_zero()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_shape() {
        let p = CurveParams::from_ints([1, 2, 1, 3, 1, 4, 5]).unwrap();
        let report = verify_all(&p, &[IdentityId::IntW, IdentityId::WS1]);
        let js = serde_json::to_value(report.json_entries(false)).unwrap();
        assert_eq!(js[0]["status"], "zero");
        assert_eq!(js[1]["status"], "skipped");
        assert!(js[0].get("millis").is_none());
        assert_eq!(js[0]["curve"][6], "5");
    }
}
