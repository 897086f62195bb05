use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::Args;
use hyperell::g2::{verify_all, Constraint, IdentityId, IdentitySet, VerifyReport};
use hyperell::ring::CurveParams;
use hyperell::sweep::{sweep as run_sweep, SweepConfig};
use serde_json::json;

use crate::output::{verdict, Sink};
use crate::CliError;

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Coefficients λ₀,…,λ₆ of y² = Σ λⱼxʲ, as integers or p/q.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "curve",
        required_unless_present = "curve"
    )]
    lambda: Option<String>,
    /// File containing `lambda = [l0,l1,l2,l3,l4,l5,l6]`.
    #[arg(long)]
    curve: Option<PathBuf>,
}

impl CurveArgs {
    fn params(&self) -> Result<CurveParams, CliError> {
        let text = match (&self.lambda, &self.curve) {
            (Some(l), _) => l.clone(),
            (None, Some(path)) => fs::read_to_string(path)?,
            (None, None) => {
                return Err(CliError::Usage(
                    "one of --lambda or --curve is required".into(),
                ))
            }
        };
        text.parse().map_err(|e| CliError::Usage(format!("{e}")))
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Identity sets or tags, comma separated (weierstrass, jacobi, kummer, ..., all).
    #[arg(long, default_value = "weierstrass")]
    set: String,
    /// Leave per-identity timings out of the report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Identity sets or tags, comma separated.
    #[arg(long, default_value = "weierstrass")]
    set: String,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Constraints on every sampled curve: l0=0, l6=0, l1=l5=4 (comma separated).
    #[arg(long, value_delimiter = ',')]
    constrain: Vec<String>,
    /// Numerators are drawn from [-bound, bound].
    #[arg(long, default_value_t = 100)]
    num_bound: i64,
    /// Denominators are drawn from [1, den-max].
    #[arg(long, default_value_t = 10)]
    den_max: i64,
}

fn identity_list(spec: &str) -> Result<Vec<IdentityId>, CliError> {
    IdentitySet::parse_many(spec).map_err(CliError::Usage)
}

fn parse_constraint(s: &str) -> Result<Constraint, CliError> {
    let norm: String = s.trim().replace('λ', "l").replace(' ', "").to_lowercase();
    match norm.as_str() {
        "l0=0" => Ok(Constraint::Lambda0Zero),
        "l6=0" => Ok(Constraint::Lambda6Zero),
        "l1=l5=4" | "l5=l1=4" => Ok(Constraint::Lambda1Lambda5Four),
        _ => Err(CliError::Usage(format!(
            "unknown constraint {s:?}; use l0=0, l6=0 or l1=l5=4"
        ))),
    }
}

fn counts_json(r: &VerifyReport) -> serde_json::Value {
    json!({ "zero": r.count("zero"), "nonzero": r.count("nonzero"), "skipped": r.count("skipped") })
}

fn report_json(r: &VerifyReport, timing: bool) -> serde_json::Value {
    json!({
        "curve": r.curve.to_strings(),
        "counts": counts_json(r),
        "passed": r.all_zero(),
        "entries": r.json_entries(timing),
    })
}

pub fn verify(args: &VerifyArgs, sink: &Sink) -> Result<bool, CliError> {
    let params = args.curve.params()?;
    let ids = identity_list(&args.set)?;
    let report = verify_all(&params, &ids);
    let summary = format!("{}{}\n", report.table(), verdict(report.all_zero()));
    sink.json(&report_json(&report, !args.no_timing), &summary)?;
    Ok(report.all_zero())
}

pub fn kummer(args: &CurveArgs, sink: &Sink) -> Result<bool, CliError> {
    let params = args.params()?;
    let mut ids = vec![IdentityId::Kum2];
    if Constraint::Lambda6Zero.holds(&params) {
        ids.push(IdentityId::Kum1);
    }
    let report = verify_all(&params, &ids);
    let summary = format!("{}{}\n", report.table(), verdict(report.all_zero()));
    sink.json(&report_json(&report, true), &summary)?;
    Ok(report.all_zero())
}

pub fn half_period(args: &CurveArgs, sink: &Sink) -> Result<bool, CliError> {
    let params = args.params()?;
    let mut ids = IdentitySet::HalfPeriod.ids();
    let gii = Constraint::Lambda1Lambda5Four.holds(&params);
    if gii {
        ids.extend(IdentitySet::Gii.ids());
    }
    let report = verify_all(&params, &ids);
    let gii_match = gii.then(|| {
        IdentitySet::Gii
            .ids()
            .into_iter()
            .all(|id| matches!(report.status(id), Some(hyperell::g2::Status::ExactZero)))
    });
    let mut doc = report_json(&report, true);
    doc["gii_match"] = json!(gii_match);
    let mut summary = report.table();
    match gii_match {
        Some(m) => writeln!(
            summary,
            "G_II map: {}",
            if m { "matches" } else { "DIFFERS" }
        )
        .unwrap(),
        None => writeln!(summary, "G_II map: not applicable (needs λ1 = λ5 = 4)").unwrap(),
    }
    writeln!(summary, "{}", verdict(report.all_zero())).unwrap();
    sink.json(&doc, &summary)?;
    Ok(report.all_zero())
}

pub fn sweep(args: &SweepArgs, sink: &Sink) -> Result<bool, CliError> {
    let ids = identity_list(&args.set)?;
    let constraints = args
        .constrain
        .iter()
        .map(|c| parse_constraint(c))
        .collect::<Result<Vec<_>, _>>()?;
    if args.num_bound < 1 || args.den_max < 1 {
        return Err(CliError::Usage(
            "--num-bound and --den-max must be positive".into(),
        ));
    }
    let config = SweepConfig {
        count: args.count,
        seed: args.seed,
        constraints,
        num_bound: args.num_bound,
        den_max: args.den_max,
    };
    let report = run_sweep(&config, &ids);
    let mut summary = String::new();
    for (i, r) in report.curves.iter().enumerate() {
        let _ = writeln!(
            summary,
            "{i:>4}  zero {:>3}  nonzero {:>3}  skipped {:>3}  {}",
            r.count("zero"),
            r.count("nonzero"),
            r.count("skipped"),
            r.curve
        );
    }
    let _ = writeln!(
        summary,
        "total: {} zero, {} nonzero, {} skipped: {}",
        report.total("zero"),
        report.total("nonzero"),
        report.total("skipped"),
        verdict(report.passed())
    );
    sink.json(&report.to_json(), &summary)?;
    Ok(report.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraints_parse() {
        assert_eq!(parse_constraint("λ0=0").unwrap(), Constraint::Lambda0Zero);
        assert_eq!(parse_constraint("L6 = 0").unwrap(), Constraint::Lambda6Zero);
        assert_eq!(
            parse_constraint("l1=l5=4").unwrap(),
            Constraint::Lambda1Lambda5Four
        );
        assert!(parse_constraint("l2=0").is_err());
    }
}
