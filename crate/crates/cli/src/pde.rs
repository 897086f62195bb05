use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use hyperell::pde::{
    akns_commutator_residual, akns_d, conserved_quantities, evolve_with, gmkdv_cnoidal, gmkdv_d,
    gmkdv_soliton, kdv_soliton, miura_map, step_count, AKNSParams, CnoidalWave, Equation, Field1D,
    Grid1D, JetPoint, ResidualMonitor,
};
use hyperell::PdeError;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::args::InitSpec;
use crate::output::{verdict, Sink};
use crate::CliError;

#[derive(Debug, Args)]
pub struct AknsArgs {
    /// Random jets per parameter draw.
    #[arg(long, default_value_t = 1000)]
    jets: usize,
    /// Random (η, b) draws.
    #[arg(long, default_value_t = 20)]
    draws: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Bound on the diagonal and on |M₁₂ + M₂₁|.
    #[arg(long, default_value_t = 1e-13)]
    tol_diag: f64,
    /// Relative bound on |M₁₂ − D|.
    #[arg(long, default_value_t = 1e-12)]
    tol_rel: f64,
}

fn random_complex(
    rng: &mut ChaCha8Rng,
    re: std::ops::Range<f64>,
    im: std::ops::Range<f64>,
) -> Complex64 {
    Complex64::new(rng.gen_range(re), rng.gen_range(im))
}

pub fn akns(args: &AknsArgs, sink: &Sink) -> Result<bool, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (mut diag, mut anti, mut rel, mut bridge) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..args.draws {
        let eta = random_complex(&mut rng, 0.2..1.5, -0.5..0.5);
        let b = random_complex(&mut rng, -2.0..2.0, -0.5..0.5);
        let p = AKNSParams::new(eta, b);
        for _ in 0..args.jets {
            let mut c = || random_complex(&mut rng, -1.0..1.0, -1.0..1.0);
            let jet = JetPoint {
                v: c(),
                v_x: c(),
                v_xx: c(),
                v_xxx: c(),
                v_t: c(),
            };
            let m = akns_commutator_residual(&jet, &p);
            let d = akns_d(&jet, &p);
            diag = diag.max(m[0][0].norm()).max(m[1][1].norm());
            anti = anti.max((m[0][1] + m[1][0]).norm());
            rel = rel.max((m[0][1] - d).norm() / d.norm().max(f64::MIN_POSITIVE));
            let i = Complex64::i();
            let bridged = akns_d(&jet.times_i(), &p) / i - gmkdv_d(&jet, p.a());
            bridge = bridge.max(bridged.norm() / (1.0 + d.norm()));
        }
    }
    let unit = AKNSParams::new(Complex64::new(0.9, 0.3), Complex64::new(1.0, 0.0));
    let a_zero = unit.a() == Complex64::new(0.0, 0.0);
    let ok = diag < args.tol_diag
        && anti < args.tol_diag
        && rel < args.tol_rel
        && a_zero
        && bridge < args.tol_rel;
    let doc = json!({
        "jets": args.jets,
        "draws": args.draws,
        "seed": args.seed,
        "max_diagonal": diag,
        "max_antisymmetry": anti,
        "max_offdiagonal_relative": rel,
        "max_imaginary_bridge": bridge,
        "b_one_gives_a_zero": a_zero,
        "passed": ok,
    });
    let summary = format!(
        "diagonal {diag:.2e}, M12+M21 {anti:.2e}, |M12 - D|/|D| {rel:.2e}, v -> iv bridge {bridge:.2e}, b=1 -> a=0: {a_zero}\n{}\n",
        verdict(ok)
    );
    sink.json(&doc, &summary)?;
    Ok(ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EqKind {
    Kdv,
    Gmkdv,
}

#[derive(Debug, Args)]
pub struct PdeArgs {
    #[arg(long = "eq", value_enum, default_value_t = EqKind::Kdv)]
    eq: EqKind,
    /// Linear coefficient a of generalized mKdV; a stationary cnoidal run picks its own when omitted.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Grid points (power of two, at least 32).
    #[arg(long, default_value_t = 256)]
    n: usize,
    /// Domain length.
    #[arg(long = "L", default_value_t = 40.0)]
    length: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, default_value_t = 1.0)]
    t_end: f64,
    /// soliton:c=<speed>[,x0=<pos>] | cnoidal:k=<modulus>[,c=<speed>] | file:<path>
    #[arg(long, default_value = "soliton:c=1")]
    init: InitSpec,
    /// Write snapshots as CSV `t,x,re,im` to this file.
    #[arg(long)]
    snapshots: Option<PathBuf>,
    /// Steps between snapshots (default: ten snapshots per run).
    #[arg(long)]
    every: Option<usize>,
    /// Bound on the PDE residuals.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Bound on the relative drift of the conserved quantities.
    #[arg(long, default_value_t = 1e-7)]
    drift_tol: f64,
}

/// Rows `x,re,im` or `t,x,re,im` (the latest `t` wins); non-numeric lines are skipped.
fn read_field(
    path: &Path,
    grid: Grid1D,
    role: hyperell::pde::FieldRole,
) -> Result<Field1D, CliError> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<(f64, Complex64)> = Vec::new();
    let mut latest = f64::NEG_INFINITY;
    for line in text.lines() {
        let Ok(cols) = line
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
        else {
            continue;
        };
        let (t, re, im) = match cols[..] {
            [_, re, im] => (0.0, re, im),
            [t, _, re, im] => (t, re, im),
            _ => {
                return Err(CliError::Usage(format!(
                    "{}: expected 3 or 4 columns, got {line:?}",
                    path.display()
                )))
            }
        };
        if t > latest {
            latest = t;
            rows.clear();
        }
        if t == latest {
            rows.push((t, Complex64::new(re, im)));
        }
    }
    if rows.len() != grid.n() {
        return Err(CliError::Usage(format!(
            "{}: found {} samples, grid has {}",
            path.display(),
            rows.len(),
            grid.n()
        )));
    }
    Ok(Field1D::from_samples(
        grid,
        role,
        rows.into_iter().map(|r| r.1).collect(),
    )?)
}

fn initial(args: &PdeArgs, grid: Grid1D) -> Result<(Field1D, f64), CliError> {
    let a = args.a.unwrap_or(0.0);
    let x0 = |x0: Option<f64>| x0.unwrap_or(grid.length() / 4.0);
    Ok(match (&args.init, args.eq) {
        (InitSpec::Soliton { c, x0: p }, EqKind::Kdv) => (kdv_soliton(grid, *c, x0(*p), 0.0)?, a),
        (InitSpec::Soliton { c, x0: p }, EqKind::Gmkdv) => {
            (gmkdv_soliton(grid, *c, a, x0(*p), 0.0)?, a)
        }
        (InitSpec::Cnoidal { k, c }, EqKind::Kdv) => {
            (CnoidalWave::new(grid, *k, *c)?.field(grid, 0.0)?, a)
        }
        (InitSpec::Cnoidal { k, .. }, EqKind::Gmkdv) => {
            let (v, stationary) = gmkdv_cnoidal(grid, *k)?;
            (v, args.a.unwrap_or(stationary))
        }
        (InitSpec::File(path), eq) => {
            let role = if eq == EqKind::Kdv {
                hyperell::pde::FieldRole::U
            } else {
                hyperell::pde::FieldRole::V
            };
            (read_field(path, grid, role)?, a)
        }
    })
}

pub fn run(args: &PdeArgs, sink: &Sink) -> Result<bool, CliError> {
    let grid = Grid1D::new(args.n, args.length).map_err(|e| CliError::Usage(e.to_string()))?;
    let steps = step_count(args.t_end, args.dt).map_err(|e| CliError::Usage(e.to_string()))?;
    let h = args.t_end / steps as f64;
    let (u0, a) = initial(args, grid)?;
    let eq = match args.eq {
        EqKind::Kdv => Equation::Kdv,
        EqKind::Gmkdv => Equation::Gmkdv { a },
    };
    let every = args.every.unwrap_or((steps / 10).max(1)).max(1);

    let mut own = ResidualMonitor::new(eq, h);
    let mut mapped = ResidualMonitor::new(Equation::Kdv, h);
    let kdv_view = |f: &Field1D| {
        if eq == Equation::Kdv {
            f.clone()
        } else {
            miura_map(f, a)
        }
    };
    let first = conserved_quantities(&kdv_view(&u0));
    let mut drift = 0.0f64;
    let mut csv = String::from("t,x,re,im\n");
    let mut failure: Option<PdeError> = None;
    let last = evolve_with(eq, &u0, args.t_end, args.dt, |s, t, f| {
        let u = kdv_view(f);
        drift = drift.max(first.relative_drift(&conserved_quantities(&u)));
        let pushed = own.push(f).and_then(|_| {
            if eq == Equation::Kdv {
                Ok(())
            } else {
                mapped.push(&u)
            }
        });
        if let Err(e) = pushed {
            failure.get_or_insert(e);
        }
        if args.snapshots.is_some() && (s % every == 0 || s == steps) {
            for (j, z) in f.samples.iter().enumerate() {
                let _ = writeln!(csv, "{t},{},{:e},{:e}", grid.x(j), z.re, z.im);
            }
        }
    });
    let last = match last {
        Ok(f) => f,
        Err(e @ PdeError::UnstableStep { .. }) => return Err(CliError::Usage(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    if let Some(e) = failure {
        return Err(e.into());
    }
    if let Some(path) = &args.snapshots {
        fs::write(path, &csv)?;
    }
    let own_res = own.finish()?;
    let mut residuals = serde_json::Map::new();
    let mut ok = own_res < args.tol && drift < args.drift_tol;
    match eq {
        Equation::Kdv => {
            residuals.insert("kdv".into(), json!(own_res));
        }
        Equation::Gmkdv { .. } => {
            let m = mapped.finish()?;
            ok &= m < args.tol;
            residuals.insert("gmkdv".into(), json!(own_res));
            residuals.insert("miura_kdv".into(), json!(m));
        }
    }
    let doc = json!({
        "equation": eq.name(),
        "a": a,
        "n": args.n,
        "L": args.length,
        "dt": h,
        "t_end": args.t_end,
        "steps": steps,
        "init": args.init.to_string(),
        "residuals": residuals,
        "invariant_drift": drift,
        "final_max_abs": last.max_abs(),
        "tolerance": args.tol,
        "drift_tolerance": args.drift_tol,
        "passed": ok,
    });
    let mut summary = format!("{} run, {steps} steps of {h:e}: ", eq.name());
    for (k, v) in &residuals {
        let _ = write!(
            summary,
            "{k} residual {:.3e}, ",
            v.as_f64().unwrap_or(f64::NAN)
        );
    }
    let _ = writeln!(summary, "invariant drift {drift:.3e}: {}", verdict(ok));
    sink.json(&doc, &summary)?;
    Ok(ok)
}
