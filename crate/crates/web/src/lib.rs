//! WebAssembly bindings for the browser demo in `www/`.

use hyperell::g1::{sn_ode_residual, sncndn};
use hyperell::g2::identity::IdentitySet;
use hyperell::g2::verify::verify_all;
use hyperell::pde::{
    gmkdv_soliton, kdv_soliton, miura_map, Equation, Evolver, Field1D, Grid1D, ResidualMonitor,
    Spectral,
};
use hyperell::ring::CurveParams;
use hyperell::{EllipticError, PdeError};
use num_complex::Complex64;
use wasm_bindgen::prelude::*;

#[derive(Debug, thiserror::Error)]
pub enum DemoError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Pde(#[from] PdeError),
}

impl From<DemoError> for JsValue {
    fn from(e: DemoError) -> Self {
        JsError::new(&e.to_string()).into()
    }
}

/// Rows `(x, sn, cn, dn, ode residual)` flattened, for `n` points on `[0, x_max]`.
#[wasm_bindgen]
pub fn jacobi_curve(k: f64, x_max: f64, n: usize) -> Result<Vec<f64>, DemoError> {
    if !(k.is_finite() && x_max.is_finite() && x_max > 0.0 && n >= 2) {
        return Err(DemoError::Input(
            "need finite k, x_max > 0 and at least two points".into(),
        ));
    }
    let k = Complex64::new(k, 0.0);
    let mut out = Vec::with_capacity(5 * n);
    for j in 0..n {
        let x = x_max * j as f64 / (n - 1) as f64;
        let z = Complex64::new(x, 0.0);
        let (s, c, d) = sncndn(z, k)?;
        let r = sn_ode_residual(z, k)?;
        out.extend([x, s.re, c.re, d.re, r.norm()]);
    }
    Ok(out)
}

/// A soliton on a periodic grid, advanced a few steps per animation frame.
#[wasm_bindgen]
pub struct Simulation {
    eq: Equation,
    a: f64,
    grid: Grid1D,
    spec: Spectral,
    evolver: Evolver,
    vhat: Vec<Complex64>,
    field: Field1D,
    steps: usize,
    monitor: ResidualMonitor,
}

#[wasm_bindgen]
impl Simulation {
    /// `equation` is `"kdv"` or `"gmkdv"`; `a` is ignored for KdV.
    #[wasm_bindgen(constructor)]
    pub fn new(
        equation: &str,
        speed: f64,
        a: f64,
        n: usize,
        length: f64,
        dt: f64,
    ) -> Result<Simulation, DemoError> {
        let grid = Grid1D::new(n, length)?;
        let x0 = length / 4.0;
        let (eq, u0) = match equation {
            "kdv" => (Equation::Kdv, kdv_soliton(grid, speed, x0, 0.0)?),
            "gmkdv" => (
                Equation::Gmkdv { a },
                gmkdv_soliton(grid, speed, a, x0, 0.0)?,
            ),
            other => return Err(DemoError::Input(format!("unknown equation {other:?}"))),
        };
        let bound = eq.stability_bound(&u0);
        if !(dt > 0.0 && dt <= bound) {
            return Err(PdeError::UnstableStep { dt, bound }.into());
        }
        let spec = Spectral::new(grid);
        let mut vhat = spec.forward(&u0.samples);
        spec.dealias(&mut vhat);
        let field = Field1D {
            grid,
            samples: spec.inverse(&vhat),
            role: eq.role(),
        };
        let mut sim = Simulation {
            eq,
            a,
            grid,
            evolver: Evolver::new(eq, spec.clone(), dt),
            spec,
            vhat,
            field,
            steps: 0,
            monitor: ResidualMonitor::new(Equation::Kdv, dt),
        };
        sim.observe()?;
        Ok(sim)
    }

    fn kdv_field(&self) -> Field1D {
        match self.eq {
            Equation::Kdv => self.field.clone(),
            Equation::Gmkdv { .. } => miura_map(&self.field, self.a),
        }
    }

    fn observe(&mut self) -> Result<(), DemoError> {
        let u = self.kdv_field();
        self.monitor.push(&u)?;
        Ok(())
    }

    pub fn advance(&mut self, steps: usize) -> Result<(), DemoError> {
        for _ in 0..steps {
            let (next, _) = self.evolver.step(&self.vhat);
            self.vhat = next;
            self.field.samples = self.spec.inverse(&self.vhat);
            self.steps += 1;
            if !self.field.is_finite() {
                return Err(PdeError::BlowUp(self.time()).into());
            }
            self.observe()?;
        }
        Ok(())
    }

    pub fn time(&self) -> f64 {
        self.steps as f64 * self.evolver.dt()
    }

    pub fn positions(&self) -> Vec<f64> {
        self.grid.points().collect()
    }

    /// The evolved field: u for KdV, v for gmKdV.
    pub fn field(&self) -> Vec<f64> {
        self.field.samples.iter().map(|z| z.re).collect()
    }

    /// The field seen through the Miura map, which is u itself for KdV.
    pub fn kdv_view(&self) -> Vec<f64> {
        self.kdv_field().samples.iter().map(|z| z.re).collect()
    }

    /// Worst KdV residual of the KdV view so far, or NaN before five states exist.
    pub fn residual(&self) -> f64 {
        self.monitor.finish().unwrap_or(f64::NAN)
    }
}

/// Exact verification of an identity set on `y² = Σ λⱼxʲ`, as a JSON document.
#[wasm_bindgen]
pub fn verify_identities(lambda: &str, set: &str) -> Result<String, DemoError> {
    let params: CurveParams = lambda
        .parse()
        .map_err(|e| DemoError::Input(format!("{e}")))?;
    let ids = IdentitySet::parse_many(set).map_err(DemoError::Input)?;
    let report = verify_all(&params, &ids);
    let doc = serde_json::json!({
        "curve": params.lambdas().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "zero": report.count("zero"),
        "nonzero": report.count("nonzero"),
        "skipped": report.count("skipped"),
        "entries": report.json_entries(false),
    });
    Ok(doc.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_rows() {
        let rows = jacobi_curve(0.8, 4.0, 50).unwrap();
        assert_eq!(rows.len(), 250);
        for r in rows.chunks(5) {
            assert!((r[1] * r[1] + r[2] * r[2] - 1.0).abs() < 1e-12);
            assert!(r[4] < 1e-10);
        }
        assert!(jacobi_curve(0.8, -1.0, 50).is_err());
    }

    #[test]
    fn soliton_animation() {
        let mut sim = Simulation::new("kdv", 1.0, 0.0, 128, 30.0, 1e-3).unwrap();
        assert!(sim.residual().is_nan());
        sim.advance(200).unwrap();
        assert!((sim.time() - 0.2).abs() < 1e-12);
        assert!(sim.residual() < 1e-6);
        assert_eq!(sim.positions().len(), 128);

        let mut gm = Simulation::new("gmkdv", 0.5, 1.5, 256, 40.0, 1e-3).unwrap();
        gm.advance(100).unwrap();
        assert!(gm.residual() < 1e-6);
        assert_ne!(gm.field(), gm.kdv_view());

        assert!(Simulation::new("burgers", 1.0, 0.0, 128, 30.0, 1e-3).is_err());
        assert!(Simulation::new("kdv", 1.0, 0.0, 128, 30.0, 1.0).is_err());
    }

    #[test]
    fn identity_report() {
        let doc: serde_json::Value =
            serde_json::from_str(&verify_identities("1,2,1,3,1,4,5", "weierstrass").unwrap())
                .unwrap();
        assert_eq!(doc["zero"], 7);
        let doc: serde_json::Value =
            serde_json::from_str(&verify_identities("1,2,1,3,1,4,5", "js").unwrap()).unwrap();
        assert_eq!(doc["skipped"], 5);
        assert!(verify_identities("1,2", "weierstrass").is_err());
        assert!(verify_identities("1,2,1,3,1,4,5", "bogus").is_err());
    }
}
