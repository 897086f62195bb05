//! ETDRK4 time stepping (Cox–Matthews, with Kassam–Trefethen contour averages).

use num_complex::Complex64;

use super::grid::{Field1D, FieldRole, Spectral};
use crate::error::PdeError;

const CONTOUR_POINTS: usize = 32;
const BLOWUP: f64 = 1e8;
/// Imaginary-axis extent of the ETDRK4 stability region, slightly reduced.
const STABILITY_RADIUS: f64 = 2.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Equation {
    /// `u_t + u_xxx − 6uu_x = 0`
    Kdv,
    /// `v_t + v_xxx − 6v²v_x + a v_x = 0`
    Gmkdv { a: f64 },
}

impl Equation {
    pub fn name(&self) -> &'static str {
        match self {
            Equation::Kdv => "kdv",
            Equation::Gmkdv { .. } => "gmkdv",
        }
    }

    pub fn role(&self) -> FieldRole {
        match self {
            Equation::Kdv => FieldRole::U,
            Equation::Gmkdv { .. } => FieldRole::V,
        }
    }

    /// Fourier symbol of the linear part.
    fn linear(&self, k: f64) -> Complex64 {
        match self {
            Equation::Kdv => Complex64::new(0.0, k * k * k),
            Equation::Gmkdv { a } => Complex64::new(0.0, k * k * k - a * k),
        }
    }

    /// `N̂ = g(k)·F(uᵖ)`: `3ik·F(u²)` or `2ik·F(v³)`.
    fn nonlinear_factor(&self, k: f64) -> Complex64 {
        match self {
            Equation::Kdv => Complex64::new(0.0, 3.0 * k),
            Equation::Gmkdv { .. } => Complex64::new(0.0, 2.0 * k),
        }
    }

    /// Largest stable time step for an initial field, from the advective speed of the nonlinearity.
    pub fn stability_bound(&self, u0: &Field1D) -> f64 {
        let m = u0.max_abs();
        let speed = match self {
            Equation::Kdv => 6.0 * m,
            Equation::Gmkdv { .. } => 6.0 * m * m,
        };
        if speed == 0.0 {
            return f64::INFINITY;
        }
        STABILITY_RADIUS / (u0.grid.k_max() * speed)
    }
}

/// Snapshots at uniform spacing `dt_snap`, starting at `t = 0`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub equation: Equation,
    pub times: Vec<f64>,
    pub fields: Vec<Field1D>,
    pub dt_snap: f64,
}

/// Precomputed ETDRK4 coefficients for one equation, grid and step.
pub struct Evolver {
    eq: Equation,
    spec: Spectral,
    dt: f64,
    e: Vec<Complex64>,
    e2: Vec<Complex64>,
    q: Vec<Complex64>,
    f1: Vec<Complex64>,
    f2: Vec<Complex64>,
    f3: Vec<Complex64>,
    g: Vec<Complex64>,
}

impl Evolver {
    pub fn new(eq: Equation, spec: Spectral, dt: f64) -> Self {
        let roots: Vec<Complex64> = (0..CONTOUR_POINTS)
            .map(|j| {
                Complex64::from_polar(
                    1.0,
                    std::f64::consts::TAU * (j as f64 + 0.5) / CONTOUR_POINTS as f64,
                )
            })
            .collect();
        let mean = |f: &dyn Fn(Complex64) -> Complex64, lh: Complex64| -> Complex64 {
            roots.iter().map(|r| f(lh + r)).sum::<Complex64>() / CONTOUR_POINTS as f64
        };
        let k = spec.wavenumbers().to_vec();
        let n = k.len();
        let (mut e, mut e2, mut q, mut f1, mut f2, mut f3, mut g) =
            (vec![], vec![], vec![], vec![], vec![], vec![], vec![]);
        for &kj in &k {
            let lh = eq.linear(kj) * dt;
            e.push(lh.exp());
            e2.push((lh / 2.0).exp());
            q.push(dt * mean(&|z| ((z / 2.0).exp() - 1.0) / z, lh));
            f1.push(
                dt * mean(
                    &|z| (-4.0 - z + z.exp() * (4.0 - 3.0 * z + z * z)) / z.powu(3),
                    lh,
                ),
            );
            f2.push(dt * mean(&|z| (2.0 + z + z.exp() * (z - 2.0)) / z.powu(3), lh));
            f3.push(
                dt * mean(
                    &|z| (-4.0 - 3.0 * z - z * z + z.exp() * (4.0 - z)) / z.powu(3),
                    lh,
                ),
            );
            g.push(eq.nonlinear_factor(kj));
        }
        debug_assert_eq!(e.len(), n);
        Self {
            eq,
            spec,
            dt,
            e,
            e2,
            q,
            f1,
            f2,
            f3,
            g,
        }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Nonlinear term in spectral space, plus the physical-space max norm of the input.
    fn nonlinear(&self, vhat: &[Complex64]) -> (Vec<Complex64>, f64) {
        let v = self.spec.inverse(vhat);
        let peak = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut p = self.spec.product(&v, &v);
        if matches!(self.eq, Equation::Gmkdv { .. }) {
            p = self.spec.product(&p, &v);
        }
        let mut ph = self.spec.forward(&p);
        self.spec.dealias(&mut ph);
        for (c, g) in ph.iter_mut().zip(&self.g) {
            *c *= g;
        }
        (ph, peak)
    }

    /// One ETDRK4 step; the returned peak is that of the incoming field.
    pub fn step(&self, v: &[Complex64]) -> (Vec<Complex64>, f64) {
        let n = v.len();
        let (nv, peak) = self.nonlinear(v);
        let a: Vec<Complex64> = (0..n)
            .map(|j| self.e2[j] * v[j] + self.q[j] * nv[j])
            .collect();
        let (na, _) = self.nonlinear(&a);
        let b: Vec<Complex64> = (0..n)
            .map(|j| self.e2[j] * v[j] + self.q[j] * na[j])
            .collect();
        let (nb, _) = self.nonlinear(&b);
        let c: Vec<Complex64> = (0..n)
            .map(|j| self.e2[j] * a[j] + self.q[j] * (2.0 * nb[j] - nv[j]))
            .collect();
        let (nc, _) = self.nonlinear(&c);
        let out = (0..n)
            .map(|j| {
                self.e[j] * v[j]
                    + nv[j] * self.f1[j]
                    + 2.0 * (na[j] + nb[j]) * self.f2[j]
                    + nc[j] * self.f3[j]
            })
            .collect();
        (out, peak)
    }
}

/// Number of steps of size close to `dt` that reach `t_end`.
pub fn step_count(t_end: f64, dt: f64) -> Result<usize, PdeError> {
    if !(dt.is_finite() && dt > 0.0 && t_end.is_finite() && t_end > 0.0) {
        return Err(PdeError::BadTime { dt, t_end });
    }
    Ok(((t_end / dt).round() as usize).max(1))
}

/// Evolve to `t_end` in steps of `dt` (adjusted so the steps land exactly on `t_end`),
/// calling `visit(step, t, field)` on the initial state and after every step.
pub fn evolve_with(
    eq: Equation,
    u0: &Field1D,
    t_end: f64,
    dt: f64,
    mut visit: impl FnMut(usize, f64, &Field1D),
) -> Result<Field1D, PdeError> {
    let steps = step_count(t_end, dt)?;
    let h = t_end / steps as f64;
    let bound = eq.stability_bound(u0);
    if h > bound {
        return Err(PdeError::UnstableStep { dt: h, bound });
    }
    let spec = Spectral::new(u0.grid);
    let evolver = Evolver::new(eq, spec.clone(), h);
    let mut vhat = spec.forward(&u0.samples);
    spec.dealias(&mut vhat);
    let role = eq.role();
    let grid = u0.grid;
    let snap = |vh: &[Complex64]| Field1D {
        grid,
        samples: spec.inverse(vh),
        role,
    };
    let mut f = snap(&vhat);
    visit(0, 0.0, &f);
    for s in 1..=steps {
        let (next, peak) = evolver.step(&vhat);
        if !(peak.is_finite() && peak <= BLOWUP) {
            return Err(PdeError::BlowUp((s - 1) as f64 * h));
        }
        vhat = next;
        f = snap(&vhat);
        if !f.is_finite() || f.max_abs() > BLOWUP {
            return Err(PdeError::BlowUp(s as f64 * h));
        }
        visit(s, s as f64 * h, &f);
    }
    Ok(f)
}

/// As [`evolve_with`], keeping every `every`-th state and the final one.
pub fn evolve_trajectory(
    eq: Equation,
    u0: &Field1D,
    t_end: f64,
    dt: f64,
    every: usize,
) -> Result<Trajectory, PdeError> {
    let steps = step_count(t_end, dt)?;
    let h = t_end / steps as f64;
    let every = every.max(1);
    let (mut times, mut fields) = (Vec::new(), Vec::new());
    evolve_with(eq, u0, t_end, dt, |s, t, f| {
        if s % every == 0 || s == steps {
            times.push(t);
            fields.push(f.clone());
        }
    })?;
    Ok(Trajectory {
        equation: eq,
        times,
        fields,
        dt_snap: h * every as f64,
    })
}

/// State at `t_end`.
pub fn evolve(eq: Equation, u0: &Field1D, t_end: f64, dt: f64) -> Result<Field1D, PdeError> {
    evolve_with(eq, u0, t_end, dt, |_, _, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pde::grid::Grid1D;

    #[test]
    fn constant_is_a_fixed_point() {
        let g = Grid1D::new(64, 10.0).unwrap();
        let v0 = Field1D::from_real(g, FieldRole::V, |_| 0.4);
        let v = evolve(Equation::Gmkdv { a: 1.5 }, &v0, 0.5, 1e-2).unwrap();
        assert!(v.max_diff(&v0).unwrap() < 1e-13);
    }

    #[test]
    fn oversized_step_refused() {
        let g = Grid1D::new(256, 40.0).unwrap();
        let u0 = Field1D::from_real(g, FieldRole::U, |x| -2.0 / (x - 20.0).cosh().powi(2));
        assert!(matches!(
            evolve(Equation::Kdv, &u0, 1.0, 0.5),
            Err(PdeError::UnstableStep { .. })
        ));
        assert!(matches!(
            evolve(Equation::Kdv, &u0, -1.0, 0.1),
            Err(PdeError::BadTime { .. })
        ));
    }

    #[test]
    fn linear_waves_are_exact() {
        // small amplitude: u ≈ ε sin(k(x + k²t))
        let g = Grid1D::new(64, std::f64::consts::TAU).unwrap();
        let eps = 1e-9;
        let u0 = Field1D::from_real(g, FieldRole::U, |x| eps * (3.0 * x).sin());
        let u = evolve(Equation::Kdv, &u0, 0.3, 1e-3).unwrap();
        let expect = Field1D::from_real(g, FieldRole::U, |x| eps * (3.0 * (x + 9.0 * 0.3)).sin());
        assert!(u.max_diff(&expect).unwrap() < 1e-15);
    }
}
