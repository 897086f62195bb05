use std::collections::VecDeque;

use num_complex::Complex64;

use super::evolve::Equation;
use super::grid::{Field1D, FieldRole, Spectral};
use crate::error::PdeError;

/// `u = v² + v_x − a/6`, spectral `v_x`, dealiased.
pub fn miura_map(v: &Field1D, a: f64) -> Field1D {
    let s = Spectral::new(v.grid);
    let sq = s.product(&v.samples, &v.samples);
    let vx = s.derivative(&v.samples, 1);
    let u: Vec<Complex64> = sq.iter().zip(&vx).map(|(p, d)| p + d - a / 6.0).collect();
    Field1D {
        grid: v.grid,
        samples: s.project(&u),
        role: FieldRole::U,
    }
}

/// Running maximum of the KdV or generalized mKdV residual over a stream of snapshots
/// spaced `dt` apart, with spectral x-derivatives and a fourth-order centered `∂ₜ`.
///
/// The residual is projected onto the retained modes. Modes near the cutoff rotate at
/// `k³`, close to the temporal Nyquist rate when `k³dt ≈ 2`; their amplitude sets the
/// floor of this diagnostic.
pub struct ResidualMonitor {
    eq: Equation,
    dt: f64,
    spec: Option<Spectral>,
    window: VecDeque<Field1D>,
    seen: usize,
    worst: f64,
}

impl ResidualMonitor {
    pub fn new(eq: Equation, dt: f64) -> Self {
        Self {
            eq,
            dt,
            spec: None,
            window: VecDeque::with_capacity(5),
            seen: 0,
            worst: 0.0,
        }
    }

    pub fn push(&mut self, f: &Field1D) -> Result<(), PdeError> {
        if let Some(first) = self.window.front() {
            if first.grid != f.grid {
                return Err(PdeError::GridMismatch);
            }
        }
        if self.window.len() == 5 {
            self.window.pop_front();
        }
        self.window.push_back(f.clone());
        self.seen += 1;
        if self.window.len() == 5 {
            let r = self.centre_residual();
            self.worst = self.worst.max(r);
        }
        Ok(())
    }

    fn centre_residual(&mut self) -> f64 {
        let grid = self.window[2].grid;
        let s = self.spec.get_or_insert_with(|| Spectral::new(grid));
        let w = &self.window;
        let u = &w[2].samples;
        let ux = s.derivative(u, 1);
        let uxxx = s.derivative(u, 3);
        let nl = match self.eq {
            Equation::Kdv => s.product(u, &ux),
            Equation::Gmkdv { .. } => s.product(&s.product(u, u), &ux),
        };
        let a = match self.eq {
            Equation::Kdv => 0.0,
            Equation::Gmkdv { a } => a,
        };
        let r: Vec<Complex64> = (0..u.len())
            .map(|j| {
                let ut = (w[0].samples[j] - 8.0 * w[1].samples[j] + 8.0 * w[3].samples[j]
                    - w[4].samples[j])
                    / (12.0 * self.dt);
                ut + uxxx[j] - 6.0 * nl[j] + a * ux[j]
            })
            .collect();
        s.project(&r).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest residual seen so far.
    pub fn finish(&self) -> Result<f64, PdeError> {
        if self.seen < 5 {
            return Err(PdeError::InsufficientSnapshots(self.seen));
        }
        Ok(self.worst)
    }
}

fn residual_over(eq: Equation, traj: &[Field1D], dt: f64) -> Result<f64, PdeError> {
    if traj.len() < 5 {
        return Err(PdeError::InsufficientSnapshots(traj.len()));
    }
    let mut m = ResidualMonitor::new(eq, dt);
    for f in traj {
        m.push(f)?;
    }
    m.finish()
}

/// `max ‖u_t + u_xxx − 6uu_x‖∞` over the interior snapshots; see [`ResidualMonitor`].
pub fn kdv_residual(traj: &[Field1D], dt: f64) -> Result<f64, PdeError> {
    residual_over(Equation::Kdv, traj, dt)
}

/// `max ‖v_t + v_xxx − 6v²v_x + a v_x‖∞` over the interior snapshots.
pub fn gmkdv_residual(traj: &[Field1D], dt: f64, a: f64) -> Result<f64, PdeError> {
    residual_over(Equation::Gmkdv { a }, traj, dt)
}

/// `∫u`, `∫u²`, `∫(½u_x² + u³)` over one period.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Invariants {
    pub mass: Complex64,
    pub momentum: Complex64,
    pub energy: Complex64,
}

impl Invariants {
    /// Largest relative change of the three invariants.
    pub fn relative_drift(&self, later: &Invariants) -> f64 {
        let rel = |a: Complex64, b: Complex64| (b - a).norm() / a.norm().max(1e-300);
        rel(self.mass, later.mass)
            .max(rel(self.momentum, later.momentum))
            .max(rel(self.energy, later.energy))
    }
}

/// Spectrally exact quadrature of the standard KdV invariants.
pub fn conserved_quantities(u: &Field1D) -> Invariants {
    let s = Spectral::new(u.grid);
    let dx = u.grid.dx();
    let ux = s.derivative(&u.samples, 1);
    let sum = |f: &dyn Fn(usize) -> Complex64| (0..u.samples.len()).map(f).sum::<Complex64>() * dx;
    let v = &u.samples;
    Invariants {
        mass: sum(&|j| v[j]),
        momentum: sum(&|j| v[j] * v[j]),
        energy: sum(&|j| 0.5 * ux[j] * ux[j] + v[j] * v[j] * v[j]),
    }
}

/// Maximum drift of the invariants relative to the first snapshot.
pub fn invariant_drift(traj: &[Field1D]) -> f64 {
    let Some(first) = traj.first() else {
        return 0.0;
    };
    let i0 = conserved_quantities(first);
    traj.iter()
        .map(|f| i0.relative_drift(&conserved_quantities(f)))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pde::grid::Grid1D;

    #[test]
    fn miura_of_zero() {
        let g = Grid1D::new(32, 3.0).unwrap();
        let v = Field1D::from_real(g, FieldRole::V, |_| 0.0);
        let u = miura_map(&v, 1.2);
        assert!(u
            .samples
            .iter()
            .all(|z| (z.re + 0.2).abs() < 1e-15 && z.im.abs() < 1e-15));
    }

    #[test]
    fn constant_trajectory_has_no_residual() {
        let g = Grid1D::new(32, 3.0).unwrap();
        let u = Field1D::from_real(g, FieldRole::U, |_| 0.7);
        let traj = vec![u; 6];
        assert!(kdv_residual(&traj, 1e-3).unwrap() < 1e-12);
        assert!(matches!(
            kdv_residual(&traj[..4], 1e-3),
            Err(PdeError::InsufficientSnapshots(4))
        ));
    }

    #[test]
    fn invariants_of_constant_and_translate() {
        let g = Grid1D::new(64, 5.0).unwrap();
        let c = Field1D::from_real(g, FieldRole::U, |_| 0.3);
        assert!((conserved_quantities(&c).mass.re - 1.5).abs() < 1e-14);
        let f = |s: f64| {
            Field1D::from_real(g, FieldRole::U, move |x| {
                (1.2566370614359172 * (x - s)).sin() + 0.2
            })
        };
        let (a, b) = (
            conserved_quantities(&f(0.0)),
            conserved_quantities(&f(g.dx() * 3.0)),
        );
        assert!(a.relative_drift(&b) < 1e-12);
    }
}
