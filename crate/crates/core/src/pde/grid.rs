use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::PdeError;

/// Uniform periodic grid `xⱼ = jL/n` on `[0, L)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    n: usize,
    length: f64,
}

impl Grid1D {
    pub fn new(n: usize, length: f64) -> Result<Self, PdeError> {
        if n < 32 || !n.is_power_of_two() {
            return Err(PdeError::BadGrid(n));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(PdeError::BadLength(length));
        }
        Ok(Self { n, length })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|j| self.x(j))
    }

    /// Signed mode number of FFT slot `j`.
    pub fn mode(&self, j: usize) -> i64 {
        if j < self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// Angular wavenumber of slot `j`; the Nyquist slot maps to zero.
    pub fn wavenumber(&self, j: usize) -> f64 {
        if j == self.n / 2 {
            0.0
        } else {
            2.0 * PI * self.mode(j) as f64 / self.length
        }
    }

    /// Slots kept by the 2/3 rule: `|m| < n/3`.
    pub fn keeps(&self, j: usize) -> bool {
        3 * self.mode(j).unsigned_abs() < self.n as u64
    }

    /// Largest retained wavenumber.
    pub fn k_max(&self) -> f64 {
        (0..self.n)
            .filter(|j| self.keeps(*j))
            .map(|j| self.wavenumber(j).abs())
            .fold(0.0, f64::max)
    }
}

/// Which dependent variable a field holds: KdV `u` or generalized mKdV `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldRole {
    U,
    V,
}

/// Complex samples on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Field1D {
    pub grid: Grid1D,
    pub samples: Vec<Complex64>,
    pub role: FieldRole,
}

impl Field1D {
    pub fn from_fn(grid: Grid1D, role: FieldRole, f: impl Fn(f64) -> Complex64) -> Self {
        Self {
            grid,
            samples: grid.points().map(f).collect(),
            role,
        }
    }

    pub fn from_real(grid: Grid1D, role: FieldRole, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, role, |x| Complex64::new(f(x), 0.0))
    }

    pub fn from_samples(
        grid: Grid1D,
        role: FieldRole,
        samples: Vec<Complex64>,
    ) -> Result<Self, PdeError> {
        if samples.len() != grid.n() {
            return Err(PdeError::GridMismatch);
        }
        Ok(Self {
            grid,
            samples,
            role,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.samples
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_diff(&self, other: &Field1D) -> Result<f64, PdeError> {
        if self.grid != other.grid {
            return Err(PdeError::GridMismatch);
        }
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|z| f(*z)).collect(),
            role: self.role,
        }
    }
}

/// FFT plans and wavenumbers for one grid; one instance per run.
#[derive(Clone)]
pub struct Spectral {
    grid: Grid1D,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    k: Vec<f64>,
    keep: Vec<bool>,
}

impl Spectral {
    pub fn new(grid: Grid1D) -> Self {
        let mut planner = FftPlanner::new();
        let n = grid.n();
        Self {
            grid,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
            k: (0..n).map(|j| grid.wavenumber(j)).collect(),
            keep: (0..n).map(|j| grid.keeps(j)).collect(),
        }
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.k
    }

    pub fn forward(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let mut buf = samples.to_vec();
        self.fwd.process(&mut buf);
        buf
    }

    pub fn inverse(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut buf = coeffs.to_vec();
        self.inv.process(&mut buf);
        let s = 1.0 / self.grid.n() as f64;
        buf.iter_mut().for_each(|z| *z *= s);
        buf
    }

    /// Zero the top third of modes in place.
    pub fn dealias(&self, coeffs: &mut [Complex64]) {
        for (c, keep) in coeffs.iter_mut().zip(&self.keep) {
            if !keep {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// Project samples onto the retained modes.
    pub fn project(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let mut c = self.forward(samples);
        self.dealias(&mut c);
        self.inverse(&c)
    }

    /// `∂ₓᵐ` of samples, spectrally.
    pub fn derivative(&self, samples: &[Complex64], order: u32) -> Vec<Complex64> {
        let mut c = self.forward(samples);
        for (cj, k) in c.iter_mut().zip(&self.k) {
            *cj *= Complex64::new(0.0, *k).powu(order);
        }
        self.inverse(&c)
    }

    /// Pointwise product followed by dealiasing.
    pub fn product(&self, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let p: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
        self.project(&p)
    }
}

pub fn spectral_derivative(f: &Field1D, order: u32) -> Field1D {
    let s = Spectral::new(f.grid);
    Field1D {
        grid: f.grid,
        samples: s.derivative(&f.samples, order),
        role: f.role,
    }
}

/// The field projected onto the modes kept by the 2/3 rule.
pub fn dealiased(f: &Field1D) -> Field1D {
    let s = Spectral::new(f.grid);
    Field1D {
        grid: f.grid,
        samples: s.project(&f.samples),
        role: f.role,
    }
}
