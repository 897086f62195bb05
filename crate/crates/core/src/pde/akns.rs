//! The AKNS pair of the generalized mKdV equation and its zero-curvature residual.

use num_complex::Complex64;

pub type Mat2 = [[Complex64; 2]; 2];

/// Spectral parameter `η`, constant `b`, and the derived `a = 4η²(b−1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AKNSParams {
    eta: Complex64,
    b: Complex64,
    a: Complex64,
}

impl AKNSParams {
    pub fn new(eta: Complex64, b: Complex64) -> Self {
        Self {
            eta,
            b,
            a: 4.0 * eta * eta * (b - 1.0),
        }
    }

    pub fn real(eta: f64, b: f64) -> Self {
        Self::new(Complex64::new(eta, 0.0), Complex64::new(b, 0.0))
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }
}

/// Values of `v` and the derivatives entering the compatibility condition at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JetPoint {
    pub v: Complex64,
    pub v_x: Complex64,
    pub v_xx: Complex64,
    pub v_xxx: Complex64,
    pub v_t: Complex64,
}

impl JetPoint {
    /// The jet of `i·v`.
    pub fn times_i(&self) -> Self {
        let i = Complex64::i();
        Self {
            v: i * self.v,
            v_x: i * self.v_x,
            v_xx: i * self.v_xx,
            v_xxx: i * self.v_xxx,
            v_t: i * self.v_t,
        }
    }
}

fn mul(p: &Mat2, q: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = p[i][0] * q[0][j] + p[i][1] * q[1][j];
        }
    }
    out
}

/// `L = [[η, v], [−v, −η]]`.
pub fn lax_l(jet: &JetPoint, p: &AKNSParams) -> Mat2 {
    [[p.eta, jet.v], [-jet.v, -p.eta]]
}

/// `M = [[A, B], [C, −A]]`.
pub fn lax_m(jet: &JetPoint, p: &AKNSParams) -> Mat2 {
    let (v, eta, b) = (jet.v, p.eta, p.b);
    let a = -2.0 * eta * v * v - 4.0 * eta.powu(3) * b;
    let bb = -jet.v_xx - 2.0 * eta * jet.v_x - 2.0 * v.powu(3) - 4.0 * eta * eta * b * v;
    let c = jet.v_xx - 2.0 * eta * jet.v_x + 2.0 * v.powu(3) + 4.0 * eta * eta * b * v;
    [[a, bb], [c, -a]]
}

/// `∂M/∂x` expanded by hand.
fn lax_m_x(jet: &JetPoint, p: &AKNSParams) -> Mat2 {
    let (v, eta, b) = (jet.v, p.eta, p.b);
    let ax = -4.0 * eta * v * jet.v_x;
    let bx =
        -jet.v_xxx - 2.0 * eta * jet.v_xx - 6.0 * v * v * jet.v_x - 4.0 * eta * eta * b * jet.v_x;
    let cx =
        jet.v_xxx - 2.0 * eta * jet.v_xx + 6.0 * v * v * jet.v_x + 4.0 * eta * eta * b * jet.v_x;
    [[ax, bx], [cx, -ax]]
}

/// `L_t − M_x + [L, M]`, which equals `[[0, D], [−D, 0]]`.
pub fn akns_commutator_residual(jet: &JetPoint, p: &AKNSParams) -> Mat2 {
    let l = lax_l(jet, p);
    let m = lax_m(jet, p);
    let mx = lax_m_x(jet, p);
    let lm = mul(&l, &m);
    let ml = mul(&m, &l);
    let lt = [
        [Complex64::new(0.0, 0.0), jet.v_t],
        [-jet.v_t, Complex64::new(0.0, 0.0)],
    ];
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = lt[i][j] - mx[i][j] + lm[i][j] - ml[i][j];
        }
    }
    out
}

/// `D = v_t + v_xxx + 6v²v_x + 4η²(b−1)v_x`.
pub fn akns_d(jet: &JetPoint, p: &AKNSParams) -> Complex64 {
    jet.v_t + jet.v_xxx + 6.0 * jet.v * jet.v * jet.v_x + p.a * jet.v_x
}

/// `v_t + v_xxx − 6v²v_x + a v_x`, the generalized mKdV residual; equals `D(iv)/i`.
pub fn gmkdv_d(jet: &JetPoint, a: Complex64) -> Complex64 {
    jet.v_t + jet.v_xxx - 6.0 * jet.v * jet.v * jet.v_x + a * jet.v_x
}
