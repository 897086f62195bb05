use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the probe point")]
    PoleAtPoint,
    #[error("f(x) is not a rational square at the probe point (exact mode)")]
    OffCurve,
    #[error("probe points must satisfy x1 != x2")]
    DiagonalPoint,
    #[error("invalid curve parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("curve violates required constraint: {0}")]
    MissingConstraint(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("argument lies on (or within tolerance of) a pole or zero: {0}")]
    PoleArgument(String),
    #[error("degenerate Weierstrass roots: e1 == e3")]
    DegenerateRoots,
    #[error("singular denominator in static transformation: {0}")]
    SingularDenominator(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PdeError {
    #[error("grid size must be a power of two >= 32, got {0}")]
    BadGrid(usize),
    #[error("domain length must be positive and finite, got {0}")]
    BadLength(f64),
    #[error("time step and final time must be positive and finite (dt = {dt}, t_end = {t_end})")]
    BadTime { dt: f64, t_end: f64 },
    #[error("invalid initial condition: {0}")]
    InvalidInit(String),
    #[error("field norm exceeded 1e8 at t = {0}")]
    BlowUp(f64),
    #[error("time step {dt} exceeds the stability bound {bound}")]
    UnstableStep { dt: f64, bound: f64 },
    #[error("need at least 5 snapshots for the time stencil, got {0}")]
    InsufficientSnapshots(usize),
    #[error("grid mismatch between fields")]
    GridMismatch,
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}
