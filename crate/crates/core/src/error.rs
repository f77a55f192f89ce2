use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("unknown model kind `{0}` (expected bcv, sol or space-form)")]
    UnknownModel(String),
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },
    #[error("point ({x}, {y}, {z}) is outside the valid chart domain: {reason}")]
    InvalidPoint { x: f64, y: f64, z: f64, reason: &'static str },
    #[error("tangent vectors are based at different points")]
    MismatchedBase,
    #[error("frame index {0} out of range 1..=3")]
    FrameIndex(usize),
    #[error("parameter ({u}, {v}) lies outside the patch domain")]
    ParamOutOfDomain { u: f64, v: f64 },
    #[error("difference stencil of half-width {reach} around ({u}, {v}) leaves the patch domain")]
    StencilOutOfDomain { u: f64, v: f64, reach: f64 },
    #[error("immersion is rank-deficient at ({u}, {v})")]
    RankDeficient { u: f64, v: f64 },
    #[error("patch is not CMC: |grad H| = {grad_norm:e} exceeds {tol:e}")]
    NotCmc { grad_norm: f64, tol: f64 },
    #[error("operation requires a {expected} ambient space, got {found}")]
    WrongAmbient { expected: &'static str, found: &'static str },
    #[error("model parameter m must be positive, got {0}")]
    NonPositiveM(f64),
    #[error("target geodesic curvature must be nonnegative, got {0}")]
    NegativeCurvature(f64),
    #[error("curve has zero speed at parameter {0}")]
    ZeroSpeed(f64),
    #[error("curve parameter {0} is outside its interval")]
    CurveParamOutOfRange(f64),
    #[error("evaluation grid is empty")]
    EmptyGrid,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
