use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid homogeneous point: {0}")]
    InvalidHomogeneousPoint(String),

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("points are projectively equal, they do not span a line")]
    DegenerateLine,

    #[error("direction vector vanishes")]
    InvalidDirection,

    #[error("tuple violates the Plücker condition (residual {0:e})")]
    NotOnQuadric(f64),

    #[error("direction quaternion is not pure (scalar part {0:e})")]
    NotPure(f64),

    #[error("point lies in the generator space, the fiber is undefined")]
    FiberUndefined,

    #[error("dual vector has non-positive real norm")]
    NonPositiveDualNorm,

    #[error("degenerate point set for fitting: {0}")]
    DegenerateFit(&'static str),

    #[error("segment classification failed: {0}")]
    Classification(String),

    #[error("numerical procedure failed: {0}")]
    Numerical(String),

    #[error("Farin point {index} is not in the span of its segment (residual {residual:e})")]
    InvalidFarin { index: usize, residual: f64 },

    #[error("Farin point {index} lies outside its segment")]
    FarinOutsideSegment { index: usize },

    #[error("curve meets the generator space at t = {t}")]
    GeneratorSpace { t: f64 },

    #[error("invalid control net: {0}")]
    InvalidNet(String),
}

pub type Result<T> = std::result::Result<T, Error>;
