use thiserror::Error;

use crate::algebra::Element;

/// Errors raised by the algebra primitives and the verification pipelines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum JordanError {
    #[error("cannot parse algebra descriptor `{input}`: {reason}")]
    Descriptor { input: String, reason: String },

    #[error("descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },

    #[error("coordinate vector has length {got}, algebra {algebra} needs {expected}")]
    CoordinateLength {
        algebra: String,
        expected: usize,
        got: usize,
    },

    #[error("non-finite coordinate in element of {0}")]
    NonFinite(String),

    #[error("element is not self-adjoint (deviation {deviation:.3e})")]
    NotSelfAdjoint { deviation: f64 },

    #[error("element is not a projection (idempotence {idempotence:.3e}, self-adjointness {adjointness:.3e})")]
    NotProjection { idempotence: f64, adjointness: f64 },

    #[error("element is not positive (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("element is not in the positive unit sphere (norm {norm:.6}, minimum eigenvalue {min_eigenvalue:.3e})")]
    NotOnPositiveSphere { norm: f64, min_eigenvalue: f64 },

    #[error("element is not invertible (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotInvertible { min_eigenvalue: f64 },

    #[error("function is undefined at eigenvalue {eigenvalue}")]
    FunctionUndefined { eigenvalue: f64 },

    #[error("the norm of a non-self-adjoint element of {0} is not supported")]
    NormUnsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid tolerances: {0}")]
    Tolerances(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unverified Jordan map: {0}")]
    UnverifiedMap(String),

    #[error("construction failed: {what} (residual {residual:.3e})")]
    Construction { what: String, residual: f64 },

    /// `witness` is the sample that produced the worst residual, when one exists.
    #[error("verification failed: {what} (worst residual {residual:.3e})")]
    Verification {
        what: String,
        residual: f64,
        witness: Option<Box<Element>>,
    },

    /// The pair `witness` has distance `original` but its images are `mapped` apart.
    #[error("map is not isometric: distance {original:.6} became {mapped:.6}")]
    NotIsometric {
        original: f64,
        mapped: f64,
        witness: Box<(Element, Element)>,
    },

    #[error("contradiction: {0}")]
    Contradiction(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("suite `{suite}` does not apply to {algebra}: {reason}")]
    SuiteNotApplicable {
        suite: String,
        algebra: String,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, JordanError>;
