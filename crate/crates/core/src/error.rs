use crate::poly::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable index {0} is outside 1..=4")]
    InvalidVariable(usize),
    #[error("vector field text needs four `;`-separated components, found {0}")]
    FieldArity(usize),
    #[error("surface parameter must be greater than 1, got {0}")]
    SurfaceParam(String),
    #[error("the zero polynomial does not define a hypersurface")]
    ZeroHypersurface,
    #[error("{name} must have degree at most 1, got {got}")]
    NotLinear { name: &'static str, got: String },
    #[error("{name} must be homogeneous of degree {expected}")]
    NotHomogeneous { name: &'static str, expected: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("family {0} has no closed-form first integrals here")]
    UnsupportedFamily(String),
    #[error("factor {index} ({factor}) is not invariant under the field")]
    NotInvariantFactor { index: usize, factor: String },
    #[error("at least one factor is required")]
    EmptyFactors,
    #[error("subspace basis needs at least two elements")]
    BasisTooSmall,
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    #[error("{0} is not in the span of the subspace basis")]
    NotInSpan(String),
    #[error("hyperplane must be given by a polynomial of degree exactly 1, got {0}")]
    NotAHyperplane(String),
    #[error("record does not reproduce the field: {0}")]
    RecordMismatch(String),
    #[error("step size must be positive and not exceed the horizon (dt={dt}, t_end={t_end})")]
    BadStep { dt: f64, t_end: f64 },
    #[error("state became non-finite after step {last_valid_index}")]
    NonFinite { last_valid_index: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
