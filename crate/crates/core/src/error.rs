use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Dirac quantum number k must be nonzero")]
    ZeroDiracNumber,

    #[error("coupling gamma = {gamma} is outside (0, |k|) for k = {k}")]
    CouplingOutOfRange { gamma: f64, k: i32 },

    #[error("mass must be positive and finite, got {0}")]
    InvalidMass(f64),

    #[error("no bound state with n = 0 for k = {k} > 0")]
    NoGroundState { k: i32 },

    #[error("Kummer function undefined for b = {0} (nonpositive integer)")]
    KummerDomain(f64),

    #[error("Kummer series with a = {0} does not terminate")]
    NonTerminating(f64),

    #[error("gamma function requires x > 0, got {0}")]
    GammaDomain(f64),

    #[error("Gauss-Laguerre rule: {0}")]
    InvalidQuadrature(String),

    #[error("Newton iteration for Laguerre node {index} of {count} did not converge")]
    QuadratureConvergence { count: usize, index: usize },

    #[error("operator application produced base exponent {0} <= 0")]
    ExponentUnderflow(f64),

    #[error("inner product diverges: combined base exponent {0} <= 0")]
    Divergent(f64),

    #[error("cannot normalize the zero function")]
    ZeroFunction,

    #[error("quasi-polynomials are incompatible: {0}")]
    Incompatible(String),

    #[error("ladder coefficient is complex for m = {m}, s = {s}")]
    ComplexLadderCoefficient { m: i64, s: f64 },

    #[error("D transform is singular: det = {0}")]
    SingularTransform(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
