use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parity mismatch: cannot add (1-x^2)^({0}/2) and (1-x^2)^({1}/2) terms")]
    ParityMismatch(i64, i64),

    #[error("cannot integrate exactly: odd half-power k = {0}")]
    OddHalfPower(i64),

    #[error("cannot integrate over [-1, 1]: negative power k = {0}")]
    NegativePower(i64),

    #[error("x = {x} is outside the domain of an element with half-power k = {k}")]
    DomainError { x: f64, k: i64 },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parameters {params:?} are out of range for {identity}: {reason}")]
    ParamOutOfRange {
        identity: String,
        params: Vec<String>,
        reason: String,
    },

    #[error("state is not an eigenelement of the first partner Hamiltonian")]
    NotAnEigenstate,

    #[error("zero mode skipped: the raised state vanishes (E = 0 for the pair)")]
    ZeroModeSkipped,

    #[error("expected a polynomial of degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: String },

    #[error("order m = {m} is out of range for degree n = {n} (need |m| <= n)")]
    RangeError { n: u32, m: i64 },

    #[error("oscillator frequency must be positive, got {0}")]
    NonPositiveFrequency(String),

    #[error("family is not shape invariant at a = {param}; residual {residual}")]
    NotShapeInvariant { param: String, residual: String },

    #[error("invalid serialized value: {0}")]
    Parse(String),
}
