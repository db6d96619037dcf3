use thiserror::Error;

/// Everything that can go wrong while building states or evaluating measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite matrix or amplitude entry at index {index}")]
    NonFinite { index: usize },

    #[error(
        "matrix is not Hermitian: entry ({row}, {col}) deviates from its adjoint by {deviation:e}"
    )]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e} below tolerance")]
    NotPositive { eigenvalue: f64 },

    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("state has zero norm and cannot be normalized")]
    ZeroNorm,

    #[error("mixing parameter {p} violates the {bound} bound {limit} for {family} states")]
    MixingOutOfRange {
        p: f64,
        family: &'static str,
        bound: &'static str,
        limit: f64,
    },

    #[error("matrix is not unitary: max |U†U - 1| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("unknown named state '{id}'; valid ids: {valid}")]
    UnknownState { id: String, valid: &'static str },

    #[error("cannot parse '{token}': {reason}")]
    Parse { token: String, reason: String },

    #[error("{what} = {value} is outside its domain")]
    OutOfDomain { what: &'static str, value: f64 },

    #[error("{what} disagree by {discrepancy:e}")]
    Inconsistent {
        what: &'static str,
        discrepancy: f64,
    },

    #[error("invalid optimizer config: {0}")]
    Config(String),

    #[error("no sign change of {what} found in ({lo}, {hi})")]
    RootNotFound {
        what: &'static str,
        lo: f64,
        hi: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
