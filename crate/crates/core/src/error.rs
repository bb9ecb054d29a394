use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants fall into two families: usage errors (malformed input, wrong
/// dimensions) and mathematical rejections (an input that is well formed but
/// violates a hypothesis, such as `d² ≠ 0` or a failed Lefschetz check).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("value {0} is a pole of a matrix entry")]
    Pole(String),

    #[error("d² ≠ 0 on generator e{generator}: d(d e{generator}) = {witness}")]
    DSquared { generator: usize, witness: String },

    #[error("degenerate Poincaré pairing in degrees ({0}, {1})")]
    DegeneratePairing(usize, usize),

    #[error("class is not symplectic: top power vanishes")]
    NotSymplectic,

    #[error("hypothesis unmet: {0}")]
    Hypothesis(String),

    #[error("not a subtorus: {0}")]
    NotSubtorus(String),

    #[error("Massey product undefined: {0}")]
    MasseyUndefined(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag for the error family.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Dimension(_) => "dimension",
            Error::Usage(_) => "usage",
            Error::Pole(_) => "pole",
            Error::DSquared { .. } => "d_squared",
            Error::DegeneratePairing(..) => "degenerate_pairing",
            Error::NotSymplectic => "not_symplectic",
            Error::Hypothesis(_) => "hypothesis",
            Error::NotSubtorus(_) => "not_subtorus",
            Error::MasseyUndefined(_) => "massey_undefined",
            Error::Internal(_) => "internal",
        }
    }

    /// True for errors caused by how the library was called rather than by
    /// the mathematics of the input.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Dimension(_) | Error::Usage(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
