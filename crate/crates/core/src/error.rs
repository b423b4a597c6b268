use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
    #[error("operands belong to different rings")]
    SpecMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("bad level {level} (must lie in 1..={max})")]
    BadLevel { level: u32, max: u32 },
    #[error("desk scale exceeded: {what} has size {size}, cap is {cap}")]
    DeskScaleExceeded { what: String, size: u128, cap: u128 },
    #[error("element is not regular")]
    RegularityViolation,
    #[error("wrong parity of r: {0}")]
    BadParity(String),
    #[error("characteristic polynomial does not split")]
    NotSplit,
    #[error("no invariant maximal isotropic subspace found")]
    InvariantLagrangianNotFound,
    #[error("residue characteristic {0} is not supported by this construction")]
    UnsupportedResidueChar(u32),
    #[error("intertwiner normalization failed: {0}")]
    ExtensionNormalizationFailed(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("class functions live on different groups")]
    BaseMismatch,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("character does not extend: {0}")]
    NoExtension(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("residue fields differ: {0} vs {1}")]
    ResidueMismatch(u32, u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
