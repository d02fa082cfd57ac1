use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order must be at least 2, got {0}")]
    InvalidOrder(u64),

    #[error("malformed block text at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("residue {residue} out of range for Z_{n}")]
    ResidueOutOfRange { residue: u64, n: u64 },

    #[error("sequence is not zero-sum in Z_{n} (sum is {sum} mod {n})")]
    NotZeroSum { n: u64, sum: u64 },

    #[error("multiplicity arithmetic overflowed")]
    Overflow,

    #[error("input list is empty")]
    EmptyInput,

    #[error("group mismatch: Z_{left} vs Z_{right}")]
    GroupMismatch { left: u64, right: u64 },

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: u64 },

    #[error("factorizations belong to different atom tables")]
    TableMismatch,

    #[error("factorizations do not factor the same element")]
    DifferentElements,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("no witness found within the search bound")]
    NotFound,

    #[error("checksum mismatch in {}", path.display())]
    ChecksumMismatch { path: PathBuf },

    #[error("corrupt file {}: {message}", path.display())]
    Corrupt { path: PathBuf, message: String },

    #[error("checkpoint mismatch: {0}")]
    VersionMismatch(String),

    #[error("lock held on {}", path.display())]
    Locked { path: PathBuf },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by a configured ceiling rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
