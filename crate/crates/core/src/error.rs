use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size policy violated: {0}")]
    SizePolicy(String),

    #[error("resource cap exceeded: {what} needs {cells} cells, cap is {cap}")]
    ResourceCap { what: String, cells: u128, cap: u128 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("unsupported group family: {0}")]
    UnsupportedFamily(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("linear algebra: {0}")]
    Linalg(String),

    #[error("horizon {horizon} too small: resolution still changing at degree {reached}")]
    HorizonTooSmall { horizon: usize, reached: usize },

    #[error("oracle disagreement: {0}")]
    OracleMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on cochain cells, overridable via `CHOWTWIST_MAX_CELLS`.
pub const DEFAULT_MAX_CELLS: u128 = 1_000_000;

pub fn max_cells() -> u128 {
    std::env::var("CHOWTWIST_MAX_CELLS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CELLS)
}

/// Dense integral elimination may use this many matrix entries per cochain
/// cell allowed by [`max_cells`].
pub const DENSE_ENTRIES_PER_CELL: u128 = 40;

pub(crate) fn check_dense(what: impl Into<String>, entries: u128) -> Result<()> {
    let cap = max_cells().saturating_mul(DENSE_ENTRIES_PER_CELL);
    if entries > cap {
        return Err(Error::ResourceCap { what: what.into(), cells: entries, cap });
    }
    Ok(())
}

pub(crate) fn check_cells(what: impl Into<String>, cells: u128) -> Result<()> {
    let cap = max_cells();
    if cells > cap {
        return Err(Error::ResourceCap { what: what.into(), cells, cap });
    }
    Ok(())
}
