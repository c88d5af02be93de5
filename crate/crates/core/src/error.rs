use thiserror::Error;

/// Errors raised by the exact-computation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration would exceed the configured object cap.
    #[error("resource limit: {what} needs {needed} objects, cap is {cap}")]
    ResourceLimit { what: String, needed: String, cap: u64 },
    /// The parameter is valid but the operation has no finite realization for it.
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// An internal identity failed to hold.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

/// Default cap on the number of objects any exhaustive enumeration may visit.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

/// Default cap on the order of finite permutation groups.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

pub(crate) fn check_cap(what: &str, needed: &num_bigint::BigUint, cap: u64) -> Result<()> {
    if *needed > num_bigint::BigUint::from(cap) {
        return Err(Error::ResourceLimit {
            what: what.to_string(),
            needed: needed.to_string(),
            cap,
        });
    }
    Ok(())
}
