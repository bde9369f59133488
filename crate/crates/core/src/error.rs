use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid modulus {0}: moduli must be positive")]
    InvalidModulus(i128),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An enumeration would exceed its configured cap.
    #[error("{what} requires enumerating {required} elements, over the limit of {limit}")]
    ResourceLimit {
        what: &'static str,
        required: String,
        limit: u64,
    },

    #[error("{0}")]
    Domain(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn resource(what: &'static str, required: impl core::fmt::Display, limit: u64) -> Self {
        Error::ResourceLimit {
            what,
            required: alloc::format!("{required}"),
            limit,
        }
    }
}
