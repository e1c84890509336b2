use thiserror::Error;

/// Error type shared by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum CensusError {
    /// An argument lies outside the operation's domain: zero where a positive
    /// integer is required, a non-prime base, a malformed flag value, a grid
    /// that is too short or not strictly increasing.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A documented resource cap was exceeded (sieve limit, oracle order,
    /// naive-summation guard).
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// A checked integer operation left the representable range. Carries the
    /// operands so the failing call can be reproduced.
    #[error("integer overflow in {context} at ({a}, {b})")]
    Overflow {
        context: &'static str,
        a: u64,
        b: u64,
    },

    /// Two independently computed routes to the same quantity disagreed.
    /// This always indicates a defect; the message carries a command line
    /// that reproduces the comparison.
    #[error("dual-route disagreement in {what}: {details}; reproduce with: {reproduce}")]
    RouteDisagreement {
        what: &'static str,
        details: String,
        reproduce: String,
    },

    /// A self-check on an internal data structure failed (oracle closure
    /// re-check, lattice sanity). Treated with the same severity as a
    /// dual-route disagreement.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CensusError>;

impl CensusError {
    /// Process exit code used by the CLI: 2 for usage errors, 3 for resource
    /// caps and overflow, 4 for any internal-consistency failure, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CensusError::InvalidInput(_) => 2,
            CensusError::ResourceCap(_) | CensusError::Overflow { .. } => 3,
            CensusError::RouteDisagreement { .. } | CensusError::Internal(_) => 4,
            CensusError::Io { .. } | CensusError::Json(_) => 1,
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CensusError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
