use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed graph text. `line` is 1-based; `offset` is a byte offset within that line.
    #[error("parse error at line {line}, offset {offset}: {message}")]
    Parse {
        line: usize,
        offset: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A chromatic computation ran out of budget. The true value lies in `lower..=upper`.
    #[error("chromatic search exceeded its budget (bounds {lower}..={upper})")]
    ChiTimeout { lower: usize, upper: usize },

    /// A search ran out of budget before it could decide presence or absence.
    #[error("{search} search is indeterminate: budget exhausted")]
    Indeterminate { search: &'static str },

    #[error("construction error: {0}")]
    Construction(String),

    /// Every candidate gadget was attached without the chromatic number rising.
    #[error("construction refuted: chromatic number never increased after {gadgets} gadgets")]
    ConstructionRefuted { gadgets: usize, log: Vec<String> },

    #[error("io error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    /// True for budget exhaustion, which must never be read as a refutation.
    pub fn is_timeout(&self) -> bool {
        matches!(self, Error::ChiTimeout { .. } | Error::Indeterminate { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

/// The first definitional clause a certificate fails, with context for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

impl Violation {
    pub fn new(clause: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            clause: clause.into(),
            detail: detail.into(),
        }
    }

    /// Prefixes the clause, e.g. with the index of the spire it belongs to.
    pub fn within(self, context: &str) -> Self {
        Violation {
            clause: format!("{context}: {}", self.clause),
            detail: self.detail,
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.detail.is_empty() {
            write!(f, "{}", self.clause)
        } else {
            write!(f, "{} ({})", self.clause, self.detail)
        }
    }
}

/// Outcome of a validator: `Ok(())` or the first failed clause.
pub type Verdict = std::result::Result<(), Violation>;

/// Returns a violation of `clause` unless `ok` holds.
pub(crate) fn require(ok: bool, clause: &str, detail: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(Violation::new(clause, detail()))
    }
}
