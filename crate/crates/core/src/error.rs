use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid item `{attribute}={value}`: {reason}")]
    InvalidItem {
        attribute: String,
        value: String,
        reason: &'static str,
    },

    #[error("no transactions")]
    EmptyDatabase,

    #[error("support of `{0}` is zero")]
    ZeroSupport(String),

    #[error("invalid mining parameters: {0}")]
    InvalidParams(String),

    #[error("brute-force enumeration too large: {itemsets} itemsets over {items} items (limit {limit})")]
    EnumerationTooLarge { items: usize, itemsets: u128, limit: u128 },

    #[error("{path}{}: {message}", line.map(|l| format!(":{l}")).unwrap_or_default())]
    Schema {
        path: PathBuf,
        line: Option<u64>,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("duplicate user id `{0}`")]
    DuplicateUser(String),

    #[error("unknown practice code `{code}` (accepted: good_practice, bad_practice, b_p, m_p)")]
    UnknownPractice { code: String },

    #[error("unparseable date `{0}` (expected D/M/Y or YYYY-MM-DD)")]
    InvalidDate(String),

    #[error("age {0} outside [16, 100]")]
    AgeOutOfRange(i64),

    #[error("notification references unknown reporting user `{0}`")]
    UnknownReportingUser(String),

    #[error("unknown output format `{0}` (expected text, csv or markdown)")]
    UnknownFormat(String),

    #[error("rule has {0} consequent items; only single-consequent rules can be verbalized")]
    MultiConsequent(usize),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("fixture verification failed: {0}")]
    Fixture(String),

    #[error("malformed rule row: {0}")]
    MalformedRule(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn schema(path: impl Into<PathBuf>, line: Option<u64>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
