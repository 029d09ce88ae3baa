use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{file} line {line}: {msg}")]
    Parse {
        file: &'static str,
        line: usize,
        msg: String,
    },

    #[error("item `{item}` appears more than once in sequence {sid}")]
    DuplicateItem { sid: usize, item: String },

    #[error("item `{item}` has no profit entry (database line {line})")]
    MissingProfit { item: String, line: usize },

    #[error("unknown item `{0}`")]
    UnknownItem(String),

    #[error("unknown item id {0}")]
    UnknownItemId(u32),

    #[error("invalid database: {0}")]
    InvalidDatabase(String),

    #[error("database utility overflows 64-bit arithmetic")]
    UtilityOverflow,

    #[error("sequence database is empty")]
    EmptyDatabase,

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("rule does not occur in sequence {sid}")]
    RuleNotInSequence { sid: usize },

    #[error("item {item} does not occur in sequence {sid}")]
    ItemNotInSequence { item: u32, sid: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("alphabet of {items} items exceeds the exhaustive enumeration limit of {limit}")]
    AlphabetTooLarge { items: usize, limit: usize },

    #[error("cannot compute deviation factors for an empty rule set")]
    NoRules,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
