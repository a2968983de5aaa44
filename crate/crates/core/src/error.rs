use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("player labels must be nonempty")]
    EmptyLabel,
    #[error("duplicate player label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown player label `{0}`")]
    UnknownLabel(String),
    #[error("{n} players exceeds the limit of {limit}")]
    TooManyPlayers { n: usize, limit: usize },
    #[error("{n} players is too many to enumerate all orders (limit {limit})")]
    TooManyOrders { n: usize, limit: usize },
    #[error("value of the empty coalition must be 0, got {0}")]
    NonzeroEmptyValue(String),
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("negative value {value} for coalition {{{coalition}}}")]
    NegativeValue { coalition: String, value: String },
    #[error("missing table entry for coalition {{{0}}}")]
    MissingEntry(String),
    #[error("duplicate table entry for coalition {{{0}}}")]
    DuplicateEntry(String),
    #[error("malformed game document: {0}")]
    Document(String),
    #[error("game is not monotone")]
    NotMonotone,
    #[error("mechanism requires a 0-1 monotone game")]
    NotZeroOneMonotone,
    #[error("invalid arrival order: {0}")]
    InvalidOrder(String),
    #[error("prefix length {k} out of range 0..={n}")]
    PrefixOutOfRange { k: usize, n: usize },
    #[error("no value is created in this order")]
    NoValueCreated,
    #[error("invalid weight function: {0}")]
    InvalidWeights(String),
    #[error("weight w({k}) requested but only {len} weights were supplied")]
    WeightOutOfRange { k: usize, len: usize },
    #[error("unknown mechanism `{0}`")]
    UnknownMechanism(String),
    #[error("{mechanism} does not apply to this game: {reason}")]
    Unsupported { mechanism: String, reason: String },
    #[error("malformed table: {0}")]
    Table(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for refusals caused by instance size rather than bad input.
    pub fn is_size_guard(&self) -> bool {
        matches!(self, Error::TooManyPlayers { .. } | Error::TooManyOrders { .. })
    }
}
