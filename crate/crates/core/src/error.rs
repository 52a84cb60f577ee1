use thiserror::Error;

/// Errors raised by table, group, family and search operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must be non-empty")]
    EmptyCarrier,
    #[error("carrier of size {0} exceeds the supported maximum of {max}", max = crate::table::MAX_ORDER)]
    CarrierTooLarge(usize),
    #[error("expected {expected} rows/columns, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry {value} at ({row}, {col}) is outside [0, {n})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("index {index} is outside [0, {n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("tables have different carrier sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("operation is not a right quasigroup: column {column} is not a bijection")]
    NotRightQuasigroup { column: usize },
    #[error("operation is not a rack")]
    NotRack,
    #[error("operation is not a quandle")]
    NotQuandle,
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("not a group: {0}")]
    NotGroup(String),
    #[error("map is not a group automorphism")]
    NotAutomorphism,
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogName(String),
    #[error("generators {left} and {right} are not mutually distributive (witness {witness:?})")]
    NotMutuallyDistributive {
        left: usize,
        right: usize,
        witness: (usize, usize, usize),
    },
    #[error("generator id {0} is not available")]
    UnknownGenerator(usize),
    #[error("order {requested} exceeds the enumeration cap of {cap}")]
    CapacityExceeded { requested: usize, cap: usize },
    #[error("closure exceeded {0} elements")]
    ClosureTooLarge(usize),
    #[error("group of order {order} (abelian: {abelian}) has no entry in the small-group table")]
    UnresolvedIsoType { order: usize, abelian: bool },
    #[error("malformed family: {0}")]
    MalformedFamily(String),
    #[error("family fails validation: {0}")]
    InvalidFamily(String),
    #[error("cannot parse word: {0}")]
    WordSyntax(String),
}

pub type Result<T> = std::result::Result<T, Error>;
