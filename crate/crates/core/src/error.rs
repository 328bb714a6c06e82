use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{m} is too large (limit 65536 elements)")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("scalar coefficient {value} out of range for characteristic {p}")]
    ScalarOutOfRange { value: u32, p: u32 },
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0}")]
    InvalidPermutation(String),
    #[error("group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not normal: {0}")]
    NotNormal(String),
    #[error("modules are over different groups")]
    GroupMismatch,
    #[error("element does not belong to the group")]
    ForeignElement,
    #[error("generator matrix {0} is singular")]
    SingularGenerator(usize),
    #[error("matrices do not define a representation: {0}")]
    NotHomomorphism(String),
    #[error("cocycle represents the split extension")]
    SplitExtension,
    #[error("basis is not closed under multiplication")]
    NotClosed,
    #[error("element is not idempotent modulo the radical")]
    NotIdempotentModRadical,
    #[error("module is spread over several blocks")]
    MixedBlock,
    #[error("module does not lie in the requested block")]
    OutsideBlock,
    #[error("block does not cover the given block")]
    NotCovering,
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
