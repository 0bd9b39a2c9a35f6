use thiserror::Error;

/// Errors raised by group construction and the theorem machinery.
///
/// Validation errors name the first offending cell or triple so that bad
/// input tables are diagnosable without a debugger.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order {order} exceeds the supported maximum of {max}")]
    OrderLimitExceeded { order: usize, max: usize },

    #[error("table is {rows}x{cols}, expected {order}x{order}")]
    BadDimensions { order: usize, rows: usize, cols: usize },

    #[error("table entry {value} at ({row},{col}) is out of range 0..{order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },

    #[error("not a Latin square: duplicate value in {axis} {index} at position {position}")]
    NotLatinSquare { axis: Axis, index: usize, position: usize },

    #[error("element 0 is not a two-sided identity (first violation at index {index})")]
    NoIdentityAtZero { index: usize },

    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: u16, b: u16, c: u16 },

    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: u16 },

    #[error("element index {element} out of range for group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("subgroup candidate not closed: {a}*{b} escapes the element set")]
    NotClosed { a: u16, b: u16 },

    #[error("subgroup missing the identity element")]
    MissingIdentity,

    #[error("subgroup is not normal: conjugating {element} by {conjugator} escapes")]
    NotNormal { conjugator: u16, element: u16 },

    #[error("map is not a homomorphism: fails at ({a},{b})")]
    NotHomomorphism { a: u16, b: u16 },

    #[error("map is not a bijection")]
    NotBijective,

    #[error("homomorphism endpoints do not match the expected groups")]
    WrongDomains,

    #[error("commutator list needs at least 2 elements, got {len}")]
    ListTooShort { len: usize },

    #[error("expected {expected} coset representatives, got {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("group of order {order} is not abelian ({a}*{b} != {b}*{a})")]
    NotAbelian { order: usize, a: u16, b: u16 },

    #[error("subgroup of order {order} is not central (element {element})")]
    NotCentral { element: u16, order: usize },

    #[error("automorphism is not a member of the required subgroup (fails at {element})")]
    NotMember { element: u16 },

    #[error("theorem hypothesis fails: {reason}")]
    HypothesisFails { reason: String },

    #[error("exponent hypothesis fails: exp(source)={source_exp} does not divide exp(target)={target_exp}")]
    ExponentHypothesisFails { source_exp: u64, target_exp: u64 },

    #[error("groups are p-groups for different primes ({left} vs {right})")]
    MixedPrimes { left: u64, right: u64 },

    #[error("parameter out of range: {reason}")]
    ParameterOutOfRange { reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("unknown group '{0}': not a catalog name or readable file")]
    UnknownGroup(String),
}

/// Which axis of the table a Latin-square violation was found on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Column => write!(f, "column"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
