use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("empty generating set")]
    NoGenerators,
    #[error("group order exceeds cap of {0}")]
    GroupTooLarge(usize),
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("invalid class index {0}")]
    InvalidClass(usize),
    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),
    #[error("class function lives on a different group")]
    DomainMismatch,

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("prime {p} is bad for {poly}: polynomial is not squarefree mod p")]
    BadPrime { p: u64, poly: String },
    #[error("prime {0} is outside the supported range (< 2^40)")]
    PrimeOutOfRange(u64),
    #[error("cycle type {cycle_type:?} at p = {p} matches no class of entry {entry}")]
    UnresolvedCycleType {
        entry: String,
        p: u64,
        cycle_type: Vec<usize>,
    },

    #[error("catalog parse error: {0}")]
    CatalogParse(#[from] serde_json::Error),
    #[error("catalog entry {entry}: {check}")]
    CatalogValidation { entry: String, check: String },
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("entry {entry} has no subfield {subfield:?}")]
    UnknownSubfield { entry: String, subfield: String },
    #[error("subfield {0} has no defining polynomial")]
    MissingSubfieldPoly(String),

    #[error("invalid class function spec {0:?}: {1}")]
    PhiSpec(String, String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
