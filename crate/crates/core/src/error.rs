use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ground set is empty")]
    EmptyGround,
    #[error("ground set has {size} elements, at most {max} supported")]
    GroundTooLarge { size: usize, max: usize },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("element index {index} out of range for ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("subset over a ground set of size {found}, expected size {expected}")]
    GroundMismatch { expected: usize, found: usize },

    #[error("unknown proximity kind `{0}`")]
    UnknownKind(String),
    #[error("no probe value for element `{0}`")]
    MissingProbe(String),
    #[error("probe features for `{label}` have arity {found}, expected {expected}")]
    ProbeArity {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("no coordinates for element `{0}`")]
    MissingCoords(String),
    #[error("coordinates for `{label}` have dimension {found}, expected {expected}")]
    CoordDimension {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("gap threshold must be a non-negative number, got {0}")]
    InvalidEpsilon(f64),
    #[error("empty subset in basis pair {0}")]
    EmptyBasisSubset(usize),
    #[error("subspace must be nonempty")]
    EmptySubspace,

    #[error("{table} table: {detail}")]
    BadTable { table: String, detail: String },
    #[error("distinguished element `{0}` is not in the carrier")]
    BadDistinguished(String),
    #[error("ring has no unity")]
    NoUnity,
    #[error("not a ring: {0}")]
    NotARing(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a field: `{0}` is nonzero but not invertible")]
    NotAField(String),
    #[error("not a subring: {0}")]
    NotASubring(String),
    #[error("module law `{law}` fails at {witness}")]
    ModuleLaw { law: String, witness: String },
    #[error("product carrier would have {size} elements, at most {max} supported")]
    ProductTooLarge { size: usize, max: usize },

    #[error("{check}: carrier size {size} exceeds the exhaustive cap {cap} and the relation is not point-generated")]
    CapExceeded { check: String, size: usize, cap: usize },
    #[error("full-product mode requires every carrier to have at most 3 elements (found {0})")]
    FullProductTooLarge(usize),
    #[error("relation and carrier disagree: {0}")]
    CarrierMismatch(String),
    #[error("map is not total: {0}")]
    BadMap(String),

    #[error("{0}")]
    Document(String),
}
