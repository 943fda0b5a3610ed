use thiserror::Error;

/// Unified error type for the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("images {0:?} do not form a bijection")]
    NotABijection(Vec<usize>),

    #[error("empty generator list (degree cannot be inferred)")]
    EmptyGenerators,

    #[error("group order {order} exceeds bound {bound}")]
    OrderBoundExceeded { order: u64, bound: u64 },

    #[error("subgroup enumeration exceeded {0} subgroups")]
    SubgroupEnumerationTooLarge(usize),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("subgroup is not normal in the parent group")]
    NotNormal,

    #[error("permutation does not stabilize {0:?} setwise")]
    NotSetwiseInvariant(Vec<usize>),

    #[error("invalid cayley table: {0}")]
    InvalidTable(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("tuple {tuple:?} has wrong arity for symbol {symbol} (expected {arity})")]
    ArityMismatch {
        symbol: String,
        arity: usize,
        tuple: Vec<usize>,
    },

    #[error("unknown relation symbol {0}")]
    UnknownSymbol(String),

    #[error("structure is not a member of the class: {0}")]
    NotAMember(String),

    #[error("class fails amalgamation at size {size}: {detail}")]
    SpecNotAmalgamating { size: usize, detail: String },

    #[error("class enumeration unsupported: {0}")]
    EnumerationUnsupported(String),

    #[error("generator at index {0} is the identity")]
    IdentityGenerator(usize),

    #[error("listed elements do not generate the group (reach {reached} of {order})")]
    NotGenerating { reached: u64, order: u64 },

    #[error("local group is not a subgroup of the automorphism group of the set")]
    NotASubgroupOfAutK,

    #[error("generator images do not extend to a homomorphism")]
    NotAHomomorphism,

    #[error("map is not bijective onto the target group")]
    NotBijectiveOntoTarget,

    #[error("no minimal stabilizer of the target matches the image of the stabilizer of {point}")]
    NoMinimalStabilizerMatch { point: usize },

    #[error("stabilizer image of {point} matches {count} minimal stabilizers of the target")]
    AmbiguousMatch { point: usize, count: usize },

    #[error("map is not an automorphism of the structure")]
    NotAnAutomorphism,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
