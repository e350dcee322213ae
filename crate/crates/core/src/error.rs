use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected a vector of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),

    #[error("duplicate vertex {0} in face candidate")]
    DuplicateVertex(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("generator {index} = {generator} has type {ty}, but subgroups must contain only type-zero elements")]
    TypeViolation {
        index: usize,
        generator: String,
        ty: usize,
    },

    #[error("permutation {perm} does not preserve the translation lattice")]
    UnstableLattice { perm: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degenerate lattice: {0}")]
    DegenerateLattice(String),

    #[error("cone sum diverges: generator {0} has zero weight in every variable")]
    Divergent(String),

    #[error("negative exponent {0} in a cone weight")]
    NegativeExponent(i64),

    #[error("{what} = {value} exceeds the cap {cap}")]
    SizeCap {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("graph has parallel edges or loops (max multiplicity {0}); backtrackless enumeration needs a simple graph")]
    Multigraph(i64),

    #[error("character product coefficient {degree} deviates from an integer by {deviation:e} (tolerance {tolerance:e})")]
    Tolerance {
        degree: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("interpolated determinant is not an integer polynomial")]
    NonIntegral,

    #[error("length vector {0} is not integral at the requested scale")]
    FractionalLength(String),

    #[error("conjugacy class enumeration missed classes: {0}")]
    BoxExhaustion(String),

    #[error("{0}")]
    Invalid(String),
}
