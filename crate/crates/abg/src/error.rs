use thiserror::Error;

/// Errors surfaced by construction, validation, and verification operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate simplex: vertices {0:?} are affinely dependent")]
    DegenerateSimplex(Vec<u32>),
    #[error("not a simplicial complex: {0}")]
    NotAComplex(String),
    #[error("duplicate vertex coordinates at indices {0} and {1}")]
    DuplicateVertexCoordinates(usize, usize),
    #[error("simplex {0:?} is not in the complex")]
    SimplexNotInComplex(Vec<u32>),
    #[error("complex is not pure of dimension {expected}: {detail}")]
    NotPure { expected: usize, detail: String },
    #[error("barycenter collision between distinct simplices {0:?} and {1:?}")]
    BarycenterCollision(Vec<u32>, Vec<u32>),
    #[error("dimension {0} out of supported range {1}")]
    DimensionOutOfRange(usize, String),
    #[error("vertices are not opposite corners of the cube")]
    NotOppositeVertices,
    #[error("quotient is not simplicial: {0}")]
    QuotientNotSimplicial(String),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("index {0} out of range: {1}")]
    IndexOutOfRange(usize, String),
    #[error("skeleton subcomplex is not full: {0}")]
    SkeletonNotFull(String),
    #[error("neighborhood boundaries differ: {0}")]
    BoundariesDiffer(String),
    #[error("not a closed pseudomanifold: {0}")]
    NotPseudomanifold(String),
    #[error("degree {0} out of range for complex of dimension {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),
    #[error("cup product degree {0} exceeds complex dimension {1}")]
    DegreeOverflow(usize, usize),
    #[error("axis {0} out of range 1..={1}")]
    AxisOutOfRange(usize, usize),
    #[error("cochain is not a cocycle: fails on {0:?}")]
    NotACocycle(Vec<u32>),
    #[error("segment endpoint lies on the surface")]
    EndpointsOnSurface,
    #[error("perturbation schedule exhausted without a transverse result")]
    PerturbationExhausted,
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("unsupported format version {0}")]
    FormatVersionUnsupported(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
