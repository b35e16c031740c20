use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("tetrahedron {tet} face {face}: gluing refers to tetrahedron {target}, but only {n} exist")]
    IndexOutOfRange { tet: usize, face: usize, target: usize, n: usize },

    #[error("tetrahedron {tet} face {face}: gluing is not matched by the reverse gluing")]
    Involution { tet: usize, face: usize },

    #[error("tetrahedron {tet} face {face} is glued to itself")]
    SelfGluedFace { tet: usize, face: usize },

    #[error("edge {edge} of tetrahedron {tet} is identified with itself in reverse; not a 3-manifold")]
    InvalidEdge { tet: usize, edge: usize },

    #[error("expected a one-vertex triangulation, found {0} vertices")]
    NotOneVertex(usize),

    #[error("expected a torus boundary, found {0}")]
    WrongBoundary(String),

    #[error("vector has length {got}, expected {expected}")]
    Dimension { got: usize, expected: usize },

    #[error("zero vector has no primitive multiple")]
    ZeroVector,

    #[error("malformed normal vector: {0}")]
    VectorFormat(String),

    #[error("normal surface does not glue consistently: {0}")]
    InconsistentSurface(String),

    #[error("pop on an empty mark stack")]
    EmptyMarkStack,

    #[error("system too large for the brute-force oracle ({0} variables)")]
    OracleTooLarge(usize),

    #[error("crush precondition violated: {0}")]
    CrushPrecondition(String),

    #[error("crushing failed: {0}")]
    Crush(String),

    #[error("one-vertex conversion failed: {0}")]
    OneVertex(String),

    #[error("{0}")]
    Corpus(String),
}
