use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("half-edge {0} does not exist")]
    UnknownHalfEdge(usize),
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("rotation at vertex {vertex} lists half-edge {half} whose origin is {origin}")]
    ForeignHalfEdge { vertex: usize, half: usize, origin: usize },
    #[error("half-edge {0} appears in no rotation or in more than one")]
    RotationCoverage(usize),
    #[error("cannot decide which face is unbounded: missing geometry and no OUTER declaration")]
    NoOuterFace,
    #[error("two half-edges leave vertex {0} in the same direction")]
    CoincidentDirections(usize),
    #[error("expansion did not settle the face through half-edge {0}")]
    FaceUndetermined(usize),
    #[error("generator: {0}")]
    Generator(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("rose: {0}")]
    Rose(String),
    #[error("marked set: {0}")]
    Marked(String),
    #[error("vertex {0} is not a vertex of the graph")]
    BadVertex(usize),
    #[error("petal index {0} out of range")]
    BadPetal(usize),
    #[error("word is not closed in the graph: {0}")]
    NotClosed(String),
    #[error("lift leaves the materialized graph at vertex {0}")]
    Frontier(usize),
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumError {
    #[error("expression: {0}")]
    Parse(String),
    #[error("path passes within {distance:e} of a singular value at parameter {t}")]
    SingularValue { t: f64, distance: f64 },
    #[error("continuation step underflow at parameter {0}")]
    StepUnderflow(f64),
    #[error("|f'| below 1e-12 at parameter {0}")]
    FlatDerivative(f64),
    #[error("value outside the domain: {0}")]
    Domain(String),
    #[error("map is not a polynomial")]
    NotPolynomial,
    #[error("root finding failed: {0}")]
    Roots(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{0}")]
    Io(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
