use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("slope (0,0) is not a curve")]
    ZeroSlope,
    #[error("slope ({0},{1}) is not primitive and sign-normalized")]
    UnnormalizedSlope(i64, i64),
    #[error("gluing map has determinant {0}, expected +1 or -1")]
    NotUnimodular(i64),

    #[error("operation requires a Seifert fibered vertex")]
    NotSeifert,
    #[error("operation requires a (surface) x I vertex")]
    NotProduct,
    #[error("empty-surface: no curves or arcs given")]
    EmptySurface,
    #[error("invalid-reference: {0}")]
    InvalidReference(String),
    #[error("inessential-curve: {0}")]
    Inessential(String),
    #[error("arcs-crossing: projected arcs {0} and {1} cannot be disjoint")]
    ArcsCrossing(usize, usize),
    #[error("closed-vertex: horizontal surfaces need a vertex with boundary")]
    ClosedVertex,
    #[error("closed-vertex-unsupported: drilling a regular fiber of a closed vertex")]
    ClosedVertexUnsupported,
    #[error("inadmissible-degree: degree {degree} is not divisible by lcm {lcm}")]
    InadmissibleDegree { degree: u64, lcm: u64 },
    #[error("euler-number-obstruction: framing coefficients sum to {got}, need {need}")]
    EulerNumberObstruction { got: String, need: String },
    #[error("framing-arity: expected {expected} framing coefficients, got {got}")]
    FramingArity { expected: usize, got: usize },
    #[error("invalid-copies: product horizontal surfaces use 1 or 2 copies, got {0}")]
    InvalidCopies(u32),
    #[error("sphere-or-disk-pieces-forbidden: horizontal piece would have chi {0}")]
    SphereOrDisk(i64),
    #[error("collar-mismatch: drilled boundary carries {0} curves, a collar needs 2")]
    CollarMismatch(u64),
    #[error("collar-meridian: meridian of the drilled fiber meets each curve {0} times, need 1")]
    CollarMeridian(u64),

    #[error("invalid-partition: {0}")]
    InvalidPartition(String),
    #[error("no-spine: partition admits no arc system")]
    NoSpine,
    #[error("disconnected-splitting: V would be disconnected")]
    DisconnectedSplitting,
    #[error("sphere-base-unsupported: Q must have genus at least 1")]
    SphereBaseUnsupported,

    #[error("slope-mismatch: {0}")]
    SlopeMismatch(String),
    #[error("disconnected-surface: assembled surface has {0} components")]
    DisconnectedSurface(usize),
    #[error("not-separating: {0}")]
    NotSeparating(String),
    #[error("odd-chi: total chi {0} is odd")]
    OddChi(i64),
    #[error("invalid-region: {0}")]
    InvalidRegion(String),
    #[error("active-components: {0} compressible pieces, a standard splitting has exactly one")]
    ActiveCount(usize),
    #[error("invalid-choice: {0}")]
    InvalidChoice(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("unknown-edge: {0}")]
    UnknownEdge(String),
    #[error("cut-annulus-unsupported: edge {0} is an annulus edge")]
    CutAnnulus(String),
    #[error("no thin levels given")]
    NoThinLevels,
    #[error("thin-levels-not-separating: cutting the thin edges must split the graph into a tree of pieces")]
    ThinNotSeparating,
    #[error("empty-piece: no candidate assembles for piece {0}")]
    EmptyPiece(String),
    #[error("malformed generalized splitting: {0}")]
    MalformedSplitting(String),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported format {0:?}, expected \"gm-spec/1\"")]
    UnknownFormat(String),
}
