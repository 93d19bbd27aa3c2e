use thiserror::Error;

/// Crate-wide error type. Every guard in the library is a hard error, never a
/// silent fallback: callers that want a degraded mode must ask for it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("points {a} and {b} share coordinate {value} on axis {axis}; input must be in general position")]
    GeneralPosition { axis: usize, a: u32, b: u32, value: f64 },

    #[error("point {id} has {got} coordinates, expected {dim}")]
    BadArity { id: u32, got: usize, dim: usize },

    #[error("coordinate {value} of point {id} is not finite")]
    NotFinite { id: u32, value: f64 },

    #[error("unit-height input is degenerate: {reason}; jitter y by a small irrational amount, e.g. y + 1e-7 * (id+1)")]
    DegenerateUnitHeight { reason: String },

    #[error("family {family} is not defined in dimension {dim}")]
    DimensionMismatch { family: &'static str, dim: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} has size {size}, exceeding the hard limit {limit} for this operation")]
    TooLarge { what: &'static str, size: usize, limit: usize },

    #[error("hypergraph is not uniform and regular (uniform: {uniform:?}, regular: {regular:?})")]
    NotUniformRegular { uniform: Option<usize>, regular: Option<usize> },

    #[error("edge {0:?} is invalid: {1}")]
    InvalidEdge(Vec<u32>, String),

    #[error("structural precondition violated: {0}")]
    Structure(String),

    #[error("no hitting edge set exists: {0}")]
    NoHittingEdgeSet(String),

    #[error("search failed within budget: {reason}{}", best_deficiency.map(|d| format!(" (best deficiency {d})")).unwrap_or_default())]
    SearchFailed { reason: String, best_deficiency: Option<usize> },

    #[error("coloring is not a total assignment on {expected} vertices (got {got})")]
    ColoringNotTotal { expected: usize, got: usize },

    #[error("color {color} is outside 1..={k}")]
    ColorOutOfRange { color: u32, k: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
