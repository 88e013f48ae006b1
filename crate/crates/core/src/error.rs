use thiserror::Error;

use crate::drawing::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("cannot parse surface {0:?}, expected S<g> or N<k>")]
    Parse(String),
    #[error("a non-orientable surface needs at least one crosscap")]
    ZeroCrosscaps,
    #[error("no {} surface has Euler characteristic {chi}", if *orientable { "orientable" } else { "non-orientable" })]
    BadEulerCharacteristic { chi: i64, orientable: bool },
    #[error("genus formula for K_{{{m},{n}}} needs both sides of size at least {min}")]
    GenusDomain { m: u32, n: u32, min: u32 },
}

#[derive(Debug, Error)]
pub enum DrawingError {
    #[error("drawing is not good: {}", summarize(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("{0:?} is not a q-side vertex")]
    NotQSide(String),
    #[error("expected two distinct q-side vertices, got {0:?} twice")]
    SameVertex(String),
    #[error("cannot delete the last q-side vertex")]
    LastVertex,
    #[error("bad drawing file: {0}")]
    Format(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn summarize(violations: &[Violation]) -> String {
    let shown: Vec<String> = violations.iter().take(4).map(|v| v.to_string()).collect();
    let mut out = shown.join("; ");
    if violations.len() > 4 {
        out.push_str(&format!(" (+{} more)", violations.len() - 4));
    }
    out
}

#[derive(Debug, Error)]
pub enum DuplicationError {
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error("gap index {gap} out of range for a rotation of length {p}")]
    BadGap { gap: usize, p: usize },
    #[error("vertex name {0:?} is already in use or malformed")]
    BadName(String),
    #[error("script step {index} failed: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<DuplicationError>,
    },
    #[error("{what} must lie in {range}, got {got}")]
    OutOfRange {
        what: &'static str,
        range: &'static str,
        got: usize,
    },
}

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Duplication(#[from] DuplicationError),
    #[error("p-side vertices {0:?} form a triangle of the non-crossing graph")]
    Triangle([usize; 3]),
    #[error("need at least two q-side vertices, got {0}")]
    TooFewVertices(usize),
    #[error("p-side indices must be distinct and below p, got ({0}, {1})")]
    BadPSidePair(usize, usize),
    #[error("rebuilt drawing has {rebuilt} crossings, more than the original {original}")]
    RebuildIncreased { original: usize, rebuilt: usize },
}
