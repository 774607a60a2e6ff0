use thiserror::Error;

use crate::planner::Cell;
use crate::surface::Face;

/// Errors produced by the geometry, oracle, planner and rendering layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("barycentric weight {0} is negative")]
    NegativeWeight(f64),
    #[error("barycentric weights sum to {0}, expected 1")]
    BadSum(f64),
    #[error("barycentric weights must be finite")]
    NonFinite,
    #[error("unfolding depth {0} exceeds the limit of {max}", max = crate::surface::MAX_DEPTH)]
    DepthTooLarge(usize),
    #[error("point lies on face {point}, but the chain ends on face {chain}")]
    FaceMismatch { point: Face, chain: Face },
    #[error("no geodesic found within unfolding depth {0}")]
    NoPathFound(usize),
    #[error("source and target are the same point")]
    SamePoint,
    #[error("continuity audit is vacuous on discrete cell {0}")]
    BadCell(Cell),
    #[error("unknown figure `{0}`")]
    UnknownFigure(String),
    #[error("bad figure parameters: {0}")]
    BadParams(String),
    #[error("cannot parse point literal `{0}`")]
    ParsePoint(String),
    #[error("malformed geodesic document: {0}")]
    BadDocument(String),
    #[error("straight segment passes through a vertex")]
    ThroughVertex,
    #[error("direction leaves the chart around the source point")]
    OutsideChart,
}

pub type Result<T> = std::result::Result<T, Error>;
