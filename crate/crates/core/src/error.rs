use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("grid spacing must be positive and finite, got {dx}")]
    BadSpacing { dx: f64 },
    #[error("grid needs at least 16 points, got {n}")]
    TooFewPoints { n: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("grid too coarse: box width {width} needs at least two cells of {dx}")]
    GridTooCoarse { width: f64, dx: f64 },
    #[error("grid too narrow: box of width {width} does not fit in span {span}")]
    GridTooNarrow { width: f64, span: f64 },
    #[error("degenerate superposition: normalization denominator {denominator} < 1e-12")]
    DegenerateSuperposition { denominator: f64 },
    #[error("interval [{lo}, {hi}] extends outside the grid")]
    IntervalOutsideGrid { lo: f64, hi: f64 },
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("operands are in different representations")]
    RepresentationMismatch,
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WignerError {
    #[error("p axis cannot resolve the Wigner structure: requested dp {requested}, natural dp {natural}, band limit {limit}")]
    Resolution {
        requested: f64,
        natural: f64,
        limit: f64,
    },
    #[error("quasi-probability weights must sum to 1 within 1e-9, got {sum}")]
    NotNormalized { sum: f64 },
    #[error("shear of up to {max_shift} exceeds half the grid span {span}")]
    ShearOutOfRange { max_shift: f64, span: f64 },
    #[error("integration interval [{lo}, {hi}] extends outside the grid")]
    IntervalOutsideGrid { lo: f64, hi: f64 },
    #[error(transparent)]
    State(#[from] StateError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConsistencyError {
    #[error("interval geometry differs between the probability triple and the region report: {what}")]
    InconsistentGeometry { what: String },
}
