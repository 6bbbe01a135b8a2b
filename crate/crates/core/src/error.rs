use thiserror::Error;

use crate::canonical::Cell;

#[derive(Error, Debug)]
pub enum Error {
    #[error("exponent p must be nonzero and finite, got {0}")]
    InvalidExponent(f64),

    #[error("coordinates must be finite")]
    NonFinite,

    #[error("empty coordinate vector")]
    EmptyVector,

    #[error("sites coincide")]
    IdenticalSites,

    #[error("sites share an x- or y-coordinate")]
    DegeneratePair,

    #[error("x = {0} is a pole of the horizontal difference for p < 0")]
    PoleAtSite(f64),

    #[error("y = {0} is a pole of the vertical difference")]
    PoleAtUnit(f64),

    #[error("x = 0 is the asymptote of the hyperbola")]
    Asymptote,

    #[error("no sign change of the bisector equation in cell {cell} at x = {x}, p = {p}")]
    NoRootInCell { cell: Cell, x: f64, p: f64 },

    #[error("bisection at x = {x} ended at y = {y} with residual {residual} above tolerance")]
    ResidualAboveTolerance { x: f64, y: f64, residual: f64 },

    #[error("cell {0} carries no bisector points")]
    InvalidCell(Cell),

    #[error("x = {x} is outside the open X-interval of cell {cell}")]
    OutsideCell { cell: Cell, x: f64 },

    #[error("scale factor u must be >= 1, got {0}")]
    InvalidScale(f64),

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("the p-list must contain both positive and negative values")]
    OneSidedExponents,

    #[error("fewer than two distinct |p| values for cell {cell}, x = {x}")]
    InsufficientData { cell: Cell, x: f64 },

    #[error("no sites given")]
    NoSites,

    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("site index {index} out of range for {count} sites")]
    SiteIndex { index: usize, count: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
