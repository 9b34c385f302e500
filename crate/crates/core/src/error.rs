use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A raster was requested with a zero width or height.
    ZeroDimension {
        width: usize,
        height: usize,
    },
    /// The cell buffer does not match `width * height`.
    CellCount {
        expected: usize,
        found: usize,
    },
    /// The H-shape layout does not fit, or cannot be centred, on its canvas.
    ShapeDoesNotFit(&'static str),
    /// A ray origin outside the grid.
    OutsideGrid {
        x: f64,
        y: f64,
    },
    /// A ray origin or query cell inside an obstacle.
    InsideObstacle {
        i: usize,
        j: usize,
    },
    InvalidConfig(&'static str),
    EmptyPointSet,
    /// A Hough input point lies outside the image rectangle.
    PointOutsideBounds {
        x: f64,
        y: f64,
    },
    /// An inverted line does not cross the image rectangle.
    LineMissesBounds {
        rho: f64,
        theta: f64,
    },
    NoOpenCells,
    NoRidgePoints,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDimension { width, height } => {
                write!(f, "grid dimensions must be non-zero, got {width}x{height}")
            }
            Error::CellCount { expected, found } => {
                write!(f, "expected {expected} cells, found {found}")
            }
            Error::ShapeDoesNotFit(why) => write!(f, "shape does not fit canvas: {why}"),
            Error::OutsideGrid { x, y } => write!(f, "point ({x}, {y}) is outside the grid"),
            Error::InsideObstacle { i, j } => write!(f, "cell ({i}, {j}) is an obstacle"),
            Error::InvalidConfig(why) => write!(f, "invalid configuration: {why}"),
            Error::EmptyPointSet => f.write_str("no points to transform"),
            Error::PointOutsideBounds { x, y } => {
                write!(f, "point ({x}, {y}) lies outside the image bounds")
            }
            Error::LineMissesBounds { rho, theta } => {
                write!(f, "line (rho={rho}, theta={theta}) misses the image")
            }
            Error::NoOpenCells => f.write_str("grid has no open cells"),
            Error::NoRidgePoints => f.write_str("field has no ridge points"),
        }
    }
}

impl core::error::Error for Error {}
