//! Axial line extraction from isovist fields.
//!
//! Open space is given as a binary [`OccupancyGrid`]. The pipeline is:
//!
//! 1. **Isovist field**: the maximum diametric length (the longest straight
//!    chord through a cell centre that stays inside open space) is computed
//!    for every open cell by exact ray traversal over an angular sweep.
//! 2. **Ridges**: the local maxima of that surface form a binary point set.
//! 3. **Hough transform**: ridge points vote in a normal-parameterised
//!    `(rho, theta)` accumulator; peaks are extracted in rank order of their
//!    votes.
//! 4. **Inversion**: each peak is turned back into an image-plane line and
//!    clipped to the image rectangle.
//!
//! This crate is `no_std` (it needs `alloc`). File formats, the parallel
//! field kernel and the command line tool live in the `isoridge` crate.

#![no_std]

extern crate alloc;

pub mod axial;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod hough;
pub mod isovist;
pub mod oracle;
pub mod ridge;

pub use axial::{
    apply_length_threshold, estimate_street_width, extract_axial_lines, lines_from_field,
    longest_open_run, rank_lines, AxialLine, Extraction, HoughSettings, PipelineConfig,
};
pub use error::Error;
pub use geometry::{Point, Rect, Segment};
pub use grid::{generate_h_shape, OccupancyGrid, ScalarField, Symmetry};
pub use hough::{
    hough_transform, invert_line, invert_normal_form, point_to_sinusoid, rank_peaks,
    HoughAccumulator, HoughConfig, LineParams, PeakIter,
};
pub use isovist::{
    compute_field, compute_row, max_diametric_length, ray_length, DirectionTable, FieldConfig,
    IsovistField, RayMode,
};
pub use oracle::{oracle_delta_max, oracle_ray_length, OracleConfig};
pub use ridge::{local_maxima, RidgeMask};

pub type Result<T> = core::result::Result<T, Error>;
