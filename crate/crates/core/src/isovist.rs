//! Maximum diametric length field.
//!
//! For an open cell the maximum diametric length is the longest chord of
//! open space through the cell centre: the maximum over directions `theta`
//! of the sight line towards `theta` plus the sight line towards
//! `theta + 180`. Directions are sampled at `k * angle_step` for
//! `k * angle_step < 180`.
//!
//! Sight lines are measured by walking the ray cell by cell across grid
//! faces, so the length for a given direction is exact and the only error
//! comes from the angular sampling. Everything outside the grid is opaque.
//! A ray that passes exactly through a lattice corner is stopped there when
//! the diagonal cell ahead is solid or when both cells flanking the corner
//! are solid.

use alloc::vec::Vec;

use crate::geometry::{half_turn_samples, sincos_deg, Point};
use crate::grid::{OccupancyGrid, ScalarField};
use crate::{Error, Result};

/// Absolute tolerance on ray parameters for treating two face crossings as
/// one corner crossing.
pub const CORNER_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RayMode {
    /// Incremental face-crossing walk.
    #[default]
    ExactTraversal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    /// Sweep increment in degrees, in `(0, 90]`.
    pub angle_step: f64,
    pub ray_mode: RayMode,
}

impl FieldConfig {
    pub fn new(angle_step: f64) -> Result<Self> {
        let config = Self {
            angle_step,
            ray_mode: RayMode::ExactTraversal,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.angle_step > 0.0 && self.angle_step <= 90.0) {
            return Err(Error::InvalidConfig("angle_step must lie in (0, 90]"));
        }
        Ok(())
    }

    /// Number of sampled directions in `[0, 180)`.
    pub fn sample_count(&self) -> usize {
        half_turn_samples(self.angle_step)
    }
}

impl Default for FieldConfig {
    fn default() -> Self {
        Self {
            angle_step: 0.1,
            ray_mode: RayMode::ExactTraversal,
        }
    }
}

/// Unit directions for every sampled angle of a sweep.
#[derive(Debug, Clone)]
pub struct DirectionTable {
    dirs: Vec<(f64, f64)>,
}

impl DirectionTable {
    pub fn new(config: &FieldConfig) -> Self {
        let dirs = (0..config.sample_count())
            .map(|k| {
                let (s, c) = sincos_deg(k as f64 * config.angle_step);
                (c, s)
            })
            .collect();
        Self { dirs }
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }
}

/// The maximum diametric length over open cells, plus the sweep that
/// produced it.
#[derive(Debug, Clone)]
pub struct IsovistField {
    pub field: ScalarField,
    pub config: FieldConfig,
}

impl IsovistField {
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.field.get(i, j)
    }
}

/// Distance from `origin` along direction `theta` (degrees) to the first
/// obstacle face or the grid boundary.
pub fn ray_length(grid: &OccupancyGrid, origin: Point, theta: f64) -> Result<f64> {
    check_origin(grid, origin)?;
    let (s, c) = sincos_deg(theta);
    Ok(cast(grid, origin.x, origin.y, c, s))
}

pub(crate) fn check_origin(grid: &OccupancyGrid, origin: Point) -> Result<()> {
    let inside = origin.x > 0.0
        && origin.y > 0.0
        && origin.x < grid.width() as f64
        && origin.y < grid.height() as f64;
    if !inside {
        return Err(Error::OutsideGrid {
            x: origin.x,
            y: origin.y,
        });
    }
    let (i, j) = (origin.x as usize, origin.y as usize);
    if grid.is_obstacle(i, j) {
        return Err(Error::InsideObstacle { i, j });
    }
    Ok(())
}

/// Walks the ray `origin + t * (dx, dy)` and returns `t` at the first
/// blocking face. `(dx, dy)` must be a unit vector and the origin must lie
/// inside an open cell.
#[inline]
pub(crate) fn cast(grid: &OccupancyGrid, ox: f64, oy: f64, dx: f64, dy: f64) -> f64 {
    let mut ci = ox as isize;
    let mut cj = oy as isize;

    let (sx, inv_dx) = step_of(dx);
    let (sy, inv_dy) = step_of(dy);
    // Next grid line to be crossed on each axis.
    let mut bx = if sx > 0 { ci + 1 } else { ci };
    let mut by = if sy > 0 { cj + 1 } else { cj };

    loop {
        let tx = if sx != 0 {
            (bx as f64 - ox) * inv_dx
        } else {
            f64::INFINITY
        };
        let ty = if sy != 0 {
            (by as f64 - oy) * inv_dy
        } else {
            f64::INFINITY
        };

        if (tx - ty).abs() <= CORNER_EPS {
            let (ni, nj) = (ci + sx, cj + sy);
            if grid.is_solid(ni, nj) || (grid.is_solid(ni, cj) && grid.is_solid(ci, nj)) {
                return tx.min(ty);
            }
            ci = ni;
            cj = nj;
            bx += sx;
            by += sy;
        } else if tx < ty {
            ci += sx;
            if grid.is_solid(ci, cj) {
                return tx;
            }
            bx += sx;
        } else {
            cj += sy;
            if grid.is_solid(ci, cj) {
                return ty;
            }
            by += sy;
        }
    }
}

#[inline]
fn step_of(d: f64) -> (isize, f64) {
    if d > 0.0 {
        (1, 1.0 / d)
    } else if d < 0.0 {
        (-1, 1.0 / d)
    } else {
        (0, 0.0)
    }
}

#[inline]
fn delta_max_at(grid: &OccupancyGrid, dirs: &DirectionTable, i: usize, j: usize) -> f64 {
    let ox = i as f64 + 0.5;
    let oy = j as f64 + 0.5;
    dirs.dirs.iter().fold(0.0, |best: f64, &(c, s)| {
        let chord = cast(grid, ox, oy, c, s) + cast(grid, ox, oy, -c, -s);
        best.max(chord)
    })
}

/// Maximum diametric length through the centre of cell `(i, j)`.
pub fn max_diametric_length(
    grid: &OccupancyGrid,
    cell: (usize, usize),
    config: &FieldConfig,
) -> Result<f64> {
    config.validate()?;
    let (i, j) = cell;
    if i >= grid.width() || j >= grid.height() {
        return Err(Error::OutsideGrid {
            x: i as f64,
            y: j as f64,
        });
    }
    if grid.is_obstacle(i, j) {
        return Err(Error::InsideObstacle { i, j });
    }
    Ok(delta_max_at(grid, &DirectionTable::new(config), i, j))
}

/// Fills one grid row `j` of the field. `out` must have `grid.width()`
/// entries; obstacle cells receive the sentinel.
///
/// Rows are independent, which is what the parallel driver relies on.
pub fn compute_row(grid: &OccupancyGrid, dirs: &DirectionTable, j: usize, out: &mut [f64]) {
    assert_eq!(out.len(), grid.width());
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = if grid.is_obstacle(i, j) {
            f64::NAN
        } else {
            delta_max_at(grid, dirs, i, j)
        };
    }
}

/// Sequential field computation.
pub fn compute_field(grid: &OccupancyGrid, config: &FieldConfig) -> Result<IsovistField> {
    config.validate()?;
    let dirs = DirectionTable::new(config);
    let mut field = ScalarField::undefined(grid.width(), grid.height())?;
    let width = grid.width();
    for (j, row) in field.values_mut().chunks_mut(width).enumerate() {
        compute_row(grid, &dirs, j, row);
    }
    Ok(IsovistField {
        field,
        config: *config,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::SQRT_2;

    fn open11() -> OccupancyGrid {
        OccupancyGrid::open(11, 11).unwrap()
    }

    #[test]
    fn ray_to_boundary() {
        let g = open11();
        let o = Point::new(5.5, 5.5);
        assert_eq!(ray_length(&g, o, 0.0).unwrap(), 5.5);
        assert_eq!(ray_length(&g, o, 90.0).unwrap(), 5.5);
        assert_eq!(ray_length(&g, o, 180.0).unwrap(), 5.5);
        let diag = ray_length(&g, o, 45.0).unwrap();
        assert!((diag - 5.5 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn ray_stops_at_adjacent_obstacle() {
        let mut g = open11();
        g.set_obstacle(6, 5, true);
        assert_eq!(ray_length(&g, Point::new(5.5, 5.5), 0.0).unwrap(), 0.5);
    }

    #[test]
    fn ray_origin_errors() {
        let mut g = open11();
        g.set_obstacle(2, 3, true);
        assert!(matches!(
            ray_length(&g, Point::new(2.5, 3.5), 0.0),
            Err(Error::InsideObstacle { i: 2, j: 3 })
        ));
        assert!(matches!(
            ray_length(&g, Point::new(-1.0, 3.5), 0.0),
            Err(Error::OutsideGrid { .. })
        ));
        assert!(matches!(
            ray_length(&g, Point::new(3.0, 11.0), 0.0),
            Err(Error::OutsideGrid { .. })
        ));
    }

    #[test]
    fn diagonal_pinch_blocks_corner() {
        // Obstacles at (6,5) and (5,6) pinch the corner (6,6).
        let mut g = open11();
        g.set_obstacle(6, 5, true);
        g.set_obstacle(5, 6, true);
        let t = ray_length(&g, Point::new(5.5, 5.5), 45.0).unwrap();
        assert!((t - 0.5 * SQRT_2).abs() < 1e-12);
        // A single flanking obstacle lets the ray slip past the corner.
        g.set_obstacle(5, 6, false);
        let t = ray_length(&g, Point::new(5.5, 5.5), 45.0).unwrap();
        assert!((t - 5.5 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn empty_grid_center_is_full_diagonal() {
        let g = open11();
        let d = max_diametric_length(&g, (5, 5), &FieldConfig::new(1.0).unwrap()).unwrap();
        assert!((d - 11.0 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn isolated_cell_has_unit_square_diagonal() {
        let mut g = OccupancyGrid::from_fn(3, 3, |_, _| true).unwrap();
        g.set_obstacle(1, 1, false);
        let f = compute_field(&g, &FieldConfig::new(1.0).unwrap()).unwrap();
        assert!((f.get(1, 1).unwrap() - SQRT_2).abs() < 1e-12);
        assert_eq!(f.get(0, 0), None);
        // 7 degrees never lands on the diagonal; chord stays below sqrt(2).
        let f = compute_field(&g, &FieldConfig::new(7.0).unwrap()).unwrap();
        let v = f.get(1, 1).unwrap();
        assert!((1.0..SQRT_2).contains(&v), "{v}");
    }

    #[test]
    fn obstacle_cell_is_rejected() {
        let mut g = open11();
        g.set_obstacle(0, 0, true);
        let cfg = FieldConfig::default();
        assert!(matches!(
            max_diametric_length(&g, (0, 0), &cfg),
            Err(Error::InsideObstacle { .. })
        ));
    }

    #[test]
    fn config_validation() {
        assert!(FieldConfig::new(0.0).is_err());
        assert!(FieldConfig::new(-1.0).is_err());
        assert!(FieldConfig::new(90.5).is_err());
        assert!(FieldConfig::new(f64::NAN).is_err());
        assert_eq!(FieldConfig::new(90.0).unwrap().sample_count(), 2);
    }
}
