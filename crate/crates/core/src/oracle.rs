//! Brute-force reference implementations used to validate the field kernel.
//!
//! Nothing here walks the grid. A ray is intersected with the closed square
//! of every obstacle cell (slab test) and with the grid rectangle, and the
//! nearest blocking parameter wins:
//!
//! * a square crossed over a parameter interval of positive length blocks at
//!   its entry parameter;
//! * a square touched at a single point (a corner graze) does not block on
//!   its own, but two distinct squares grazed at the same lattice corner pinch
//!   the ray shut there.

use alloc::vec::Vec;

use libm::round;

use crate::geometry::{half_turn_samples, sincos_deg, Point};
use crate::grid::OccupancyGrid;
use crate::isovist::check_origin;
use crate::{Error, Result};

/// Tolerance for comparing ray parameters.
pub const PARAM_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeometryMode {
    #[default]
    SegmentIntersection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub dense_angle_step: f64,
    pub geometry_mode: GeometryMode,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            dense_angle_step: 0.001,
            geometry_mode: GeometryMode::SegmentIntersection,
        }
    }
}

impl OracleConfig {
    pub fn with_step(dense_angle_step: f64) -> Result<Self> {
        if !(dense_angle_step > 0.0 && dense_angle_step <= 90.0) {
            return Err(Error::InvalidConfig("dense_angle_step must lie in (0, 90]"));
        }
        Ok(Self {
            dense_angle_step,
            geometry_mode: GeometryMode::SegmentIntersection,
        })
    }
}

/// The obstacle squares and grid rectangle seen from one origin.
struct Scene {
    obstacles: Vec<(f64, f64)>,
    width: f64,
    height: f64,
}

#[derive(Clone, Copy)]
struct Graze {
    t: f64,
    corner: (i64, i64),
    cell: (f64, f64),
}

impl Scene {
    fn new(grid: &OccupancyGrid) -> Self {
        let mut obstacles = Vec::new();
        for j in 0..grid.height() {
            for i in 0..grid.width() {
                if grid.is_obstacle(i, j) {
                    obstacles.push((i as f64, j as f64));
                }
            }
        }
        Self {
            obstacles,
            width: grid.width() as f64,
            height: grid.height() as f64,
        }
    }

    /// Blocking distances `(forward, backward)` along the full line
    /// `o + t * d`, `t` in the reals.
    fn chord(&self, o: Point, d: (f64, f64), grazes: &mut Vec<Graze>) -> (f64, f64) {
        let (lo, hi) =
            slab(o, d, (0.0, 0.0), (self.width, self.height)).expect("origin lies inside the grid");
        let mut fwd = hi;
        let mut bwd = -lo;
        grazes.clear();

        for &(x0, y0) in &self.obstacles {
            let Some((lo, hi)) = slab(o, d, (x0, y0), (x0 + 1.0, y0 + 1.0)) else {
                continue;
            };
            if hi - lo > PARAM_EPS {
                if lo > 0.0 {
                    fwd = fwd.min(lo);
                } else if hi < 0.0 {
                    bwd = bwd.min(-hi);
                }
            } else {
                let t = 0.5 * (lo + hi);
                let corner = (round(o.x + t * d.0) as i64, round(o.y + t * d.1) as i64);
                grazes.push(Graze {
                    t,
                    corner,
                    cell: (x0, y0),
                });
            }
        }

        for (k, a) in grazes.iter().enumerate() {
            let pinched = grazes[k + 1..]
                .iter()
                .any(|b| b.corner == a.corner && b.cell != a.cell);
            if pinched {
                if a.t > 0.0 {
                    fwd = fwd.min(a.t);
                } else {
                    bwd = bwd.min(-a.t);
                }
            }
        }
        (fwd, bwd)
    }
}

/// Parameter interval of the line `o + t * d` inside the closed box
/// `[min, max]`, or `None` if the line misses it.
fn slab(o: Point, d: (f64, f64), min: (f64, f64), max: (f64, f64)) -> Option<(f64, f64)> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (oc, dc, a, b) in [(o.x, d.0, min.0, max.0), (o.y, d.1, min.1, max.1)] {
        if dc == 0.0 {
            if oc < a || oc > b {
                return None;
            }
        } else {
            let t1 = (a - oc) / dc;
            let t2 = (b - oc) / dc;
            lo = lo.max(t1.min(t2));
            hi = hi.min(t1.max(t2));
        }
    }
    (hi - lo >= -PARAM_EPS).then_some((lo, hi))
}

/// First-hit distance from `origin` towards `theta` degrees.
pub fn oracle_ray_length(grid: &OccupancyGrid, origin: Point, theta: f64) -> Result<f64> {
    check_origin(grid, origin)?;
    let (s, c) = sincos_deg(theta);
    let scene = Scene::new(grid);
    let mut grazes = Vec::new();
    Ok(scene.chord(origin, (c, s), &mut grazes).0)
}

/// Dense-sweep maximum diametric length through the centre of `cell`.
pub fn oracle_delta_max(
    grid: &OccupancyGrid,
    cell: (usize, usize),
    config: &OracleConfig,
) -> Result<f64> {
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
    let scene = Scene::new(grid);
    let origin = Point::new(i as f64 + 0.5, j as f64 + 0.5);
    let mut grazes = Vec::new();
    let mut best = 0.0f64;
    for k in 0..half_turn_samples(config.dense_angle_step) {
        let (s, c) = sincos_deg(k as f64 * config.dense_angle_step);
        let (f, b) = scene.chord(origin, (c, s), &mut grazes);
        best = best.max(f + b);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::SQRT_2;

    #[test]
    fn empty_grid_center() {
        let g = OccupancyGrid::open(11, 11).unwrap();
        let o = Point::new(5.5, 5.5);
        assert!((oracle_ray_length(&g, o, 0.0).unwrap() - 5.5).abs() < 1e-12);
        assert!((oracle_ray_length(&g, o, 45.0).unwrap() - 5.5 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn corner_pinch_blocks() {
        let mut g = OccupancyGrid::open(11, 11).unwrap();
        g.set_obstacle(6, 5, true);
        g.set_obstacle(5, 6, true);
        let o = Point::new(5.5, 5.5);
        assert!((oracle_ray_length(&g, o, 45.0).unwrap() - 0.5 * SQRT_2).abs() < 1e-12);
        g.set_obstacle(6, 5, false);
        assert!((oracle_ray_length(&g, o, 45.0).unwrap() - 5.5 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn diagonal_obstacle_blocks_at_its_corner() {
        let mut g = OccupancyGrid::open(11, 11).unwrap();
        g.set_obstacle(7, 7, true);
        let o = Point::new(5.5, 5.5);
        assert!((oracle_ray_length(&g, o, 45.0).unwrap() - 1.5 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn empty_3x3_center() {
        let g = OccupancyGrid::open(3, 3).unwrap();
        let cfg = OracleConfig::with_step(1.0).unwrap();
        let d = oracle_delta_max(&g, (1, 1), &cfg).unwrap();
        assert!((d - 3.0 * SQRT_2).abs() < 1e-12);
    }
}
