//! Occupancy rasters, scalar fields and the square-grid symmetries.
//!
//! Cell `(i, j)` covers the unit square `[i, i+1] x [j, j+1]`; `i` grows to
//! the right and `j` grows upwards. Storage is row-major with row `j = 0` at
//! the bottom.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Binary raster of open space. `true` marks an obstacle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyGrid {
    width: usize,
    height: usize,
    cells: Vec<bool>,
}

impl OccupancyGrid {
    pub fn new(width: usize, height: usize, cells: Vec<bool>) -> Result<Self> {
        check_dims(width, height)?;
        if cells.len() != width * height {
            return Err(Error::CellCount {
                expected: width * height,
                found: cells.len(),
            });
        }
        Ok(Self {
            width,
            height,
            cells,
        })
    }

    /// An all-open grid.
    pub fn open(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![false; width * height])
    }

    /// Builds a grid from a predicate `obstacle(i, j)`.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut obstacle: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        check_dims(width, height)?;
        let mut cells = Vec::with_capacity(width * height);
        for j in 0..height {
            for i in 0..width {
                cells.push(obstacle(i, j));
            }
        }
        Ok(Self {
            width,
            height,
            cells,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Row-major cells, bottom row first.
    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn is_obstacle(&self, i: usize, j: usize) -> bool {
        self.cells[j * self.width + i]
    }

    pub fn is_open(&self, i: usize, j: usize) -> bool {
        !self.is_obstacle(i, j)
    }

    /// Obstacle test that treats everything outside the grid as solid.
    #[inline]
    pub fn is_solid(&self, i: isize, j: isize) -> bool {
        if i < 0 || j < 0 || i as usize >= self.width || j as usize >= self.height {
            return true;
        }
        self.cells[j as usize * self.width + i as usize]
    }

    pub fn set_obstacle(&mut self, i: usize, j: usize, obstacle: bool) {
        self.cells[j * self.width + i] = obstacle;
    }

    pub fn open_count(&self) -> usize {
        self.cells.iter().filter(|&&c| !c).count()
    }

    /// Open cells in row-major order.
    pub fn open_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(move |(k, _)| (k % w, k / w))
    }

    pub fn transformed(&self, sym: Symmetry) -> Self {
        let (width, height, cells) = sym.apply(self.width, self.height, &self.cells);
        Self {
            width,
            height,
            cells,
        }
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::ZeroDimension { width, height });
    }
    Ok(())
}

/// Per-cell lengths over a grid; `NaN` is the "undefined" sentinel carried
/// by obstacle cells.
#[derive(Debug, Clone)]
pub struct ScalarField {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn undefined(width: usize, height: usize) -> Result<Self> {
        check_dims(width, height)?;
        Ok(Self {
            width,
            height,
            values: vec![f64::NAN; width * height],
        })
    }

    /// Wraps raw row-major values; `NaN` entries are undefined.
    pub fn from_values(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        check_dims(width, height)?;
        if values.len() != width * height {
            return Err(Error::CellCount {
                expected: width * height,
                found: values.len(),
            });
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let v = self.values[j * self.width + i];
        (!v.is_nan()).then_some(v)
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.values[j * self.width + i] = value;
    }

    pub fn clear(&mut self, i: usize, j: usize) {
        self.values[j * self.width + i] = f64::NAN;
    }

    /// Raw row-major values including `NaN` sentinels.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Largest defined value, `None` if every cell is undefined.
    pub fn max_value(&self) -> Option<f64> {
        self.values
            .iter()
            .copied()
            .filter(|v| !v.is_nan())
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
    }

    /// Bitwise equality, with all sentinels equal to each other.
    pub fn bit_eq(&self, other: &ScalarField) -> bool {
        self.width == other.width
            && self.height == other.height
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()))
    }

    pub fn transformed(&self, sym: Symmetry) -> Self {
        let (width, height, values) = sym.apply(self.width, self.height, &self.values);
        Self {
            width,
            height,
            values,
        }
    }
}

/// The eight symmetries of the square lattice, acting on whole rasters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Identity,
    /// Quarter turn counter-clockwise.
    Rot90,
    Rot180,
    Rot270,
    /// Mirror across the vertical axis (`i -> w-1-i`).
    FlipX,
    /// Mirror across the horizontal axis (`j -> h-1-j`).
    FlipY,
    /// Swap `i` and `j`.
    Transpose,
    AntiTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rot90,
        Symmetry::Rot180,
        Symmetry::Rot270,
        Symmetry::FlipX,
        Symmetry::FlipY,
        Symmetry::Transpose,
        Symmetry::AntiTranspose,
    ];

    fn swaps_axes(self) -> bool {
        matches!(
            self,
            Symmetry::Rot90 | Symmetry::Rot270 | Symmetry::Transpose | Symmetry::AntiTranspose
        )
    }

    /// Dimensions of a `width x height` raster after the transform.
    pub fn dims(self, width: usize, height: usize) -> (usize, usize) {
        if self.swaps_axes() {
            (height, width)
        } else {
            (width, height)
        }
    }

    /// Image of cell `(i, j)` of a `width x height` raster.
    pub fn map_cell(self, i: usize, j: usize, width: usize, height: usize) -> (usize, usize) {
        let (w, h) = (width, height);
        match self {
            Symmetry::Identity => (i, j),
            Symmetry::Rot90 => (h - 1 - j, i),
            Symmetry::Rot180 => (w - 1 - i, h - 1 - j),
            Symmetry::Rot270 => (j, w - 1 - i),
            Symmetry::FlipX => (w - 1 - i, j),
            Symmetry::FlipY => (i, h - 1 - j),
            Symmetry::Transpose => (j, i),
            Symmetry::AntiTranspose => (h - 1 - j, w - 1 - i),
        }
    }

    /// Permutes a row-major raster. Returns the new dimensions and data.
    pub fn apply<T: Copy>(self, width: usize, height: usize, data: &[T]) -> (usize, usize, Vec<T>) {
        let (nw, nh) = self.dims(width, height);
        let mut out = data.to_vec();
        for j in 0..height {
            for i in 0..width {
                let (ni, nj) = self.map_cell(i, j, width, height);
                out[nj * nw + ni] = data[j * width + i];
            }
        }
        (nw, nh, out)
    }
}

/// Builds the H-shaped open-space fixture.
///
/// Two vertical arms (`arm_w x arm_h`) are joined by a horizontal bar
/// (`bar_w x bar_h`) that spans the gap between them. The figure is centred
/// on the canvas; everything outside it is obstacle. Each of
/// `canvas_w - bar_w`, `canvas_h - arm_h` and `canvas_h - bar_h` must be even
/// so the layout is exactly mirror-symmetric.
pub fn generate_h_shape(
    canvas_w: usize,
    canvas_h: usize,
    arm_w: usize,
    arm_h: usize,
    bar_w: usize,
    bar_h: usize,
) -> Result<OccupancyGrid> {
    if [arm_w, arm_h, bar_w, bar_h].contains(&0) {
        return Err(Error::ShapeDoesNotFit(
            "all rectangle sides must be non-zero",
        ));
    }
    if arm_h > canvas_h || bar_h > canvas_h {
        return Err(Error::ShapeDoesNotFit("rectangle taller than the canvas"));
    }
    if 2 * arm_w + bar_w > canvas_w {
        return Err(Error::ShapeDoesNotFit("arms and bar wider than the canvas"));
    }
    if !(canvas_w - bar_w).is_multiple_of(2)
        || !(canvas_h - arm_h).is_multiple_of(2)
        || !(canvas_h - bar_h).is_multiple_of(2)
    {
        return Err(Error::ShapeDoesNotFit(
            "layout cannot be centred symmetrically",
        ));
    }
    let bar_x0 = (canvas_w - bar_w) / 2;
    let bar_y0 = (canvas_h - bar_h) / 2;
    let left_x0 = bar_x0 - arm_w;
    let right_x0 = bar_x0 + bar_w;
    let arm_y0 = (canvas_h - arm_h) / 2;

    let inside = |v: usize, lo: usize, len: usize| v >= lo && v < lo + len;
    OccupancyGrid::from_fn(canvas_w, canvas_h, |i, j| {
        let left = inside(i, left_x0, arm_w) && inside(j, arm_y0, arm_h);
        let right = inside(i, right_x0, arm_w) && inside(j, arm_y0, arm_h);
        let bar = inside(i, bar_x0, bar_w) && inside(j, bar_y0, bar_h);
        !(left || right || bar)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_dimensions() {
        assert!(matches!(
            OccupancyGrid::open(0, 4),
            Err(Error::ZeroDimension { .. })
        ));
        assert!(matches!(
            OccupancyGrid::new(2, 2, vec![false; 3]),
            Err(Error::CellCount {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn out_of_bounds_is_solid() {
        let g = OccupancyGrid::open(3, 2).unwrap();
        assert!(g.is_solid(-1, 0));
        assert!(g.is_solid(3, 0));
        assert!(g.is_solid(0, 2));
        assert!(!g.is_solid(2, 1));
    }

    #[test]
    fn symmetries_compose_to_identity() {
        let g = OccupancyGrid::from_fn(5, 3, |i, j| (i * 7 + j * 3) % 4 == 0).unwrap();
        let r = g
            .transformed(Symmetry::Rot90)
            .transformed(Symmetry::Rot90)
            .transformed(Symmetry::Rot90)
            .transformed(Symmetry::Rot90);
        assert_eq!(r, g);
        for s in [
            Symmetry::FlipX,
            Symmetry::FlipY,
            Symmetry::Transpose,
            Symmetry::AntiTranspose,
        ] {
            assert_eq!(g.transformed(s).transformed(s), g);
        }
        assert_eq!(g.transformed(Symmetry::Rot90).width(), 3);
    }

    #[test]
    fn h_shape_is_mirror_symmetric() {
        let h = generate_h_shape(100, 100, 20, 90, 40, 20).unwrap();
        assert_eq!(h.transformed(Symmetry::FlipX), h);
        assert_eq!(h.transformed(Symmetry::FlipY), h);
        assert_eq!(h.open_count(), 2 * 20 * 90 + 40 * 20);
    }

    #[test]
    fn h_shape_errors() {
        assert!(generate_h_shape(100, 100, 20, 101, 40, 20).is_err());
        assert!(generate_h_shape(100, 100, 40, 90, 40, 20).is_err());
        assert!(generate_h_shape(100, 100, 20, 89, 40, 20).is_err());
    }

    #[test]
    fn field_max_ignores_sentinels() {
        let mut f = ScalarField::undefined(2, 1).unwrap();
        assert_eq!(f.max_value(), None);
        f.set(1, 0, 3.5);
        assert_eq!(f.max_value(), Some(3.5));
        assert_eq!(f.get(0, 0), None);
    }
}
