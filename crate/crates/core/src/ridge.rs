//! Ridge points as local maxima of a scalar field.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::Point;
use crate::grid::{ScalarField, Symmetry};

/// Binary raster of ridge points, same layout as the source field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RidgeMask {
    width: usize,
    height: usize,
    marks: Vec<bool>,
}

impl RidgeMask {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_marked(&self, i: usize, j: usize) -> bool {
        self.marks[j * self.width + i]
    }

    /// Row-major marks, bottom row first.
    pub fn marks(&self) -> &[bool] {
        &self.marks
    }

    pub fn count(&self) -> usize {
        self.marks.iter().filter(|&&m| m).count()
    }

    pub fn marked_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.marks
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(move |(k, _)| (k % w, k / w))
    }

    /// Cell centres of the marked cells, in row-major order.
    pub fn points(&self) -> Vec<Point> {
        self.marked_cells()
            .map(|(i, j)| Point::new(i as f64 + 0.5, j as f64 + 0.5))
            .collect()
    }

    pub fn transformed(&self, sym: Symmetry) -> Self {
        let (width, height, marks) = sym.apply(self.width, self.height, &self.marks);
        Self {
            width,
            height,
            marks,
        }
    }
}

/// Marks every defined cell whose value is `>=` that of each defined cell in
/// its 8-neighbourhood. Undefined and out-of-range neighbours are ignored,
/// so plateaus are marked in full.
pub fn local_maxima(field: &ScalarField) -> RidgeMask {
    let (w, h) = (field.width(), field.height());
    let mut marks = vec![false; w * h];
    for j in 0..h {
        for i in 0..w {
            let Some(v) = field.get(i, j) else { continue };
            let mut peak = true;
            'nbhd: for dj in -1isize..=1 {
                for di in -1isize..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ni, nj) = (i as isize + di, j as isize + dj);
                    if ni < 0 || nj < 0 || ni as usize >= w || nj as usize >= h {
                        continue;
                    }
                    if let Some(n) = field.get(ni as usize, nj as usize) {
                        if n > v {
                            peak = false;
                            break 'nbhd;
                        }
                    }
                }
            }
            marks[j * w + i] = peak;
        }
    }
    RidgeMask {
        width: w,
        height: h,
        marks,
    }
}
