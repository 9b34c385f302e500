//! End-to-end extraction: field, ridges, votes, ranked lines.

use alloc::vec::Vec;

use crate::geometry::{Point, Rect, Segment};
use crate::grid::OccupancyGrid;
use crate::hough::{invert_line, HoughAccumulator, HoughConfig, LineParams};
use crate::isovist::{compute_field, FieldConfig, IsovistField};
use crate::ridge::{local_maxima, RidgeMask};
use crate::{Error, Result};

/// A ranked line clipped to the image rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxialLine {
    pub params: LineParams,
    pub segment: Segment,
    pub length: f64,
}

/// Hough parameters that do not depend on the image size. The origin
/// defaults to the image centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoughSettings {
    pub theta_step: f64,
    pub rho_bin: f64,
    pub origin: Option<Point>,
    pub suppression: (usize, usize),
}

impl Default for HoughSettings {
    fn default() -> Self {
        Self {
            theta_step: 1.0,
            rho_bin: 1.0,
            origin: None,
            suppression: (2, 2),
        }
    }
}

impl HoughSettings {
    pub fn resolve(&self, bounds: Rect) -> HoughConfig {
        HoughConfig {
            theta_step: self.theta_step,
            rho_bin: self.rho_bin,
            origin: self.origin.unwrap_or_else(|| bounds.center()),
            suppression: self.suppression,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub field: FieldConfig,
    pub hough: HoughSettings,
    /// Number of lines requested.
    pub num_lines: usize,
    /// Lines shorter than this (cell units) are dropped. 0 disables.
    pub min_length: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            field: FieldConfig::default(),
            hough: HoughSettings::default(),
            num_lines: 6,
            min_length: 0.0,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        if self.num_lines == 0 {
            return Err(Error::InvalidConfig("num_lines must be at least 1"));
        }
        if self.min_length.is_nan() || self.min_length < 0.0 {
            return Err(Error::InvalidConfig("min_length must be non-negative"));
        }
        Ok(())
    }
}

/// All intermediate products of one run.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub field: IsovistField,
    pub mask: RidgeMask,
    pub accumulator: HoughAccumulator,
    /// Ranked lines, before the length threshold.
    pub lines: Vec<AxialLine>,
    /// Peaks whose line missed the image.
    pub skipped: Vec<LineParams>,
}

impl Extraction {
    /// Lines that survive `min_length`.
    pub fn thresholded(&self, min_length: f64) -> Vec<AxialLine> {
        apply_length_threshold(&self.lines, min_length)
    }
}

/// Runs the whole pipeline sequentially.
pub fn extract_axial_lines(grid: &OccupancyGrid, config: &PipelineConfig) -> Result<Extraction> {
    config.validate()?;
    if grid.open_count() == 0 {
        return Err(Error::NoOpenCells);
    }
    let field = compute_field(grid, &config.field)?;
    lines_from_field(grid, field, config)
}

/// Everything downstream of the field: ridges, votes, ranking and
/// inversion. Peaks whose line misses the image are set aside and do not
/// use up a rank.
pub fn lines_from_field(
    grid: &OccupancyGrid,
    field: IsovistField,
    config: &PipelineConfig,
) -> Result<Extraction> {
    config.validate()?;
    let mask = local_maxima(&field.field);
    let points = mask.points();
    if points.is_empty() {
        return Err(Error::NoRidgePoints);
    }
    let bounds = Rect::new(grid.width() as f64, grid.height() as f64);
    let hough = config.hough.resolve(bounds);
    let mut accumulator = HoughAccumulator::new(hough, bounds)?;
    accumulator.accumulate(&points)?;
    let (lines, skipped) = rank_lines(&accumulator, config.num_lines);
    Ok(Extraction {
        field,
        mask,
        accumulator,
        lines,
        skipped,
    })
}

/// Pulls peaks until `k` of them invert to lines inside the image.
pub fn rank_lines(acc: &HoughAccumulator, k: usize) -> (Vec<AxialLine>, Vec<LineParams>) {
    let mut lines = Vec::new();
    let mut skipped = Vec::new();
    for peak in acc.peaks() {
        if lines.len() == k {
            break;
        }
        match invert_line(&peak, acc.config(), acc.bounds()) {
            Ok(segment) => {
                let params = LineParams {
                    rank: lines.len() + 1,
                    ..peak
                };
                lines.push(AxialLine {
                    params,
                    segment,
                    length: segment.length(),
                });
            }
            Err(_) => skipped.push(peak),
        }
    }
    (lines, skipped)
}

/// Keeps lines with `length >= min_length`, in their original order.
pub fn apply_length_threshold(lines: &[AxialLine], min_length: f64) -> Vec<AxialLine> {
    lines
        .iter()
        .filter(|l| l.length >= min_length)
        .copied()
        .collect()
}

/// Longest piece of `segment` that lies in open space.
///
/// The segment is split at every grid line it crosses and each piece is
/// classified by the cell containing its midpoint. Adjacent open pieces are
/// merged. `None` if no part of the segment is open.
pub fn longest_open_run(grid: &OccupancyGrid, segment: &Segment) -> Option<Segment> {
    let (a, b) = (segment.a, segment.b);
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let mut cuts = Vec::new();
    cuts.push(0.0);
    for (start, delta) in [(a.x, dx), (a.y, dy)] {
        if delta == 0.0 {
            continue;
        }
        let (lo, hi) = if delta > 0.0 {
            (start, start + delta)
        } else {
            (start + delta, start)
        };
        let mut k = libm::floor(lo) + 1.0;
        while k < hi {
            cuts.push((k - start) / delta);
            k += 1.0;
        }
    }
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);

    let at = |t: f64| Point::new(a.x + t * dx, a.y + t * dy);
    let mut best: Option<(f64, f64)> = None;
    let mut run: Option<(f64, f64)> = None;
    for w in cuts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        if t1 - t0 <= 0.0 {
            continue;
        }
        let m = at(0.5 * (t0 + t1));
        let open = !grid.is_solid(libm::floor(m.x) as isize, libm::floor(m.y) as isize);
        run = match (open, run) {
            (true, Some((s, _))) => Some((s, t1)),
            (true, None) => Some((t0, t1)),
            (false, _) => None,
        };
        if let Some((s, e)) = run {
            if best.is_none_or(|(bs, be)| e - s > be - bs) {
                best = Some((s, e));
            }
        }
    }
    best.map(|(s, e)| Segment::new(at(s), at(e)))
}

/// Width of the narrowest street, for use as a line length threshold.
///
/// For each open cell the cross-section through its centre is measured
/// along both axes (left+right run and down+up run, in cell units); the
/// cell's local width is the smaller of the two. The estimate is the
/// minimum over open cells. `None` when the grid has no open cell.
pub fn estimate_street_width(grid: &OccupancyGrid) -> Option<usize> {
    let (w, h) = (grid.width(), grid.height());
    let mut best: Option<usize> = None;
    for (i, j) in grid.open_cells() {
        let run = |di: isize, dj: isize| {
            let mut n = 0usize;
            let (mut ci, mut cj) = (i as isize + di, j as isize + dj);
            while !grid.is_solid(ci, cj) {
                n += 1;
                ci += di;
                cj += dj;
            }
            n
        };
        let across_x = 1 + run(-1, 0) + run(1, 0);
        let across_y = 1 + run(0, -1) + run(0, 1);
        let local = across_x.min(across_y).min(w.max(h));
        best = Some(best.map_or(local, |b| b.min(local)));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn line(length: f64, rank: usize) -> AxialLine {
        AxialLine {
            params: LineParams {
                rho: 0.0,
                theta: 0.0,
                votes: 10 - rank as u32,
                rank,
                rho_index: 0,
                theta_index: 0,
            },
            segment: Segment::new(Point::new(0.0, 0.0), Point::new(length, 0.0)),
            length,
        }
    }

    #[test]
    fn threshold_filters_in_order() {
        let lines = vec![line(100.0, 1), line(40.0, 2), line(3.0, 3)];
        assert_eq!(apply_length_threshold(&lines, 0.0), lines);
        let kept = apply_length_threshold(&lines, 5.0);
        assert_eq!(kept.len(), 2);
        assert_eq!(kept[0].params.rank, 1);
        assert_eq!(kept[1].params.rank, 2);
        assert!(apply_length_threshold(&lines, 1000.0).is_empty());
    }

    #[test]
    fn street_width_of_cross() {
        // A 3-wide vertical street crossing a 5-wide horizontal one.
        let g = OccupancyGrid::from_fn(21, 21, |i, j| {
            let v = (9..12).contains(&i);
            let h = (8..13).contains(&j);
            !(v || h)
        })
        .unwrap();
        assert_eq!(estimate_street_width(&g), Some(3));
        let blocked = OccupancyGrid::from_fn(2, 2, |_, _| true).unwrap();
        assert_eq!(estimate_street_width(&blocked), None);
    }

    #[test]
    fn open_run_of_line_through_wall() {
        // Wall at column 5 splits a row into runs of 5 and 4 cells.
        let g = OccupancyGrid::from_fn(10, 3, |i, _| i == 5).unwrap();
        let seg = Segment::new(Point::new(0.0, 1.5), Point::new(10.0, 1.5));
        let run = longest_open_run(&g, &seg).unwrap();
        assert_eq!(
            run,
            Segment::new(Point::new(0.0, 1.5), Point::new(5.0, 1.5))
        );
        let blocked = Segment::new(Point::new(5.2, 0.0), Point::new(5.8, 3.0));
        assert_eq!(longest_open_run(&g, &blocked), None);
    }

    #[test]
    fn config_rejects_zero_lines() {
        let cfg = PipelineConfig {
            num_lines: 0,
            ..PipelineConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = PipelineConfig {
            min_length: -1.0,
            ..PipelineConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn no_open_cells() {
        let g = OccupancyGrid::from_fn(3, 3, |_, _| true).unwrap();
        assert_eq!(
            extract_axial_lines(&g, &PipelineConfig::default()).unwrap_err(),
            Error::NoOpenCells
        );
    }
}
