//! Normal-parameterised Hough transform.
//!
//! A point `p` maps to the sinusoid `rho(theta) = (p - origin) . (cos theta,
//! sin theta)`. Points on a common line produce sinusoids through a common
//! `(rho, theta)`, which shows up as a peak in the vote accumulator.
//!
//! Theta bin `t` is centred on `t * theta_step` degrees and the bins cover
//! half a turn. Rho bin `r` is centred on `(r - M) * rho_bin` where
//! `M = ceil(rho_max / rho_bin)` and `rho_max` is the largest distance from
//! the origin to an image corner; rho values are rounded to the nearest bin.

use alloc::vec;
use alloc::vec::Vec;

use libm::{ceil, round};

use crate::geometry::{half_turn_samples, sincos_deg, Point, Rect, Segment};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoughConfig {
    /// Theta bin width in degrees.
    pub theta_step: f64,
    /// Rho bin width in cell units.
    pub rho_bin: f64,
    pub origin: Point,
    /// Half-widths `(rho bins, theta bins)` of the window cleared around
    /// each extracted peak.
    pub suppression: (usize, usize),
}

impl HoughConfig {
    /// One-degree, one-cell bins with the origin at the image centre and a
    /// +-2 x +-2 suppression window.
    pub fn for_image(bounds: Rect) -> Self {
        Self {
            theta_step: 1.0,
            rho_bin: 1.0,
            origin: bounds.center(),
            suppression: (2, 2),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta_step > 0.0 && self.theta_step <= 90.0) {
            return Err(Error::InvalidConfig("theta_step must lie in (0, 90]"));
        }
        if !(self.rho_bin > 0.0 && self.rho_bin.is_finite()) {
            return Err(Error::InvalidConfig("rho_bin must be positive"));
        }
        if !(self.origin.x.is_finite() && self.origin.y.is_finite()) {
            return Err(Error::InvalidConfig("origin must be finite"));
        }
        Ok(())
    }

    fn rho_max(&self, bounds: Rect) -> f64 {
        [
            Point::new(0.0, 0.0),
            Point::new(bounds.width, 0.0),
            Point::new(0.0, bounds.height),
            Point::new(bounds.width, bounds.height),
        ]
        .into_iter()
        .map(|c| c.distance(self.origin))
        .fold(0.0, f64::max)
    }
}

/// A ranked accumulator peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineParams {
    /// Signed normal distance from the origin, at the bin centre.
    pub rho: f64,
    /// Normal orientation in degrees, in `[0, 180)`.
    pub theta: f64,
    pub votes: u32,
    /// 1-based extraction order.
    pub rank: usize,
    pub rho_index: usize,
    pub theta_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HoughAccumulator {
    config: HoughConfig,
    bounds: Rect,
    rho_offset: usize,
    n_rho: usize,
    /// `(cos, sin)` per theta bin.
    trig: Vec<(f64, f64)>,
    /// Theta-major: `votes[t * n_rho + r]`.
    votes: Vec<u32>,
    total_points: usize,
}

impl HoughAccumulator {
    /// An all-zero accumulator for points inside `bounds`.
    pub fn new(config: HoughConfig, bounds: Rect) -> Result<Self> {
        config.validate()?;
        if !(bounds.width > 0.0 && bounds.height > 0.0) {
            return Err(Error::InvalidConfig("image bounds must be non-empty"));
        }
        let rho_offset = ceil(config.rho_max(bounds) / config.rho_bin) as usize;
        let n_rho = 2 * rho_offset + 1;
        let trig: Vec<_> = (0..half_turn_samples(config.theta_step))
            .map(|t| {
                let (s, c) = sincos_deg(t as f64 * config.theta_step);
                (c, s)
            })
            .collect();
        let votes = vec![0; trig.len() * n_rho];
        Ok(Self {
            config,
            bounds,
            rho_offset,
            n_rho,
            trig,
            votes,
            total_points: 0,
        })
    }

    /// Adds one vote per theta bin for every point.
    pub fn accumulate(&mut self, points: &[Point]) -> Result<()> {
        if let Some(p) = points.iter().find(|p| !self.bounds.contains(**p)) {
            return Err(Error::PointOutsideBounds { x: p.x, y: p.y });
        }
        let (ox, oy) = (self.config.origin.x, self.config.origin.y);
        for p in points {
            let (x, y) = (p.x - ox, p.y - oy);
            for (t, &(c, s)) in self.trig.iter().enumerate() {
                let r = self.rho_index(x * c + y * s);
                self.votes[t * self.n_rho + r] += 1;
            }
        }
        self.total_points += points.len();
        Ok(())
    }

    /// Adds another accumulator's votes. Both must share configuration and
    /// bounds.
    pub fn merge(&mut self, other: &HoughAccumulator) {
        assert!(
            self.config == other.config && self.bounds == other.bounds,
            "merging accumulators of different shape"
        );
        for (a, b) in self.votes.iter_mut().zip(&other.votes) {
            *a += b;
        }
        self.total_points += other.total_points;
    }

    fn rho_index(&self, rho: f64) -> usize {
        let r = round(rho / self.config.rho_bin) as isize + self.rho_offset as isize;
        r.clamp(0, self.n_rho as isize - 1) as usize
    }

    pub fn config(&self) -> &HoughConfig {
        &self.config
    }

    pub fn bounds(&self) -> Rect {
        self.bounds
    }

    pub fn total_points(&self) -> usize {
        self.total_points
    }

    pub fn theta_bins(&self) -> usize {
        self.trig.len()
    }

    pub fn rho_bins(&self) -> usize {
        self.n_rho
    }

    pub fn theta_at(&self, t: usize) -> f64 {
        t as f64 * self.config.theta_step
    }

    pub fn rho_at(&self, r: usize) -> f64 {
        (r as f64 - self.rho_offset as f64) * self.config.rho_bin
    }

    /// Bin index of a rho value (nearest bin).
    pub fn rho_bin_of(&self, rho: f64) -> usize {
        self.rho_index(rho)
    }

    pub fn get(&self, rho_index: usize, theta_index: usize) -> u32 {
        self.votes[theta_index * self.n_rho + rho_index]
    }

    /// Theta-major vote array.
    pub fn votes(&self) -> &[u32] {
        &self.votes
    }

    pub fn column_sum(&self, theta_index: usize) -> u64 {
        let start = theta_index * self.n_rho;
        self.votes[start..start + self.n_rho]
            .iter()
            .map(|&v| v as u64)
            .sum()
    }

    pub fn max_votes(&self) -> u32 {
        self.votes.iter().copied().max().unwrap_or(0)
    }

    /// Peaks in rank order, clearing a suppression window after each.
    pub fn peaks(&self) -> PeakIter {
        PeakIter {
            votes: self.votes.clone(),
            n_rho: self.n_rho,
            n_theta: self.trig.len(),
            rho_offset: self.rho_offset,
            config: self.config,
            rank: 0,
        }
    }
}

/// Sinusoid of one point: `(theta bin, rho)` for every theta bin.
pub fn point_to_sinusoid(point: Point, config: &HoughConfig) -> Result<Vec<(usize, f64)>> {
    config.validate()?;
    let (x, y) = (point.x - config.origin.x, point.y - config.origin.y);
    Ok((0..half_turn_samples(config.theta_step))
        .map(|t| {
            let (s, c) = sincos_deg(t as f64 * config.theta_step);
            (t, x * c + y * s)
        })
        .collect())
}

/// Votes every point into a fresh accumulator over `bounds`.
pub fn hough_transform(
    points: &[Point],
    config: &HoughConfig,
    bounds: Rect,
) -> Result<HoughAccumulator> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut acc = HoughAccumulator::new(*config, bounds)?;
    acc.accumulate(points)?;
    Ok(acc)
}

/// Takes up to `k` peaks in rank order. Fewer are returned once the
/// accumulator is exhausted.
pub fn rank_peaks(acc: &HoughAccumulator, k: usize) -> Vec<LineParams> {
    acc.peaks().take(k).collect()
}

/// Rank-order peak extraction over a private copy of the votes.
///
/// Each step picks the largest bin (ties go to the smaller theta bin, then
/// the smaller rho bin) and zeroes the suppression window around it. The
/// window wraps across theta = 180 with rho negated.
#[derive(Debug, Clone)]
pub struct PeakIter {
    votes: Vec<u32>,
    n_rho: usize,
    n_theta: usize,
    rho_offset: usize,
    config: HoughConfig,
    rank: usize,
}

impl PeakIter {
    fn suppress(&mut self, r: usize, t: usize) {
        let (wr, wt) = (
            self.config.suppression.0 as isize,
            self.config.suppression.1 as isize,
        );
        let n_theta = self.n_theta as isize;
        let n_rho = self.n_rho as isize;
        for dt in -wt..=wt {
            let mut tt = t as isize + dt;
            let mut mirrored = false;
            while tt < 0 {
                tt += n_theta;
                mirrored = !mirrored;
            }
            while tt >= n_theta {
                tt -= n_theta;
                mirrored = !mirrored;
            }
            for dr in -wr..=wr {
                let mut rr = r as isize + dr;
                if mirrored {
                    rr = 2 * self.rho_offset as isize - rr;
                }
                if (0..n_rho).contains(&rr) {
                    self.votes[tt as usize * self.n_rho + rr as usize] = 0;
                }
            }
        }
    }
}

impl Iterator for PeakIter {
    type Item = LineParams;

    fn next(&mut self) -> Option<LineParams> {
        let mut best = 0u32;
        let mut at = 0usize;
        for (k, &v) in self.votes.iter().enumerate() {
            if v > best {
                best = v;
                at = k;
            }
        }
        if best == 0 {
            return None;
        }
        let (t, r) = (at / self.n_rho, at % self.n_rho);
        self.suppress(r, t);
        self.rank += 1;
        Some(LineParams {
            rho: (r as f64 - self.rho_offset as f64) * self.config.rho_bin,
            theta: t as f64 * self.config.theta_step,
            votes: best,
            rank: self.rank,
            rho_index: r,
            theta_index: t,
        })
    }
}

/// Clips the line `(p - origin) . (cos theta, sin theta) = rho` to the
/// image rectangle.
pub fn invert_line(params: &LineParams, config: &HoughConfig, bounds: Rect) -> Result<Segment> {
    invert_normal_form(params.rho, params.theta, config.origin, bounds)
}

pub fn invert_normal_form(rho: f64, theta: f64, origin: Point, bounds: Rect) -> Result<Segment> {
    let (s, c) = sincos_deg(theta);
    // Foot of the normal, then walk along the line direction (-sin, cos).
    let foot = Point::new(origin.x + rho * c, origin.y + rho * s);
    let dir = (-s, c);

    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    // Which axis bound produced each end, so the endpoint can be snapped.
    let mut lo_snap = None;
    let mut hi_snap = None;
    let miss = Error::LineMissesBounds { rho, theta };
    for (axis, f, d, max) in [
        (0, foot.x, dir.0, bounds.width),
        (1, foot.y, dir.1, bounds.height),
    ] {
        if d == 0.0 {
            if f < 0.0 || f > max {
                return Err(miss);
            }
            continue;
        }
        let (mut t0, mut t1) = ((0.0 - f) / d, (max - f) / d);
        let (mut v0, mut v1) = (0.0, max);
        if t0 > t1 {
            core::mem::swap(&mut t0, &mut t1);
            core::mem::swap(&mut v0, &mut v1);
        }
        if t0 > lo {
            lo = t0;
            lo_snap = Some((axis, v0));
        }
        if t1 < hi {
            hi = t1;
            hi_snap = Some((axis, v1));
        }
    }
    if hi - lo <= 1e-12 {
        return Err(miss);
    }
    let end = |t: f64, snap: Option<(usize, f64)>| {
        let mut p = Point::new(foot.x + t * dir.0, foot.y + t * dir.1);
        match snap {
            Some((0, v)) => p.x = v,
            Some((_, v)) => p.y = v,
            None => {}
        }
        p.x = p.x.clamp(0.0, bounds.width);
        p.y = p.y.clamp(0.0, bounds.height);
        p
    };
    Ok(Segment::new(end(lo, lo_snap), end(hi, hi_snap)))
}
