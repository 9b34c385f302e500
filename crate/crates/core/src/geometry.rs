//! Points, segments and degree-based trigonometry.

use libm::{cos, hypot, sin};

/// A point in continuous image coordinates (cell units, `y` up).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        hypot(self.x - other.x, self.y - other.y)
    }
}

/// Axis-aligned image rectangle `[0, width] x [0, height]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub width: f64,
    pub height: f64,
}

impl Rect {
    pub const fn new(width: f64, height: f64) -> Self {
        Self { width, height }
    }

    pub fn center(&self) -> Point {
        Point::new(self.width / 2.0, self.height / 2.0)
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= 0.0 && p.x <= self.width && p.y >= 0.0 && p.y <= self.height
    }
}

/// A segment with endpoints in lexicographic `(x, y)` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Self {
        if (p.x, p.y) <= (q.x, q.y) {
            Self { a: p, b: q }
        } else {
            Self { a: q, b: p }
        }
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }
}

/// `(sin, cos)` of an angle in degrees.
///
/// The argument is reduced to the first octant before calling into `libm`,
/// so quarter-turn and mirror relations between angles (`cos 90 = 0`,
/// `sin(90 - a) = cos a`, ...) hold exactly.
pub fn sincos_deg(theta: f64) -> (f64, f64) {
    let mut t = theta % 360.0;
    if t < 0.0 {
        t += 360.0;
    }
    let quadrant = (t / 90.0) as u32;
    let r = t - 90.0 * quadrant as f64;
    let (s, c) = if r == 45.0 {
        (
            core::f64::consts::FRAC_1_SQRT_2,
            core::f64::consts::FRAC_1_SQRT_2,
        )
    } else if r < 45.0 {
        let rad = r.to_radians();
        (sin(rad), cos(rad))
    } else {
        let rad = (90.0 - r).to_radians();
        (cos(rad), sin(rad))
    };
    match quadrant % 4 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// Tolerance used to decide that `k * step` has reached 180 degrees.
const HALF_TURN_SLACK: f64 = 1e-9;

/// Number of samples `k * step` (k = 0, 1, ...) strictly below 180 degrees.
pub fn half_turn_samples(step: f64) -> usize {
    let limit = 180.0 - HALF_TURN_SLACK;
    let mut n = libm::ceil(limit / step) as usize;
    while n > 0 && (n - 1) as f64 * step >= limit {
        n -= 1;
    }
    while (n as f64) * step < limit {
        n += 1;
    }
    n
}
