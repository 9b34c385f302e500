//! Synthetic occupancy rasters.

pub use isoridge_core::generate_h_shape;
use isoridge_core::OccupancyGrid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default H layout on a 100 x 100 canvas: arms 10 x 90, bar 40 x 10.
pub const H_DEFAULT: (usize, usize, usize, usize, usize, usize) = (100, 100, 10, 90, 40, 10);

pub fn default_h() -> OccupancyGrid {
    let (cw, ch, aw, ah, bw, bh) = H_DEFAULT;
    generate_h_shape(cw, ch, aw, ah, bw, bh).expect("default layout fits")
}

/// A deterministic town-like raster: straight streets of varying width
/// cut through solid ground, plus a few open squares.
pub fn synthetic_town(width: usize, height: usize, seed: u64) -> OccupancyGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (width as f64, height as f64);
    let mut streets = Vec::new();
    let n_streets = 6 + (width + height) / 40;
    for _ in 0..n_streets {
        let a = (rng.random_range(0.0..w), rng.random_range(0.0..h));
        let ang: f64 = rng.random_range(0.0..std::f64::consts::PI);
        let len = rng.random_range(0.3..0.9) * w.max(h);
        let b = (a.0 + len * ang.cos(), a.1 + len * ang.sin());
        let half = rng.random_range(1.0..3.5);
        streets.push((a, b, half));
    }
    let squares: Vec<_> = (0..3)
        .map(|_| {
            let sw = rng.random_range(8.0..20.0);
            let sh = rng.random_range(8.0..20.0);
            (
                rng.random_range(0.0..w - sw),
                rng.random_range(0.0..h - sh),
                sw,
                sh,
            )
        })
        .collect();

    OccupancyGrid::from_fn(width, height, |i, j| {
        let p = (i as f64 + 0.5, j as f64 + 0.5);
        let on_street = streets
            .iter()
            .any(|&(a, b, half)| segment_distance(p, a, b) <= half);
        let in_square = squares
            .iter()
            .any(|&(x, y, sw, sh)| p.0 >= x && p.0 <= x + sw && p.1 >= y && p.1 <= y + sh);
        !(on_street || in_square)
    })
    .expect("non-zero dimensions")
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
    (p.0 - cx).hypot(p.1 - cy)
}
