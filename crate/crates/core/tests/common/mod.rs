#![allow(dead_code)]

use isoridge_core::OccupancyGrid;
use proptest::prelude::*;

/// Random grid up to `max` cells on a side, roughly `density` obstacles.
pub fn grid(max: usize, density: f64) -> impl Strategy<Value = OccupancyGrid> {
    (1..=max, 1..=max).prop_flat_map(move |(w, h)| {
        proptest::collection::vec(proptest::bool::weighted(density), w * h)
            .prop_map(move |cells| OccupancyGrid::new(w, h, cells).unwrap())
    })
}

/// Random grid with at least one open cell.
pub fn grid_with_open(max: usize, density: f64) -> impl Strategy<Value = OccupancyGrid> {
    grid(max, density).prop_filter("needs an open cell", |g| g.open_count() > 0)
}

pub fn open_cells(g: &OccupancyGrid) -> Vec<(usize, usize)> {
    g.open_cells().collect()
}
