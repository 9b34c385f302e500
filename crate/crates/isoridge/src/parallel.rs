//! Multi-threaded drivers for the field kernel and the Hough vote.
//!
//! Both produce results identical to the sequential code in
//! `isoridge_core`: field rows are computed independently into disjoint
//! slices, and per-worker vote arrays are merged by integer addition.

use isoridge_core::isovist::compute_row;
use isoridge_core::{
    DirectionTable, FieldConfig, HoughAccumulator, HoughConfig, IsovistField, OccupancyGrid, Point,
    Rect, ScalarField,
};
use rayon::prelude::*;

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to start worker pool")
}

/// Field computation spread over `workers` threads.
pub fn compute_field_parallel(
    grid: &OccupancyGrid,
    config: &FieldConfig,
    workers: usize,
) -> isoridge_core::Result<IsovistField> {
    config.validate()?;
    let dirs = DirectionTable::new(config);
    let mut field = ScalarField::undefined(grid.width(), grid.height())?;
    let width = grid.width();
    pool(workers).install(|| {
        field
            .values_mut()
            .par_chunks_mut(width)
            .enumerate()
            .for_each(|(j, row)| compute_row(grid, &dirs, j, row));
    });
    Ok(IsovistField {
        field,
        config: *config,
    })
}

/// Hough vote with the points split across `workers` threads.
pub fn hough_transform_parallel(
    points: &[Point],
    config: &HoughConfig,
    bounds: Rect,
    workers: usize,
) -> isoridge_core::Result<HoughAccumulator> {
    if points.is_empty() {
        return Err(isoridge_core::Error::EmptyPointSet);
    }
    let workers = workers.max(1);
    let chunk = points.len().div_ceil(workers);
    let empty = HoughAccumulator::new(*config, bounds)?;
    pool(workers).install(|| {
        points
            .par_chunks(chunk)
            .map(|part| {
                let mut acc = empty.clone();
                acc.accumulate(part).map(|_| acc)
            })
            .try_reduce(
                || empty.clone(),
                |mut a, b| {
                    a.merge(&b);
                    Ok(a)
                },
            )
    })
}
