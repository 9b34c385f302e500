use isoridge::fixtures::synthetic_town;
use isoridge::parallel::{compute_field_parallel, hough_transform_parallel};
use isoridge_core::{
    compute_field, hough_transform, FieldConfig, HoughConfig, OccupancyGrid, Point, Rect,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn field_is_independent_of_workers(
        cells in proptest::collection::vec(proptest::bool::weighted(0.25), 15 * 11),
        workers in 1usize..6,
    ) {
        let g = OccupancyGrid::new(15, 11, cells).unwrap();
        let cfg = FieldConfig::new(2.0).unwrap();
        let seq = compute_field(&g, &cfg).unwrap();
        let par = compute_field_parallel(&g, &cfg, workers).unwrap();
        prop_assert!(seq.field.bit_eq(&par.field));
    }

    #[test]
    fn hough_is_independent_of_workers(
        pts in proptest::collection::vec((0.0f64..=40.0, 0.0f64..=30.0), 1..200),
        workers in 1usize..6,
    ) {
        let pts: Vec<_> = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
        let bounds = Rect::new(40.0, 30.0);
        let cfg = HoughConfig::for_image(bounds);
        let seq = hough_transform(&pts, &cfg, bounds).unwrap();
        let par = hough_transform_parallel(&pts, &cfg, bounds, workers).unwrap();
        prop_assert_eq!(seq.votes(), par.votes());
        prop_assert_eq!(seq.total_points(), par.total_points());
    }
}

#[test]
fn town_field_is_independent_of_workers() {
    let g = synthetic_town(90, 60, 3);
    let cfg = FieldConfig::new(1.0).unwrap();
    let one = compute_field_parallel(&g, &cfg, 1).unwrap();
    for workers in [2, 3, 8] {
        let many = compute_field_parallel(&g, &cfg, workers).unwrap();
        assert!(one.field.bit_eq(&many.field), "{workers} workers");
    }
}
