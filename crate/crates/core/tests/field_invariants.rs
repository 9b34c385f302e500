mod common;

use std::f64::consts::SQRT_2;

use isoridge_core::{
    compute_field, max_diametric_length, oracle_delta_max, FieldConfig, OccupancyGrid,
    OracleConfig, Symmetry,
};
use proptest::prelude::*;

/// Dense-sweep value for the middle cell of a 9 x 1 corridor, frozen from
/// the reference oracle at a 0.001 degree step.
const CORRIDOR_DELTA_MAX: f64 = 9.055_381_770_997_283;

fn cfg(step: f64) -> FieldConfig {
    FieldConfig::new(step).unwrap()
}

#[test]
fn corridor_constant_matches_oracle() {
    let g = OccupancyGrid::open(9, 1).unwrap();
    let o = oracle_delta_max(&g, (4, 0), &OracleConfig::default()).unwrap();
    assert!((o - CORRIDOR_DELTA_MAX).abs() < 1e-12, "{o}");
    assert!(o <= 82f64.sqrt());
}

#[test]
fn corridor_at_one_degree() {
    let g = OccupancyGrid::open(9, 1).unwrap();
    let d = max_diametric_length(&g, (4, 0), &cfg(1.0)).unwrap();
    assert!((9.0..=82f64.sqrt()).contains(&d), "{d}");
    assert!(d <= CORRIDOR_DELTA_MAX);
    // Same corridor embedded in walls.
    let walled = OccupancyGrid::from_fn(11, 3, |i, j| j != 1 || i == 0 || i == 10).unwrap();
    let e = max_diametric_length(&walled, (5, 1), &cfg(1.0)).unwrap();
    assert_eq!(d, e);
}

#[test]
fn empty_grid_center_is_diagonal() {
    let g = OccupancyGrid::open(11, 11).unwrap();
    for step in [0.1, 1.0, 5.0, 45.0] {
        let d = max_diametric_length(&g, (5, 5), &cfg(step)).unwrap();
        assert!((d - 11.0 * SQRT_2).abs() < 1e-12, "step {step}: {d}");
    }
}

#[test]
fn enclosed_cell() {
    let g = OccupancyGrid::from_fn(3, 3, |i, j| (i, j) != (1, 1)).unwrap();
    let f = compute_field(&g, &cfg(1.0)).unwrap();
    assert!((f.get(1, 1).unwrap() - SQRT_2).abs() < 1e-12);
    assert_eq!(f.get(0, 0), None);
    let only_axes = compute_field(&g, &cfg(90.0)).unwrap();
    assert_eq!(only_axes.get(1, 1), Some(1.0));
}

#[test]
fn five_by_five_symmetric() {
    let g = OccupancyGrid::open(5, 5).unwrap();
    let f = compute_field(&g, &cfg(1.0)).unwrap();
    for sym in [Symmetry::Rot90, Symmetry::FlipX, Symmetry::FlipY] {
        assert!(f.field.transformed(sym).bit_eq(&f.field), "{sym:?}");
    }
}

fn close(a: &isoridge_core::ScalarField, b: &isoridge_core::ScalarField) -> bool {
    a.width() == b.width()
        && a.height() == b.height()
        && a.values()
            .iter()
            .zip(b.values())
            .all(|(x, y)| (x.is_nan() && y.is_nan()) || (x - y).abs() <= 1e-9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn equivariant_under_square_symmetries(
        g in common::grid(9, 0.25),
        step in prop::sample::select(vec![1.0, 5.0, 7.5, 15.0]),
    ) {
        let f = compute_field(&g, &cfg(step)).unwrap();
        for sym in Symmetry::ALL {
            let ft = compute_field(&g.transformed(sym), &cfg(step)).unwrap();
            prop_assert!(close(&ft.field, &f.field.transformed(sym)), "{:?}", sym);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn opening_a_cell_never_shrinks_the_field(
        g in common::grid(10, 0.3),
        pick in any::<prop::sample::Index>(),
    ) {
        let blocked: Vec<_> = (0..g.height())
            .flat_map(|j| (0..g.width()).map(move |i| (i, j)))
            .filter(|&(i, j)| g.is_obstacle(i, j))
            .collect();
        prop_assume!(!blocked.is_empty());
        let (i, j) = blocked[pick.index(blocked.len())];
        let mut opened = g.clone();
        opened.set_obstacle(i, j, false);
        let before = compute_field(&g, &cfg(1.0)).unwrap();
        let after = compute_field(&opened, &cfg(1.0)).unwrap();
        for (ci, cj) in g.open_cells() {
            prop_assert!(after.get(ci, cj).unwrap() >= before.get(ci, cj).unwrap());
        }
    }

    #[test]
    fn finer_sweep_never_shrinks_the_field(
        g in common::grid(10, 0.2),
        step in 0.5f64..20.0,
    ) {
        let coarse = compute_field(&g, &cfg(step)).unwrap();
        let fine = compute_field(&g, &cfg(step / 2.0)).unwrap();
        for (i, j) in g.open_cells() {
            prop_assert!(fine.get(i, j).unwrap() >= coarse.get(i, j).unwrap());
        }
    }

    #[test]
    fn open_cells_defined_obstacles_undefined(g in common::grid(12, 0.3), step in 0.5f64..90.0) {
        let f = compute_field(&g, &cfg(step)).unwrap();
        for j in 0..g.height() {
            for i in 0..g.width() {
                match f.get(i, j) {
                    Some(v) => {
                        prop_assert!(g.is_open(i, j));
                        prop_assert!(v.is_finite() && v >= 1.0);
                    }
                    None => prop_assert!(g.is_obstacle(i, j)),
                }
            }
        }
    }

    #[test]
    fn field_matches_per_cell_kernel(g in common::grid_with_open(8, 0.2)) {
        let f = compute_field(&g, &cfg(3.0)).unwrap();
        let again = compute_field(&g, &cfg(3.0)).unwrap();
        prop_assert!(f.field.bit_eq(&again.field));
        for (i, j) in g.open_cells() {
            let d = max_diametric_length(&g, (i, j), &cfg(3.0)).unwrap();
            prop_assert_eq!(f.get(i, j).unwrap().to_bits(), d.to_bits());
        }
    }
}
