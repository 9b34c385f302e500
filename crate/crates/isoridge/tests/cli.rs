use std::path::Path;
use std::process::{Command, Output};

use isoridge::netpbm::write_occupancy_pbm;
use isoridge::output::CSV_HEADER;
use isoridge_core::OccupancyGrid;

fn isoridge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoridge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fixture_then_extract() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.pbm");
    let out = dir.path().join("out");
    let r = isoridge(&[
        "fixture",
        "h",
        "--canvas",
        "40x40",
        "--arm",
        "4x36",
        "--bar",
        "16x4",
        "--out",
        s(&h),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));

    let r = isoridge(&[
        "extract",
        s(&h),
        "--angle-step",
        "2",
        "--lines",
        "4",
        "--workers",
        "2",
        "--emit",
        "csv,geojson,svg,field-pgm,mask-pbm,accumulator-pgm",
        "--out",
        s(&out),
    ]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&r.stderr)
    );
    assert_eq!(String::from_utf8(r.stdout).unwrap().lines().count(), 4);
    for name in [
        "lines.csv",
        "lines.geojson",
        "overlay.svg",
        "field.pgm",
        "mask.pbm",
        "accumulator.pgm",
        "run.json",
    ] {
        assert!(out.join(name).is_file(), "{name} missing");
    }
    let csv = std::fs::read_to_string(out.join("lines.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some(CSV_HEADER));
    assert_eq!(csv.lines().count(), 5);
    let meta: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out.join("run.json")).unwrap()).unwrap();
    assert_eq!(meta["angle_step_deg"], 2.0);
    assert_eq!(meta["suppression"]["rho_bins"], 2);
}

#[test]
fn threshold_removing_everything_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("g.pbm");
    let g = OccupancyGrid::from_fn(12, 12, |i, j| i == 6 && j == 6).unwrap();
    std::fs::write(&grid, write_occupancy_pbm(&g, true)).unwrap();
    let r = isoridge(&[
        "extract",
        s(&grid),
        "--angle-step",
        "5",
        "--min-length",
        "1000",
        "--out",
        s(&dir.path().join("o")),
    ]);
    assert_eq!(r.status.code(), Some(2));
    assert!(r.stdout.is_empty());
}

#[test]
fn bad_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pbm");
    std::fs::write(&bad, b"P1\n3 3\n0 0\n").unwrap();
    let r = isoridge(&["extract", s(&bad), "--out", s(&dir.path().join("o"))]);
    assert_eq!(r.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&r.stderr).starts_with("error:"));

    let r = isoridge(&["extract", s(&dir.path().join("missing.pbm"))]);
    assert_eq!(r.status.code(), Some(1));

    let blocked = dir.path().join("blocked.pbm");
    std::fs::write(&blocked, b"P1\n2 2\n1 1 1 1\n").unwrap();
    let r = isoridge(&["extract", s(&blocked), "--out", s(&dir.path().join("o"))]);
    assert_eq!(r.status.code(), Some(1));
}

#[test]
fn auto_length_threshold_and_town_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let town = dir.path().join("town.pbm");
    let r = isoridge(&[
        "fixture",
        "town",
        "--size",
        "60x40",
        "--seed",
        "3",
        "--out",
        s(&town),
    ]);
    assert!(r.status.success());
    let r = isoridge(&[
        "extract",
        s(&town),
        "--angle-step",
        "3",
        "--min-length",
        "auto",
        "--clip-open",
        "--out",
        s(&dir.path().join("o")),
    ]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&r.stderr)
    );
}
