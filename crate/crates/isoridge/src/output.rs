//! Line lists and figure overlays.
//!
//! All coordinates are continuous image coordinates in cell units with `y`
//! pointing up; the SVG writer flips `y` for display.

use std::fmt::Write as _;

use isoridge_core::{AxialLine, OccupancyGrid};
use serde_json::{json, Value};

pub const CSV_HEADER: &str = "rank,rho,theta_deg,votes,x1,y1,x2,y2,length";

// Folds -0.0 into 0.0 so it never prints with a sign.
fn z(v: f64) -> f64 {
    v + 0.0
}

pub fn csv_row(line: &AxialLine) -> String {
    let (p, s) = (&line.params, &line.segment);
    format!(
        "{},{:.3},{:.1},{},{:.1},{:.1},{:.1},{:.1},{:.3}",
        p.rank,
        z(p.rho),
        z(p.theta),
        p.votes,
        z(s.a.x),
        z(s.a.y),
        z(s.b.x),
        z(s.b.y),
        z(line.length)
    )
}

pub fn lines_csv(lines: &[AxialLine]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for l in lines {
        out.push_str(&csv_row(l));
        out.push('\n');
    }
    out
}

pub fn lines_geojson(lines: &[AxialLine]) -> Value {
    let features: Vec<Value> = lines
        .iter()
        .map(|l| {
            json!({
                "type": "Feature",
                "geometry": {
                    "type": "LineString",
                    "coordinates": [[l.segment.a.x, l.segment.a.y], [l.segment.b.x, l.segment.b.y]],
                },
                "properties": {
                    "rank": l.params.rank,
                    "votes": l.params.votes,
                    "rho": l.params.rho,
                    "theta_deg": l.params.theta,
                    "length": l.length,
                },
            })
        })
        .collect();
    json!({ "type": "FeatureCollection", "features": features })
}

/// Obstacles filled dark on a light background, ranked lines drawn on top
/// and labelled `l1 ... lk`.
pub fn overlay_svg(grid: &OccupancyGrid, lines: &[AxialLine]) -> String {
    let (w, h) = (grid.width(), grid.height());
    let hf = h as f64;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{}" height="{}">"#,
        w * 4,
        h * 4
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#f4f1ea"/>"##
    );
    let _ = writeln!(svg, r##"<g fill="#3a3a3a" shape-rendering="crispEdges">"##);
    for j in 0..h {
        let y = h - 1 - j;
        let mut i = 0;
        while i < w {
            if grid.is_obstacle(i, j) {
                let start = i;
                while i < w && grid.is_obstacle(i, j) {
                    i += 1;
                }
                let _ = writeln!(
                    svg,
                    r#"<rect x="{start}" y="{y}" width="{}" height="1"/>"#,
                    i - start
                );
            } else {
                i += 1;
            }
        }
    }
    svg.push_str("</g>\n");
    let font = (w.max(h) as f64 / 40.0).max(2.0);
    let stroke = (w.max(h) as f64 / 250.0).max(0.3);
    let _ = writeln!(
        svg,
        r##"<g stroke="#d62728" stroke-width="{stroke:.2}" fill="#d62728" font-family="sans-serif" font-size="{font:.1}">"##
    );
    for l in lines {
        let (a, b) = (l.segment.a, l.segment.b);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            a.x,
            hf - a.y,
            b.x,
            hf - b.y
        );
        let (mx, my) = (0.5 * (a.x + b.x), hf - 0.5 * (a.y + b.y));
        let _ = writeln!(
            svg,
            r#"<text x="{mx:.2}" y="{my:.2}" stroke="none">l{}</text>"#,
            l.params.rank
        );
    }
    svg.push_str("</g>\n</svg>\n");
    svg
}
