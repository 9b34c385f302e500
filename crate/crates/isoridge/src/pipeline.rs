//! Parallel end-to-end runs and artefact emission.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::Context;
use isoridge_core::{
    apply_length_threshold, lines_from_field, longest_open_run, AxialLine, Extraction,
    OccupancyGrid, PipelineConfig,
};
use log::{info, warn};

use crate::netpbm::{write_accumulator_pgm, write_field, write_mask_pbm, FieldFormat};
use crate::output::{lines_csv, lines_geojson, overlay_svg};
use crate::parallel::compute_field_parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Emit {
    Csv,
    Geojson,
    Svg,
    FieldPgm,
    MaskPbm,
    AccumulatorPgm,
}

impl Emit {
    pub fn file_name(self) -> &'static str {
        match self {
            Emit::Csv => "lines.csv",
            Emit::Geojson => "lines.geojson",
            Emit::Svg => "overlay.svg",
            Emit::FieldPgm => "field.pgm",
            Emit::MaskPbm => "mask.pbm",
            Emit::AccumulatorPgm => "accumulator.pgm",
        }
    }
}

impl FromStr for Emit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "csv" => Emit::Csv,
            "geojson" => Emit::Geojson,
            "svg" => Emit::Svg,
            "field-pgm" => Emit::FieldPgm,
            "mask-pbm" => Emit::MaskPbm,
            "accumulator-pgm" => Emit::AccumulatorPgm,
            other => return Err(format!("unknown artefact '{other}'")),
        })
    }
}

/// The full pipeline with the field computed on `workers` threads.
pub fn extract_axial_lines(
    grid: &OccupancyGrid,
    config: &PipelineConfig,
    workers: usize,
) -> isoridge_core::Result<Extraction> {
    config.validate()?;
    if grid.open_count() == 0 {
        return Err(isoridge_core::Error::NoOpenCells);
    }
    let field = compute_field_parallel(grid, &config.field, workers)?;
    let extraction = lines_from_field(grid, field, config)?;
    for p in &extraction.skipped {
        warn!(
            "peak rho={} theta={} ({} votes) misses the image, skipped",
            p.rho, p.theta, p.votes
        );
    }
    Ok(extraction)
}

/// Replaces each segment by its longest stretch inside open space. Lines
/// with no open stretch are dropped.
pub fn clip_to_open_space(grid: &OccupancyGrid, lines: &[AxialLine]) -> Vec<AxialLine> {
    lines
        .iter()
        .filter_map(|l| {
            let seg = longest_open_run(grid, &l.segment)?;
            Some(AxialLine {
                segment: seg,
                length: seg.length(),
                ..*l
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub pipeline: PipelineConfig,
    pub emit: Vec<Emit>,
    pub out_dir: PathBuf,
    pub workers: usize,
    /// Clip lines to open space instead of the image rectangle.
    pub clip_open: bool,
}

pub struct RunOutcome {
    pub extraction: Extraction,
    /// Lines after optional clipping and the length threshold.
    pub lines: Vec<AxialLine>,
    pub written: Vec<PathBuf>,
}

pub fn run(grid: &OccupancyGrid, config: &RunConfig) -> anyhow::Result<RunOutcome> {
    let extraction = extract_axial_lines(grid, &config.pipeline, config.workers)?;
    let mut lines = extraction.lines.clone();
    if config.clip_open {
        lines = clip_to_open_space(grid, &lines);
    }
    let lines = apply_length_threshold(&lines, config.pipeline.min_length);
    info!(
        "{} ridge points, {} lines ({} before threshold)",
        extraction.mask.count(),
        lines.len(),
        extraction.lines.len()
    );
    let written = emit(grid, &extraction, &lines, config)?;
    Ok(RunOutcome {
        extraction,
        lines,
        written,
    })
}

/// Writes the requested artefacts plus `run.json` describing the run.
pub fn emit(
    grid: &OccupancyGrid,
    extraction: &Extraction,
    lines: &[AxialLine],
    config: &RunConfig,
) -> anyhow::Result<Vec<PathBuf>> {
    let dir = &config.out_dir;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    let mut put = |name: &str, bytes: &[u8]| -> anyhow::Result<()> {
        let path = dir.join(name);
        fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
        Ok(())
    };
    for &e in &config.emit {
        let bytes = match e {
            Emit::Csv => lines_csv(lines).into_bytes(),
            Emit::Geojson => serde_json::to_vec_pretty(&lines_geojson(lines))?,
            Emit::Svg => overlay_svg(grid, lines).into_bytes(),
            Emit::FieldPgm => write_field(&extraction.field.field, FieldFormat::Pgm16),
            Emit::MaskPbm => write_mask_pbm(&extraction.mask),
            Emit::AccumulatorPgm => write_accumulator_pgm(&extraction.accumulator),
        };
        put(e.file_name(), &bytes)?;
    }
    put(
        "run.json",
        &serde_json::to_vec_pretty(&run_metadata(extraction, config))?,
    )?;
    Ok(written)
}

fn run_metadata(extraction: &Extraction, config: &RunConfig) -> serde_json::Value {
    let h = extraction.accumulator.config();
    let p = &config.pipeline;
    serde_json::json!({
        "angle_step_deg": p.field.angle_step,
        "theta_step_deg": h.theta_step,
        "rho_bin": h.rho_bin,
        "origin": [h.origin.x, h.origin.y],
        "suppression": { "rho_bins": h.suppression.0, "theta_bins": h.suppression.1 },
        "num_lines": p.num_lines,
        "min_length": p.min_length,
        "clip_to_open_space": config.clip_open,
        "ridge_points": extraction.mask.count(),
        "skipped_peaks": extraction.skipped.iter().map(|s| serde_json::json!({
            "rho": s.rho, "theta_deg": s.theta, "votes": s.votes,
        })).collect::<Vec<_>>(),
    })
}

pub fn read_grid(path: &Path, cutoff: u16) -> anyhow::Result<OccupancyGrid> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let format = crate::netpbm::OccupancyFormat::detect(&bytes, cutoff)
        .with_context(|| format!("{}", path.display()))?;
    crate::netpbm::parse_occupancy(&bytes, format).with_context(|| format!("{}", path.display()))
}
