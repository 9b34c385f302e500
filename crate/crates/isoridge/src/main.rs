use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use isoridge::fixtures::{generate_h_shape, synthetic_town};
use isoridge::netpbm::{write_occupancy_pbm, DEFAULT_PGM_CUTOFF};
use isoridge::pipeline::{read_grid, run, Emit, RunConfig};
use isoridge_core::{estimate_street_width, FieldConfig, HoughSettings, PipelineConfig, Point};
use log::warn;

#[derive(Parser)]
#[command(
    name = "isoridge",
    version,
    about = "Axial lines from ridges of isovist fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract ranked axial lines from an occupancy raster (PBM or PGM).
    Extract(ExtractArgs),
    /// Write a synthetic occupancy raster.
    #[command(subcommand)]
    Fixture(Fixture),
}

#[derive(Args)]
struct ExtractArgs {
    input: PathBuf,
    /// Angular sweep step of the field kernel, degrees.
    #[arg(long, default_value_t = 0.1)]
    angle_step: f64,
    /// Hough theta bin width, degrees.
    #[arg(long, default_value_t = 1.0)]
    theta_step: f64,
    /// Hough rho bin width, cells.
    #[arg(long, default_value_t = 1.0)]
    rho_bin: f64,
    /// Number of lines to extract.
    #[arg(long, default_value_t = 6)]
    lines: usize,
    /// Minimum line length in cells, or `auto` for the narrowest street width.
    #[arg(long, default_value = "0")]
    min_length: String,
    /// Suppression half-window as RHO_BINS,THETA_BINS.
    #[arg(long, default_value = "2,2", value_parser = parse_pair::<usize>)]
    suppress: (usize, usize),
    /// Hough origin as X,Y (defaults to the image centre).
    #[arg(long, value_parser = parse_pair::<f64>)]
    origin: Option<(f64, f64)>,
    /// Comma-separated artefacts: csv, geojson, svg, field-pgm, mask-pbm, accumulator-pgm.
    #[arg(long, default_value = "csv", value_delimiter = ',')]
    emit: Vec<Emit>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads for the field kernel (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Grey level below which PGM pixels count as obstacles.
    #[arg(long, default_value_t = DEFAULT_PGM_CUTOFF)]
    cutoff: u16,
    /// Extension: clip each line to its longest run through open space.
    #[arg(long)]
    clip_open: bool,
}

#[derive(Subcommand)]
enum Fixture {
    /// The H-shaped open space.
    H {
        #[arg(long, default_value = "100x100", value_parser = parse_dims)]
        canvas: (usize, usize),
        #[arg(long, default_value = "10x90", value_parser = parse_dims)]
        arm: (usize, usize),
        #[arg(long, default_value = "40x10", value_parser = parse_dims)]
        bar: (usize, usize),
        #[arg(long)]
        out: PathBuf,
        /// Write plain (P1) rather than raw (P4) PBM.
        #[arg(long)]
        ascii: bool,
    },
    /// A random street network.
    Town {
        #[arg(long, default_value = "300x171", value_parser = parse_dims)]
        size: (usize, usize),
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        ascii: bool,
    },
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s.split_once(',').ok_or("expected A,B")?;
    let p = |v: &str| {
        v.trim()
            .parse::<T>()
            .map_err(|_| format!("bad value '{v}'"))
    };
    Ok((p(a)?, p(b)?))
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once('x').ok_or("expected WxH")?;
    let p = |v: &str| v.parse::<usize>().map_err(|_| format!("bad size '{v}'"));
    Ok((p(a)?, p(b)?))
}

fn extract(args: ExtractArgs) -> anyhow::Result<ExitCode> {
    let grid = read_grid(&args.input, args.cutoff)?;
    let min_length = if args.min_length == "auto" {
        estimate_street_width(&grid).ok_or_else(|| anyhow!("grid has no open cells"))? as f64
    } else {
        args.min_length
            .parse()
            .context("--min-length must be a number or 'auto'")?
    };
    let workers = if args.workers == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        args.workers
    };
    let config = RunConfig {
        pipeline: PipelineConfig {
            field: FieldConfig::new(args.angle_step)?,
            hough: HoughSettings {
                theta_step: args.theta_step,
                rho_bin: args.rho_bin,
                origin: args.origin.map(|(x, y)| Point::new(x, y)),
                suppression: args.suppress,
            },
            num_lines: args.lines,
            min_length,
        },
        emit: args.emit,
        out_dir: args.out,
        workers,
        clip_open: args.clip_open,
    };
    let outcome = run(&grid, &config)?;
    for l in &outcome.lines {
        println!("{}", isoridge::output::csv_row(l));
    }
    if outcome.lines.is_empty() {
        warn!("no line survived the length threshold");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn fixture(f: Fixture) -> anyhow::Result<ExitCode> {
    let (grid, out, ascii) = match f {
        Fixture::H {
            canvas,
            arm,
            bar,
            out,
            ascii,
        } => (
            generate_h_shape(canvas.0, canvas.1, arm.0, arm.1, bar.0, bar.1)?,
            out,
            ascii,
        ),
        Fixture::Town {
            size,
            seed,
            out,
            ascii,
        } => {
            if size.0 == 0 || size.1 == 0 {
                bail!("town size must be non-zero");
            }
            (synthetic_town(size.0, size.1, seed), out, ascii)
        }
    };
    std::fs::write(&out, write_occupancy_pbm(&grid, ascii))
        .with_context(|| format!("writing {}", out.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Extract(args) => extract(args),
        Command::Fixture(f) => fixture(f),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
