//! Netpbm input and output.
//!
//! Occupancy rasters are read from PBM (`P1`, `P4`) or thresholded PGM
//! (`P2`, `P5`). Black PBM pixels (`1`) are obstacles. Raster row 0 of a
//! file is the top of the image, so rows are flipped into the grid's
//! `j`-up convention on load and flipped back on write.

use isoridge_core::{HoughAccumulator, OccupancyGrid, RidgeMask, ScalarField};
use thiserror::Error;

pub const DEFAULT_PGM_CUTOFF: u16 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OccupancyFormat {
    PbmAscii,
    PbmBinary,
    /// Grey levels below `cutoff` (on a 0..=255 scale) are obstacles.
    PgmThreshold {
        cutoff: u16,
    },
}

impl OccupancyFormat {
    /// Guesses the format from the magic number.
    pub fn detect(bytes: &[u8], cutoff: u16) -> Result<Self, ParseError> {
        match bytes.get(..2) {
            Some(b"P1") => Ok(Self::PbmAscii),
            Some(b"P4") => Ok(Self::PbmBinary),
            Some(b"P2") | Some(b"P5") => Ok(Self::PgmThreshold { cutoff }),
            _ => Err(ParseError::new(0, ParseErrorKind::BadMagic)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(offset: usize, kind: ParseErrorKind) -> Self {
        Self { offset, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unrecognised magic number")]
    BadMagic,
    #[error("magic number does not match the requested format")]
    FormatMismatch,
    #[error("malformed header: {0}")]
    Header(&'static str),
    #[error("zero image dimension")]
    ZeroDimension,
    #[error("payload ends after {found} of {expected} samples")]
    PayloadMismatch { expected: usize, found: usize },
    #[error("invalid sample")]
    BadSample,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.pos < self.bytes.len() && !matches!(self.bytes[self.pos], b'\n' | b'\r')
                {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn header_number(&mut self, what: &'static str) -> Result<usize, ParseError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, ParseErrorKind::Header(what)));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(ParseError::new(start, ParseErrorKind::Header(what)))
    }

    /// The single whitespace byte separating a binary header from its raster.
    fn raster_separator(&mut self) -> Result<(), ParseError> {
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_whitespace() => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(ParseError::new(
                self.pos,
                ParseErrorKind::Header("missing whitespace before raster"),
            )),
        }
    }
}

/// Builds a grid from samples in file order (top row first).
fn grid_from_file_rows(width: usize, height: usize, obstacle: &[bool]) -> OccupancyGrid {
    OccupancyGrid::from_fn(width, height, |i, j| obstacle[(height - 1 - j) * width + i])
        .expect("dimensions checked by caller")
}

/// Decodes an occupancy raster.
pub fn parse_occupancy(bytes: &[u8], format: OccupancyFormat) -> Result<OccupancyGrid, ParseError> {
    let magic = bytes.get(..2);
    let magic_ok = match format {
        OccupancyFormat::PbmAscii => magic == Some(b"P1"),
        OccupancyFormat::PbmBinary => magic == Some(b"P4"),
        OccupancyFormat::PgmThreshold { .. } => magic == Some(b"P2") || magic == Some(b"P5"),
    };
    if !magic_ok {
        return Err(ParseError::new(0, ParseErrorKind::FormatMismatch));
    }
    let mut cur = Cursor { bytes, pos: 2 };
    let dims_at = cur.pos;
    let width = cur.header_number("width")?;
    let height = cur.header_number("height")?;
    if width == 0 || height == 0 {
        return Err(ParseError::new(dims_at, ParseErrorKind::ZeroDimension));
    }
    let n = width.checked_mul(height).ok_or(ParseError::new(
        dims_at,
        ParseErrorKind::Header("image too large"),
    ))?;

    let samples = match (format, magic) {
        (OccupancyFormat::PbmAscii, _) => read_ascii_bits(&mut cur, n)?,
        (OccupancyFormat::PbmBinary, _) => {
            cur.raster_separator()?;
            read_packed_bits(&mut cur, width, height)?
        }
        (OccupancyFormat::PgmThreshold { cutoff }, Some(m)) => {
            let maxval_at = cur.pos;
            let maxval = cur.header_number("maxval")?;
            if maxval == 0 || maxval > 65535 {
                return Err(ParseError::new(maxval_at, ParseErrorKind::Header("maxval")));
            }
            let grey = if m == b"P2" {
                read_ascii_grey(&mut cur, n, maxval)?
            } else {
                cur.raster_separator()?;
                read_binary_grey(&mut cur, n, maxval)?
            };
            // Compare on the 0..=255 scale regardless of maxval.
            grey.into_iter()
                .map(|v| (v as u64) * 255 < cutoff as u64 * maxval as u64)
                .collect()
        }
        _ => unreachable!("magic checked above"),
    };
    Ok(grid_from_file_rows(width, height, &samples))
}

fn read_ascii_bits(cur: &mut Cursor, n: usize) -> Result<Vec<bool>, ParseError> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        cur.skip_space_and_comments();
        match cur.bytes.get(cur.pos) {
            Some(b'0') => out.push(false),
            Some(b'1') => out.push(true),
            Some(_) => return Err(ParseError::new(cur.pos, ParseErrorKind::BadSample)),
            None => {
                return Err(ParseError::new(
                    cur.pos,
                    ParseErrorKind::PayloadMismatch {
                        expected: n,
                        found: out.len(),
                    },
                ))
            }
        }
        cur.pos += 1;
    }
    Ok(out)
}

fn read_packed_bits(
    cur: &mut Cursor,
    width: usize,
    height: usize,
) -> Result<Vec<bool>, ParseError> {
    let stride = width.div_ceil(8);
    let need = stride * height;
    let raster = &cur.bytes[cur.pos..];
    if raster.len() < need {
        return Err(ParseError::new(
            cur.bytes.len(),
            ParseErrorKind::PayloadMismatch {
                expected: width * height,
                found: (raster.len() / stride) * width,
            },
        ));
    }
    let mut out = Vec::with_capacity(width * height);
    for row in raster[..need].chunks(stride) {
        for i in 0..width {
            out.push(row[i / 8] & (0x80 >> (i % 8)) != 0);
        }
    }
    cur.pos += need;
    Ok(out)
}

fn read_ascii_grey(cur: &mut Cursor, n: usize, maxval: usize) -> Result<Vec<u16>, ParseError> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        cur.skip_space_and_comments();
        if cur.pos >= cur.bytes.len() {
            return Err(ParseError::new(
                cur.pos,
                ParseErrorKind::PayloadMismatch {
                    expected: n,
                    found: out.len(),
                },
            ));
        }
        let at = cur.pos;
        let v = cur
            .header_number("sample")
            .map_err(|_| ParseError::new(at, ParseErrorKind::BadSample))?;
        if v > maxval {
            return Err(ParseError::new(at, ParseErrorKind::BadSample));
        }
        out.push(v as u16);
    }
    Ok(out)
}

fn read_binary_grey(cur: &mut Cursor, n: usize, maxval: usize) -> Result<Vec<u16>, ParseError> {
    let width = if maxval > 255 { 2 } else { 1 };
    let raster = &cur.bytes[cur.pos..];
    if raster.len() < n * width {
        return Err(ParseError::new(
            cur.bytes.len(),
            ParseErrorKind::PayloadMismatch {
                expected: n,
                found: raster.len() / width,
            },
        ));
    }
    let out = raster[..n * width]
        .chunks(width)
        .map(|c| {
            if width == 2 {
                u16::from_be_bytes([c[0], c[1]])
            } else {
                c[0] as u16
            }
        })
        .collect::<Vec<_>>();
    if let Some(k) = out.iter().position(|&v| v as usize > maxval) {
        return Err(ParseError::new(
            cur.pos + k * width,
            ParseErrorKind::BadSample,
        ));
    }
    cur.pos += n * width;
    Ok(out)
}

/// Encodes a binary raster (row-major, `j` up) as PBM. `true` is black.
fn encode_pbm(width: usize, height: usize, bits: &[bool], ascii: bool) -> Vec<u8> {
    let at = |i: usize, r: usize| bits[(height - 1 - r) * width + i];
    let mut out = Vec::new();
    if ascii {
        out.extend_from_slice(format!("P1\n{width} {height}\n").as_bytes());
        for r in 0..height {
            let row: Vec<&str> = (0..width)
                .map(|i| if at(i, r) { "1" } else { "0" })
                .collect();
            // Netpbm asks for lines of at most 70 characters.
            for chunk in row.chunks(35) {
                out.extend_from_slice(chunk.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
    } else {
        out.extend_from_slice(format!("P4\n{width} {height}\n").as_bytes());
        let stride = width.div_ceil(8);
        for r in 0..height {
            let mut row = vec![0u8; stride];
            for i in 0..width {
                if at(i, r) {
                    row[i / 8] |= 0x80 >> (i % 8);
                }
            }
            out.extend_from_slice(&row);
        }
    }
    out
}

pub fn write_occupancy_pbm(grid: &OccupancyGrid, ascii: bool) -> Vec<u8> {
    encode_pbm(grid.width(), grid.height(), grid.cells(), ascii)
}

/// Ridge points as black pixels.
pub fn write_mask_pbm(mask: &RidgeMask) -> Vec<u8> {
    encode_pbm(mask.width(), mask.height(), mask.marks(), false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldFormat {
    Pgm16,
    Csv,
}

/// Serialises a scalar field, top row first.
///
/// PGM output rescales `[0, max]` linearly onto `[0, 65535]`; undefined
/// cells become 0. CSV writes six decimals per value and leaves undefined
/// cells empty.
pub fn write_field(field: &ScalarField, format: FieldFormat) -> Vec<u8> {
    let (w, h) = (field.width(), field.height());
    match format {
        FieldFormat::Pgm16 => {
            let max = field.max_value().unwrap_or(0.0);
            let mut out = format!("P5\n{w} {h}\n65535\n").into_bytes();
            for r in 0..h {
                for i in 0..w {
                    let level = match field.get(i, h - 1 - r) {
                        Some(v) if max > 0.0 => {
                            (v / max * 65535.0).round().clamp(0.0, 65535.0) as u16
                        }
                        _ => 0,
                    };
                    out.extend_from_slice(&level.to_be_bytes());
                }
            }
            out
        }
        FieldFormat::Csv => {
            let mut out = String::new();
            for r in 0..h {
                let row: Vec<String> = (0..w)
                    .map(|i| {
                        field
                            .get(i, h - 1 - r)
                            .map_or(String::new(), |v| format!("{v:.6}"))
                    })
                    .collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsvFieldError {
    #[error("empty CSV")]
    Empty,
    #[error("row {row} has {found} columns, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column {col}: not a number")]
    BadValue { row: usize, col: usize },
}

/// Reads a field written by [`write_field`] in CSV form.
pub fn parse_field_csv(text: &str) -> Result<ScalarField, CsvFieldError> {
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    let h = rows.len();
    let w = rows.first().map(|r| r.len()).ok_or(CsvFieldError::Empty)?;
    let mut values = vec![f64::NAN; w * h];
    for (r, row) in rows.iter().enumerate() {
        if row.len() != w {
            return Err(CsvFieldError::Ragged {
                row: r,
                expected: w,
                found: row.len(),
            });
        }
        for (i, cell) in row.iter().enumerate() {
            if cell.is_empty() {
                continue;
            }
            let v = cell
                .parse::<f64>()
                .map_err(|_| CsvFieldError::BadValue { row: r, col: i })?;
            values[(h - 1 - r) * w + i] = v;
        }
    }
    ScalarField::from_values(w, h, values).map_err(|_| CsvFieldError::Empty)
}

/// Accumulator as a 16-bit PGM: theta along x, rho along y (largest rho at
/// the top), votes rescaled to full range.
pub fn write_accumulator_pgm(acc: &HoughAccumulator) -> Vec<u8> {
    let (nt, nr) = (acc.theta_bins(), acc.rho_bins());
    let max = acc.max_votes().max(1) as u64;
    let mut out = format!("P5\n{nt} {nr}\n65535\n").into_bytes();
    for r in (0..nr).rev() {
        for t in 0..nt {
            let level = (acc.get(r, t) as u64 * 65535 + max / 2) / max;
            out.extend_from_slice(&(level as u16).to_be_bytes());
        }
    }
    out
}
