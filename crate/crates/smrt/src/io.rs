//! File formats: binary volumes and projection sets, phantom descriptions,
//! key=value configs, and 2-D slice exports.
//!
//! Both binary formats use a fixed 32-byte header (8-byte ASCII magic, two
//! `u64` fields, one `f64`) followed by little-endian `f64` payloads, so a
//! file is valid iff its length matches the header exactly. Readers report
//! malformed content with the byte offset of the first offending datum.

use crate::domain::{make_grid, GridSpec};
use crate::forward::{Ball, Phantom, ProjectionSet};
use crate::recon_fast::VolumeImage;
use crate::{Error, Result};
use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

/// Magic tag of a volume file: header `magic | u64 n | u64 n³ | f64 R`,
/// then `n³` samples, x-fastest (`i + n·(j + n·k)`).
pub const VOLUME_MAGIC: &[u8; 8] = b"SMRTVOL1";

/// Magic tag of a projection file: header `magic | u64 n | u64 n1 | f64 R`,
/// then six face blocks, each a `u64` face tag `1..=6` followed by
/// `(n−2)²·n1` samples in detector-major, radius-fastest order.
pub const PROJECTION_MAGIC: &[u8; 8] = b"SMRTPRJ1";

const HEADER_LEN: usize = 32;

fn check_magic(bytes: &[u8], magic: &[u8; 8]) -> Result<()> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format {
            offset: bytes.len() as u64,
            message: format!("file too short for a {HEADER_LEN}-byte header"),
        });
    }
    for (i, (&got, &want)) in bytes.iter().zip(magic.iter()).enumerate() {
        if got != want {
            return Err(Error::Format {
                offset: i as u64,
                message: format!(
                    "bad magic: expected {:?}, found byte 0x{got:02x}",
                    std::str::from_utf8(magic).unwrap()
                ),
            });
        }
    }
    Ok(())
}

fn read_u64(bytes: &[u8], offset: usize) -> u64 {
    u64::from_le_bytes(bytes[offset..offset + 8].try_into().unwrap())
}

fn read_f64(bytes: &[u8], offset: usize) -> f64 {
    f64::from_le_bytes(bytes[offset..offset + 8].try_into().unwrap())
}

fn check_len(bytes: &[u8], expected: usize) -> Result<()> {
    if bytes.len() != expected {
        return Err(Error::Format {
            offset: bytes.len().min(expected) as u64,
            message: format!("file has {} bytes, expected {expected}", bytes.len()),
        });
    }
    Ok(())
}

/// Decodes `count` little-endian doubles starting at `offset`, rejecting
/// non-finite values with their byte offset.
fn decode_f64s(bytes: &[u8], offset: usize, count: usize, what: &str) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let at = offset + 8 * idx;
        let v = read_f64(bytes, at);
        if !v.is_finite() {
            return Err(Error::Format { offset: at as u64, message: format!("non-finite {what} sample") });
        }
        out.push(v);
    }
    Ok(out)
}

fn header_grid(bytes: &[u8], magic: &[u8; 8]) -> Result<(GridSpec, usize, f64)> {
    check_magic(bytes, magic)?;
    let n = read_u64(bytes, 8);
    let side = read_f64(bytes, 24);
    if !(3..=(1 << 20)).contains(&n) {
        return Err(Error::Format { offset: 8, message: format!("grid size n = {n} out of range") });
    }
    if !(side.is_finite() && side > 0.0) {
        return Err(Error::Format { offset: 24, message: format!("cube side {side} must be finite and positive") });
    }
    let grid = make_grid(n as usize, side)?;
    Ok((grid, n as usize, side))
}

/// Writes a volume in the `SMRTVOL1` layout.
pub fn write_volume(path: impl AsRef<Path>, vol: &VolumeImage) -> Result<()> {
    let grid = vol.grid();
    let n = grid.n as u64;
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * vol.values().len());
    out.extend_from_slice(VOLUME_MAGIC);
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&(n * n * n).to_le_bytes());
    out.extend_from_slice(&grid.side.to_le_bytes());
    for v in vol.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads an `SMRTVOL1` file, validating header consistency, payload length,
/// finiteness, and the zero-boundary invariant of the series solution.
pub fn read_volume(path: impl AsRef<Path>) -> Result<VolumeImage> {
    let bytes = fs::read(path)?;
    let (grid, n, _) = header_grid(&bytes, VOLUME_MAGIC)?;
    let count = read_u64(&bytes, 16);
    if count != (n * n * n) as u64 {
        return Err(Error::Format {
            offset: 16,
            message: format!("sample count {count} does not match n³ = {}", n * n * n),
        });
    }
    check_len(&bytes, HEADER_LEN + 8 * n * n * n)?;
    let values = decode_f64s(&bytes, HEADER_LEN, n * n * n, "volume")?;
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                let boundary = i == 0 || j == 0 || k == 0 || i == n - 1 || j == n - 1 || k == n - 1;
                let idx = i + n * (j + n * k);
                if boundary && values[idx] != 0.0 {
                    return Err(Error::Format {
                        offset: (HEADER_LEN + 8 * idx) as u64,
                        message: format!("nonzero value at boundary node ({i},{j},{k})"),
                    });
                }
            }
        }
    }
    VolumeImage::from_values(grid, values)
}

/// Writes a projection set in the `SMRTPRJ1` layout.
pub fn write_projections(path: impl AsRef<Path>, proj: &ProjectionSet) -> Result<()> {
    let grid = proj.grid();
    let block = grid.nd() * grid.nd() * grid.n1;
    let mut out = Vec::with_capacity(HEADER_LEN + 6 * (8 + 8 * block));
    out.extend_from_slice(PROJECTION_MAGIC);
    out.extend_from_slice(&(grid.n as u64).to_le_bytes());
    out.extend_from_slice(&(grid.n1 as u64).to_le_bytes());
    out.extend_from_slice(&grid.side.to_le_bytes());
    for j in 1..=6u64 {
        out.extend_from_slice(&j.to_le_bytes());
        for v in proj.face(j as usize) {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads an `SMRTPRJ1` file, cross-checking the stored radial count against
/// the grid geometry and requiring the six face tags in order.
pub fn read_projections(path: impl AsRef<Path>) -> Result<ProjectionSet> {
    let bytes = fs::read(path)?;
    let (grid, _, _) = header_grid(&bytes, PROJECTION_MAGIC)?;
    let n1 = read_u64(&bytes, 16);
    if n1 != grid.n1 as u64 {
        return Err(Error::Format {
            offset: 16,
            message: format!("radial count {n1} does not match the grid's n1 = {}", grid.n1),
        });
    }
    let block = grid.nd() * grid.nd() * grid.n1;
    check_len(&bytes, HEADER_LEN + 6 * (8 + 8 * block))?;
    let mut proj = ProjectionSet::zeros(grid);
    let mut at = HEADER_LEN;
    for j in 1..=6 {
        let tag = read_u64(&bytes, at);
        if tag != j as u64 {
            return Err(Error::Format {
                offset: at as u64,
                message: format!("expected face tag {j}, found {tag}"),
            });
        }
        at += 8;
        let values = decode_f64s(&bytes, at, block, "projection")?;
        proj.face_mut(j).copy_from_slice(&values);
        at += 8 * block;
    }
    Ok(proj)
}

/// Writes a phantom as text: one `cx cy cz radius amplitude` line per ball.
pub fn write_phantom(path: impl AsRef<Path>, phantom: &Phantom) -> Result<()> {
    let mut out = String::from("# ball phantom: cx cy cz radius amplitude\n");
    for b in &phantom.balls {
        out.push_str(&format!(
            "{} {} {} {} {}\n",
            b.center[0], b.center[1], b.center[2], b.radius, b.amplitude
        ));
    }
    fs::write(path, out)?;
    Ok(())
}

/// Parses the text phantom format. `#` starts a comment (whole-line or
/// trailing); blank lines are skipped; errors carry 1-based line numbers.
pub fn parse_phantom(text: &str) -> Result<Phantom> {
    let mut balls = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::InvalidInput(format!(
                "line {lineno}: expected 5 fields (cx cy cz radius amplitude), found {}",
                fields.len()
            )));
        }
        let mut vals = [0.0f64; 5];
        for (slot, field) in vals.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .map_err(|_| Error::InvalidInput(format!("line {lineno}: `{field}` is not a number")))?;
        }
        if !vals.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput(format!("line {lineno}: non-finite value")));
        }
        if vals[3] <= 0.0 {
            return Err(Error::InvalidInput(format!("line {lineno}: radius must be positive")));
        }
        balls.push(Ball { center: [vals[0], vals[1], vals[2]], radius: vals[3], amplitude: vals[4] });
    }
    Phantom::new(balls)
}

/// [`parse_phantom`] on a file.
pub fn read_phantom(path: impl AsRef<Path>) -> Result<Phantom> {
    parse_phantom(&fs::read_to_string(path)?)
}

/// Parses `key = value` configuration text: one pair per line, `#`
/// comments, later assignments win. Keys and values are trimmed strings;
/// interpretation is the caller's.
pub fn parse_config(text: &str) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::InvalidInput(format!("line {}: expected key = value", idx + 1)));
        };
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::InvalidInput(format!("line {}: empty key", idx + 1)));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// [`parse_config`] on a file.
pub fn read_config(path: impl AsRef<Path>) -> Result<HashMap<String, String>> {
    parse_config(&fs::read_to_string(path)?)
}

/// Output encoding for [`export_slice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceFormat {
    /// 16-bit binary PGM (`P5`, maxval 65535, big-endian pixels), linearly
    /// rescaled so the slice minimum maps to 0 and the maximum to 65535,
    /// plus a `<path>.meta` sidecar recording the affine scale.
    Pgm,
    /// Plain CSV of the raw values; `f64` round-trips bitwise through the
    /// decimal forms written here.
    Csv,
}

/// Extracts the plane `x_axis = index` and writes it as an image or CSV.
/// Pixel columns run along the lower remaining axis, rows along the higher
/// one (so a `z` slice has `x` across and `y` down).
pub fn export_slice(
    path: impl AsRef<Path>,
    vol: &VolumeImage,
    axis: usize,
    index: usize,
    format: SliceFormat,
) -> Result<()> {
    let grid = vol.grid();
    let n = grid.n;
    if axis > 2 {
        return Err(Error::InvalidInput(format!("axis must be 0, 1, or 2, got {axis}")));
    }
    if index >= n {
        return Err(Error::InvalidInput(format!("slice index {index} out of range for n = {n}")));
    }
    let (col_axis, row_axis) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let value = |row: usize, col: usize| -> f64 {
        let mut idx = [0usize; 3];
        idx[axis] = index;
        idx[col_axis] = col;
        idx[row_axis] = row;
        vol.at(idx[0], idx[1], idx[2])
    };
    match format {
        SliceFormat::Csv => {
            let mut text = String::new();
            for row in 0..n {
                for col in 0..n {
                    if col > 0 {
                        text.push(',');
                    }
                    text.push_str(&format!("{}", value(row, col)));
                }
                text.push('\n');
            }
            fs::write(path, text)?;
        }
        SliceFormat::Pgm => {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for row in 0..n {
                for col in 0..n {
                    lo = lo.min(value(row, col));
                    hi = hi.max(value(row, col));
                }
            }
            let span = hi - lo;
            let mut out = Vec::with_capacity(32 + 2 * n * n);
            out.extend_from_slice(format!("P5\n{n} {n}\n65535\n").as_bytes());
            for row in 0..n {
                for col in 0..n {
                    let t = if span > 0.0 { (value(row, col) - lo) / span } else { 0.0 };
                    let pixel = (t * 65535.0).round() as u16;
                    out.extend_from_slice(&pixel.to_be_bytes());
                }
            }
            fs::write(path.as_ref(), out)?;
            let mut meta_path = path.as_ref().as_os_str().to_owned();
            meta_path.push(".meta");
            let mut meta = fs::File::create(meta_path)?;
            writeln!(meta, "axis = {axis}\nindex = {index}\nn = {n}\nmin = {lo}\nmax = {hi}")?;
        }
    }
    Ok(())
}
