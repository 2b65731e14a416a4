//! BQMX binary dumps and CSV plane exports of space-time fields.
//!
//! BQMX layout (all little-endian):
//!
//! | bytes | content                          |
//! |-------|----------------------------------|
//! | 4     | magic `BQMX`                     |
//! | 4     | `u32` version (= 1)              |
//! | 4     | `u32` n                          |
//! | 8     | `f64` L                          |
//! | 4     | `u32` nt                         |
//! | 8     | `f64` dt                         |
//! | 1     | `u8` domain (0 physical, 1 spectral) |
//! | ...   | `nt·n³·8` `f64`: per slice, per node (row-major), `c0re c0im … c3re c3im` |

use std::io::{Read, Write};

use num_complex::Complex64;

use super::{BiquatField, Domain, SpaceTimeField, SpatialGrid};
use crate::biquat::Biquaternion;
use crate::error::{Error, Result};

pub const BQMX_MAGIC: &[u8; 4] = b"BQMX";
pub const BQMX_VERSION: u32 = 1;

pub fn write_bqmx<W: Write>(mut w: W, field: &SpaceTimeField) -> Result<()> {
    let grid = field.grid();
    w.write_all(BQMX_MAGIC)?;
    w.write_all(&BQMX_VERSION.to_le_bytes())?;
    w.write_all(&(grid.n() as u32).to_le_bytes())?;
    w.write_all(&grid.length().to_le_bytes())?;
    w.write_all(&(field.nt() as u32).to_le_bytes())?;
    w.write_all(&field.dt().to_le_bytes())?;
    w.write_all(&[field.domain().tag()])?;
    let mut buf = Vec::with_capacity(grid.len() * 64);
    for slice in field.slices() {
        buf.clear();
        for v in slice.values() {
            for c in v.0 {
                buf.extend_from_slice(&c.re.to_le_bytes());
                buf.extend_from_slice(&c.im.to_le_bytes());
            }
        }
        w.write_all(&buf)?;
    }
    w.flush()?;
    Ok(())
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut b = [0u8; N];
    r.read_exact(&mut b)?;
    Ok(b)
}

pub fn read_bqmx<R: Read>(mut r: R) -> Result<SpaceTimeField> {
    let magic: [u8; 4] = read_array(&mut r)?;
    if &magic != BQMX_MAGIC {
        return Err(Error::Parse(format!("bad magic {magic:?}, expected BQMX")));
    }
    let version = u32::from_le_bytes(read_array(&mut r)?);
    if version != BQMX_VERSION {
        return Err(Error::Parse(format!("unsupported BQMX version {version}")));
    }
    let n = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let length = f64::from_le_bytes(read_array(&mut r)?);
    let nt = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let dt = f64::from_le_bytes(read_array(&mut r)?);
    let [tag] = read_array::<1, _>(&mut r)?;
    let domain = Domain::from_tag(tag)?;
    let grid = SpatialGrid::new(n, length)?;

    let mut bytes = vec![0u8; grid.len() * 64];
    let mut slices = Vec::with_capacity(nt);
    for _ in 0..nt {
        r.read_exact(&mut bytes)?;
        let values = bytes
            .chunks_exact(64)
            .map(|node| {
                Biquaternion(std::array::from_fn(|c| {
                    let re = f64::from_le_bytes(node[16 * c..16 * c + 8].try_into().unwrap());
                    let im = f64::from_le_bytes(node[16 * c + 8..16 * c + 16].try_into().unwrap());
                    Complex64::new(re, im)
                }))
            })
            .collect();
        slices.push(BiquatField::from_values(grid, values, domain)?);
    }
    SpaceTimeField::new(slices, dt)
}

/// Axis-aligned plane through the grid: all nodes with `index` along `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneSelection {
    pub axis: usize,
    pub index: usize,
    pub time: usize,
}

pub const CSV_HEADER: [&str; 12] = [
    "x1", "x2", "x3", "t", "c0re", "c0im", "c1re", "c1im", "c2re", "c2im", "c3re", "c3im",
];

/// Writes the selected planes as CSV rows with columns [`CSV_HEADER`].
pub fn write_csv_planes<W: Write>(w: W, field: &SpaceTimeField, planes: &[PlaneSelection]) -> Result<()> {
    let grid = field.grid();
    for p in planes {
        if p.axis > 2 || p.index >= grid.n() || p.time >= field.nt() {
            return Err(Error::Config(format!("plane selection {p:?} out of range")));
        }
    }
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER).map_err(csv_err)?;
    for p in planes {
        let t = field.time(p.time);
        let slice = field.slice(p.time);
        for (idx, v) in slice.values().iter().enumerate() {
            if grid.unflatten(idx)[p.axis] != p.index {
                continue;
            }
            let x = grid.point(idx);
            let mut row = Vec::with_capacity(12);
            row.extend(x.iter().map(|c| c.to_string()));
            row.push(t.to_string());
            for c in v.0 {
                row.push(c.re.to_string());
                row.push(c.im.to_string());
            }
            out.write_record(&row).map_err(csv_err)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let g = SpatialGrid::new(4, 2.0).unwrap();
        let f = SpaceTimeField::zeros(g, 2, 0.5).unwrap();
        let mut bytes = Vec::new();
        write_bqmx(&mut bytes, &f).unwrap();
        assert_eq!(&bytes[0..4], b"BQMX");
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(bytes[8..12].try_into().unwrap()), 4);
        assert_eq!(f64::from_le_bytes(bytes[12..20].try_into().unwrap()), 2.0);
        assert_eq!(u32::from_le_bytes(bytes[20..24].try_into().unwrap()), 2);
        assert_eq!(f64::from_le_bytes(bytes[24..32].try_into().unwrap()), 0.5);
        assert_eq!(bytes[32], 0);
        assert_eq!(bytes.len(), 33 + 2 * 64 * 8 * 8);
    }

    #[test]
    fn rejects_bad_magic_and_truncation() {
        assert!(matches!(read_bqmx(&b"XXXX\x01\0\0\0"[..]), Err(Error::Parse(_))));
        let g = SpatialGrid::new(4, 2.0).unwrap();
        let f = SpaceTimeField::zeros(g, 2, 0.5).unwrap();
        let mut bytes = Vec::new();
        write_bqmx(&mut bytes, &f).unwrap();
        bytes.truncate(bytes.len() - 1);
        assert!(matches!(read_bqmx(&bytes[..]), Err(Error::Io(_))));
    }

    #[test]
    fn csv_plane_rows() {
        let g = SpatialGrid::new(4, 1.0).unwrap();
        let f = SpaceTimeField::from_fn(g, 3, 0.1, |x, t| {
            Biquaternion::from_scalar(Complex64::new(x[0] + t, x[1]))
        })
        .unwrap();
        let mut out = Vec::new();
        write_csv_planes(
            &mut out,
            &f,
            &[PlaneSelection {
                axis: 2,
                index: 1,
                time: 2,
            }],
        )
        .unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(lines.len(), 1 + 16);
        assert!(lines[1].starts_with("-0.5,-0.5,-0.25,0.2"));
    }
}
