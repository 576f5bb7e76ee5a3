//! `LPVV0001` binary field snapshots.
//!
//! Layout: a 64-byte header (magic, `N`, component count, `t`, `ν`, seed,
//! 16 reserved zero bytes; integers and doubles little-endian) followed by
//! each component's physical samples, row-major, as little-endian doubles.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::Grid2D;

pub const MAGIC: &[u8; 8] = b"LPVV0001";
pub const HEADER_LEN: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SnapshotHeader {
    pub n: u64,
    pub components: u64,
    pub t: f64,
    pub nu: f64,
    pub seed: u64,
}

pub fn write_snapshot<W: Write>(
    mut out: W,
    components: &[&SpectralField],
    t: f64,
    nu: f64,
    seed: u64,
) -> Result<()> {
    let first = components
        .first()
        .ok_or_else(|| Error::Precondition("snapshot needs at least one component".into()))?;
    for c in components {
        first.grid().ensure_same(c.grid())?;
    }
    let mut header = [0u8; HEADER_LEN];
    header[..8].copy_from_slice(MAGIC);
    header[8..16].copy_from_slice(&(first.grid().n() as u64).to_le_bytes());
    header[16..24].copy_from_slice(&(components.len() as u64).to_le_bytes());
    header[24..32].copy_from_slice(&t.to_le_bytes());
    header[32..40].copy_from_slice(&nu.to_le_bytes());
    header[40..48].copy_from_slice(&seed.to_le_bytes());
    out.write_all(&header)?;
    let mut body = Vec::with_capacity(components.len() * first.grid().len() * 8);
    for c in components {
        for v in c.to_physical() {
            body.extend_from_slice(&v.to_le_bytes());
        }
    }
    out.write_all(&body)?;
    Ok(())
}

fn word(bytes: &[u8], at: usize) -> [u8; 8] {
    bytes[at..at + 8].try_into().expect("8-byte slice")
}

pub fn read_snapshot<R: Read>(mut input: R) -> Result<(SnapshotHeader, Vec<SpectralField>)> {
    let mut header = [0u8; HEADER_LEN];
    input
        .read_exact(&mut header)
        .map_err(|e| Error::Snapshot(format!("truncated header: {e}")))?;
    if &header[..8] != MAGIC {
        return Err(Error::Snapshot("bad magic".into()));
    }
    if header[48..].iter().any(|&b| b != 0) {
        return Err(Error::Snapshot("reserved bytes are not zero".into()));
    }
    let h = SnapshotHeader {
        n: u64::from_le_bytes(word(&header, 8)),
        components: u64::from_le_bytes(word(&header, 16)),
        t: f64::from_le_bytes(word(&header, 24)),
        nu: f64::from_le_bytes(word(&header, 32)),
        seed: u64::from_le_bytes(word(&header, 40)),
    };
    if h.components == 0 || h.components > 4 {
        return Err(Error::Snapshot(format!("unsupported component count {}", h.components)));
    }
    let grid = Grid2D::new(h.n as usize).map_err(|e| Error::Snapshot(e.to_string()))?;
    let mut fields = Vec::with_capacity(h.components as usize);
    let mut buf = vec![0u8; grid.len() * 8];
    for _ in 0..h.components {
        input
            .read_exact(&mut buf)
            .map_err(|e| Error::Snapshot(format!("truncated body: {e}")))?;
        let samples: Vec<f64> = buf.chunks_exact(8).map(|b| f64::from_le_bytes(b.try_into().unwrap())).collect();
        fields.push(SpectralField::from_physical(&grid, &samples)?);
    }
    let mut rest = [0u8; 1];
    if input.read(&mut rest)? != 0 {
        return Err(Error::Snapshot("trailing bytes after body".into()));
    }
    Ok((h, fields))
}
