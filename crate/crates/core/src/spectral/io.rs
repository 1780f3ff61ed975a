//! `GNFLD1` binary field files.
//!
//! Layout (little endian): magic `GNFLD1`, `u32 d`, `d × u32 n`, `d × f64 L`, then
//! `n^d` interleaved `(re, im)` `f64` pairs of the physical-space samples, row-major.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::field::{Field, Space};
use super::grid::Grid;
use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};

pub const MAGIC: &[u8; 6] = b"GNFLD1";

pub fn write_field<T: Real, W: Write>(mut w: W, field: &Field<T>) -> Result<()> {
    let f = field.to_physical();
    let grid = f.grid();
    w.write_all(MAGIC)?;
    w.write_all(&(grid.dim() as u32).to_le_bytes())?;
    for _ in 0..grid.dim() {
        w.write_all(&(grid.n() as u32).to_le_bytes())?;
    }
    for l in grid.lengths() {
        w.write_all(&l.to_le_bytes())?;
    }
    for v in f.values() {
        w.write_all(&v.re.as_f64().to_le_bytes())?;
        w.write_all(&v.im.as_f64().to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(f64::from_le_bytes(b))
}

fn truncated(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::UnexpectedEof {
        Error::Format("truncated file".into())
    } else {
        Error::Io(e)
    }
}

pub fn read_field<T: Real, R: Read>(mut r: R) -> Result<Field<T>> {
    let mut magic = [0u8; 6];
    r.read_exact(&mut magic).map_err(truncated)?;
    if &magic != MAGIC {
        return Err(Error::Format("bad magic bytes".into()));
    }
    let dim = read_u32(&mut r)? as usize;
    if !(1..=3).contains(&dim) {
        return Err(Error::Format(format!("dimension {dim} not in 1..=3")));
    }
    let ns = (0..dim).map(|_| read_u32(&mut r)).collect::<Result<Vec<_>>>()?;
    if ns.iter().any(|&n| n != ns[0]) {
        return Err(Error::Format(format!("unequal points per axis {ns:?}")));
    }
    let lengths = (0..dim).map(|_| read_f64(&mut r)).collect::<Result<Vec<_>>>()?;
    let grid = Grid::with_lengths(dim, ns[0] as usize, &lengths)
        .map_err(|e| Error::Format(e.to_string()))?;
    let mut values = Vec::with_capacity(grid.len());
    for _ in 0..grid.len() {
        let re = read_f64(&mut r)?;
        let im = read_f64(&mut r)?;
        values.push(Complex::new(T::lit(re), T::lit(im)));
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(Error::Format("trailing bytes after samples".into()));
    }
    Field::new(grid, values, Space::Physical)
}

pub fn save_field<T: Real>(path: impl AsRef<Path>, field: &Field<T>) -> Result<()> {
    write_field(BufWriter::new(File::create(path)?), field)
}

pub fn load_field<T: Real>(path: impl AsRef<Path>) -> Result<Field<T>> {
    read_field(BufReader::new(File::open(path)?))
}
