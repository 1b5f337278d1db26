//! Binary snapshots of a [`PhaseState`].
//!
//! Layout, little-endian: `b"LNSP"`, version `u32`, `d_x`, `K`, `N` as `u32`,
//! `r` and `time` as `f64`, then the coefficients as interleaved `(re, im)`
//! `f64` pairs in mode-major, canonical Hermite order.

use std::io::{Read, Write};

use num_complex::Complex64;

use super::state::{Lattice, PhaseState};
use super::SolverError;
use crate::hermite::basis_len;

pub const MAGIC: &[u8; 4] = b"LNSP";
pub const VERSION: u32 = 1;

pub fn write_snapshot<W: Write>(mut w: W, state: &PhaseState) -> Result<(), SolverError> {
    let lat = state.lattice();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    for v in [lat.d_x, lat.k, state.cap()] {
        w.write_all(&(v as u32).to_le_bytes())?;
    }
    w.write_all(&state.r().to_le_bytes())?;
    w.write_all(&state.time().to_le_bytes())?;
    let mut buf = Vec::with_capacity(16 * state.coeffs().len());
    for c in state.coeffs() {
        buf.extend_from_slice(&c.re.to_le_bytes());
        buf.extend_from_slice(&c.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32, SolverError> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64, SolverError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

pub fn read_snapshot<R: Read>(mut r: R) -> Result<PhaseState, SolverError> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(SolverError::Snapshot("bad magic".into()));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(SolverError::Snapshot(format!("unsupported version {version}")));
    }
    let d_x = read_u32(&mut r)? as usize;
    let k = read_u32(&mut r)? as usize;
    let cap = read_u32(&mut r)? as usize;
    if d_x > 3 {
        return Err(SolverError::Snapshot(format!("d_x = {d_x}")));
    }
    let rr = read_f64(&mut r)?;
    let time = read_f64(&mut r)?;
    let lattice = Lattice::new(d_x, k);
    let len = lattice.len() * basis_len(cap);
    let mut coeffs = Vec::with_capacity(len);
    for _ in 0..len {
        let re = read_f64(&mut r)?;
        let im = read_f64(&mut r)?;
        coeffs.push(Complex64::new(re, im));
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(SolverError::Snapshot("trailing bytes".into()));
    }
    PhaseState::from_coeffs(lattice, cap, rr, time, coeffs)
}
