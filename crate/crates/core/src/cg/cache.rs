//! Optional on-disk cache of dense CG tables: versioned binary files,
//! content-addressed by (d, lambda, factor, convention tag).

use std::path::{Path, PathBuf};

use nalgebra::DMatrix;

use crate::cg::dense::{cg_dense_capped, CgBlock, CgTable, Factor};
use crate::codec::{fnv1a, Reader, Writer};
use crate::error::{Error, Result};
use crate::repcore::{enumerate_gt_capped, HighestWeight};
use crate::C64;

const MAGIC: u32 = 0x4347_5442; // "CGTB"
const VERSION: u32 = 1;

/// Phase/ordering convention identifier baked into every cache file; bump it
/// when the engine's convention changes so stale files are rejected.
pub const CONVENTION_TAG: &str = "gt-lex-lead-positive-1";

/// Deterministic cache file name for one table.
pub fn cache_file_name(hw: &HighestWeight, factor: Factor) -> String {
    let mut w = Writer::new();
    w.u64(hw.d() as u64);
    w.i64_seq(hw.entries());
    w.str(factor.tag());
    w.str(CONVENTION_TAG);
    format!("cgtable-{:016x}.bin", fnv1a(&w.finish()))
}

fn write_matrix(w: &mut Writer, m: &DMatrix<C64>) {
    w.u64(m.nrows() as u64);
    w.u64(m.ncols() as u64);
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            w.f64(m[(r, c)].re);
            w.f64(m[(r, c)].im);
        }
    }
}

fn read_matrix(r: &mut Reader) -> Result<DMatrix<C64>> {
    let rows = r.u64()? as usize;
    let cols = r.u64()? as usize;
    let mut m = DMatrix::<C64>::zeros(rows, cols);
    for c in 0..cols {
        for row in 0..rows {
            let re = r.f64()?;
            let im = r.f64()?;
            m[(row, c)] = C64::new(re, im);
        }
    }
    Ok(m)
}

/// Serialises a table (isometries only; pattern lists are re-enumerated on
/// load, which is cheap and keeps the format small).
pub fn table_to_bytes(table: &CgTable) -> Vec<u8> {
    let mut w = Writer::new();
    w.u32(MAGIC);
    w.u32(VERSION);
    w.str(CONVENTION_TAG);
    w.u64(table.d() as u64);
    w.i64_seq(table.lambda.entries());
    w.str(table.factor.tag());
    w.u64(table.blocks.len() as u64);
    for block in &table.blocks {
        w.i64_seq(block.mu.entries());
        write_matrix(&mut w, &block.isometry);
    }
    w.finish()
}

/// Restores a table written by [`table_to_bytes`].
pub fn table_from_bytes(bytes: &[u8]) -> Result<CgTable> {
    let mut r = Reader::new(bytes);
    if r.u32()? != MAGIC {
        return Err(Error::Codec("bad CG table magic".into()));
    }
    if r.u32()? != VERSION {
        return Err(Error::Codec("unsupported CG table version".into()));
    }
    if r.str()? != CONVENTION_TAG {
        return Err(Error::Codec("convention tag mismatch".into()));
    }
    let _d = r.u64()? as usize;
    let lambda = HighestWeight::new(r.i64_seq()?)?;
    let factor = match r.str()?.as_str() {
        "defining" => Factor::Defining,
        "dual-defining" => Factor::DualDefining,
        other => return Err(Error::Codec(format!("unknown factor {other}"))),
    };
    let nblocks = r.u64()? as usize;
    let mut blocks = Vec::with_capacity(nblocks);
    for _ in 0..nblocks {
        let mu = HighestWeight::new(r.i64_seq()?)?;
        let isometry = read_matrix(&mut r)?;
        let mu_patterns = enumerate_gt_capped(&mu, u128::MAX >> 1)?;
        if mu_patterns.len() != isometry.ncols() {
            return Err(Error::Codec("block dimension mismatch".into()));
        }
        blocks.push(CgBlock {
            mu,
            mu_patterns,
            isometry,
        });
    }
    if !r.done() {
        return Err(Error::Codec("trailing bytes in CG table".into()));
    }
    let lambda_patterns = enumerate_gt_capped(&lambda, u128::MAX >> 1)?;
    Ok(CgTable {
        lambda,
        factor,
        lambda_patterns,
        blocks,
    })
}

/// Loads the table from `dir` when present, otherwise builds and stores it.
/// With `dir = None` this is a plain build.
pub fn load_or_build(
    dir: Option<&Path>,
    hw: &HighestWeight,
    factor: Factor,
    cap: u128,
) -> Result<CgTable> {
    let path: Option<PathBuf> = dir.map(|d| d.join(cache_file_name(hw, factor)));
    if let Some(p) = &path {
        if let Ok(bytes) = std::fs::read(p) {
            if let Ok(table) = table_from_bytes(&bytes) {
                if table.lambda == *hw && table.factor == factor {
                    return Ok(table);
                }
            }
            // Corrupt or mismatched file: rebuild below and overwrite.
        }
    }
    let table = cg_dense_capped(hw, factor, cap)?;
    if let Some(p) = &path {
        if let Some(parent) = p.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(p, table_to_bytes(&table))?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bytes_round_trip() {
        let hw = HighestWeight::new(vec![2, 1, 0]).unwrap();
        let table = cg_dense_capped(&hw, Factor::Defining, 1 << 20).unwrap();
        let bytes = table_to_bytes(&table);
        let back = table_from_bytes(&bytes).unwrap();
        assert_eq!(back.lambda, table.lambda);
        assert_eq!(back.blocks.len(), table.blocks.len());
        for (a, b) in back.blocks.iter().zip(&table.blocks) {
            assert_eq!(a.mu, b.mu);
            let dev: f64 = (&a.isometry - &b.isometry)
                .iter()
                .map(|v| v.norm_sqr())
                .sum();
            assert!(dev < 1e-28);
        }
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("cgcache-test-{}", std::process::id()));
        let hw = HighestWeight::new(vec![1, 0]).unwrap();
        let t1 = load_or_build(Some(&dir), &hw, Factor::Defining, 1 << 20).unwrap();
        let file = dir.join(cache_file_name(&hw, Factor::Defining));
        assert!(file.exists());
        let t2 = load_or_build(Some(&dir), &hw, Factor::Defining, 1 << 20).unwrap();
        assert_eq!(t1.blocks.len(), t2.blocks.len());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn different_factors_get_different_files() {
        let hw = HighestWeight::new(vec![1, 0]).unwrap();
        assert_ne!(
            cache_file_name(&hw, Factor::Defining),
            cache_file_name(&hw, Factor::DualDefining)
        );
    }
}
