//! Commutant matrix units from path-composed CG isometries.
//!
//! A basis vector of the multiplicity space of an irrep inside the t-th
//! tensor power is a chain of irreps (with copy indices when the group has
//! multiplicities); composing the per-step CG isometries gives the path
//! isometry W, and the commutant matrix units are E = W_T W_S^dagger.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::oracle::Backend;
use crate::repcore::PathLabel;
use crate::C64;

/// A box-addition chain with explicit multiplicity copies (finite groups).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePath {
    /// Irrep index at every step, starting from the trivial irrep.
    pub irreps: Vec<usize>,
    /// Copy index chosen at each step (0-based), length one less.
    pub copies: Vec<usize>,
}

/// All irrep paths of length t through the finite tensor power, grouped by
/// the endpoint irrep.
pub fn enumerate_finite_paths(backend: &Backend, t: usize) -> Result<Vec<FinitePath>> {
    let Backend::Finite { .. } = backend else {
        return Err(Error::Shape("finite paths need a finite backend".into()));
    };
    let trivial = match backend.vacuum_key().irrep {
        crate::oracle::IrrepId::Finite(i) => i,
        _ => unreachable!(),
    };
    let mut paths = vec![FinitePath {
        irreps: vec![trivial],
        copies: Vec::new(),
    }];
    for _ in 0..t {
        let mut next = Vec::new();
        for p in &paths {
            let last = *p.irreps.last().unwrap();
            let table = backend_finite_table(backend, last)?;
            for block in &table.blocks {
                for copy in 0..block.copies.len() {
                    let mut q = p.clone();
                    q.irreps.push(block.mu);
                    q.copies.push(copy);
                    next.push(q);
                }
            }
        }
        paths = next;
    }
    paths.sort();
    Ok(paths)
}

fn backend_finite_table(
    backend: &Backend,
    lambda: usize,
) -> Result<std::sync::Arc<crate::finite::FiniteCgTable>> {
    match backend {
        Backend::Finite { .. } => backend_table_helper(backend, lambda),
        _ => Err(Error::Shape("not a finite backend".into())),
    }
}

fn backend_table_helper(
    backend: &Backend,
    lambda: usize,
) -> Result<std::sync::Arc<crate::finite::FiniteCgTable>> {
    // Reuse the backend's cache through a forward-query table request.
    match backend {
        Backend::Finite { rep, cache } => {
            let mut guard = cache.lock().expect("cache poisoned");
            if let Some(t) = guard.get(&(lambda, false)) {
                return Ok(t.clone());
            }
            let table = std::sync::Arc::new(crate::finite::cg_finite(rep, lambda, false)?);
            guard.insert((lambda, false), table.clone());
            Ok(table)
        }
        _ => unreachable!(),
    }
}

/// Path isometry W: V_lambda -> V^{(x) t} for a finite-group path.
pub fn path_isometry_finite(backend: &Backend, path: &FinitePath) -> Result<DMatrix<C64>> {
    let Backend::Finite { rep, .. } = backend else {
        return Err(Error::Shape("not a finite backend".into()));
    };
    let dr = rep.rep_dim();
    let mut w = DMatrix::<C64>::identity(1, 1);
    for (step, &target) in path.irreps.iter().enumerate().skip(1) {
        let prev = path.irreps[step - 1];
        let table = backend_finite_table(backend, prev)?;
        let block = table
            .block(target)
            .ok_or_else(|| Error::BlockMissing(format!("irrep {target}")))?;
        let c = block
            .copies
            .get(path.copies[step - 1])
            .ok_or_else(|| Error::BlockMissing("copy index".into()))?;
        let id = DMatrix::<C64>::identity(dr, dr);
        w = w.kronecker(&id) * c;
    }
    Ok(w)
}

/// Path isometry W: V_lambda -> (C^d)^{(x) t} for a U(d) box-addition chain,
/// built through the dense tables.
pub fn path_isometry_u(backend: &Backend, path: &PathLabel) -> Result<DMatrix<C64>> {
    let Backend::UDense { d, .. } = backend else {
        return Err(Error::Shape("U path isometries need the dense backend".into()));
    };
    let d = *d as usize;
    let mut w = DMatrix::<C64>::identity(1, 1);
    for (step, hw) in path.diagrams().iter().enumerate().skip(1) {
        let prev = path.diagrams()[step - 1].clone();
        let rows = crate::repcore::trim_trailing_zeros(prev.entries());
        let table = match backend {
            Backend::UDense { .. } => backend_dense_table(backend, &rows)?,
            _ => unreachable!(),
        };
        let block = table.block(hw)?;
        let id = DMatrix::<C64>::identity(d, d);
        w = w.kronecker(&id) * &block.isometry;
    }
    Ok(w)
}

fn backend_dense_table(
    backend: &Backend,
    rows: &[i64],
) -> Result<std::sync::Arc<crate::cg::CgTable>> {
    match backend {
        Backend::UDense { d, cap, cache, .. } => {
            let mut guard = cache.lock().expect("cache poisoned");
            if let Some(t) = guard.get(&(rows.to_vec(), crate::cg::Factor::Defining)) {
                return Ok(t.clone());
            }
            let mut entries = rows.to_vec();
            entries.resize(*d as usize, 0);
            let hw = crate::repcore::HighestWeight::new(entries)?;
            let table = std::sync::Arc::new(crate::cg::cg_dense_capped(
                &hw,
                crate::cg::Factor::Defining,
                *cap,
            )?);
            guard.insert((rows.to_vec(), crate::cg::Factor::Defining), table.clone());
            Ok(table)
        }
        _ => Err(Error::Shape("not a dense backend".into())),
    }
}

/// Matrix unit E^lambda_{T,S} = W_T W_S^dagger on (C^d)^{(x) t}.
pub fn matrix_unit_u(
    backend: &Backend,
    path_t: &PathLabel,
    path_s: &PathLabel,
    cap: usize,
) -> Result<DMatrix<C64>> {
    let wt = path_isometry_u(backend, path_t)?;
    let ws = path_isometry_u(backend, path_s)?;
    if wt.nrows() != ws.nrows() || wt.ncols() != ws.ncols() {
        return Err(Error::DimensionMismatch(
            "paths end at different irreps".into(),
        ));
    }
    if wt.nrows() > cap {
        return Err(Error::CapExceeded {
            size: wt.nrows() as u128,
            cap: cap as u128,
        });
    }
    Ok(&wt * ws.adjoint())
}

/// Matrix unit E^lambda_{T,S} = W_T W_S^dagger on V_R^{(x) t}.
pub fn matrix_unit_finite(
    backend: &Backend,
    path_t: &FinitePath,
    path_s: &FinitePath,
    cap: usize,
) -> Result<DMatrix<C64>> {
    if path_t.irreps.last() != path_s.irreps.last() {
        return Err(Error::DimensionMismatch(
            "paths end at different irreps".into(),
        ));
    }
    let wt = path_isometry_finite(backend, path_t)?;
    let ws = path_isometry_finite(backend, path_s)?;
    if wt.nrows() > cap {
        return Err(Error::CapExceeded {
            size: wt.nrows() as u128,
            cap: cap as u128,
        });
    }
    Ok(&wt * ws.adjoint())
}
