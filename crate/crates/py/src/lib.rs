//! Python bindings: the main types and operations of the compressed-oracle
//! simulator, importable as `cgoracle`.

use nalgebra::DMatrix;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cgoracle::cg::cg_fast_all_blocks;
use cgoracle::error::Error;
use cgoracle::finite::builtin_group;
use cgoracle::gtcompress::{self, CompressedGt};
use cgoracle::haar::{self, EntryMoment};
use cgoracle::oracle::{moment_tensor, Backend, MomentSpec, OracleState, QueryIo};
use cgoracle::query::QueryType;
use cgoracle::repcore::{self, HighestWeight};
use cgoracle::twirl;
use cgoracle::C64;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_backend(name: &str, d: u32) -> PyResult<Backend> {
    match name {
        "u-fast" => Ok(Backend::u_fast(d)),
        "u-dense" => Ok(Backend::u_dense(d)),
        other => Ok(Backend::finite(builtin_group(other).map_err(err)?)),
    }
}

/// Weyl dimension of the U(d) irrep with the given partition rows.
#[pyfunction]
fn weyl_dimension(parts: Vec<i64>, d: u64) -> PyResult<String> {
    Ok(repcore::weyl_dimension_trimmed(&parts, d).to_string())
}

/// All Gelfand-Tsetlin patterns with the given top row (padded to length d).
#[pyfunction]
fn enumerate_gt(parts: Vec<i64>, d: usize) -> PyResult<Vec<Vec<Vec<i64>>>> {
    let hw = HighestWeight::from_partition(&parts, d).map_err(err)?;
    Ok(repcore::enumerate_gt(&hw)
        .map_err(err)?
        .into_iter()
        .map(|p| p.rows().to_vec())
        .collect())
}

/// Interlacing check for a triangular pattern.
#[pyfunction]
fn validate_gt(rows: Vec<Vec<i64>>) -> PyResult<bool> {
    match repcore::GtPattern::new(rows) {
        Ok(p) => Ok(p.is_valid()),
        Err(_) => Ok(false),
    }
}

/// Compress a full pattern into (support rows, alphabet).
#[pyfunction]
fn compress(rows: Vec<Vec<i64>>) -> PyResult<(Vec<Vec<i64>>, Vec<u32>)> {
    let p = repcore::GtPattern::new(rows).map_err(err)?;
    let c = gtcompress::compress(&p).map_err(err)?;
    Ok((c.mtilde, c.p))
}

/// Inverse of `compress`.
#[pyfunction]
fn decompress(mtilde: Vec<Vec<i64>>, p: Vec<u32>, d: usize) -> PyResult<Vec<Vec<i64>>> {
    let c = CompressedGt { mtilde, p };
    Ok(gtcompress::decompress(&c, d).map_err(err)?.rows().to_vec())
}

/// Sparse forward CG coefficients on a compressed pattern: returns
/// (box_row, mtilde', p', value) per chain.
#[pyfunction]
fn cg_fast(
    d: u32,
    mtilde: Vec<Vec<i64>>,
    p: Vec<u32>,
    x: u32,
) -> PyResult<Vec<(usize, Vec<Vec<i64>>, Vec<u32>, f64)>> {
    let m = CompressedGt { mtilde, p };
    Ok(cg_fast_all_blocks(d, &m, x)
        .map_err(err)?
        .into_iter()
        .map(|e| (e.row, e.label.mtilde, e.label.p, e.value.to_f64()))
        .collect())
}

/// Symmetric-group character by the Murnaghan-Nakayama recursion.
#[pyfunction]
fn sn_character(lambda: Vec<i64>, class: Vec<i64>) -> PyResult<i64> {
    Ok(haar::sn_character(&lambda, &class))
}

/// Exact Weingarten value as (numerator, denominator) strings plus a float.
#[pyfunction]
fn weingarten(class: Vec<usize>, d: u32, t: usize) -> PyResult<(String, String, f64)> {
    let v = haar::weingarten(&class, d, t).map_err(err)?;
    Ok((
        v.numer().to_string(),
        v.denom().to_string(),
        haar::rational_to_f64(&v),
    ))
}

/// Haar moment of a product of U and conj(U) entries (0-based index pairs).
#[pyfunction]
fn haar_moment(u: Vec<(u32, u32)>, u_conj: Vec<(u32, u32)>, d: u32) -> PyResult<f64> {
    let spec = EntryMoment { u, u_conj };
    Ok(haar::rational_to_f64(
        &haar::haar_moment_unitary(&spec, d).map_err(err)?,
    ))
}

/// Oracle moment for a typed script: backend is "u-fast", "u-dense", or a
/// finite group name; returns (re, im).
#[pyfunction]
fn moment(
    backend: &str,
    d: u32,
    types: &str,
    xy: Vec<(u32, u32)>,
    xy_hat: Vec<(u32, u32)>,
) -> PyResult<(f64, f64)> {
    let b = parse_backend(backend, d)?;
    let spec = MomentSpec::parse(types).map_err(err)?;
    let v = moment_tensor(&b, &spec, &xy, &xy_hat).map_err(err)?;
    Ok((v.re, v.im))
}

/// eta(delta) = d^2/(d^2-1) delta.
#[pyfunction]
fn eta_of_delta(delta: f64, d: usize) -> PyResult<f64> {
    twirl::eta_of_delta(delta, d).map_err(err)
}

/// Verifies the twirl theorem for a named comb ("identity", "through",
/// "perfect") at d = 2; returns (delta, eta, dev_oracle_vs_target,
/// dev_reference_vs_target, dev_oracle_vs_reference).
#[pyfunction]
fn twirl_report(comb: &str, d: usize) -> PyResult<(f64, f64, f64, f64, f64)> {
    let comb = match comb {
        "identity" => twirl::Comb::identity_comb(d),
        "through" => twirl::Comb::through_comb(d),
        "perfect" => twirl::Comb::PerfectInverterStub { d },
        other => return Err(PyValueError::new_err(format!("unknown comb {other}"))),
    };
    let s = 1.0 / 2f64.sqrt();
    let us = vec![
        DMatrix::<C64>::identity(d, d),
        DMatrix::from_row_slice(2, 2, &[
            C64::new(s, 0.0),
            C64::new(s, 0.0),
            C64::new(s, 0.0),
            C64::new(-s, 0.0),
        ]),
    ];
    let backend = Backend::u_fast(d as u32);
    let r = twirl::verify_twirl(&comb, &us, &backend).map_err(err)?;
    Ok((
        r.delta,
        r.eta,
        r.max_dev_oracle_vs_target,
        r.max_dev_reference_vs_target,
        r.max_dev_oracle_vs_reference,
    ))
}

/// A purified compressed-oracle state with system registers.
#[pyclass]
struct Oracle {
    state: OracleState,
}

#[pymethods]
impl Oracle {
    /// backend: "u-fast", "u-dense", or a finite group name ("s3", "z5", ...).
    #[new]
    fn new(backend: &str, d: u32) -> PyResult<Self> {
        Ok(Self {
            state: OracleState::vacuum(parse_backend(backend, d)?),
        })
    }

    /// Appends a system register holding a basis value; returns its index.
    fn add_register(&mut self, dim: u32, value: u32) -> PyResult<usize> {
        self.state.add_register(dim, value).map_err(err)
    }

    /// Applies a query ("F", "C", "T", "I") wired through a register.
    fn apply(&mut self, qtype: &str, register: usize) -> PyResult<()> {
        let qt = QueryType::parse(qtype.chars().next().unwrap_or('?')).map_err(err)?;
        self.state
            .apply_oracle(qt, QueryIo::Register(register))
            .map_err(err)
    }

    /// Applies a query at fixed input/output values (partial matrix element).
    fn apply_fixed(&mut self, qtype: &str, x: u32, y: u32) -> PyResult<()> {
        let qt = QueryType::parse(qtype.chars().next().unwrap_or('?')).map_err(err)?;
        self.state
            .apply_oracle(qt, QueryIo::Fixed { x, y })
            .map_err(err)
    }

    fn norm_sqr(&self) -> f64 {
        self.state.norm_sqr()
    }

    fn num_keys(&self) -> usize {
        self.state.amps.len()
    }

    /// System density matrix after tracing out the chain registers, as
    /// nested lists of (re, im).
    fn trace_out(&self) -> PyResult<Vec<Vec<(f64, f64)>>> {
        let rho = self.state.trace_out_aux(1 << 12).map_err(err)?;
        Ok((0..rho.nrows())
            .map(|i| (0..rho.ncols()).map(|j| (rho[(i, j)].re, rho[(i, j)].im)).collect())
            .collect())
    }
}

#[pymodule]
#[pyo3(name = "cgoracle")]
fn cgoracle_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Oracle>()?;
    m.add_function(wrap_pyfunction!(weyl_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_gt, m)?)?;
    m.add_function(wrap_pyfunction!(validate_gt, m)?)?;
    m.add_function(wrap_pyfunction!(compress, m)?)?;
    m.add_function(wrap_pyfunction!(decompress, m)?)?;
    m.add_function(wrap_pyfunction!(cg_fast, m)?)?;
    m.add_function(wrap_pyfunction!(sn_character, m)?)?;
    m.add_function(wrap_pyfunction!(weingarten, m)?)?;
    m.add_function(wrap_pyfunction!(haar_moment, m)?)?;
    m.add_function(wrap_pyfunction!(moment, m)?)?;
    m.add_function(wrap_pyfunction!(eta_of_delta, m)?)?;
    m.add_function(wrap_pyfunction!(twirl_report, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
