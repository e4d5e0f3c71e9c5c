//! The compressed-oracle state machine.
//!
//! The purified oracle state is a sparse amplitude map over keys
//! (irrep label, out-chain basis label, in-chain basis label, system word).
//! Applying an oracle couples the in-chain with the query input through a
//! (dual) CG table, and the out-chain with the emitted output through the
//! bent table carrying the dimension-ratio factor; the multiplicity index is
//! consumed jointly, which keeps both chains on the same irrep. Tracing out
//! the chain registers reproduces exact Haar moments of the represented
//! group.

pub mod moments;
pub mod snapshot;
pub mod units;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use crate::cg::{CgTable, Factor};
use crate::error::{Error, Result};
use crate::finite::{cg_finite, FiniteCgTable, FiniteGroupRep};
use crate::gtcompress::CompressedGt;
use crate::query::QueryType;
use crate::repcore::{dim_ratio_add_box_trimmed, trim_trailing_zeros, HighestWeight};
use crate::C64;

pub use moments::{commutant_moment, moment_tensor, MomentSpec};
pub use units::{enumerate_finite_paths, matrix_unit_finite, matrix_unit_u, FinitePath};

/// Irrep label in a backend-agnostic form: trimmed U(d) weight entries or a
/// finite-group irrep index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrepId {
    /// Highest-weight entries with trailing zeros trimmed.
    Weight(Vec<i64>),
    /// Index into the finite group's irrep list.
    Finite(usize),
}

/// Basis label of an irrep.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Compressed GT pattern (efficient U(d) backend).
    Compressed(CompressedGt),
    /// Index into the deterministic basis order (dense backends).
    Index(u32),
}

/// A sparse state key: shared irrep, out-chain label, in-chain label, and the
/// system basis word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub irrep: IrrepId,
    pub m_out: Label,
    pub m_in: Label,
    pub sys: Vec<u32>,
}

type DenseCache = Mutex<BTreeMap<(Vec<i64>, Factor), Arc<CgTable>>>;
type FiniteCache = Mutex<BTreeMap<(usize, bool), Arc<FiniteCgTable>>>;

/// The three oracle engines.
#[derive(Clone)]
pub enum Backend {
    /// Compressed Gelfand-Tsetlin engine: forward queries (and inverse
    /// queries that remove existing boxes) on U(d), cost polylog in d.
    UFast { d: u32 },
    /// Dense numeric engine for U(d): all four query types, desk scale.
    UDense {
        d: u32,
        cap: u128,
        cache: Arc<DenseCache>,
        /// Optional on-disk table cache directory.
        disk: Option<std::path::PathBuf>,
    },
    /// Exact finite-group engine: all four query types.
    Finite {
        rep: Arc<FiniteGroupRep>,
        cache: Arc<FiniteCache>,
    },
}

impl std::fmt::Debug for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::UFast { d } => write!(f, "UFast(d={d})"),
            Backend::UDense { d, .. } => write!(f, "UDense(d={d})"),
            Backend::Finite { rep, .. } => write!(f, "Finite({})", rep.name),
        }
    }
}

impl Backend {
    pub fn u_fast(d: u32) -> Self {
        Backend::UFast { d }
    }

    pub fn u_dense(d: u32) -> Self {
        Backend::UDense {
            d,
            cap: crate::repcore::DEFAULT_ENUM_CAP,
            cache: Arc::new(Mutex::new(BTreeMap::new())),
            disk: None,
        }
    }

    /// Dense backend with an on-disk table cache (content-addressed files).
    pub fn u_dense_with_cache(d: u32, dir: std::path::PathBuf) -> Self {
        Backend::UDense {
            d,
            cap: crate::repcore::DEFAULT_ENUM_CAP,
            cache: Arc::new(Mutex::new(BTreeMap::new())),
            disk: Some(dir),
        }
    }

    pub fn finite(rep: FiniteGroupRep) -> Self {
        Backend::Finite {
            rep: Arc::new(rep),
            cache: Arc::new(Mutex::new(BTreeMap::new())),
        }
    }

    /// Work-register dimension of one query (d, or the finite rep dimension).
    pub fn work_dim(&self) -> u32 {
        match self {
            Backend::UFast { d } | Backend::UDense { d, .. } => *d,
            Backend::Finite { rep, .. } => rep.rep_dim() as u32,
        }
    }

    pub fn vacuum_key(&self) -> Key {
        let irrep = match self {
            Backend::UFast { .. } | Backend::UDense { .. } => IrrepId::Weight(Vec::new()),
            Backend::Finite { rep, .. } => {
                // The trivial irrep: the one whose character is identically 1.
                let idx = rep
                    .irreps
                    .iter()
                    .position(|i| {
                        i.dim() == 1
                            && (0..rep.order())
                                .all(|g| (i.character(g) - C64::new(1.0, 0.0)).norm() < 1e-9)
                    })
                    .expect("complete irrep set contains the trivial irrep");
                IrrepId::Finite(idx)
            }
        };
        let label = match self {
            Backend::UFast { .. } => Label::Compressed(CompressedGt::empty()),
            _ => Label::Index(0),
        };
        Key {
            irrep,
            m_out: label.clone(),
            m_in: label,
            sys: Vec::new(),
        }
    }

    fn dense_table(&self, rows: &[i64], factor: Factor) -> Result<Arc<CgTable>> {
        let Backend::UDense { d, cap, cache, disk } = self else {
            unreachable!("dense_table on non-dense backend");
        };
        let mut guard = cache.lock().expect("cache poisoned");
        if let Some(t) = guard.get(&(rows.to_vec(), factor)) {
            return Ok(t.clone());
        }
        let mut entries = rows.to_vec();
        if entries.len() > *d as usize {
            return Err(Error::Shape(format!(
                "irrep {entries:?} does not fit d = {d}"
            )));
        }
        entries.resize(*d as usize, 0);
        let hw = HighestWeight::new(entries)?;
        let table = Arc::new(crate::cg::cache::load_or_build(
            disk.as_deref(),
            &hw,
            factor,
            *cap,
        )?);
        guard.insert((rows.to_vec(), factor), table.clone());
        Ok(table)
    }

    fn finite_table(&self, lambda: usize, dual: bool) -> Result<Arc<FiniteCgTable>> {
        let Backend::Finite { rep, cache } = self else {
            unreachable!("finite_table on non-finite backend");
        };
        let mut guard = cache.lock().expect("cache poisoned");
        if let Some(t) = guard.get(&(lambda, dual)) {
            return Ok(t.clone());
        }
        let table = Arc::new(cg_finite(rep, lambda, dual)?);
        guard.insert((lambda, dual), table.clone());
        Ok(table)
    }
}

/// How one query touches the system: wired through an existing register or
/// evaluated as a partial matrix element at fixed basis values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryIo {
    /// The query consumes system register `reg` as input and writes its
    /// output there.
    Register(usize),
    /// Fixed input and output values (0-based); no system register involved.
    Fixed { x: u32, y: u32 },
}

/// The purified compressed-oracle state.
#[derive(Debug, Clone)]
pub struct OracleState {
    pub backend: Backend,
    /// Dimensions of the system registers.
    pub sys_dims: Vec<u32>,
    pub amps: BTreeMap<Key, C64>,
}

impl OracleState {
    /// |empty> on the chain registers, no system registers.
    pub fn vacuum(backend: Backend) -> Self {
        let key = backend.vacuum_key();
        let mut amps = BTreeMap::new();
        amps.insert(key, C64::new(1.0, 0.0));
        Self {
            backend,
            sys_dims: Vec::new(),
            amps,
        }
    }

    /// Appends a system register holding the basis state `value`.
    pub fn add_register(&mut self, dim: u32, value: u32) -> Result<usize> {
        if value >= dim {
            return Err(Error::IndexOutOfRange(format!(
                "register value {value} outside [0,{dim})"
            )));
        }
        self.sys_dims.push(dim);
        let mut next = BTreeMap::new();
        for (mut key, amp) in std::mem::take(&mut self.amps) {
            key.sys.push(value);
            next.insert(key, amp);
        }
        self.amps = next;
        Ok(self.sys_dims.len() - 1)
    }

    /// Appends a system register in the given sparse superposition.
    pub fn add_register_state(&mut self, dim: u32, values: &[(u32, C64)]) -> Result<usize> {
        if values.iter().any(|&(v, _)| v >= dim) {
            return Err(Error::IndexOutOfRange("register value out of range".into()));
        }
        self.sys_dims.push(dim);
        let mut next = BTreeMap::new();
        for (key, amp) in std::mem::take(&mut self.amps) {
            for &(v, a) in values {
                let mut k = key.clone();
                k.sys.push(v);
                *next.entry(k).or_insert(C64::new(0.0, 0.0)) += amp * a;
            }
        }
        self.amps = next;
        Ok(self.sys_dims.len() - 1)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    /// Drops amplitudes below the sparsity floor.
    pub fn prune(&mut self, floor: f64) {
        self.amps.retain(|_, a| a.norm() > floor);
    }

    /// Applies one oracle query. Register mode preserves the norm; fixed mode
    /// computes a partial matrix element.
    pub fn apply_oracle(&mut self, qtype: QueryType, io: QueryIo) -> Result<()> {
        if let QueryIo::Register(reg) = io {
            let dim = *self
                .sys_dims
                .get(reg)
                .ok_or_else(|| Error::IndexOutOfRange(format!("register {reg}")))?;
            if dim != self.backend.work_dim() {
                return Err(Error::DimensionMismatch(format!(
                    "register dim {dim} vs work dim {}",
                    self.backend.work_dim()
                )));
            }
        }
        let backend = self.backend.clone();
        let mut next: BTreeMap<Key, C64> = BTreeMap::new();
        for (key, amp) in &self.amps {
            let x = match io {
                QueryIo::Register(reg) => key.sys[reg],
                QueryIo::Fixed { x, .. } => x,
            };
            let y_filter = match io {
                QueryIo::Register(_) => None,
                QueryIo::Fixed { y, .. } => Some(y),
            };
            for t in transitions(&backend, key, qtype, x, y_filter)? {
                let mut sys = key.sys.clone();
                if let QueryIo::Register(reg) = io {
                    sys[reg] = t.y;
                }
                let k = Key {
                    irrep: t.irrep,
                    m_out: t.m_out,
                    m_in: t.m_in,
                    sys,
                };
                *next.entry(k).or_insert(C64::new(0.0, 0.0)) += amp * t.coeff;
            }
        }
        self.amps = next;
        self.prune(1e-14);
        Ok(())
    }

    /// Applies a dense operator to the selected system registers.
    pub fn apply_system_operator(&mut self, op: &DMatrix<C64>, regs: &[usize]) -> Result<()> {
        let mut dim: usize = 1;
        for &r in regs {
            dim *= *self
                .sys_dims
                .get(r)
                .ok_or_else(|| Error::IndexOutOfRange(format!("register {r}")))?
                as usize;
        }
        if op.nrows() != dim || op.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{}, registers give {dim}",
                op.nrows(),
                op.ncols()
            )));
        }
        let mut next: BTreeMap<Key, C64> = BTreeMap::new();
        for (key, amp) in &self.amps {
            // Mixed-radix input index over the selected registers.
            let mut in_idx = 0usize;
            for &r in regs {
                in_idx = in_idx * self.sys_dims[r] as usize + key.sys[r] as usize;
            }
            for out_idx in 0..dim {
                let c = op[(out_idx, in_idx)];
                if c.norm() <= 1e-15 {
                    continue;
                }
                let mut k = key.clone();
                let mut rem = out_idx;
                for &r in regs.iter().rev() {
                    let base = self.sys_dims[r] as usize;
                    k.sys[r] = (rem % base) as u32;
                    rem /= base;
                }
                *next.entry(k).or_insert(C64::new(0.0, 0.0)) += amp * c;
            }
        }
        self.amps = next;
        self.prune(1e-14);
        Ok(())
    }

    /// Appends several system registers in a joint (possibly entangled)
    /// sparse state; returns the indices of the new registers.
    pub fn add_registers_state(
        &mut self,
        dims: &[u32],
        values: &[(Vec<u32>, C64)],
    ) -> Result<Vec<usize>> {
        for (word, _) in values {
            if word.len() != dims.len() {
                return Err(Error::Shape("word length must match dims".into()));
            }
            if word.iter().zip(dims).any(|(&v, &d)| v >= d) {
                return Err(Error::IndexOutOfRange("register value out of range".into()));
            }
        }
        let first = self.sys_dims.len();
        self.sys_dims.extend_from_slice(dims);
        let mut next = BTreeMap::new();
        for (key, amp) in std::mem::take(&mut self.amps) {
            for (word, a) in values {
                let mut k = key.clone();
                k.sys.extend_from_slice(word);
                *next.entry(k).or_insert(C64::new(0.0, 0.0)) += amp * a;
            }
        }
        self.amps = next;
        Ok((first..self.sys_dims.len()).collect())
    }

    /// Applies a channel given by Kraus operators to the joint space of
    /// `in_regs` (in the listed order), replacing them with new registers of
    /// dimensions `out_dims` plus a Stinespring environment register holding
    /// the Kraus index. Returns (output register indices, environment index);
    /// all other registers keep their relative order but shift down.
    pub fn apply_channel(
        &mut self,
        kraus: &[DMatrix<C64>],
        in_regs: &[usize],
        out_dims: &[u32],
    ) -> Result<(Vec<usize>, usize)> {
        if kraus.is_empty() {
            return Err(Error::Shape("channel needs at least one Kraus operator".into()));
        }
        let din: usize = in_regs
            .iter()
            .map(|&r| self.sys_dims[r] as usize)
            .product();
        let dout: usize = out_dims.iter().map(|&d| d as usize).product();
        for k in kraus {
            if k.nrows() != dout || k.ncols() != din {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator is {}x{}, expected {dout}x{din}",
                    k.nrows(),
                    k.ncols()
                )));
            }
        }
        let keep: Vec<usize> = (0..self.sys_dims.len())
            .filter(|r| !in_regs.contains(r))
            .collect();
        let mut new_dims: Vec<u32> = keep.iter().map(|&r| self.sys_dims[r]).collect();
        let out_first = new_dims.len();
        new_dims.extend_from_slice(out_dims);
        let env_index = new_dims.len();
        new_dims.push(kraus.len() as u32);
        let mut next: BTreeMap<Key, C64> = BTreeMap::new();
        for (key, amp) in &self.amps {
            let mut in_idx = 0usize;
            for &r in in_regs {
                in_idx = in_idx * self.sys_dims[r] as usize + key.sys[r] as usize;
            }
            let base: Vec<u32> = keep.iter().map(|&r| key.sys[r]).collect();
            for (ki, k) in kraus.iter().enumerate() {
                for out_idx in 0..dout {
                    let c = k[(out_idx, in_idx)];
                    if c.norm() <= 1e-15 {
                        continue;
                    }
                    let mut sys = base.clone();
                    let mut rem = out_idx;
                    let mut word = vec![0u32; out_dims.len()];
                    for (slot, &dim) in out_dims.iter().enumerate().rev() {
                        word[slot] = (rem % dim as usize) as u32;
                        rem /= dim as usize;
                    }
                    sys.extend_from_slice(&word);
                    sys.push(ki as u32);
                    let kk = Key {
                        irrep: key.irrep.clone(),
                        m_out: key.m_out.clone(),
                        m_in: key.m_in.clone(),
                        sys,
                    };
                    *next.entry(kk).or_insert(C64::new(0.0, 0.0)) += amp * c;
                }
            }
        }
        self.sys_dims = new_dims;
        self.amps = next;
        self.prune(1e-14);
        Ok(((out_first..env_index).collect(), env_index))
    }

    /// Density matrix over the kept system registers (in the listed order),
    /// tracing out the chain registers and every other system register.
    pub fn trace_out_keeping(&self, keep: &[usize], cap: usize) -> Result<DMatrix<C64>> {
        let dim: usize = keep
            .iter()
            .map(|&r| self.sys_dims[r] as usize)
            .product();
        if dim > cap {
            return Err(Error::CapExceeded {
                size: dim as u128,
                cap: cap as u128,
            });
        }
        let discarded: Vec<usize> = (0..self.sys_dims.len())
            .filter(|r| !keep.contains(r))
            .collect();
        let mut by_env: BTreeMap<(IrrepId, Label, Label, Vec<u32>), Vec<(usize, C64)>> =
            BTreeMap::new();
        for (key, amp) in &self.amps {
            let env: Vec<u32> = discarded.iter().map(|&r| key.sys[r]).collect();
            let mut idx = 0usize;
            for &r in keep {
                idx = idx * self.sys_dims[r] as usize + key.sys[r] as usize;
            }
            by_env
                .entry((
                    key.irrep.clone(),
                    key.m_out.clone(),
                    key.m_in.clone(),
                    env,
                ))
                .or_default()
                .push((idx, *amp));
        }
        let mut rho = DMatrix::<C64>::zeros(dim, dim);
        for (_, entries) in by_env {
            for &(i, a) in &entries {
                for &(j, b) in &entries {
                    rho[(i, j)] += a * b.conj();
                }
            }
        }
        Ok(rho)
    }

    /// Density matrix of the system word after tracing out the chain
    /// registers.
    pub fn trace_out_aux(&self, cap: usize) -> Result<DMatrix<C64>> {
        let dim: usize = self.sys_dims.iter().map(|&d| d as usize).product();
        if dim > cap {
            return Err(Error::CapExceeded {
                size: dim as u128,
                cap: cap as u128,
            });
        }
        let mut by_aux: BTreeMap<(IrrepId, Label, Label), Vec<(usize, C64)>> = BTreeMap::new();
        for (key, amp) in &self.amps {
            let mut idx = 0usize;
            for (i, &v) in key.sys.iter().enumerate() {
                idx = idx * self.sys_dims[i] as usize + v as usize;
            }
            by_aux
                .entry((key.irrep.clone(), key.m_out.clone(), key.m_in.clone()))
                .or_default()
                .push((idx, *amp));
        }
        let mut rho = DMatrix::<C64>::zeros(dim, dim);
        for (_, entries) in by_aux {
            for &(i, a) in &entries {
                for &(j, b) in &entries {
                    rho[(i, j)] += a * b.conj();
                }
            }
        }
        Ok(rho)
    }
}

/// One key transition of a query.
struct Transition {
    irrep: IrrepId,
    m_out: Label,
    m_in: Label,
    y: u32,
    coeff: C64,
}

/// All transitions from one key for the given query type and input value,
/// optionally restricted to one output value.
fn transitions(
    backend: &Backend,
    key: &Key,
    qtype: QueryType,
    x: u32,
    y_filter: Option<u32>,
) -> Result<Vec<Transition>> {
    match backend {
        Backend::UFast { d } => fast_transitions(*d, key, qtype, x, y_filter),
        Backend::UDense { d, .. } => dense_transitions(backend, *d, key, qtype, x, y_filter),
        Backend::Finite { rep, .. } => {
            finite_transitions(backend, rep, key, qtype, x, y_filter)
        }
    }
}

/// Dense U(d) transitions through the cached CG tables.
fn dense_transitions(
    backend: &Backend,
    d: u32,
    key: &Key,
    qtype: QueryType,
    x: u32,
    y_filter: Option<u32>,
) -> Result<Vec<Transition>> {
    let IrrepId::Weight(rows) = &key.irrep else {
        return Err(Error::Shape("dense backend expects weight labels".into()));
    };
    let (Label::Index(mi_out), Label::Index(mi_in)) = (&key.m_out, &key.m_in) else {
        return Err(Error::Shape("dense backend expects index labels".into()));
    };
    let factor = match qtype {
        QueryType::Forward | QueryType::Transpose => Factor::Defining,
        QueryType::Conjugate | QueryType::Inverse => Factor::DualDefining,
    };
    let table = backend.dense_table(rows, factor)?;
    let dim_lambda = crate::repcore::weyl_dimension_trimmed(rows, d as u64)
        .to_f64()
        .expect("desk-scale dimension");
    let mut out = Vec::new();
    let ys: Vec<u32> = match y_filter {
        Some(y) => vec![y],
        None => (0..d).collect(),
    };
    for block in &table.blocks {
        let mu_rows = trim_trailing_zeros(block.mu.entries());
        let dim_mu = block.mu.weyl_dimension() as f64;
        let ratio = (dim_lambda / dim_mu).sqrt();
        let iso = &block.isometry;
        let cols = iso.ncols();
        for &y in &ys {
            // (v_in, v_out): F/C couple x on the in-chain; T/I swap roles.
            let (v_in, v_out) = match qtype {
                QueryType::Forward | QueryType::Conjugate => (x, y),
                QueryType::Transpose | QueryType::Inverse => (y, x),
            };
            let row_in = (*mi_in as usize) * d as usize + v_in as usize;
            let row_out = (*mi_out as usize) * d as usize + v_out as usize;
            for ci in 0..cols {
                let c_in = iso[(row_in, ci)];
                if c_in.norm() <= 1e-14 {
                    continue;
                }
                for co in 0..cols {
                    let c_out = iso[(row_out, co)];
                    if c_out.norm() <= 1e-14 {
                        continue;
                    }
                    out.push(Transition {
                        irrep: IrrepId::Weight(mu_rows.clone()),
                        m_out: Label::Index(co as u32),
                        m_in: Label::Index(ci as u32),
                        y,
                        coeff: c_in * c_out.conj() * ratio,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Finite-group transitions; the multiplicity copy index is summed jointly
/// over both chains.
fn finite_transitions(
    backend: &Backend,
    rep: &FiniteGroupRep,
    key: &Key,
    qtype: QueryType,
    x: u32,
    y_filter: Option<u32>,
) -> Result<Vec<Transition>> {
    let IrrepId::Finite(lambda) = &key.irrep else {
        return Err(Error::Shape("finite backend expects irrep indices".into()));
    };
    let (Label::Index(mi_out), Label::Index(mi_in)) = (&key.m_out, &key.m_in) else {
        return Err(Error::Shape("finite backend expects index labels".into()));
    };
    let dual = matches!(qtype, QueryType::Conjugate | QueryType::Inverse);
    let table = backend.finite_table(*lambda, dual)?;
    let dr = rep.rep_dim() as u32;
    let dim_lambda = rep.irreps[*lambda].dim() as f64;
    let mut out = Vec::new();
    let ys: Vec<u32> = match y_filter {
        Some(y) => vec![y],
        None => (0..dr).collect(),
    };
    for block in &table.blocks {
        let dim_mu = rep.irreps[block.mu].dim();
        let ratio = (dim_lambda / dim_mu as f64).sqrt();
        for &y in &ys {
            let (v_in, v_out) = match qtype {
                QueryType::Forward | QueryType::Conjugate => (x, y),
                QueryType::Transpose | QueryType::Inverse => (y, x),
            };
            let row_in = (*mi_in as usize) * dr as usize + v_in as usize;
            let row_out = (*mi_out as usize) * dr as usize + v_out as usize;
            // Accumulate over the shared multiplicity copy.
            let mut coeffs: BTreeMap<(u32, u32), C64> = BTreeMap::new();
            for copy in &block.copies {
                for ci in 0..dim_mu {
                    let c_in = copy[(row_in, ci)];
                    if c_in.norm() <= 1e-14 {
                        continue;
                    }
                    for co in 0..dim_mu {
                        let c_out = copy[(row_out, co)];
                        if c_out.norm() <= 1e-14 {
                            continue;
                        }
                        *coeffs
                            .entry((co as u32, ci as u32))
                            .or_insert(C64::new(0.0, 0.0)) += c_in * c_out.conj();
                    }
                }
            }
            for ((co, ci), c) in coeffs {
                if c.norm() <= 1e-15 {
                    continue;
                }
                out.push(Transition {
                    irrep: IrrepId::Finite(block.mu),
                    m_out: Label::Index(co),
                    m_in: Label::Index(ci),
                    y,
                    coeff: c * ratio,
                });
            }
        }
    }
    Ok(out)
}

/// Compressed-engine transitions: forward queries, plus inverse queries that
/// remove existing boxes.
fn fast_transitions(
    d: u32,
    key: &Key,
    qtype: QueryType,
    x: u32,
    y_filter: Option<u32>,
) -> Result<Vec<Transition>> {
    let IrrepId::Weight(rows) = &key.irrep else {
        return Err(Error::Shape("fast backend expects weight labels".into()));
    };
    let (Label::Compressed(m_out), Label::Compressed(m_in)) = (&key.m_out, &key.m_in) else {
        return Err(Error::Shape("fast backend expects compressed labels".into()));
    };
    if rows.iter().any(|&r| r < 0) {
        return Err(Error::UnsupportedQueryType(format!(
            "mixed weight {rows:?} on the fast backend"
        )));
    }
    let ys: Vec<u32> = match y_filter {
        Some(y) => vec![y],
        None => (0..d).collect(),
    };
    let mut out = Vec::new();
    match qtype {
        QueryType::Forward => {
            let ins = crate::cg::cg_fast_all_blocks(d, m_in, x + 1)?;
            for &y in &ys {
                let outs = crate::cg::cg_fast_all_blocks(d, m_out, y + 1)?;
                for e_in in &ins {
                    for e_out in outs.iter().filter(|e| e.row == e_in.row) {
                        let ratio = dim_ratio_add_box_trimmed(rows, d as u64, e_in.row);
                        let scale = 1.0 / crate::haar::rational_to_f64(&ratio).sqrt();
                        let mut mu = rows.clone();
                        if e_in.row > mu.len() {
                            mu.push(1);
                        } else {
                            mu[e_in.row - 1] += 1;
                        }
                        let coeff =
                            e_in.value.to_f64() * e_out.value.to_f64() * scale;
                        if coeff.abs() <= 1e-15 {
                            continue;
                        }
                        out.push(Transition {
                            irrep: IrrepId::Weight(mu),
                            m_out: Label::Compressed(e_out.label.clone()),
                            m_in: Label::Compressed(e_in.label.clone()),
                            y,
                            coeff: C64::new(coeff, 0.0),
                        });
                    }
                }
            }
        }
        QueryType::Inverse => {
            if rows.is_empty() {
                return Err(Error::ShapeUnderflow);
            }
            // Both chains couple through the bent dual tensor
            // C_dual(m, v -> nu, m') = sqrt(d_nu / d_lambda) C(m', v -> lambda, m);
            // the in-chain consumes y, the out-chain x.
            let outs = crate::cg::cg_fast_backward(d, m_out, x + 1)?;
            for &y in &ys {
                let ins = crate::cg::cg_fast_backward(d, m_in, y + 1)?;
                for e_in in &ins {
                    for e_out in outs.iter().filter(|e| e.row == e_in.row) {
                        let mut nu = rows.clone();
                        nu[e_in.row - 1] -= 1;
                        let nu = trim_trailing_zeros(&nu);
                        // ratio = d_lambda / d_nu.
                        let ratio = dim_ratio_add_box_trimmed(&nu, d as u64, e_in.row);
                        let rf = crate::haar::rational_to_f64(&ratio);
                        // total = sqrt(d_lambda/d_nu) * (sqrt(d_nu/d_lambda))^2
                        //       = 1 / sqrt(ratio).
                        let scale = 1.0 / rf.sqrt();
                        let coeff =
                            e_in.value.to_f64() * e_out.value.to_f64() * scale;
                        if coeff.abs() <= 1e-15 {
                            continue;
                        }
                        out.push(Transition {
                            irrep: IrrepId::Weight(nu),
                            m_out: Label::Compressed(e_out.label.clone()),
                            m_in: Label::Compressed(e_in.label.clone()),
                            y,
                            coeff: C64::new(coeff, 0.0),
                        });
                    }
                }
            }
        }
        other => {
            return Err(Error::UnsupportedQueryType(format!(
                "{} on the fast backend",
                other.tag()
            )))
        }
    }
    Ok(out)
}
