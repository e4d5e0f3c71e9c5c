//! Twirling an approximate unitary-inversion comb with forward compressed
//! oracles: the twirled comb maps n queries of U into the depolarised exact
//! inverse D_eta . U^-1, with eta(delta) = d^2/(d^2-1) delta fixed by the
//! average-case fidelity 1 - delta of the original comb.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{Backend, OracleState, QueryIo};
use crate::query::QueryType;
use crate::C64;

/// Row-major vectorisation: vec(M) = sum_{ij} M_ij |i>|j>.
pub fn vec_mat(m: &DMatrix<C64>) -> nalgebra::DVector<C64> {
    let (r, c) = m.shape();
    nalgebra::DVector::from_fn(r * c, |k, _| m[(k / c, k % c)])
}

/// A completely positive map given by its Kraus operators (d_out x d_in).
#[derive(Debug, Clone)]
pub struct Channel {
    pub kraus: Vec<DMatrix<C64>>,
}

impl Channel {
    pub fn from_kraus(kraus: Vec<DMatrix<C64>>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::Shape("empty Kraus list".into()));
        }
        let (r, c) = kraus[0].shape();
        if kraus.iter().any(|k| k.shape() != (r, c)) {
            return Err(Error::Shape("ragged Kraus list".into()));
        }
        Ok(Self { kraus })
    }

    pub fn d_in(&self) -> usize {
        self.kraus[0].ncols()
    }

    pub fn d_out(&self) -> usize {
        self.kraus[0].nrows()
    }

    pub fn identity(d: usize) -> Self {
        Self {
            kraus: vec![DMatrix::identity(d, d)],
        }
    }

    pub fn unitary(u: &DMatrix<C64>) -> Self {
        Self {
            kraus: vec![u.clone()],
        }
    }

    /// Fully depolarising channel via the Heisenberg-Weyl Kraus set.
    pub fn completely_depolarizing(d: usize) -> Self {
        depolarizing(d, 1.0)
    }

    pub fn apply(&self, rho: &DMatrix<C64>) -> DMatrix<C64> {
        let mut out = DMatrix::<C64>::zeros(self.d_out(), self.d_out());
        for k in &self.kraus {
            out += k * rho * k.adjoint();
        }
        out
    }

    /// Trace-preservation defect |sum K^dagger K - I|.
    pub fn tp_defect(&self) -> f64 {
        let mut acc = DMatrix::<C64>::zeros(self.d_in(), self.d_in());
        for k in &self.kraus {
            acc += k.adjoint() * k;
        }
        acc -= DMatrix::<C64>::identity(self.d_in(), self.d_in());
        acc.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Choi matrix J = sum_i vec(K_i) vec(K_i)^dagger (row-major vec).
    pub fn choi(&self) -> DMatrix<C64> {
        let n = self.d_out() * self.d_in();
        let mut j = DMatrix::<C64>::zeros(n, n);
        for k in &self.kraus {
            let v = vec_mat(k);
            for a in 0..n {
                for b in 0..n {
                    j[(a, b)] += v[a] * v[b].conj();
                }
            }
        }
        j
    }

    /// Kraus decomposition of a Choi matrix; errors when it is not positive
    /// semidefinite within `tol`.
    pub fn from_choi(choi: &DMatrix<C64>, d_out: usize, d_in: usize, tol: f64) -> Result<Self> {
        let n = d_out * d_in;
        if choi.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "Choi is {:?}, expected {n}x{n}",
                choi.shape()
            )));
        }
        let herm_defect: f64 = (choi - choi.adjoint())
            .iter()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if herm_defect > tol {
            return Err(Error::Shape("Choi matrix is not Hermitian".into()));
        }
        let sym = (choi + choi.adjoint()) * C64::new(0.5, 0.0);
        let eig = sym.symmetric_eigen();
        let mut kraus = Vec::new();
        for (i, &ev) in eig.eigenvalues.iter().enumerate() {
            if ev < -tol {
                return Err(Error::Shape(format!(
                    "Choi matrix has negative eigenvalue {ev}"
                )));
            }
            if ev <= tol {
                continue;
            }
            let col = eig.eigenvectors.column(i);
            let mut k = DMatrix::<C64>::zeros(d_out, d_in);
            for a in 0..d_out {
                for b in 0..d_in {
                    k[(a, b)] = col[a * d_in + b] * ev.sqrt();
                }
            }
            kraus.push(k);
        }
        if kraus.is_empty() {
            kraus.push(DMatrix::zeros(d_out, d_in));
        }
        Ok(Self { kraus })
    }
}

/// Depolarising channel with noise weight eta on C^d.
pub fn depolarizing(d: usize, eta: f64) -> Channel {
    let mut kraus = Vec::new();
    let id_w = (1.0 - eta + eta / (d * d) as f64).sqrt();
    kraus.push(DMatrix::<C64>::identity(d, d) * C64::new(id_w, 0.0));
    let w = (eta / (d * d) as f64).sqrt();
    if w > 0.0 {
        for a in 0..d {
            for b in 0..d {
                if a == 0 && b == 0 {
                    continue;
                }
                // Heisenberg-Weyl W_{a,b} = X^a Z^b.
                let mut m = DMatrix::<C64>::zeros(d, d);
                for x in 0..d {
                    let phase = 2.0 * std::f64::consts::PI * (b * x) as f64 / d as f64;
                    m[((x + a) % d, x)] = C64::new(phase.cos(), phase.sin());
                }
                kraus.push(m * C64::new(w, 0.0));
            }
        }
    }
    Channel { kraus }
}

/// eta(delta) = d^2/(d^2-1) * delta; errors when the result leaves [0, 1].
pub fn eta_of_delta(delta: f64, d: usize) -> Result<f64> {
    let d2 = (d * d) as f64;
    if delta < -1e-12 {
        return Err(Error::OutOfRange(format!("delta = {delta} negative")));
    }
    let eta = d2 / (d2 - 1.0) * delta;
    if eta > 1.0 + 1e-9 {
        return Err(Error::OutOfRange(format!(
            "eta({delta}) = {eta} exceeds 1 (delta must stay below 1 - 1/d^2)"
        )));
    }
    Ok(eta.clamp(0.0, 1.0))
}

/// Channel fidelity with the inverse of `u`:
/// F_ch = (1/d^2) sum_i |Tr(K_i u)|^2. Invariant under Kraus gauge.
pub fn channel_fidelity(channel: &Channel, u: &DMatrix<C64>) -> Result<f64> {
    let d = u.nrows();
    if channel.d_in() != d || channel.d_out() != d {
        return Err(Error::DimensionMismatch(format!(
            "channel is {}->{}, unitary is {d}x{d}",
            channel.d_in(),
            channel.d_out()
        )));
    }
    let mut acc = 0.0f64;
    for k in &channel.kraus {
        acc += (k * u).trace().norm_sqr();
    }
    Ok(acc / (d * d) as f64)
}

/// A one-slot comb: pre (d -> slot (x) mem) and post (slot (x) mem -> d)
/// channels, or the non-causal perfect-inverter stub used as a reference
/// point.
#[derive(Debug, Clone)]
pub enum Comb {
    Slotted {
        d: usize,
        mem: usize,
        pre: Channel,
        post: Channel,
    },
    /// C[W] = the channel of W^dagger (not realisable by a causal one-slot
    /// comb; evaluated analytically).
    PerfectInverterStub { d: usize },
}

impl Comb {
    pub fn d(&self) -> usize {
        match self {
            Comb::Slotted { d, .. } => *d,
            Comb::PerfectInverterStub { d } => *d,
        }
    }

    /// The comb that ignores its slot and implements the identity channel.
    pub fn identity_comb(d: usize) -> Comb {
        // pre: |psi> -> |0>_slot (x) |psi>_mem; post: discard slot, output mem.
        let mut pre = DMatrix::<C64>::zeros(d * d, d);
        for i in 0..d {
            // slot index 0, mem index i  ->  row 0*d + i.
            pre[(i, i)] = C64::new(1.0, 0.0);
        }
        // post Kraus: K_s [out m ; slot s' m'] = delta_{s s'} delta_{m out}.
        let mut post = Vec::new();
        for s in 0..d {
            let mut k = DMatrix::<C64>::zeros(d, d * d);
            for m in 0..d {
                k[(m, s * d + m)] = C64::new(1.0, 0.0);
            }
            post.push(k);
        }
        Comb::Slotted {
            d,
            mem: d,
            pre: Channel { kraus: vec![pre] },
            post: Channel { kraus: post },
        }
    }

    /// The comb that outputs the queried unitary itself: C[W] = W.
    pub fn through_comb(d: usize) -> Comb {
        Comb::Slotted {
            d,
            mem: 1,
            pre: Channel {
                kraus: vec![DMatrix::identity(d, d)],
            },
            post: Channel {
                kraus: vec![DMatrix::identity(d, d)],
            },
        }
    }

    /// The channel C[W] for a given slot unitary W.
    pub fn apply(&self, w: &DMatrix<C64>) -> Result<Channel> {
        match self {
            Comb::PerfectInverterStub { .. } => Ok(Channel::unitary(&w.adjoint())),
            Comb::Slotted { d, mem, pre, post } => {
                if w.nrows() != *d {
                    return Err(Error::DimensionMismatch("slot unitary size".into()));
                }
                let wm = w.kronecker(&DMatrix::<C64>::identity(*mem, *mem));
                let mut kraus = Vec::new();
                for kb in &pre.kraus {
                    for ka in &post.kraus {
                        kraus.push(ka * &wm * kb);
                    }
                }
                Ok(Channel { kraus })
            }
        }
    }
}

/// Exact average fidelity F = int dU F_ch(C[U], U^-1): single-qubit Clifford
/// (an exact 3-design) at d = 2, Weingarten-tensor contraction otherwise.
pub fn average_inversion_fidelity(comb: &Comb, n: usize) -> Result<f64> {
    if n != 1 {
        return Err(Error::UnsupportedN(n));
    }
    let d = comb.d();
    if let Comb::PerfectInverterStub { .. } = comb {
        return Ok(1.0);
    }
    let us = reference_unitaries(d)?;
    let mut acc = 0.0;
    for u in &us {
        acc += channel_fidelity(&comb.apply(u)?, u)?;
    }
    Ok(acc / us.len() as f64)
}

/// The single-qubit Clifford group (24 matrices up to global phase).
pub fn clifford_group_d2() -> Vec<DMatrix<C64>> {
    let s2 = 1.0 / 2.0f64.sqrt();
    let h = DMatrix::from_row_slice(2, 2, &[
        C64::new(s2, 0.0),
        C64::new(s2, 0.0),
        C64::new(s2, 0.0),
        C64::new(-s2, 0.0),
    ]);
    let s = DMatrix::from_row_slice(2, 2, &[
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 1.0),
    ]);
    let canon = |m: &DMatrix<C64>| -> Vec<(i64, i64)> {
        // Phase-normalise on the first sizeable entry, then fingerprint.
        let lead = (0..4)
            .map(|k| m[(k / 2, k % 2)])
            .find(|v| v.norm() > 1e-9)
            .unwrap();
        let phase = lead / lead.norm();
        (0..4)
            .map(|k| {
                let v = m[(k / 2, k % 2)] / phase;
                ((v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64)
            })
            .collect()
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out: Vec<DMatrix<C64>> = Vec::new();
    let mut queue = vec![DMatrix::<C64>::identity(2, 2)];
    while let Some(m) = queue.pop() {
        if !seen.insert(canon(&m)) {
            continue;
        }
        queue.push(&m * &h);
        queue.push(&m * &s);
        out.push(m);
    }
    assert_eq!(out.len(), 24, "single-qubit Clifford group has 24 elements");
    out
}

/// Unitaries over which exact degree-(2,2) averages are taken: the Clifford
/// 3-design at d = 2.
fn reference_unitaries(d: usize) -> Result<Vec<DMatrix<C64>>> {
    if d == 2 {
        Ok(clifford_group_d2())
    } else {
        Err(Error::UnsupportedN(d))
    }
}

/// Reference twirl: T[U](.) = avg_V C[(V U)](V . V^dagger), exact for
/// polynomial degree <= 3 averages. Returns the Choi matrix of T[U].
pub fn twirl_choi_reference(comb: &Comb, u: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let d = comb.d();
    if let Comb::PerfectInverterStub { .. } = comb {
        // T[U] = U^-1 exactly.
        return Ok(Channel::unitary(&u.adjoint()).choi());
    }
    let vs = reference_unitaries(d)?;
    let n = d * d;
    let mut j = DMatrix::<C64>::zeros(n, n);
    for v in &vs {
        let c = comb.apply(&(v * u))?;
        // Choi of C[(VU)] . Ad_V: Kraus K -> K V.
        let composed = Channel {
            kraus: c.kraus.iter().map(|k| k * v).collect(),
        };
        j += composed.choi();
    }
    Ok(j / C64::new(vs.len() as f64, 0.0))
}

/// Compressed-oracle twirl (the circuit): one shared forward oracle supplies
/// the random V to the system input and to the comb's slot (composed with the
/// known U); tracing out the oracle registers yields the twirled channel.
/// Returns the Choi matrix of T[U].
pub fn twirl_choi_via_oracle(
    comb: &Comb,
    u: &DMatrix<C64>,
    backend: &Backend,
) -> Result<DMatrix<C64>> {
    let d = comb.d();
    if backend.work_dim() as usize != d {
        return Err(Error::DimensionMismatch(
            "backend dimension must match the comb".into(),
        ));
    }
    let Comb::Slotted { mem, pre, post, .. } = comb else {
        // The stub is not a circuit; its twirl is the exact inverse channel.
        return Ok(Channel::unitary(&u.adjoint()).choi());
    };
    let mut st = OracleState::vacuum(backend.clone());
    // Maximally entangled (ref, sys) pair.
    let omega: Vec<(Vec<u32>, C64)> = (0..d as u32)
        .map(|i| (vec![i, i], C64::new(1.0 / (d as f64).sqrt(), 0.0)))
        .collect();
    let regs = st.add_registers_state(&[d as u32, d as u32], &omega)?;
    let (reg_ref, reg_sys) = (regs[0], regs[1]);
    // System input: rho -> V rho V^dagger via one forward query.
    st.apply_oracle(QueryType::Forward, QueryIo::Register(reg_sys))?;
    // pre: sys -> slot (x) mem.
    let (out_regs, _env) = st.apply_channel(&pre.kraus, &[reg_sys], &[d as u32, *mem as u32])?;
    let (reg_slot, reg_mem) = (out_regs[0], out_regs[1]);
    // Slot carries W = V U: the known U first, then the shared oracle.
    st.apply_system_operator(u, &[reg_slot])?;
    st.apply_oracle(QueryType::Forward, QueryIo::Register(reg_slot))?;
    // post: slot (x) mem -> out.
    let (out2, _env2) = st.apply_channel(&post.kraus, &[reg_slot, reg_mem], &[d as u32])?;
    let reg_out = out2[0];
    // reg_ref moved: recompute its current position. apply_channel keeps
    // non-input registers in relative order at the front.
    let cur_ref = position_of(reg_ref, &[&[reg_sys], &[reg_slot, reg_mem]]);
    let rho = st.trace_out_keeping(&[cur_ref, reg_out], 4096)?;
    // J = d * (I (x) T)(|Omega><Omega|).
    Ok(rho * C64::new(d as f64, 0.0))
}

/// Tracks a register index through a sequence of apply_channel calls, each of
/// which removes its input registers and appends outputs at the end.
fn position_of(mut reg: usize, removed_batches: &[&[usize]]) -> usize {
    for batch in removed_batches {
        let shift = batch.iter().filter(|&&r| r < reg).count();
        debug_assert!(!batch.contains(&reg), "kept register was consumed");
        reg -= shift;
    }
    reg
}

/// Both realisations of the twirled channel for one input unitary: the
/// compressed-oracle circuit and the exact reference average, as Choi
/// matrices, for side-by-side comparison.
pub fn twirl_comb(
    comb: &Comb,
    u: &DMatrix<C64>,
    backend: &Backend,
) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    Ok((
        twirl_choi_via_oracle(comb, u, backend)?,
        twirl_choi_reference(comb, u)?,
    ))
}

/// Report of one twirl verification: deviations of both twirl routes from
/// the depolarised-inverse target, and between each other.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwirlReport {
    pub delta: f64,
    pub eta: f64,
    /// max over the U list of the entrywise Choi deviation |oracle - target|.
    pub max_dev_oracle_vs_target: f64,
    /// max deviation |reference - target|.
    pub max_dev_reference_vs_target: f64,
    /// max deviation |oracle - reference|.
    pub max_dev_oracle_vs_reference: f64,
}

fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Checks the twirl theorem on a list of unitaries: both twirl routes must
/// equal D_eta(delta) . U^-1 with delta fixed by the exact fidelity integral.
pub fn verify_twirl(
    comb: &Comb,
    u_list: &[DMatrix<C64>],
    backend: &Backend,
) -> Result<TwirlReport> {
    let d = comb.d();
    let f = average_inversion_fidelity(comb, 1)?;
    let delta = 1.0 - f;
    let eta = eta_of_delta(delta, d)?;
    let mut report = TwirlReport {
        delta,
        eta,
        max_dev_oracle_vs_target: 0.0,
        max_dev_reference_vs_target: 0.0,
        max_dev_oracle_vs_reference: 0.0,
    };
    for u in u_list {
        // Target: D_eta . U^-1.
        let dep = depolarizing(d, eta);
        let target = Channel {
            kraus: dep.kraus.iter().map(|k| k * u.adjoint()).collect(),
        }
        .choi();
        let reference = twirl_choi_reference(comb, u)?;
        let oracle = twirl_choi_via_oracle(comb, u, backend)?;
        report.max_dev_oracle_vs_target = report
            .max_dev_oracle_vs_target
            .max(max_abs_diff(&oracle, &target));
        report.max_dev_reference_vs_target = report
            .max_dev_reference_vs_target
            .max(max_abs_diff(&reference, &target));
        report.max_dev_oracle_vs_reference = report
            .max_dev_oracle_vs_reference
            .max(max_abs_diff(&oracle, &reference));
    }
    Ok(report)
}

// --- Comb specification file (JSON) ----------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct CombFile {
    name: String,
    d: usize,
    mem: usize,
    /// Kraus lists as [kraus][row][col] = [re, im].
    pre: Vec<Vec<Vec<[f64; 2]>>>,
    post: Vec<Vec<Vec<[f64; 2]>>>,
}

fn kraus_to_rows(k: &DMatrix<C64>) -> Vec<Vec<[f64; 2]>> {
    (0..k.nrows())
        .map(|r| (0..k.ncols()).map(|c| [k[(r, c)].re, k[(r, c)].im]).collect())
        .collect()
}

fn kraus_from_rows(rows: &[Vec<[f64; 2]>]) -> Result<DMatrix<C64>> {
    let nr = rows.len();
    let nc = rows.first().map(|r| r.len()).unwrap_or(0);
    if nr == 0 || rows.iter().any(|r| r.len() != nc) {
        return Err(Error::Shape("ragged Kraus matrix in comb file".into()));
    }
    Ok(DMatrix::from_fn(nr, nc, |r, c| {
        C64::new(rows[r][c][0], rows[r][c][1])
    }))
}

/// Serialises a slotted comb to the JSON comb-definition format.
pub fn comb_to_json(name: &str, comb: &Comb) -> Result<String> {
    let Comb::Slotted { d, mem, pre, post } = comb else {
        return Err(Error::Shape("only slotted combs serialise".into()));
    };
    let file = CombFile {
        name: name.to_string(),
        d: *d,
        mem: *mem,
        pre: pre.kraus.iter().map(kraus_to_rows).collect(),
        post: post.kraus.iter().map(kraus_to_rows).collect(),
    };
    Ok(serde_json::to_string_pretty(&file).expect("serialisable"))
}

/// Loads a comb from the JSON comb-definition format and checks slice
/// trace-preservation.
pub fn comb_from_json(text: &str) -> Result<Comb> {
    let file: CombFile =
        serde_json::from_str(text).map_err(|e| Error::Codec(format!("comb file: {e}")))?;
    let pre = Channel::from_kraus(
        file.pre
            .iter()
            .map(|k| kraus_from_rows(k))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let post = Channel::from_kraus(
        file.post
            .iter()
            .map(|k| kraus_from_rows(k))
            .collect::<Result<Vec<_>>>()?,
    )?;
    if pre.d_in() != file.d
        || pre.d_out() != file.d * file.mem
        || post.d_in() != file.d * file.mem
        || post.d_out() != file.d
    {
        return Err(Error::DimensionMismatch(
            "comb slice dimensions inconsistent with (d, mem)".into(),
        ));
    }
    if pre.tp_defect() > 1e-9 || post.tp_defect() > 1e-9 {
        return Err(Error::Shape("comb slices must be trace-preserving".into()));
    }
    Ok(Comb::Slotted {
        d: file.d,
        mem: file.mem,
        pre,
        post,
    })
}
