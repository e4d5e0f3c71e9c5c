//! Named verification suites over the whole stack: each runs a family of
//! identities at configurable ranges and reports the worst deviation. The
//! command-line `verify` subcommand and the acceptance tests both drive
//! these.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::cg::{cg_dense, cg_fast_all_blocks, generators_gt, Factor};
use crate::error::Result;
use crate::finite::{haar_average_finite, symmetric_group, FiniteGroupRep};
use crate::gtcompress::{apply_p, compress, decompress, CompressedGt};
use crate::haar::{
    entry_moment_for_script, haar_moment_unitary, rational_to_f64, EntryMoment, WeingartenTable,
};
use crate::oracle::{
    commutant_moment, enumerate_finite_paths, matrix_unit_finite, matrix_unit_u, moment_tensor,
    Backend, MomentSpec,
};
use crate::perm::Perm;
use crate::query::QueryType;
use crate::repcore::{
    enumerate_gt, enumerate_paths, partitions, HighestWeight,
};
use crate::C64;

/// Outcome of one suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub details: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            passed: true,
            cases: 0,
            max_deviation: 0.0,
            tolerance,
            details: Vec::new(),
        }
    }

    fn record(&mut self, dev: f64, context: impl Fn() -> String) {
        self.cases += 1;
        if dev > self.max_deviation {
            self.max_deviation = dev;
        }
        if dev > self.tolerance {
            if self.passed {
                self.details.push(format!("first failure: {}", context()));
            }
            self.passed = false;
        }
    }

    fn fail(&mut self, message: String) {
        self.passed = false;
        self.details.push(message);
    }
}

fn mat_norm(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Dimension counts: enumeration vs the Weyl formula, and the Schur-Weyl
/// dimension identity sum_lambda dim(lambda) f^lambda = d^t.
pub fn suite_repcore(max_boxes: usize, max_d: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("repcore", 0.0);
    for d in 1..=max_d {
        for n in 0..=max_boxes {
            for parts in partitions(n, d) {
                let hw = HighestWeight::from_partition(&parts, d)?;
                let pats = enumerate_gt(&hw)?;
                let dev = if pats.len() as u128 == hw.weyl_dimension() { 0.0 } else { 1.0 };
                report.record(dev, || format!("dimension count at {hw}"));
                for p in &pats {
                    let w: i64 = p.weight().iter().sum();
                    report.record(
                        if w == hw.boxes() { 0.0 } else { 1.0 },
                        || format!("weight sum at {p}"),
                    );
                }
            }
        }
    }
    for d in 1..=max_d.min(4) {
        for t in 1..=max_boxes.min(4) {
            let mut total: u128 = 0;
            for parts in partitions(t, d) {
                let hw = HighestWeight::from_partition(&parts, d)?;
                total += hw.weyl_dimension() * enumerate_paths(t, &hw)?.len() as u128;
            }
            let expect = (d as u128).pow(t as u32);
            report.record(
                if total == expect { 0.0 } else { 1.0 },
                || format!("Schur-Weyl count at d = {d}, t = {t}"),
            );
        }
    }
    Ok(report)
}

/// Compression: the worked five-row example, round trips, and exhaustive
/// injectivity of the preprocessing map.
pub fn suite_gtcompress(max_boxes: usize, max_d: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("gtcompress", 0.0);
    // Worked example, verbatim.
    let m = crate::repcore::GtPattern::new(vec![
        vec![0],
        vec![2, 0],
        vec![2, 0, 0],
        vec![2, 1, 0, 0],
        vec![3, 2, 0, 0, 0],
    ])?;
    let c = compress(&m)?;
    let ok = c.mtilde == vec![vec![2], vec![2, 1], vec![3, 2, 0]] && c.p == vec![2, 4, 5];
    report.record(if ok { 0.0 } else { 1.0 }, || "worked example".into());
    report.record(
        if decompress(&c, 5)? == m { 0.0 } else { 1.0 },
        || "worked example inverse".into(),
    );
    // Round trips.
    for d in 1..=max_d {
        for n in 0..=max_boxes {
            for parts in partitions(n, d) {
                let hw = HighestWeight::from_partition(&parts, d)?;
                for pat in enumerate_gt(&hw)? {
                    let c = compress(&pat)?;
                    let ok = decompress(&c, d)? == pat && c.p.len() == c.mtilde.len();
                    report.record(if ok { 0.0 } else { 1.0 }, || format!("round trip {pat}"));
                }
            }
        }
    }
    // Exhaustive injectivity for d <= 3, k <= 3.
    let d = 3u32;
    let mut states: Vec<(Vec<u32>, Vec<Vec<i64>>)> = vec![(vec![], vec![])];
    for n in 1..=2usize {
        for parts in partitions(n, d as usize) {
            let hw = HighestWeight::from_partition(&parts, d as usize)?;
            for pat in enumerate_gt(&hw)? {
                let c = compress(&pat)?;
                states.push((c.p, c.mtilde));
            }
        }
    }
    let mut seen = std::collections::BTreeMap::new();
    for (p, mt) in &states {
        for x in 1..=d {
            let out = apply_p(p, mt, x)?;
            if let Some(prev) = seen.insert(out, (p.clone(), mt.clone(), x)) {
                report.fail(format!("apply_p collision with {prev:?}"));
            }
            report.record(0.0, || String::new());
        }
    }
    Ok(report)
}

/// Dense-engine unitarity and intertwining, fast-vs-dense entrywise
/// agreement, and branching completeness.
pub fn suite_cg(max_boxes: usize, max_d: usize, tol: f64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("cg", tol);
    for d in 2..=max_d {
        for n in 0..=max_boxes {
            for parts in partitions(n, d) {
                let lambda = HighestWeight::from_partition(&parts, d)?;
                let table = cg_dense(&lambda, Factor::Defining)?;
                // Unitarity.
                let u = table.full_unitary();
                let nn = u.ncols();
                let dev = mat_norm(&(u.adjoint() * &u - DMatrix::<C64>::identity(nn, nn)));
                report.record(dev, || format!("unitarity at {lambda}"));
                // Branching completeness.
                let sum: u128 = table.blocks.iter().map(|b| b.mu.weyl_dimension()).sum();
                report.record(
                    if sum == lambda.weyl_dimension() * d as u128 { 0.0 } else { 1.0 },
                    || format!("branching completeness at {lambda}"),
                );
                // Intertwining for the simple generators.
                let gens = generators_gt(&lambda)?;
                let id_l = DMatrix::<C64>::identity(gens.dim(), gens.dim());
                let id_f = DMatrix::<C64>::identity(d, d);
                let unit = |a: usize, b: usize| {
                    let mut m = DMatrix::<C64>::zeros(d, d);
                    m[(a, b)] = C64::new(1.0, 0.0);
                    m
                };
                for k in 1..d {
                    let ops = [
                        (
                            gens.raising[k - 1].kronecker(&id_f) + id_l.kronecker(&unit(k - 1, k)),
                            k,
                            true,
                        ),
                        (
                            gens.lowering[k - 1].kronecker(&id_f) + id_l.kronecker(&unit(k, k - 1)),
                            k,
                            false,
                        ),
                    ];
                    for (op, k, raising) in ops {
                        for block in &table.blocks {
                            let mu_gens = generators_gt(&block.mu)?;
                            let target = if raising {
                                &mu_gens.raising[k - 1]
                            } else {
                                &mu_gens.lowering[k - 1]
                            };
                            let projected = block.isometry.adjoint() * &op * &block.isometry;
                            let dev = mat_norm(&(&projected - target));
                            report.record(dev, || {
                                format!("intertwining at {lambda} block {}", block.mu)
                            });
                        }
                    }
                }
                // Cross-engine agreement, entrywise.
                let row_of: std::collections::BTreeMap<Vec<i64>, usize> = lambda
                    .addable_rows()
                    .into_iter()
                    .map(|r| (lambda.add_box(r).unwrap().entries().to_vec(), r))
                    .collect();
                for (mi, mpat) in table.lambda_patterns.iter().enumerate() {
                    let m = compress(mpat)?;
                    for x in 1..=d as u32 {
                        let fast = cg_fast_all_blocks(d as u32, &m, x)?;
                        let mut fmap: std::collections::BTreeMap<(usize, CompressedGt), f64> =
                            Default::default();
                        for e in fast {
                            fmap.insert((e.row, e.label), e.value.to_f64());
                        }
                        for block in &table.blocks {
                            let r = row_of[&block.mu.entries().to_vec()];
                            for (ci, mu_pat) in block.mu_patterns.iter().enumerate() {
                                let dense_val = block.isometry[(mi * d + (x as usize - 1), ci)];
                                let fast_val = fmap
                                    .remove(&(r, compress(mu_pat)?))
                                    .unwrap_or(0.0);
                                let dev =
                                    (dense_val.re - fast_val).abs().max(dense_val.im.abs());
                                report.record(dev, || {
                                    format!("engine agreement {lambda} {mpat} x {x}")
                                });
                            }
                        }
                        for (_, v) in fmap {
                            report.record(v.abs(), || "fast-only entry".into());
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Matrix-unit algebra, traces and commutation, on U(d) and on S3/S4.
pub fn suite_units(max_t: usize, max_d: usize, tol: f64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("units", tol);
    const CAP: usize = 1 << 14;
    for d in 2..=max_d {
        let backend = Backend::u_dense(d as u32);
        for t in 1..=max_t {
            let families: Vec<(HighestWeight, Vec<crate::repcore::PathLabel>)> = partitions(t, d)
                .into_iter()
                .map(|parts| {
                    let hw = HighestWeight::from_partition(&parts, d).unwrap();
                    let paths = enumerate_paths(t, &hw).unwrap();
                    (hw, paths)
                })
                .collect();
            // Traces and pairwise algebra within and across irreps.
            for (ai, (hw_a, paths_a)) in families.iter().enumerate() {
                for (i, pt) in paths_a.iter().enumerate() {
                    for (j, ps) in paths_a.iter().enumerate() {
                        let e = matrix_unit_u(&backend, pt, ps, CAP)?;
                        let expect = if i == j { hw_a.weyl_dimension() as f64 } else { 0.0 };
                        report.record(
                            (e.trace() - C64::new(expect, 0.0)).norm(),
                            || format!("trace at {hw_a} t {t}"),
                        );
                    }
                }
                for (bi, (_, paths_b)) in families.iter().enumerate() {
                    let e1 = matrix_unit_u(&backend, &paths_a[0], &paths_a[0], CAP)?;
                    let e2 = matrix_unit_u(&backend, &paths_b[0], &paths_b[0], CAP)?;
                    let prod = &e1 * &e2;
                    let expect = if ai == bi {
                        e1.clone()
                    } else {
                        DMatrix::zeros(prod.nrows(), prod.ncols())
                    };
                    report.record(mat_norm(&(&prod - &expect)), || {
                        format!("unit algebra d {d} t {t}")
                    });
                }
            }
            // Commutation with the diagonal Lie action.
            let gens = generators_gt(&HighestWeight::from_partition(&[1], d)?)?;
            let dim = (d as usize).pow(t as u32);
            if dim <= 256 {
                let mut ops: Vec<DMatrix<C64>> = Vec::new();
                for g in gens.raising.iter().chain(&gens.lowering).chain(&gens.cartan) {
                    let mut total = DMatrix::<C64>::zeros(dim, dim);
                    for slot in 0..t {
                        let mut kron = DMatrix::<C64>::identity(1, 1);
                        for s in 0..t {
                            let f = if s == slot {
                                g.clone()
                            } else {
                                DMatrix::identity(d, d)
                            };
                            kron = kron.kronecker(&f);
                        }
                        total += kron;
                    }
                    ops.push(total);
                }
                for (_, paths) in &families {
                    for pt in paths.iter().take(2) {
                        for ps in paths.iter().take(2) {
                            let e = matrix_unit_u(&backend, pt, ps, CAP)?;
                            for op in &ops {
                                report.record(mat_norm(&(&e * op - op * &e)), || {
                                    format!("commutation d {d} t {t}")
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    // Finite groups: S3 and S4 at t = 2.
    for n in [3usize, 4] {
        let rep = symmetric_group(n)?;
        let dr = rep.rep_dim();
        let backend = Backend::finite(rep.clone());
        let t = 2usize;
        let paths = enumerate_finite_paths(&backend, t)?;
        let mut sum = DMatrix::<C64>::zeros(dr.pow(2), dr.pow(2));
        for p in &paths {
            let e = matrix_unit_finite(&backend, p, p, 1 << 14)?;
            sum += &e;
            for g in (0..rep.order()).step_by(1 + rep.order() / 6) {
                let kron = rep.rep[g].kronecker(&rep.rep[g]);
                report.record(mat_norm(&(&e * &kron - &kron * &e)), || {
                    format!("finite commutation S{n}")
                });
            }
        }
        report.record(
            mat_norm(&(&sum - DMatrix::<C64>::identity(dr.pow(2), dr.pow(2)))),
            || format!("finite completeness S{n}"),
        );
    }
    Ok(report)
}

fn all_words(t: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..t {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..d).map(move |v| {
                    let mut w2 = w.clone();
                    w2.push(v);
                    w2
                })
            })
            .collect();
    }
    out
}

/// Three-way equality for forward scripts on U(d): oracle evolution,
/// commutant sum, Weingarten. Exhaustive when d^(4t) <= `exhaustive_limit`,
/// sampled otherwise.
pub fn suite_moments_u(
    d: u32,
    t: usize,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(&format!("moments-u{d}-t{t}"), tol);
    let fast = Backend::u_fast(d);
    let dense = Backend::u_dense(d);
    let spec = MomentSpec::forward(t);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let total_assignments = (d as u128).pow(4 * t as u32);
    let assignments: Vec<(Vec<u32>, Vec<u32>, Vec<u32>, Vec<u32>)> =
        if total_assignments <= 6561 && samples == 0 {
            let mut all = Vec::new();
            for xw in all_words(t, d) {
                for yw in all_words(t, d) {
                    for xh in all_words(t, d) {
                        for yh in all_words(t, d) {
                            all.push((xw.clone(), yw.clone(), xh.clone(), yh.clone()));
                        }
                    }
                }
            }
            all
        } else {
            let n = if samples == 0 { 500 } else { samples };
            (0..n)
                .map(|_| {
                    let w = |rng: &mut ChaCha12Rng| -> Vec<u32> {
                        (0..t).map(|_| rng.gen_range(0..d)).collect()
                    };
                    (w(&mut rng), w(&mut rng), w(&mut rng), w(&mut rng))
                })
                .collect()
        };
    for (xw, yw, xh, yh) in assignments {
        let xy: Vec<(u32, u32)> = xw.iter().zip(&yw).map(|(&a, &b)| (a, b)).collect();
        let xy_hat: Vec<(u32, u32)> = xh.iter().zip(&yh).map(|(&a, &b)| (a, b)).collect();
        let m_fast = moment_tensor(&fast, &spec, &xy, &xy_hat)?;
        let m_dense = moment_tensor(&dense, &spec, &xy, &xy_hat)?;
        let wg = rational_to_f64(&haar_moment_unitary(
            &entry_moment_for_script(&spec.types, &xy, &xy_hat),
            d,
        )?);
        let comm = commutant_moment(&dense, &xw, &yw, &xh, &yh)?;
        let dev = (m_fast - m_dense)
            .norm()
            .max((m_fast - C64::new(wg, 0.0)).norm())
            .max((comm - C64::new(wg, 0.0)).norm());
        report.record(dev, || format!("assignment x{xw:?} y{yw:?}"));
        // Moment entries are averages of unit-modulus products.
        report.record(
            (m_fast.norm() - 1.0).max(0.0),
            || format!("modulus bound at x{xw:?}"),
        );
    }
    Ok(report)
}

/// All four query types plus random mixed scripts on a finite group, against
/// the uniform average.
pub fn suite_moments_finite(
    rep: &FiniteGroupRep,
    max_len: usize,
    random_scripts: usize,
    seed: u64,
    tol: f64,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(&format!("moments-{}", rep.name), tol);
    let backend = Backend::finite(rep.clone());
    let d = rep.rep_dim() as u32;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut scripts: Vec<Vec<QueryType>> = vec![
        vec![QueryType::Forward],
        vec![QueryType::Conjugate],
        vec![QueryType::Transpose],
        vec![QueryType::Inverse],
    ];
    let all = [
        QueryType::Forward,
        QueryType::Conjugate,
        QueryType::Transpose,
        QueryType::Inverse,
    ];
    for _ in 0..random_scripts {
        let len = rng.gen_range(1..=max_len);
        scripts.push((0..len).map(|_| all[rng.gen_range(0..4)]).collect());
    }
    for types in scripts {
        let spec = MomentSpec { types: types.clone() };
        for _ in 0..4 {
            let xy: Vec<(u32, u32)> = (0..types.len())
                .map(|_| (rng.gen_range(0..d), rng.gen_range(0..d)))
                .collect();
            let xy_hat: Vec<(u32, u32)> = (0..types.len())
                .map(|_| (rng.gen_range(0..d), rng.gen_range(0..d)))
                .collect();
            let via_oracle = moment_tensor(&backend, &spec, &xy, &xy_hat)?;
            let queries: Vec<(QueryType, u32, u32)> = types
                .iter()
                .zip(&xy)
                .map(|(&t, &(x, y))| (t, x, y))
                .collect();
            let hatted: Vec<(QueryType, u32, u32)> = types
                .iter()
                .zip(&xy_hat)
                .map(|(&t, &(x, y))| (t, x, y))
                .collect();
            let truth = haar_average_finite(rep, &queries, &hatted)?;
            report.record((via_oracle - truth).norm(), || {
                let tags: String = types.iter().map(|t| t.tag()).collect();
                format!("script {tags} xy {xy:?}")
            });
        }
    }
    Ok(report)
}

/// Weingarten self-consistency: the constructor cross-checks the Gram
/// inversion against the character sum; also spot-check known values.
pub fn suite_weingarten(max_t: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("weingarten", 1e-12);
    for t in 1..=max_t {
        for d in (t as u32)..=(t as u32 + 2) {
            let table = WeingartenTable::new(t, d)?;
            report.record(
                if table.pseudo_inverse { 1.0 } else { 0.0 },
                || format!("gram route at t {t} d {d}"),
            );
        }
    }
    // Known values.
    let checks = [
        (vec![1usize], 2u32, 1usize, 0.5f64),
        (vec![1, 1], 2, 2, 1.0 / 3.0),
        (vec![2], 2, 2, -1.0 / 6.0),
    ];
    for (class, d, t, expect) in checks {
        let v = rational_to_f64(&crate::haar::weingarten(&class, d, t)?);
        report.record((v - expect).abs(), || format!("value at {class:?}"));
    }
    // Unbalanced moments vanish.
    let spec = EntryMoment {
        u: vec![(0, 0)],
        u_conj: vec![],
    };
    report.record(
        rational_to_f64(&haar_moment_unitary(&spec, 3)?).abs(),
        || "unbalanced".into(),
    );
    Ok(report)
}

/// Permutation-oracle equivalences, exact over integer matrices.
pub fn suite_permoracle(random: usize, max_d: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("permoracle", 0.0);
    for g in Perm::all(3) {
        report.record(
            if crate::finite::permoracle::check_equivalences(&g) { 0.0 } else { 1.0 },
            || format!("S3 element {g}"),
        );
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for _ in 0..random {
        let d = rng.gen_range(2..=max_d);
        let mut images: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            images.swap(i, rng.gen_range(0..=i));
        }
        let g = Perm::new(images)?;
        report.record(
            if crate::finite::permoracle::check_equivalences(&g) { 0.0 } else { 1.0 },
            || format!("random permutation {g}"),
        );
    }
    Ok(report)
}

/// One row of the scaling benchmark.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchRow {
    pub d: u64,
    pub t: usize,
    pub wall_ms: f64,
    pub peak_key_bits: usize,
    pub keys: usize,
}

/// Serialized size (in bits) of the chain part of a state key, with
/// variable-length integers so the d-dependence of the alphabet symbols is
/// visible: O(t^2 log t) pattern bits plus O(t log d) alphabet bits.
fn key_bits(key: &crate::oracle::Key) -> usize {
    use crate::codec::Writer;
    let mut w = Writer::new();
    match &key.irrep {
        crate::oracle::IrrepId::Weight(rows) => {
            w.uvarint(rows.len() as u64);
            for &r in rows {
                w.ivarint(r);
            }
        }
        crate::oracle::IrrepId::Finite(i) => w.uvarint(*i as u64),
    }
    for label in [&key.m_out, &key.m_in] {
        match label {
            crate::oracle::Label::Compressed(c) => {
                w.uvarint(c.mtilde.len() as u64);
                for row in &c.mtilde {
                    for &e in row {
                        w.ivarint(e);
                    }
                }
                for &p in &c.p {
                    w.uvarint(p as u64);
                }
            }
            crate::oracle::Label::Index(i) => w.uvarint(*i as u64),
        }
    }
    w.finish().len() * 8
}

/// Runs the forward scaling benchmark: t fixed-value queries on the fast
/// backend at each d, recording wall time and the peak serialized key size.
pub fn bench_forward(t: usize, d_list: &[u64]) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &d in d_list {
        let backend = Backend::u_fast(d as u32);
        let start = std::time::Instant::now();
        let mut st = crate::oracle::OracleState::vacuum(backend);
        let mut peak = 0usize;
        for k in 0..t {
            let x = (k as u32) % d as u32;
            let y = (d as u32 / 2 + k as u32) % d as u32;
            st.apply_oracle(QueryType::Forward, crate::oracle::QueryIo::Fixed { x, y })?;
            peak = peak.max(st.amps.keys().map(key_bits).max().unwrap_or(0));
        }
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        rows.push(BenchRow {
            d,
            t,
            wall_ms,
            peak_key_bits: peak,
            keys: st.amps.len(),
        });
    }
    Ok(rows)
}

/// Checks that peak key bits grow at most linearly in log d across the rows
/// (with an affine fit allowance) and reports the largest-d wall time.
pub fn scaling_report(rows: &[BenchRow]) -> SuiteReport {
    let mut report = SuiteReport::new("scaling", 0.0);
    if rows.len() < 2 {
        report.fail("need at least two rows".into());
        return report;
    }
    // Affine model bits = a + b log2(d): with integer-sized encodings the
    // increments per doubling are bounded; check the largest jump against the
    // first, allowing a factor-2 slack.
    let bits: Vec<f64> = rows.iter().map(|r| r.peak_key_bits as f64).collect();
    let logs: Vec<f64> = rows.iter().map(|r| (r.d as f64).log2()).collect();
    let slope0 = (bits[1] - bits[0]) / (logs[1] - logs[0]);
    for i in 1..rows.len() {
        let slope = (bits[i] - bits[i - 1]) / (logs[i] - logs[i - 1]);
        let dev = if slope <= slope0.max(64.0) * 2.0 + 1e-9 { 0.0 } else { 1.0 };
        report.record(dev, || {
            format!(
                "slope {slope:.2} bits per log2(d) at d = {} (reference {slope0:.2})",
                rows[i].d
            )
        });
    }
    report
}

/// Convenience: dimension of the finite S_n helper used by the CLI.
pub fn finite_group_by_name(name: &str) -> Result<FiniteGroupRep> {
    crate::finite::builtin_group(name)
}

/// Named suites with their default desk-scale parameters.
pub fn run_named_suite(name: &str, boxes: usize, d: usize, t: usize, tol: f64) -> Result<SuiteReport> {
    match name {
        "repcore" => suite_repcore(boxes.min(4), d.min(5)),
        "gtcompress" => suite_gtcompress(boxes.min(4), d.min(6)),
        "cg" => suite_cg(boxes, d, tol),
        "units" => suite_units(t.min(3), d.min(3), tol),
        "moments" => suite_moments_u(d.min(3) as u32, t.min(3), if t >= 3 { 300 } else { 0 }, 7, tol),
        "weingarten" => suite_weingarten(4),
        "permoracle" => suite_permoracle(20, 6, 11),
        other => Err(crate::error::Error::Shape(format!("unknown suite {other}"))),
    }
}

/// Fixed tolerance defaults per the acceptance thresholds.
pub fn default_tolerance(suite: &str) -> f64 {
    match suite {
        "cg" | "units" => 1e-10,
        "moments" => 1e-10,
        _ => 1e-12,
    }
}
