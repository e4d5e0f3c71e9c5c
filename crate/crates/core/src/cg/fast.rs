//! Closed-form sparse CG engine on compressed Gelfand-Tsetlin patterns.
//!
//! A box-addition chain changes its row position only at the weight-support
//! levels of the input and output patterns, so the per-level coefficient
//! product collapses: support levels contribute explicit reduced one-box
//! factors, and the duplicated-row bands in between contribute exactly 1.
//! Inside each factor the products over the all-zero row tail pair up into
//! ratios of consecutive-integer runs that telescope to a handful of boundary
//! terms, making the arithmetic cost polynomial in the box count and
//! logarithmic in d. Values are exact signed square-rooted rationals; the
//! per-block phase matches the dense engine by normalising the
//! highest-weight column's first coefficient to be positive.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gtcompress::CompressedGt;
use crate::haar::rational_to_f64;
use crate::repcore::HighestWeight;

/// A value of the form sign * sqrt(mag2) with exact rational mag2.
#[derive(Debug, Clone, PartialEq)]
pub struct SqrtRational {
    pub sign: i8,
    pub mag2: BigRational,
}

impl SqrtRational {
    pub fn one() -> Self {
        Self {
            sign: 1,
            mag2: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        Self {
            sign: 0,
            mag2: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0 || self.mag2.is_zero()
    }

    pub fn mul(&mut self, other: &SqrtRational) {
        self.sign *= other.sign;
        self.mag2 *= &other.mag2;
    }

    pub fn negate(&mut self) {
        self.sign = -self.sign;
    }

    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * rational_to_f64(&self.mag2).sqrt()
    }
}

/// One sparse output of a compressed CG application.
#[derive(Debug, Clone)]
pub struct FastEntry {
    /// 1-based row of the box added to (forward) or removed from (dual) the
    /// diagram.
    pub row: usize,
    /// Output basis label.
    pub label: CompressedGt,
    /// Exact coefficient.
    pub value: SqrtRational,
}

/// Product of the integers in [lo1, hi1] divided by the product of those in
/// [lo2, hi2]; the overlap cancels exactly, leaving only boundary factors.
/// Empty ranges (lo > hi) contribute 1.
fn run_ratio(lo1: i64, hi1: i64, lo2: i64, hi2: i64) -> BigRational {
    let mut acc = BigRational::one();
    let mut mul_range = |lo: i64, hi: i64, invert: bool| {
        for v in lo..=hi {
            if invert {
                acc /= BigRational::from_integer(BigInt::from(v));
            } else {
                acc *= BigRational::from_integer(BigInt::from(v));
            }
        }
    };
    if hi1 < lo1 && hi2 < lo2 {
        return acc;
    }
    if hi1 < lo1 {
        mul_range(lo2, hi2, true);
        return acc;
    }
    if hi2 < lo2 {
        mul_range(lo1, hi1, false);
        return acc;
    }
    // Both nonempty: cancel the intersection.
    let ilo = lo1.max(lo2);
    let ihi = hi1.min(hi2);
    if ilo > ihi {
        mul_range(lo1, hi1, false);
        mul_range(lo2, hi2, true);
    } else {
        mul_range(lo1, ilo - 1, false);
        mul_range(ihi + 1, hi1, false);
        mul_range(lo2, ilo - 1, true);
        mul_range(ihi + 1, hi2, true);
    }
    acc
}

/// A full pattern row in banded form: explicit leading content, zeros beyond,
/// total length `len` (the level).
#[derive(Clone, Copy)]
struct Row<'a> {
    content: &'a [i64],
    len: i64,
}

impl<'a> Row<'a> {
    fn entry(&self, i: i64) -> i64 {
        if i as usize <= self.content.len() {
            self.content[i as usize - 1]
        } else {
            0
        }
    }

    fn shifted(&self, i: i64) -> i64 {
        self.entry(i) - i
    }

    fn content_len(&self) -> i64 {
        self.content.len() as i64
    }
}

/// prod_{i=1..row.len, i != skip} (shifted(i) - z_num) / (shifted(i) - z_den),
/// exact. `skip = 0` skips nothing. The zero tail telescopes through
/// [`run_ratio`].
fn row_ratio(row: Row<'_>, skip: i64, z_num: i64, z_den: i64) -> BigRational {
    let c = row.content_len().min(row.len);
    let mut acc = BigRational::one();
    for i in 1..=c {
        if i == skip {
            continue;
        }
        let l = row.shifted(i);
        acc *= BigRational::new(BigInt::from(l - z_num), BigInt::from(l - z_den));
    }
    // Tail i in (c, len]: shifted = -i, so (-i - z) = -(i + z); the (-1)
    // prefactors cancel between numerator and denominator because both run
    // over the same index set. A skipped position inside the tail can only be
    // c + 1 (positions never exceed the content length plus one), so the runs
    // just start one later.
    let (mut a, b) = (c + 1, row.len);
    if skip >= a && skip <= b {
        debug_assert_eq!(skip, a, "tail skip is always the first tail position");
        a += 1;
    }
    if a <= b {
        acc *= run_ratio(a + z_num, b + z_num, a + z_den, b + z_den);
    }
    acc
}

/// Reduced one-box factor at the chain start: the box enters at this level as
/// the subgroup-scalar component. `upper` is the pre-addition row at the
/// entry level, `r` the addition position, `lower` the (unchanged) row below.
fn w_scalar(upper: Row<'_>, r: i64, lower: Row<'_>) -> SqrtRational {
    debug_assert_eq!(lower.len, upper.len - 1);
    let lr = upper.shifted(r);
    // prod_j |m_j - l_r - 1| / prod_{i != r} |l_i - l_r|, as a paired ratio.
    let mut mag2 = BigRational::one();
    let c_low = lower.content_len().min(lower.len);
    let c_up = upper.content_len().min(upper.len);
    for j in 1..=c_low {
        mag2 *= BigRational::from_integer(BigInt::from(lower.shifted(j) - lr - 1));
    }
    for i in 1..=c_up {
        if i != r {
            mag2 /= BigRational::from_integer(BigInt::from(upper.shifted(i) - lr));
        }
    }
    // Tails: lower j in (c_low, lower.len], factors -(j + lr + 1); upper i in
    // (c_up, upper.len] minus r, factors -(i + lr). A skipped tail position is
    // always the first one. The leftover (-1) prefactor parity is tracked
    // explicitly since the two tails may have different lengths.
    let (mut up_a, up_b) = (c_up + 1, upper.len);
    if r >= up_a && r <= up_b {
        debug_assert_eq!(r, up_a, "tail skip is always the first tail position");
        up_a += 1;
    }
    let (lo_a, lo_b) = (c_low + 1, lower.len);
    let count_low = (lo_b - lo_a + 1).max(0);
    let count_up = (up_b - up_a + 1).max(0);
    mag2 *= run_ratio(lo_a + lr + 1, lo_b + lr + 1, up_a + lr, up_b + lr);
    if (count_low - count_up).rem_euclid(2) == 1 {
        mag2 = -mag2;
    }
    finish_sqrt(mag2, 1)
}

/// Reduced one-box factor at a pass-through level: the box moved from
/// position `s` of `lower` to position `r` of `upper` (both pre-addition).
fn w_pass(upper: Row<'_>, r: i64, lower: Row<'_>, s: i64) -> SqrtRational {
    debug_assert_eq!(lower.len, upper.len - 1);
    let lr = upper.shifted(r);
    let ms = lower.shifted(s);
    // Group 1 over the upper row: prod_{i != r} (l_i - ms)/(l_i - lr).
    let g1 = row_ratio(upper, r, ms, lr);
    // Group 2 over the lower row: prod_{j != s} (m_j - lr - 1)/(m_j - ms - 1).
    let g2 = row_ratio(lower, s, lr + 1, ms + 1);
    let mag2 = g1 * g2;
    let sign = if r > s { -1 } else { 1 };
    finish_sqrt(mag2, sign)
}

fn finish_sqrt(mag2: BigRational, sign: i8) -> SqrtRational {
    if mag2.is_zero() {
        return SqrtRational::zero();
    }
    debug_assert!(
        mag2.is_positive(),
        "squared reduced factor must be positive on valid transitions"
    );
    SqrtRational { sign, mag2 }
}

/// Banded interlacing check between a lower row of length L-1 and an upper
/// row of length L, both zero beyond their content.
fn interlaces(lower: Row<'_>, upper: Row<'_>) -> bool {
    debug_assert_eq!(lower.len, upper.len - 1);
    let probe = lower
        .content_len()
        .max(upper.content_len())
        .min(lower.len);
    for i in 1..=probe {
        if !(upper.entry(i) >= lower.entry(i) && lower.entry(i) >= upper.entry(i + 1)) {
            return false;
        }
    }
    true
}

/// Weakly decreasing, nonnegative, and no entry beyond position `slots`.
fn valid_out_content(content: &[i64], slots: i64) -> bool {
    if content.len() as i64 > slots {
        return false;
    }
    if content.iter().any(|&e| e < 0) {
        return false;
    }
    content.windows(2).all(|w| w[0] >= w[1])
}

struct ChainSetup {
    /// Breakpoint levels (support of the union of input and output weights).
    q: Vec<i64>,
    /// Input content at each breakpoint node.
    contents: Vec<Vec<i64>>,
    /// Input content strictly below the entry level.
    below: Vec<i64>,
    /// Index of the entry level in `q`.
    i0: usize,
    /// Output support levels.
    out_p: Vec<u32>,
}

fn setup_forward(d: u32, m: &CompressedGt, x: u32) -> Result<ChainSetup> {
    if x == 0 || x > d {
        return Err(Error::AlphabetOutOfRange { symbol: x, d });
    }
    if let Some(&last) = m.p.last() {
        if last > d {
            return Err(Error::AlphabetOutOfRange { symbol: last, d });
        }
    }
    if m.mtilde.iter().any(|row| row.iter().any(|&e| e < 0)) {
        return Err(Error::UnsupportedFactor(
            "compressed engine needs Young-diagram patterns".into(),
        ));
    }
    let mut q: Vec<i64> = m.p.iter().map(|&v| v as i64).collect();
    let contains = m.p.binary_search(&x);
    let i0 = match contains {
        Ok(i) => i,
        Err(i) => {
            q.insert(i, x as i64);
            i
        }
    };
    let out_p: Vec<u32> = q.iter().map(|&v| v as u32).collect();
    // Input content per node: the last input support row at or below each
    // breakpoint level.
    let mut contents = Vec::with_capacity(q.len());
    for &level in &q {
        let k = m.p.iter().filter(|&&pv| (pv as i64) <= level).count();
        contents.push(if k == 0 {
            Vec::new()
        } else {
            m.mtilde[k - 1].clone()
        });
    }
    let below_k = m.p.iter().filter(|&&pv| (pv as i64) < x as i64).count();
    let below = if below_k == 0 {
        Vec::new()
    } else {
        m.mtilde[below_k - 1].clone()
    };
    Ok(ChainSetup {
        q,
        contents,
        below,
        i0,
        out_p,
    })
}

fn add_at(content: &[i64], pos: i64) -> Vec<i64> {
    let mut out = content.to_vec();
    if pos as usize > out.len() {
        out.resize(pos as usize, 0);
    }
    out[pos as usize - 1] += 1;
    out
}

/// All sparse outputs of the forward compressed CG for one incoming symbol:
/// every valid chain of box positions across the breakpoint nodes.
pub fn cg_fast_all_blocks(d: u32, m: &CompressedGt, x: u32) -> Result<Vec<FastEntry>> {
    let setup = setup_forward(d, m, x)?;
    let nodes = setup.q.len();
    let mut out = Vec::new();
    // DFS over positions J[i0..nodes].
    let mut positions = vec![0i64; nodes];
    dfs_chains(&setup, setup.i0, &mut positions, &mut out);
    // Per-block sign normalisation against the dense convention.
    let lambda_content = top_content(m);
    let mut rows_seen: Vec<usize> = out.iter().map(|e| e.row).collect();
    rows_seen.sort_unstable();
    rows_seen.dedup();
    for row in rows_seen {
        let sigma = block_sign(d, &lambda_content, row)?;
        if sigma < 0 {
            for e in out.iter_mut().filter(|e| e.row == row) {
                e.value.negate();
            }
        }
    }
    Ok(out)
}

/// Forward compressed CG restricted to the block `lambda + e_row`.
pub fn cg_fast(
    lambda: &[i64],
    d: u32,
    row: usize,
    m: &CompressedGt,
    x: u32,
) -> Result<Vec<(CompressedGt, SqrtRational)>> {
    let top = top_content(m);
    let trimmed: Vec<i64> = lambda.iter().copied().filter(|&v| v != 0).collect();
    if top != trimmed {
        return Err(Error::Shape(format!(
            "pattern top {top:?} does not match diagram {lambda:?}"
        )));
    }
    // The target row must be addable on the padded diagram.
    let hw = HighestWeight::from_partition(&trimmed, (d as usize).max(trimmed.len() + 1))?;
    if !hw.addable_rows().contains(&row) {
        return Err(Error::InvalidBox {
            row,
            weight: trimmed,
        });
    }
    Ok(cg_fast_all_blocks(d, m, x)?
        .into_iter()
        .filter(|e| e.row == row)
        .map(|e| (e.label, e.value))
        .collect())
}

/// Nonzero diagram rows of a compressed pattern (its top truncated row with
/// trailing zeros trimmed).
fn top_content(m: &CompressedGt) -> Vec<i64> {
    let mut v = m.top_row().to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn dfs_chains(setup: &ChainSetup, node: usize, positions: &mut Vec<i64>, out: &mut Vec<FastEntry>) {
    let nodes = setup.q.len();
    if node == nodes {
        emit_chain(setup, positions, out);
        return;
    }
    let content = &setup.contents[node];
    let slots = node as i64 + 1;
    for j in 1..=(content.len() as i64 + 1).min(slots) {
        let out_content = add_at(content, j);
        if !valid_out_content(&out_content, slots) {
            continue;
        }
        // Interface with the node (or band) below.
        let level = setup.q[node];
        let ok = if node == setup.i0 {
            let lower = Row {
                content: &setup.below,
                len: level - 1,
            };
            interlaces(
                lower,
                Row {
                    content: &out_content,
                    len: level,
                },
            )
        } else {
            let lower_content = add_at(&setup.contents[node - 1], positions[node - 1]);
            interlaces(
                Row {
                    content: &lower_content,
                    len: level - 1,
                },
                Row {
                    content: &out_content,
                    len: level,
                },
            )
        };
        // Nodes below the entry level are untouched; check the first touched
        // node against the untouched row below it only (handled above).
        if !ok {
            continue;
        }
        positions[node] = j;
        dfs_chains(setup, node + 1, positions, out);
    }
}

fn emit_chain(setup: &ChainSetup, positions: &[i64], out: &mut Vec<FastEntry>) {
    let nodes = setup.q.len();
    let i0 = setup.i0;
    // Box row in the full diagram = position at the top node (content
    // positions are full positions).
    let box_row = positions[nodes - 1] as usize;
    // Assemble the coefficient.
    let mut value = SqrtRational::one();
    for i in i0..nodes {
        let level = setup.q[i];
        let upper = Row {
            content: &setup.contents[i],
            len: level,
        };
        let w = if i == i0 {
            let lower = Row {
                content: &setup.below,
                len: level - 1,
            };
            w_scalar(upper, positions[i], lower)
        } else {
            let lower = Row {
                content: &setup.contents[i - 1],
                len: level - 1,
            };
            w_pass(upper, positions[i], lower, positions[i - 1])
        };
        if w.is_zero() {
            return;
        }
        value.mul(&w);
    }
    // Bands contribute exactly 1 (the paired ratios cancel when the position
    // and content repeat), including the band from the last node up to d.
    // Output label.
    let mut mtilde = Vec::with_capacity(nodes);
    for i in 0..nodes {
        let mut row = if i < i0 {
            setup.contents[i].clone()
        } else {
            add_at(&setup.contents[i], positions[i])
        };
        row.resize(i + 1, 0);
        mtilde.push(row);
    }
    let label = CompressedGt {
        mtilde,
        p: setup.out_p.clone(),
    };
    out.push(FastEntry {
        row: box_row,
        label,
        value,
    });
}

/// Backward (box-removal) chains with dense-convention phases: all inputs
/// `m_in` with C(m_in, x -> shape(m_out), m_out) != 0, with that coefficient.
/// `entry.row` is the diagram row the box was removed from.
pub fn cg_fast_backward(d: u32, m_out: &CompressedGt, x: u32) -> Result<Vec<FastEntry>> {
    let mut entries = backward_chains_raw(d, m_out, x)?;
    let top = top_content(m_out);
    let mut rows_seen: Vec<usize> = entries.iter().map(|e| e.row).collect();
    rows_seen.sort_unstable();
    rows_seen.dedup();
    for row in rows_seen {
        // The block is (shape - e_row) -> shape, so the sign is computed from
        // the smaller diagram.
        let mut nu = top.clone();
        nu[row - 1] -= 1;
        while nu.last() == Some(&0) {
            nu.pop();
        }
        let sigma = block_sign(d, &nu, row)?;
        if sigma < 0 {
            for e in entries.iter_mut().filter(|e| e.row == row) {
                e.value.negate();
            }
        }
    }
    Ok(entries)
}

/// Raw backward chains (no per-block phase normalisation).
fn backward_chains_raw(d: u32, m_out: &CompressedGt, x: u32) -> Result<Vec<FastEntry>> {
    if x == 0 || x > d {
        return Err(Error::AlphabetOutOfRange { symbol: x, d });
    }
    let Ok(i0) = m_out.p.binary_search(&x) else {
        return Ok(Vec::new());
    };
    let nodes = m_out.p.len();
    let q: Vec<i64> = m_out.p.iter().map(|&v| v as i64).collect();
    // Output weight at x decides whether x leaves the support.
    let weight_at = |i: usize| -> i64 {
        let cur: i64 = m_out.mtilde[i].iter().sum();
        let prev: i64 = if i == 0 {
            0
        } else {
            m_out.mtilde[i - 1].iter().sum()
        };
        cur - prev
    };
    let x_leaves = weight_at(i0) == 1;
    let below = if i0 == 0 {
        Vec::new()
    } else {
        m_out.mtilde[i0 - 1].clone()
    };
    let mut results = Vec::new();
    let mut positions = vec![0i64; nodes];
    // DFS over removal positions at nodes i0..nodes.
    fn rec(
        m_out: &CompressedGt,
        q: &[i64],
        below: &[i64],
        i0: usize,
        x_leaves: bool,
        node: usize,
        positions: &mut Vec<i64>,
        results: &mut Vec<FastEntry>,
    ) {
        let nodes = q.len();
        if node == nodes {
            emit_backward(m_out, q, below, i0, x_leaves, positions, results);
            return;
        }
        let content = &m_out.mtilde[node];
        for j in 1..=content.len() as i64 {
            if content[j as usize - 1] == 0 {
                continue;
            }
            let mut in_content = content.clone();
            in_content[j as usize - 1] -= 1;
            if !valid_out_content(&in_content, content.len() as i64) {
                continue;
            }
            // The input rows must still interlace: lower input row vs this.
            let level = q[node];
            let lower_in: Vec<i64> = if node == i0 {
                below.to_vec()
            } else {
                let mut v = m_out.mtilde[node - 1].clone();
                v[positions[node - 1] as usize - 1] -= 1;
                v
            };
            if !interlaces(
                Row {
                    content: &lower_in,
                    len: level - 1,
                },
                Row {
                    content: &in_content,
                    len: level,
                },
            ) {
                continue;
            }
            positions[node] = j;
            rec(m_out, q, below, i0, x_leaves, node + 1, positions, results);
        }
    }
    rec(m_out, &q, &below, i0, x_leaves, i0, &mut positions, &mut results);
    Ok(results)
}

#[allow(clippy::too_many_arguments)]
fn emit_backward(
    m_out: &CompressedGt,
    q: &[i64],
    below: &[i64],
    i0: usize,
    x_leaves: bool,
    positions: &[i64],
    results: &mut Vec<FastEntry>,
) {
    let nodes = q.len();
    // Coefficient: the forward W product evaluated on the input rows.
    let mut value = SqrtRational::one();
    let mut in_contents: Vec<Vec<i64>> = Vec::with_capacity(nodes);
    for i in 0..nodes {
        if i < i0 {
            in_contents.push(m_out.mtilde[i].clone());
        } else {
            let mut v = m_out.mtilde[i].clone();
            v[positions[i] as usize - 1] -= 1;
            in_contents.push(v);
        }
    }
    if x_leaves {
        // Zero input weight at the vanished level forces its row to duplicate
        // the row below; other chains do not connect these labels.
        let dup_ok = in_contents[i0]
            .iter()
            .enumerate()
            .all(|(j, &e)| e == below.get(j).copied().unwrap_or(0));
        if !dup_ok {
            return;
        }
    }
    for i in i0..nodes {
        let level = q[i];
        let upper = Row {
            content: &in_contents[i],
            len: level,
        };
        let w = if i == i0 {
            w_scalar(
                upper,
                positions[i],
                Row {
                    content: below,
                    len: level - 1,
                },
            )
        } else {
            w_pass(
                upper,
                positions[i],
                Row {
                    content: &in_contents[i - 1],
                    len: level - 1,
                },
                positions[i - 1],
            )
        };
        if w.is_zero() {
            return;
        }
        value.mul(&w);
    }
    // Input label: drop the x node when its weight reaches zero, trimming
    // truncation widths accordingly.
    let (mtilde, p) = if x_leaves {
        let mut rows = Vec::with_capacity(nodes - 1);
        let mut p = Vec::with_capacity(nodes - 1);
        for i in 0..nodes {
            if i == i0 {
                continue;
            }
            let slot = rows.len() + 1;
            let mut row = in_contents[i].clone();
            if row.iter().skip(slot).any(|&e| e != 0) {
                // More live entries than remaining distinct symbols: the
                // candidate input is not a valid pattern.
                return;
            }
            row.resize(slot, 0);
            rows.push(row);
            p.push(q[i] as u32);
        }
        (rows, p)
    } else {
        let mut rows = Vec::with_capacity(nodes);
        for (i, c) in in_contents.iter().enumerate() {
            let mut row = c.clone();
            row.resize(i + 1, 0);
            rows.push(row);
        }
        (rows, m_out.p.clone())
    };
    let row = positions[nodes - 1] as usize;
    results.push(FastEntry {
        row,
        label: CompressedGt { mtilde, p },
        value,
    });
}

/// Compare two compressed patterns (over the same d) by the lexicographic
/// order of their full row sequences, walking only the support union.
pub fn cmp_full_lex(a: &CompressedGt, b: &CompressedGt) -> Ordering {
    let mut levels: Vec<u32> = a.p.iter().chain(b.p.iter()).copied().collect();
    levels.sort_unstable();
    levels.dedup();
    let content_at = |m: &CompressedGt, level: u32| -> Vec<i64> {
        let k = m.p.iter().filter(|&&pv| pv <= level).count();
        if k == 0 {
            Vec::new()
        } else {
            m.mtilde[k - 1].clone()
        }
    };
    for &level in &levels {
        let ca = content_at(a, level);
        let cb = content_at(b, level);
        let n = ca.len().max(cb.len());
        for i in 0..n {
            let va = ca.get(i).copied().unwrap_or(0);
            let vb = cb.get(i).copied().unwrap_or(0);
            match va.cmp(&vb) {
                Ordering::Equal => {}
                other => return other,
            }
        }
    }
    Ordering::Equal
}

/// Sign of the dense phase convention for the block `lambda + e_row`: the
/// highest-weight column's first nonzero coefficient (in pattern-then-symbol
/// order) is positive there, so the raw chain product's sign at that leading
/// entry is the correction.
pub fn block_sign(d: u32, lambda: &[i64], row: usize) -> Result<i8> {
    let mut mu: Vec<i64> = lambda.to_vec();
    if row > mu.len() + 1 {
        return Err(Error::InvalidBox {
            row,
            weight: lambda.to_vec(),
        });
    }
    if row == mu.len() + 1 {
        mu.push(1);
    } else {
        mu[row - 1] += 1;
    }
    // Top pattern of mu in compressed form: support 1..len(mu), prefix rows.
    let top = CompressedGt {
        mtilde: (1..=mu.len()).map(|k| mu[..k].to_vec()).collect(),
        p: (1..=mu.len() as u32).collect(),
    };
    let mut best: Option<(CompressedGt, u32, i8)> = None;
    for x in 1..=mu.len() as u32 {
        for entry in backward_chains_raw(d, &top, x)? {
            if entry.row != row || entry.value.is_zero() {
                continue;
            }
            let candidate = (entry.label, x, entry.value.sign);
            let better = match &best {
                None => true,
                Some((bl, bx, _)) => match cmp_full_lex(&candidate.0, bl) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => candidate.1 < *bx,
                },
            };
            if better {
                best = Some(candidate);
            }
        }
    }
    best.map(|(_, _, sign)| sign).ok_or_else(|| {
        Error::BlockMissing(format!("no chain reaches block row {row} of {lambda:?}"))
    })
}
