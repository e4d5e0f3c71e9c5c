//! Compressed Gelfand-Tsetlin patterns.
//!
//! A GT pattern over the alphabet [d] whose weight is supported on rows
//! p_1 < ... < p_l is redundant: every row off the support duplicates the row
//! below it with a zero appended. Such a pattern is stored as the pair
//! (mtilde, p), where mtilde keeps only the support rows truncated to their
//! live entries. The reversible preprocessing steps A, B, C, D update this
//! pair when a new symbol arrives, ahead of the box-adding transform.

use crate::error::{Error, Result};
use crate::repcore::GtPattern;

/// Alphabet map: strictly increasing symbols from [d], possibly padded with
/// trailing zeros by the preprocessing step B (the padding keeps the register
/// length equal to the number of symbols processed so far).
pub type Alphabet = Vec<u32>;

/// Number of live (nonzero) symbols of an alphabet register.
pub fn alphabet_len(p: &Alphabet) -> usize {
    p.iter().filter(|&&s| s != 0).count()
}

fn live_prefix(p: &Alphabet) -> Result<&[u32]> {
    let l = alphabet_len(p);
    let prefix = &p[..l];
    if p[l..].iter().any(|&s| s != 0) {
        return Err(Error::InconsistentInputs(format!(
            "alphabet {p:?} has interior zero padding"
        )));
    }
    if !prefix.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InconsistentInputs(format!(
            "alphabet {p:?} is not strictly increasing"
        )));
    }
    Ok(prefix)
}

/// A compressed GT pattern: the support rows `mtilde` (row i truncated to i
/// entries) plus the alphabet map `p` listing the weight-support rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompressedGt {
    /// Truncated support rows, shortest first; row i has i entries. Empty for
    /// the trivial irrep.
    pub mtilde: Vec<Vec<i64>>,
    /// Strictly increasing support rows of the full pattern.
    pub p: Vec<u32>,
}

impl CompressedGt {
    pub fn empty() -> Self {
        Self {
            mtilde: Vec::new(),
            p: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.mtilde.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mtilde.is_empty()
    }

    /// Top (longest) truncated row; empty slice for the trivial pattern.
    pub fn top_row(&self) -> &[i64] {
        self.mtilde.last().map(|r| r.as_slice()).unwrap_or(&[])
    }

    fn check(&self) -> Result<()> {
        if self.mtilde.len() != self.p.len() {
            return Err(Error::InvalidPattern(format!(
                "{} support rows vs {} alphabet symbols",
                self.mtilde.len(),
                self.p.len()
            )));
        }
        for (i, row) in self.mtilde.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::InvalidPattern(format!(
                    "support row {} has {} entries",
                    i + 1,
                    row.len()
                )));
            }
        }
        if !self.p.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidPattern(format!(
                "support rows {:?} not strictly increasing",
                self.p
            )));
        }
        Ok(())
    }
}

/// Compresses a valid GT pattern over the alphabet [d] into (mtilde, p).
///
/// The support p lists the rows with nonzero weight; mtilde keeps the pattern
/// row at each support level, truncated to as many entries as support rows
/// seen so far.
pub fn compress(m: &GtPattern) -> Result<CompressedGt> {
    if !m.is_valid() {
        return Err(Error::InvalidPattern(format!("{m} violates interlacing")));
    }
    let weight = m.weight();
    if weight.iter().any(|&w| w < 0) {
        return Err(Error::InvalidPattern(format!(
            "{m} has a negative weight entry; compression needs alphabet semantics"
        )));
    }
    let mut mtilde = Vec::new();
    let mut p = Vec::new();
    for (k, &w) in weight.iter().enumerate() {
        if w != 0 {
            let level = k + 1;
            p.push(level as u32);
            let row = &m.row(level)[..p.len()];
            mtilde.push(row.to_vec());
        }
    }
    let out = CompressedGt { mtilde, p };
    out.check()?;
    Ok(out)
}

/// Reconstructs the full d-row pattern from (mtilde, p); inverse of
/// [`compress`].
pub fn decompress(c: &CompressedGt, d: usize) -> Result<GtPattern> {
    c.check()?;
    if let Some(&last) = c.p.last() {
        if last as usize > d {
            return Err(Error::AlphabetOutOfRange {
                symbol: last,
                d: d as u32,
            });
        }
    }
    let mut rows = Vec::with_capacity(d);
    let mut support_seen = 0usize;
    for level in 1..=d {
        if support_seen < c.p.len() && c.p[support_seen] as usize == level {
            support_seen += 1;
        }
        let mut row = if support_seen == 0 {
            Vec::new()
        } else {
            c.mtilde[support_seen - 1].clone()
        };
        row.resize(level, 0);
        rows.push(row);
    }
    let out = GtPattern::new(rows)?;
    if !out.is_valid() {
        return Err(Error::InvalidPattern(format!(
            "decompressed pattern {out} violates interlacing"
        )));
    }
    Ok(out)
}

/// Step A: classifies the incoming symbol against the alphabet.
///
/// Returns `(c, xtilde)`: `c = 1` with the symbol's 1-based position when it
/// is already present, `c = 0` with its 1-based insertion position otherwise.
pub fn op_a(p: &Alphabet, x: u32) -> Result<(u8, usize)> {
    if x == 0 {
        return Err(Error::AlphabetOutOfRange { symbol: 0, d: 0 });
    }
    let live = live_prefix(p)?;
    match live.binary_search(&x) {
        Ok(i) => Ok((1, i + 1)),
        Err(i) => Ok((0, i + 1)),
    }
}

/// Step B: updates the alphabet register. A repeated symbol appends a zero
/// pad; a new symbol is inserted at its sorted position. Errors when
/// `(c, xtilde)` disagrees with [`op_a`].
pub fn op_b(p: &Alphabet, x: u32, c: u8, xtilde: usize) -> Result<Alphabet> {
    if op_a(p, x)? != (c, xtilde) {
        return Err(Error::InconsistentInputs(format!(
            "(c, xtilde) = ({c}, {xtilde}) does not match op_a({p:?}, {x})"
        )));
    }
    let mut out = p.clone();
    if c == 1 {
        out.push(0);
    } else {
        out.insert(xtilde - 1, x);
    }
    Ok(out)
}

/// Step C: grows the truncated pattern register by one row. For a repeated
/// symbol (`c = 1`) the last row is duplicated (with a zero appended) at the
/// end; for a new symbol the duplicate of row `xtilde - 1` is inserted at
/// position `xtilde` and every higher row is shifted up with a zero appended.
pub fn op_c(c: u8, xtilde: usize, mtilde: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let k = mtilde.len() + 1;
    match c {
        1 => {
            if xtilde == 0 || xtilde > mtilde.len() {
                return Err(Error::IndexOutOfRange(format!(
                    "xtilde = {xtilde} must point at an existing row for c = 1"
                )));
            }
            let mut out = mtilde.to_vec();
            let mut last = out.last().cloned().unwrap_or_default();
            last.push(0);
            out.push(last);
            Ok(out)
        }
        0 => {
            if xtilde == 0 || xtilde > k {
                return Err(Error::IndexOutOfRange(format!(
                    "xtilde = {xtilde} outside 1..={k}"
                )));
            }
            let mut out = Vec::with_capacity(k);
            for l in 1..xtilde {
                out.push(mtilde[l - 1].clone());
            }
            for l in xtilde..=k {
                let mut row = if l == 1 {
                    Vec::new()
                } else {
                    mtilde[l - 2].clone()
                };
                row.push(0);
                out.push(row);
            }
            Ok(out)
        }
        _ => Err(Error::InconsistentInputs(format!("c = {c} is not a bit"))),
    }
}

/// Step D: uncomputes the bit `c` from `(xtilde, n)`.
///
/// The inserted-duplicate row of the `c = 0` branch forces a zero row-sum
/// difference at `xtilde`, while a support row always adds at least one box,
/// so `c` is recomputed as `rowsum(n_xtilde) - rowsum(n_{xtilde-1}) > 0`.
/// (The printed equivalence reads the other way around; the exhaustive
/// reversibility test fixes this orientation.)
pub fn op_d(c: u8, xtilde: usize, n: &[Vec<i64>]) -> Result<(usize, Vec<Vec<i64>>)> {
    if xtilde == 0 || xtilde > n.len() {
        return Err(Error::IndexOutOfRange(format!(
            "xtilde = {xtilde} outside 1..={}",
            n.len()
        )));
    }
    let sum_at = |l: usize| -> i64 {
        if l == 0 {
            0
        } else {
            n[l - 1].iter().sum()
        }
    };
    let diff = sum_at(xtilde) - sum_at(xtilde - 1);
    let recomputed = if diff > 0 { 1 } else { 0 };
    if recomputed != c {
        return Err(Error::IrreversibleState(format!(
            "row-sum difference {diff} at row {xtilde} recomputes c = {recomputed}, stored c = {c}"
        )));
    }
    Ok((xtilde, n.to_vec()))
}

/// Full preprocessing P = D . C . B . A for one incoming symbol.
///
/// Returns the updated alphabet register, the compressed position of the
/// symbol, and the intermediate pattern with the duplicated row inserted.
pub fn apply_p(
    p: &Alphabet,
    mtilde: &[Vec<i64>],
    x: u32,
) -> Result<(Alphabet, usize, Vec<Vec<i64>>)> {
    if alphabet_len(p) != mtilde.len() {
        return Err(Error::InconsistentInputs(format!(
            "alphabet has {} live symbols but pattern has {} rows",
            alphabet_len(p),
            mtilde.len()
        )));
    }
    let (c, xtilde) = op_a(p, x)?;
    let p_next = op_b(p, x, c, xtilde)?;
    let n = op_c(c, xtilde, mtilde)?;
    let (xtilde, n) = op_d(c, xtilde, &n)?;
    Ok((p_next, xtilde, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::{enumerate_gt, partitions, HighestWeight};

    fn pattern(rows: &[&[i64]]) -> GtPattern {
        GtPattern::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn compress_worked_example() {
        let m = pattern(&[
            &[0],
            &[2, 0],
            &[2, 0, 0],
            &[2, 1, 0, 0],
            &[3, 2, 0, 0, 0],
        ]);
        let c = compress(&m).unwrap();
        assert_eq!(
            c.mtilde,
            vec![vec![2], vec![2, 1], vec![3, 2, 0]],
            "support rows"
        );
        assert_eq!(c.p, vec![2, 4, 5]);
        assert_eq!(decompress(&c, 5).unwrap(), m);
    }

    #[test]
    fn compress_trivial_and_single() {
        for d in 1..=4usize {
            let zero = GtPattern::zero(d);
            let c = compress(&zero).unwrap();
            assert!(c.is_empty());
            assert!(c.p.is_empty());
            assert_eq!(decompress(&c, d).unwrap(), zero);
        }
        let m = pattern(&[&[1], &[1, 0]]);
        let c = compress(&m).unwrap();
        assert_eq!(c.mtilde, vec![vec![1]]);
        assert_eq!(c.p, vec![1]);
        assert_eq!(decompress(&c, 2).unwrap(), m);
    }

    #[test]
    fn decompress_trivial() {
        let c = CompressedGt::empty();
        assert_eq!(decompress(&c, 3).unwrap(), GtPattern::zero(3));
    }

    #[test]
    fn decompress_rejects_out_of_range() {
        let c = CompressedGt {
            mtilde: vec![vec![1]],
            p: vec![4],
        };
        assert!(matches!(
            decompress(&c, 3),
            Err(Error::AlphabetOutOfRange { symbol: 4, d: 3 })
        ));
    }

    #[test]
    fn round_trip_all_small_patterns() {
        // All Young-diagram patterns with <= 4 boxes, d <= 6.
        for d in 1..=6usize {
            for n in 0..=4usize {
                for parts in partitions(n, d) {
                    let hw = HighestWeight::from_partition(&parts, d).unwrap();
                    for m in enumerate_gt(&hw).unwrap() {
                        let c = compress(&m).unwrap();
                        assert_eq!(decompress(&c, d).unwrap(), m, "pattern {m}");
                        assert_eq!(c.p.len(), c.mtilde.len());
                    }
                }
            }
        }
    }

    #[test]
    fn op_a_examples() {
        assert_eq!(op_a(&vec![2, 4, 5], 4).unwrap(), (1, 2));
        assert_eq!(op_a(&vec![2, 4, 5], 3).unwrap(), (0, 2));
        assert_eq!(op_a(&vec![], 7).unwrap(), (0, 1));
        // Zero padding is ignored in the classification.
        assert_eq!(op_a(&vec![2, 4, 5, 0], 6).unwrap(), (0, 4));
    }

    #[test]
    fn op_b_examples() {
        assert_eq!(op_b(&vec![2, 4, 5], 4, 1, 2).unwrap(), vec![2, 4, 5, 0]);
        assert_eq!(op_b(&vec![2, 4, 5], 3, 0, 2).unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(op_b(&vec![], 7, 0, 1).unwrap(), vec![7]);
        assert!(matches!(
            op_b(&vec![2, 4, 5], 3, 1, 2),
            Err(Error::InconsistentInputs(_))
        ));
    }

    #[test]
    fn op_c_examples() {
        let mt = vec![vec![2], vec![2, 1], vec![3, 2, 0]];
        assert_eq!(
            op_c(1, 2, &mt).unwrap(),
            vec![vec![2], vec![2, 1], vec![3, 2, 0], vec![3, 2, 0, 0]]
        );
        assert_eq!(
            op_c(0, 2, &mt).unwrap(),
            vec![vec![2], vec![2, 0], vec![2, 1, 0], vec![3, 2, 0, 0]]
        );
        // k = 1 base case: inserting into the empty pattern gives ((0)).
        assert_eq!(op_c(0, 1, &[]).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn op_d_recovers_c() {
        let mt = vec![vec![2], vec![2, 1], vec![3, 2, 0]];
        let n0 = op_c(0, 2, &mt).unwrap();
        assert!(op_d(0, 2, &n0).is_ok());
        assert!(matches!(
            op_d(1, 2, &n0),
            Err(Error::IrreversibleState(_))
        ));
        let n1 = op_c(1, 2, &mt).unwrap();
        assert!(op_d(1, 2, &n1).is_ok());
        assert!(matches!(
            op_d(0, 2, &n1),
            Err(Error::IrreversibleState(_))
        ));
    }

    #[test]
    fn apply_p_worked_example() {
        let p = vec![2, 4, 5];
        let mt = vec![vec![2], vec![2, 1], vec![3, 2, 0]];
        let (p2, xt, n) = apply_p(&p, &mt, 3).unwrap();
        assert_eq!(p2, vec![2, 3, 4, 5]);
        assert_eq!(xt, 2);
        assert_eq!(n, vec![vec![2], vec![2, 0], vec![2, 1, 0], vec![3, 2, 0, 0]]);
    }

    #[test]
    fn apply_p_base_case() {
        let (p2, xt, n) = apply_p(&vec![], &[], 1).unwrap();
        assert_eq!(p2, vec![1]);
        assert_eq!(xt, 1);
        assert_eq!(n, vec![vec![0]]);
    }

    /// Exhaustive injectivity of apply_p over d <= 3, k <= 3: enumerates all
    /// reachable (p, mtilde) states from <= 2 processed symbols and checks
    /// that one more symbol never collides.
    #[test]
    fn apply_p_injective_exhaustive() {
        let d = 3u32;
        // States reachable after processing j symbols, as compressed pairs
        // coming from actual patterns (all patterns over [d] with <= 2 boxes).
        let mut states: Vec<(Alphabet, Vec<Vec<i64>>)> = vec![(vec![], vec![])];
        for n in 1..=2usize {
            for parts in partitions(n, d as usize) {
                let hw = HighestWeight::from_partition(&parts, d as usize).unwrap();
                for m in enumerate_gt(&hw).unwrap() {
                    let c = compress(&m).unwrap();
                    states.push((c.p, c.mtilde));
                }
            }
        }
        use std::collections::HashMap;
        let mut seen: HashMap<(Alphabet, usize, Vec<Vec<i64>>), (Alphabet, Vec<Vec<i64>>, u32)> =
            HashMap::new();
        for (p, mt) in &states {
            for x in 1..=d {
                let out = apply_p(p, mt, x).unwrap();
                if let Some(prev) = seen.insert(out.clone(), (p.clone(), mt.clone(), x)) {
                    panic!(
                        "apply_p collision: ({p:?}, {mt:?}, {x}) and {prev:?} both map to {out:?}"
                    );
                }
            }
        }
    }
}
