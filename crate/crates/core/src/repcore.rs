//! Highest weights, Young diagrams, Gelfand-Tsetlin patterns and box-addition
//! paths for the unitary group U(d).
//!
//! A U(d) irrep is labelled by a weakly decreasing integer tuple of length d
//! (a *highest weight*); nonnegative tuples are Young diagrams. Basis vectors
//! of an irrep are labelled by triangular integer arrays with interlacing rows
//! (*GT patterns*), stored shortest row first, so the last row is the highest
//! weight. Mixed weights (negative entries) are first-class; only operations
//! that genuinely need a Young diagram reject them.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Default cap on the number of enumerated labels.
pub const DEFAULT_ENUM_CAP: u128 = 1_000_000;

/// A weakly decreasing integer tuple of length `d`, labelling a U(d) irrep.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    entries: Vec<i64>,
}

impl HighestWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Shape("highest weight must have d >= 1 entries".into()));
        }
        if !entries.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Shape(format!(
                "highest weight {entries:?} is not weakly decreasing"
            )));
        }
        Ok(Self { entries })
    }

    /// The zero weight (trivial irrep) of U(d).
    pub fn zero(d: usize) -> Self {
        Self { entries: vec![0; d] }
    }

    /// A partition padded with zeros to length `d`.
    pub fn from_partition(parts: &[i64], d: usize) -> Result<Self> {
        if parts.len() > d {
            return Err(Error::Shape(format!(
                "partition {parts:?} has more than d = {d} rows"
            )));
        }
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::Shape(format!("partition {parts:?} has negative parts")));
        }
        let mut entries = parts.to_vec();
        entries.resize(d, 0);
        Self::new(entries)
    }

    pub fn d(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// True iff all entries are nonnegative.
    pub fn is_young_diagram(&self) -> bool {
        self.entries.iter().all(|&e| e >= 0)
    }

    /// Total content (box count for Young diagrams).
    pub fn boxes(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Number of nonzero entries. For Young diagrams this is the number of rows.
    pub fn nonzero_len(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    /// Increment entry `row` (1-based); errors if monotonicity breaks.
    pub fn add_box(&self, row: usize) -> Result<Self> {
        if row == 0 || row > self.d() {
            return Err(Error::IndexOutOfRange(format!(
                "row {row} outside 1..={}",
                self.d()
            )));
        }
        let mut entries = self.entries.clone();
        entries[row - 1] += 1;
        if row >= 2 && entries[row - 2] < entries[row - 1] {
            return Err(Error::InvalidBox {
                row,
                weight: self.entries.clone(),
            });
        }
        Ok(Self { entries })
    }

    /// Decrement entry `row` (1-based); errors if monotonicity breaks.
    pub fn remove_box(&self, row: usize) -> Result<Self> {
        if row == 0 || row > self.d() {
            return Err(Error::IndexOutOfRange(format!(
                "row {row} outside 1..={}",
                self.d()
            )));
        }
        let mut entries = self.entries.clone();
        entries[row - 1] -= 1;
        if row < self.d() && entries[row - 1] < entries[row] {
            return Err(Error::InvalidBox {
                row,
                weight: self.entries.clone(),
            });
        }
        Ok(Self { entries })
    }

    /// Rows where a box may be added keeping the tuple weakly decreasing.
    pub fn addable_rows(&self) -> Vec<usize> {
        (1..=self.d())
            .filter(|&r| r == 1 || self.entries[r - 2] > self.entries[r - 1])
            .collect()
    }

    /// Rows where a box may be removed keeping the tuple weakly decreasing.
    pub fn removable_rows(&self) -> Vec<usize> {
        (1..=self.d())
            .filter(|&r| r == self.d() || self.entries[r - 1] > self.entries[r])
            .collect()
    }

    /// Weyl dimension formula, prod_{i<j} (l_i - l_j + j - i)/(j - i).
    ///
    /// Evaluated with the zero tail factored out, so the cost is quadratic in
    /// the number of nonzero entries rather than in d.
    pub fn weyl_dimension_big(&self) -> BigUint {
        weyl_dimension_trimmed(&self.entries, self.d() as u64)
    }

    /// Weyl dimension as u128, with a cap.
    pub fn weyl_dimension_capped(&self, cap: u128) -> Result<u128> {
        let big = self.weyl_dimension_big();
        match big.to_u128() {
            Some(v) if v <= cap => Ok(v),
            Some(v) => Err(Error::CapExceeded { size: v, cap }),
            None => Err(Error::CapExceeded {
                size: u128::MAX,
                cap,
            }),
        }
    }

    /// Weyl dimension for desk-scale weights.
    pub fn weyl_dimension(&self) -> u128 {
        self.weyl_dimension_big()
            .to_u128()
            .expect("dimension exceeds u128; use weyl_dimension_big")
    }

    /// Exact ratio dim(self + e_row) / dim(self), in cost independent of d.
    pub fn dim_ratio_add_box(&self, row: usize) -> Result<BigRational> {
        self.add_box(row)?;
        Ok(dim_ratio_add_box_trimmed(
            &self.entries,
            self.d() as u64,
            row,
        ))
    }
}

/// Weyl dimension of the U(d) irrep whose highest weight is `entries` padded
/// with zeros to length d. Cost is quadratic in the support size.
pub fn weyl_dimension_trimmed(entries: &[i64], d: u64) -> BigUint {
    let d = d as i64;
    assert!(entries.len() as i64 <= d, "support longer than d");
    let ell = entries
        .iter()
        .rposition(|&e| e != 0)
        .map(|p| p + 1)
        .unwrap_or(0) as i64;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let mul = |acc: &mut BigUint, v: i64| {
        debug_assert!(v > 0, "Weyl factor must be positive");
        *acc *= BigUint::from(v as u64);
    };
    for i in 1..=ell {
        let li = entries[(i - 1) as usize];
        // Explicit pairs within the support.
        for j in (i + 1)..=ell {
            let lj = entries[(j - 1) as usize];
            mul(&mut num, li - lj + j - i);
            mul(&mut den, j - i);
        }
        // Tail pairs j in (ell, d]: lambda_j = 0, so the factors are the
        // consecutive integers (li + j - i) / (j - i); the ratio of the two
        // runs collapses to li boundary factors.
        if ell < d {
            // A zero tail implies every supported entry is positive.
            debug_assert!(li > 0);
            for m in 1..=li {
                mul(&mut num, d - i + m);
                mul(&mut den, ell - i + m);
            }
        }
    }
    let num = BigRational::new(num.into(), den.into());
    debug_assert!(num.is_integer());
    num.to_integer()
        .to_biguint()
        .expect("Weyl dimension is positive")
}

/// Exact ratio dim(partition + e_row)/dim(partition) over U(d), on the
/// trimmed representation; cost independent of d.
pub fn dim_ratio_add_box_trimmed(parts: &[i64], d: u64, row: usize) -> BigRational {
    let d = d as i64;
    let r = row as i64;
    let lr = parts.get(row - 1).copied().unwrap_or(0);
    let ell = parts
        .iter()
        .rposition(|&e| e != 0)
        .map(|p| (p + 1) as i64)
        .unwrap_or(0)
        .max(r);
    let mut ratio = BigRational::one();
    for j in 1..=ell {
        if j == r {
            continue;
        }
        let lj = parts.get(j as usize - 1).copied().unwrap_or(0);
        let base = lr - lj + j - r;
        ratio *= BigRational::new((base + 1).into(), base.into());
    }
    if ell < d {
        // tail j in (ell, d]: lj = 0: prod (lr + j - r + 1)/(lr + j - r)
        // = (lr + d - r + 1)/(lr + ell - r + 1).
        ratio *= BigRational::new((lr + d - r + 1).into(), (lr + ell - r + 1).into());
    }
    debug_assert!(ratio.is_positive(), "dimension ratio must be positive");
    ratio
}

/// Entries with trailing zeros removed (canonical compact weight form).
pub fn trim_trailing_zeros(entries: &[i64]) -> Vec<i64> {
    let mut v = entries.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl std::fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A triangular integer array with interlacing rows, stored shortest row
/// first; `rows[k]` has `k + 1` entries and the last row is the highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GtPattern {
    rows: Vec<Vec<i64>>,
}

impl GtPattern {
    /// Builds a pattern after checking the triangular shape only; interlacing
    /// is checked separately by [`GtPattern::is_valid`].
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    k + 1,
                    row.len(),
                    k + 1
                )));
            }
        }
        if rows.is_empty() {
            return Err(Error::Shape("pattern must have at least one row".into()));
        }
        Ok(Self { rows })
    }

    /// The all-zero pattern for the trivial irrep of U(d).
    pub fn zero(d: usize) -> Self {
        Self {
            rows: (1..=d).map(|k| vec![0; k]).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    /// Row at 1-based level `k` (so it has `k` entries).
    pub fn row(&self, k: usize) -> &[i64] {
        &self.rows[k - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn top(&self) -> HighestWeight {
        HighestWeight::new(self.rows.last().unwrap().clone()).expect("top row weakly decreasing")
    }

    /// True iff every adjacent row pair interlaces:
    /// rows[k+1][i] >= rows[k][i] >= rows[k+1][i+1].
    pub fn is_valid(&self) -> bool {
        for k in 0..self.rows.len() - 1 {
            let lower = &self.rows[k];
            let upper = &self.rows[k + 1];
            for i in 0..lower.len() {
                if !(upper[i] >= lower[i] && lower[i] >= upper[i + 1]) {
                    return false;
                }
            }
        }
        // Rows themselves weakly decreasing follows from interlacing for all
        // but the first row, which has a single entry; still check the top.
        self.rows
            .last()
            .map(|r| r.windows(2).all(|w| w[0] >= w[1]))
            .unwrap_or(true)
    }

    /// Row-sum differences w_k = rowsum(k) - rowsum(k-1).
    pub fn weight(&self) -> Vec<i64> {
        let mut prev = 0i64;
        self.rows
            .iter()
            .map(|row| {
                let s: i64 = row.iter().sum();
                let w = s - prev;
                prev = s;
                w
            })
            .collect()
    }
}

impl std::fmt::Display for GtPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (i, e) in row.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")?;
        }
        write!(f, ")")
    }
}

/// Validates interlacing on every adjacent row pair.
pub fn validate_gt(p: &GtPattern) -> bool {
    p.is_valid()
}

/// All GT patterns with the given top row, in lexicographic order on the row
/// tuples read shortest row first. Errors with `CapExceeded` when the Weyl
/// dimension exceeds `cap`.
pub fn enumerate_gt_capped(hw: &HighestWeight, cap: u128) -> Result<Vec<GtPattern>> {
    let dim = hw.weyl_dimension_capped(cap)?;
    let mut out: Vec<Vec<Vec<i64>>> = Vec::with_capacity(dim as usize);
    let mut stack: Vec<Vec<i64>> = vec![hw.entries().to_vec()];
    // Depth-first from the top row down, choosing each shorter row.
    fn descend(stack: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
        let upper = stack.last().unwrap().clone();
        if upper.len() == 1 {
            let mut rows = stack.clone();
            rows.reverse();
            out.push(rows);
            return;
        }
        let n = upper.len() - 1;
        let mut lower = vec![0i64; n];
        fn choose(
            i: usize,
            upper: &[i64],
            lower: &mut Vec<i64>,
            stack: &mut Vec<Vec<i64>>,
            out: &mut Vec<Vec<Vec<i64>>>,
        ) {
            if i == lower.len() {
                stack.push(lower.clone());
                descend(stack, out);
                stack.pop();
                return;
            }
            // upper[i] >= lower[i] >= upper[i+1]
            for v in upper[i + 1]..=upper[i] {
                lower[i] = v;
                choose(i + 1, upper, lower, stack, out);
            }
        }
        choose(0, &upper, &mut lower, stack, out);
    }
    descend(&mut stack, &mut out);
    debug_assert_eq!(out.len() as u128, dim);
    out.sort();
    out.into_iter().map(GtPattern::new).collect()
}

/// [`enumerate_gt_capped`] with the default cap.
pub fn enumerate_gt(hw: &HighestWeight) -> Result<Vec<GtPattern>> {
    enumerate_gt_capped(hw, DEFAULT_ENUM_CAP)
}

/// A chain of Young diagrams from the empty diagram, each step adding one box.
/// Labels a basis vector of the multiplicity space of an irrep inside the
/// tensor power of the defining representation (equivalently, a standard
/// Young tableau).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathLabel {
    diagrams: Vec<HighestWeight>,
}

impl PathLabel {
    pub fn new(diagrams: Vec<HighestWeight>) -> Result<Self> {
        if diagrams.is_empty() || diagrams[0].boxes() != 0 {
            return Err(Error::Shape("path must start at the empty diagram".into()));
        }
        for w in diagrams.windows(2) {
            let prev = &w[0];
            let next = &w[1];
            if prev.d() != next.d() {
                return Err(Error::Shape("path steps must share d".into()));
            }
            let mut diff_rows = 0;
            for r in 0..prev.d() {
                let delta = next.entries()[r] - prev.entries()[r];
                match delta {
                    0 => {}
                    1 => diff_rows += 1,
                    _ => {
                        return Err(Error::Shape(format!(
                            "step {prev} -> {next} is not a single box addition"
                        )))
                    }
                }
            }
            if diff_rows != 1 || !next.is_young_diagram() {
                return Err(Error::Shape(format!(
                    "step {prev} -> {next} is not a single box addition"
                )));
            }
        }
        Ok(Self { diagrams })
    }

    pub fn diagrams(&self) -> &[HighestWeight] {
        &self.diagrams
    }

    pub fn len(&self) -> usize {
        self.diagrams.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The row receiving the box at step `k` (1-based), as a 1-based row index.
    pub fn step_row(&self, k: usize) -> usize {
        let prev = &self.diagrams[k - 1];
        let next = &self.diagrams[k];
        (0..prev.d())
            .find(|&r| next.entries()[r] == prev.entries()[r] + 1)
            .expect("validated step")
            + 1
    }
}

/// All box-addition chains from the empty diagram to `lambda` (standard Young
/// tableaux of that shape), in lexicographic order.
pub fn enumerate_paths_capped(
    t: usize,
    lambda: &HighestWeight,
    cap: u128,
) -> Result<Vec<PathLabel>> {
    if !lambda.is_young_diagram() {
        return Err(Error::Shape(format!("{lambda} is not a Young diagram")));
    }
    if lambda.boxes() != t as i64 {
        return Err(Error::Shape(format!("{lambda} does not have {t} boxes")));
    }
    let d = lambda.d();
    let mut out: Vec<Vec<HighestWeight>> = Vec::new();
    let mut chain = vec![HighestWeight::zero(d)];
    fn grow(
        chain: &mut Vec<HighestWeight>,
        target: &HighestWeight,
        out: &mut Vec<Vec<HighestWeight>>,
        cap: u128,
    ) -> Result<()> {
        let cur = chain.last().unwrap().clone();
        if &cur == target {
            if out.len() as u128 >= cap {
                return Err(Error::CapExceeded {
                    size: out.len() as u128 + 1,
                    cap,
                });
            }
            out.push(chain.clone());
            return Ok(());
        }
        for r in cur.addable_rows() {
            if cur.entries()[r - 1] < target.entries()[r - 1] {
                chain.push(cur.add_box(r).expect("addable row"));
                grow(chain, target, out, cap)?;
                chain.pop();
            }
        }
        Ok(())
    }
    grow(&mut chain, lambda, &mut out, cap)?;
    out.sort();
    out.into_iter().map(PathLabel::new).collect()
}

/// [`enumerate_paths_capped`] with the default cap.
pub fn enumerate_paths(t: usize, lambda: &HighestWeight) -> Result<Vec<PathLabel>> {
    enumerate_paths_capped(t, lambda, DEFAULT_ENUM_CAP)
}

/// All partitions of `n` with at most `max_rows` rows, in lexicographically
/// decreasing order starting from (n).
pub fn partitions(n: usize, max_rows: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur: Vec<i64> = Vec::new();
    fn rec(remaining: i64, max_part: i64, rows_left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        if rows_left == 0 {
            return;
        }
        let top = remaining.min(max_part);
        for p in (1..=top).rev() {
            cur.push(p);
            rec(remaining - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    rec(n as i64, n as i64, max_rows, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw(entries: &[i64]) -> HighestWeight {
        HighestWeight::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn validate_gt_basics() {
        let p = GtPattern::new(vec![vec![0], vec![2, 0]]).unwrap();
        assert!(validate_gt(&p));
        let q = GtPattern::new(vec![vec![3], vec![2, 0]]).unwrap();
        assert!(!validate_gt(&q));
    }

    #[test]
    fn validate_gt_worked_five_row_pattern() {
        let m = GtPattern::new(vec![
            vec![0],
            vec![2, 0],
            vec![2, 0, 0],
            vec![2, 1, 0, 0],
            vec![3, 2, 0, 0, 0],
        ])
        .unwrap();
        assert!(validate_gt(&m));
    }

    #[test]
    fn shape_errors() {
        assert!(GtPattern::new(vec![vec![0, 0]]).is_err());
        assert!(GtPattern::new(vec![vec![0], vec![1, 0], vec![1]]).is_err());
    }

    #[test]
    fn weyl_dimension_examples() {
        assert_eq!(hw(&[1, 0]).weyl_dimension(), 2);
        // Derived by enumerating GT patterns with top row (2,0).
        assert_eq!(hw(&[2, 0]).weyl_dimension(), 3);
        // Derived by enumerating GT patterns with top row (2,1,0).
        assert_eq!(hw(&[2, 1, 0]).weyl_dimension(), 8);
        assert_eq!(hw(&[0, -1]).weyl_dimension(), 2);
    }

    #[test]
    fn weyl_dimension_counts_patterns() {
        for d in 1..=5usize {
            for n in 0..=4usize {
                for parts in partitions(n, d) {
                    let w = HighestWeight::from_partition(&parts, d).unwrap();
                    let pats = enumerate_gt(&w).unwrap();
                    assert_eq!(pats.len() as u128, w.weyl_dimension(), "hw {w}");
                    assert!(pats.iter().all(validate_gt));
                }
            }
        }
    }

    #[test]
    fn weyl_dimension_mixed_weights() {
        // Dual defining of U(3) has dimension 3; check against enumeration.
        let w = hw(&[0, 0, -1]);
        assert_eq!(w.weyl_dimension(), 3);
        assert_eq!(enumerate_gt(&w).unwrap().len(), 3);
        let w = hw(&[1, 0, -1]);
        assert_eq!(enumerate_gt(&w).unwrap().len() as u128, w.weyl_dimension());
    }

    #[test]
    fn weyl_dimension_large_d() {
        // dim of the defining rep is d; of (2,0,...) is d(d+1)/2.
        let d = 1 << 20;
        let mut parts = vec![1i64];
        parts.resize(1, 1);
        let w = HighestWeight::from_partition(&parts, d).unwrap();
        assert_eq!(w.weyl_dimension_big(), BigUint::from(d as u64));
        let w2 = HighestWeight::from_partition(&[2], d).unwrap();
        let expect = BigUint::from(d as u64) * BigUint::from((d + 1) as u64) / BigUint::from(2u8);
        assert_eq!(w2.weyl_dimension_big(), expect);
    }

    #[test]
    fn dim_ratio_matches_quotient() {
        for d in 2..=5usize {
            for n in 0..=3usize {
                for parts in partitions(n, d) {
                    let w = HighestWeight::from_partition(&parts, d).unwrap();
                    for r in w.addable_rows() {
                        let target = w.add_box(r).unwrap();
                        let ratio = w.dim_ratio_add_box(r).unwrap();
                        let expect = BigRational::new(
                            target.weyl_dimension_big().into(),
                            w.weyl_dimension_big().into(),
                        );
                        assert_eq!(ratio, expect, "hw {w} row {r}");
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_gt_examples() {
        let pats = enumerate_gt(&hw(&[1, 0])).unwrap();
        assert_eq!(pats.len(), 2);
        assert_eq!(pats[0].rows(), &[vec![0], vec![1, 0]]);
        assert_eq!(pats[1].rows(), &[vec![1], vec![1, 0]]);

        let pats = enumerate_gt(&hw(&[2, 0])).unwrap();
        let bottoms: Vec<i64> = pats.iter().map(|p| p.row(1)[0]).collect();
        assert_eq!(bottoms, vec![0, 1, 2]);

        let pats = enumerate_gt(&hw(&[0])).unwrap();
        assert_eq!(pats.len(), 1);
        assert_eq!(pats[0].rows(), &[vec![0]]);
    }

    #[test]
    fn enumerate_gt_cap() {
        let w = hw(&[2, 0]);
        match enumerate_gt_capped(&w, 2) {
            Err(Error::CapExceeded { size: 3, cap: 2 }) => {}
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn add_box_examples() {
        assert_eq!(hw(&[1, 0]).add_box(1).unwrap(), hw(&[2, 0]));
        assert_eq!(hw(&[1, 0]).add_box(2).unwrap(), hw(&[1, 1]));
        assert!(matches!(
            hw(&[1, 1]).add_box(2),
            Err(Error::InvalidBox { row: 2, .. })
        ));
    }

    #[test]
    fn weight_of_examples() {
        let p = GtPattern::new(vec![vec![0], vec![2, 0]]).unwrap();
        assert_eq!(p.weight(), vec![0, 2]);
        let m = GtPattern::new(vec![
            vec![0],
            vec![2, 0],
            vec![2, 0, 0],
            vec![2, 1, 0, 0],
            vec![3, 2, 0, 0, 0],
        ])
        .unwrap();
        // Row sums 0,2,2,3,5 of the printed pattern.
        assert_eq!(m.weight(), vec![0, 2, 0, 1, 2]);
        let p = GtPattern::new(vec![vec![1], vec![1, 0]]).unwrap();
        assert_eq!(p.weight(), vec![1, 0]);
    }

    #[test]
    fn weight_sums_to_box_count() {
        for parts in partitions(4, 3) {
            let w = HighestWeight::from_partition(&parts, 4).unwrap();
            for p in enumerate_gt(&w).unwrap() {
                assert_eq!(p.weight().iter().sum::<i64>(), w.boxes());
            }
        }
    }

    #[test]
    fn enumerate_paths_examples() {
        let d = 3;
        let two = HighestWeight::from_partition(&[2], d).unwrap();
        assert_eq!(enumerate_paths(2, &two).unwrap().len(), 1);
        let one_one = HighestWeight::from_partition(&[1, 1], d).unwrap();
        assert_eq!(enumerate_paths(2, &one_one).unwrap().len(), 1);
        // Hook length check: f^(2,1) = 3!/(3*1*1) = 2.
        let two_one = HighestWeight::from_partition(&[2, 1], d).unwrap();
        assert_eq!(enumerate_paths(3, &two_one).unwrap().len(), 2);
    }

    /// Hook length formula, used as an independent oracle for path counts.
    fn hook_length_count(parts: &[i64]) -> u128 {
        let n: i64 = parts.iter().sum();
        let mut numer: u128 = 1;
        for k in 1..=n {
            numer *= k as u128;
        }
        let mut hooks: u128 = 1;
        for (i, &len) in parts.iter().enumerate() {
            for j in 0..len {
                let arm = len - j - 1;
                let leg = parts[i + 1..].iter().filter(|&&l| l > j).count() as i64;
                hooks *= (arm + leg + 1) as u128;
            }
        }
        numer / hooks
    }

    #[test]
    fn path_counts_match_hook_lengths() {
        for t in 1..=5usize {
            for parts in partitions(t, t) {
                let w = HighestWeight::from_partition(&parts, t).unwrap();
                let paths = enumerate_paths(t, &w).unwrap();
                assert_eq!(paths.len() as u128, hook_length_count(&parts), "{w}");
            }
        }
    }

    #[test]
    fn schur_weyl_dimension_count() {
        // sum_lambda dim(lambda) * f^lambda = d^t for t <= 4, d <= 4.
        for d in 1..=4usize {
            for t in 1..=4usize {
                let mut total: u128 = 0;
                for parts in partitions(t, d) {
                    let w = HighestWeight::from_partition(&parts, d).unwrap();
                    total += w.weyl_dimension() * enumerate_paths(t, &w).unwrap().len() as u128;
                }
                assert_eq!(total, (d as u128).pow(t as u32));
            }
        }
    }
}
