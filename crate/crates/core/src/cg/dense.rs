//! Dense Clebsch-Gordan engine for U(d): ground truth at desk scale.
//!
//! The decomposition of V_lambda (x) V_factor is constructed directly from
//! the Lie-algebra action: each block's highest-weight vector is the kernel
//! of all raising operators restricted to the matching weight subspace, and
//! the remaining Gelfand-Tsetlin-aligned basis vectors follow by applying
//! lowering operators and solving the (full-column-rank) propagation systems
//! weight level by weight level. Phases are fixed by making the first nonzero
//! coefficient of every highest-weight vector real positive.

use nalgebra::DMatrix;

use crate::cg::generators::{generators_gt_capped, gt_lowering_amplitude, GeneratorSet};
use crate::cg::linalg::{nullspace, solve_dense};
use crate::error::{Error, Result};
use crate::repcore::{enumerate_gt_capped, GtPattern, HighestWeight, DEFAULT_ENUM_CAP};
use crate::C64;

/// The tensor factor of a CG decomposition: the defining representation of
/// U(d) or its dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Defining,
    DualDefining,
}

impl Factor {
    /// Weight of the 0-based factor basis vector `x`.
    pub fn weight_sign(self) -> i64 {
        match self {
            Factor::Defining => 1,
            Factor::DualDefining => -1,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Factor::Defining => "defining",
            Factor::DualDefining => "dual-defining",
        }
    }
}

/// One irreducible block mu of the decomposition, with its isometry
/// V_mu -> V_lambda (x) V_factor. Row index convention: `m * d + x` with `m`
/// the lambda-pattern index and `x` the 0-based factor index; columns follow
/// the mu-pattern order.
#[derive(Debug, Clone)]
pub struct CgBlock {
    pub mu: HighestWeight,
    pub mu_patterns: Vec<GtPattern>,
    pub isometry: DMatrix<C64>,
}

/// The full CG table of V_lambda (x) V_factor.
#[derive(Debug, Clone)]
pub struct CgTable {
    pub lambda: HighestWeight,
    pub factor: Factor,
    pub lambda_patterns: Vec<GtPattern>,
    pub blocks: Vec<CgBlock>,
}

impl CgTable {
    pub fn d(&self) -> usize {
        self.lambda.d()
    }

    pub fn dim_lambda(&self) -> usize {
        self.lambda_patterns.len()
    }

    pub fn block(&self, mu: &HighestWeight) -> Result<&CgBlock> {
        self.blocks
            .iter()
            .find(|b| &b.mu == mu)
            .ok_or_else(|| Error::BlockMissing(mu.to_string()))
    }

    /// Stacks all block isometries into the square change-of-basis matrix.
    pub fn full_unitary(&self) -> DMatrix<C64> {
        let rows = self.dim_lambda() * self.d();
        let cols: usize = self.blocks.iter().map(|b| b.mu_patterns.len()).sum();
        let mut u = DMatrix::<C64>::zeros(rows, cols);
        let mut col = 0;
        for b in &self.blocks {
            u.view_mut((0, col), (rows, b.mu_patterns.len()))
                .copy_from(&b.isometry);
            col += b.mu_patterns.len();
        }
        u
    }
}

/// How the dimension ratio enters the bent (dual) tensor. The partial-trace
/// argument forces `LowerOverUpper` for an isometric oracle step; the other
/// orientation is kept so the oracle isometry test can reject it explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualOrientation {
    /// sqrt(dim lambda / dim mu), lambda the pre-box (smaller-t) label.
    LowerOverUpper,
    /// sqrt(dim mu / dim lambda).
    UpperOverLower,
}

/// Bent dual-CG tensor for block `mu` of `table`: the conjugated block
/// isometry scaled by the dimension ratio of the chosen orientation.
pub fn dual_cg(
    table: &CgTable,
    mu: &HighestWeight,
    orientation: DualOrientation,
) -> Result<DMatrix<C64>> {
    let block = table.block(mu)?;
    let dim_lambda = table.lambda.weyl_dimension() as f64;
    let dim_mu = mu.weyl_dimension() as f64;
    let ratio = match orientation {
        DualOrientation::LowerOverUpper => (dim_lambda / dim_mu).sqrt(),
        DualOrientation::UpperOverLower => (dim_mu / dim_lambda).sqrt(),
    };
    Ok(block.isometry.map(|c| c.conj() * ratio))
}

/// Builds the CG table for V_lambda (x) V_factor with a cap on the product
/// dimension.
pub fn cg_dense_capped(lambda: &HighestWeight, factor: Factor, cap: u128) -> Result<CgTable> {
    let d = lambda.d();
    let dim_lambda = lambda.weyl_dimension_capped(cap)?;
    let product_dim = dim_lambda
        .checked_mul(d as u128)
        .filter(|&v| v <= cap)
        .ok_or(Error::CapExceeded {
            size: dim_lambda.saturating_mul(d as u128),
            cap,
        })?;
    let gens = generators_gt_capped(lambda, cap)?;
    let n = product_dim as usize;

    // Factor action: matrix units for the defining rep, minus-transpose for
    // its dual.
    let unit = |a: usize, b: usize| -> DMatrix<C64> {
        let mut m = DMatrix::<C64>::zeros(d, d);
        m[(a, b)] = C64::new(1.0, 0.0);
        m
    };
    let f_gen = |a: usize, b: usize| -> DMatrix<C64> {
        match factor {
            Factor::Defining => unit(a, b),
            Factor::DualDefining => -unit(b, a),
        }
    };

    let id_f = DMatrix::<C64>::identity(d, d);
    let id_l = DMatrix::<C64>::identity(gens.dim(), gens.dim());
    let total = |left: &DMatrix<C64>, right: &DMatrix<C64>| -> DMatrix<C64> {
        left.kronecker(&id_f) + id_l.kronecker(right)
    };
    let total_raising: Vec<DMatrix<C64>> = (1..d)
        .map(|k| total(&gens.raising[k - 1], &f_gen(k - 1, k)))
        .collect();
    let total_lowering: Vec<DMatrix<C64>> = (1..d)
        .map(|k| total(&gens.lowering[k - 1], &f_gen(k, k - 1)))
        .collect();

    // Product basis weights: weight(pattern) + (+-) e_x.
    let sign = factor.weight_sign();
    let mut basis_weight: Vec<Vec<i64>> = Vec::with_capacity(n);
    for m in &gens.patterns {
        let w = m.weight();
        for x in 0..d {
            let mut wx = w.clone();
            wx[x] += sign;
            basis_weight.push(wx);
        }
    }

    // Candidate blocks: single-box additions or removals.
    let mus: Vec<HighestWeight> = match factor {
        Factor::Defining => lambda
            .addable_rows()
            .into_iter()
            .map(|r| lambda.add_box(r).expect("addable"))
            .collect(),
        Factor::DualDefining => lambda
            .removable_rows()
            .into_iter()
            .map(|r| lambda.remove_box(r).expect("removable"))
            .collect(),
    };

    let mut blocks = Vec::with_capacity(mus.len());
    for mu in mus {
        let block = build_block(&gens, &total_raising, &total_lowering, &basis_weight, &mu)?;
        blocks.push(block);
    }
    blocks.sort_by(|a, b| a.mu.cmp(&b.mu));
    Ok(CgTable {
        lambda: lambda.clone(),
        factor,
        lambda_patterns: gens.patterns.clone(),
        blocks,
    })
}

/// [`cg_dense_capped`] with the default cap.
pub fn cg_dense(lambda: &HighestWeight, factor: Factor) -> Result<CgTable> {
    cg_dense_capped(lambda, factor, DEFAULT_ENUM_CAP)
}

fn build_block(
    gens: &GeneratorSet,
    total_raising: &[DMatrix<C64>],
    total_lowering: &[DMatrix<C64>],
    basis_weight: &[Vec<i64>],
    mu: &HighestWeight,
) -> Result<CgBlock> {
    let n = basis_weight.len();
    let d = gens.d();

    // Highest-weight kernel within the weight-mu subspace.
    let hw_indices: Vec<usize> = (0..n)
        .filter(|&i| basis_weight[i] == mu.entries())
        .collect();
    if hw_indices.is_empty() {
        return Err(Error::MultiplicityAnomaly {
            block: mu.to_string(),
            expected: 1,
            found: 0,
        });
    }
    let mut stacked = DMatrix::<C64>::zeros(total_raising.len() * n, hw_indices.len());
    for (r, op) in total_raising.iter().enumerate() {
        for (c, &i) in hw_indices.iter().enumerate() {
            for row in 0..n {
                stacked[(r * n + row, c)] = op[(row, i)];
            }
        }
    }
    let kernel = nullspace(&stacked, 1e-10);
    if kernel.len() != 1 {
        return Err(Error::MultiplicityAnomaly {
            block: mu.to_string(),
            expected: 1,
            found: kernel.len(),
        });
    }
    let mut hw_vec = nalgebra::DVector::<C64>::zeros(n);
    for (c, &i) in hw_indices.iter().enumerate() {
        hw_vec[i] = kernel[0][c];
    }
    // Phase: first coefficient above threshold becomes real positive.
    let max_mag = hw_vec.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let lead = hw_vec
        .iter()
        .position(|v| v.norm() > 1e-6 * max_mag)
        .expect("nonzero kernel vector");
    let phase = hw_vec[lead] / hw_vec[lead].norm();
    hw_vec /= phase;

    // Lowering propagation over the mu patterns, one weight grade at a time.
    let mu_gens_patterns = enumerate_gt_capped(mu, u128::MAX >> 1)?;
    let dim_mu = mu_gens_patterns.len();
    let index_of: std::collections::BTreeMap<&GtPattern, usize> =
        mu_gens_patterns.iter().zip(0..).collect();
    let top = {
        let entries = mu.entries();
        GtPattern::new((1..=d).map(|k| entries[..k].to_vec()).collect())?
    };
    // Grade: raising by a simple root always increases this by one.
    let height = |w: &[i64]| -> i64 {
        w.iter()
            .enumerate()
            .map(|(k, &v)| v * (d - k) as i64)
            .sum()
    };
    let grades: Vec<i64> = mu_gens_patterns
        .iter()
        .map(|p| height(&p.weight()))
        .collect();
    let top_grade = height(&top.weight());
    let mut vectors: Vec<Option<nalgebra::DVector<C64>>> = vec![None; dim_mu];
    vectors[index_of[&top]] = Some(hw_vec);

    let mut remaining: Vec<i64> = grades.clone();
    remaining.sort_unstable();
    remaining.dedup();
    for &grade in remaining.iter().rev() {
        if grade == top_grade {
            continue;
        }
        let unknowns: Vec<usize> = (0..dim_mu).filter(|&i| grades[i] == grade).collect();
        if unknowns.is_empty() {
            continue;
        }
        // Equations: one per (parent pattern at grade+1, level k) pair with a
        // valid lowering into this grade.
        let mut eq_coeffs: Vec<Vec<f64>> = Vec::new();
        let mut eq_rhs: Vec<nalgebra::DVector<C64>> = Vec::new();
        for (pi, parent) in mu_gens_patterns.iter().enumerate() {
            if grades[pi] != grade + 1 {
                continue;
            }
            let pv = vectors[pi].as_ref().expect("parent grade already solved");
            for k in 1..d {
                // Targets of E_{k+1,k} from `parent`.
                let mut coeffs = vec![0.0f64; unknowns.len()];
                let mut any = false;
                for j in 1..=k {
                    let mut rows = parent.rows().to_vec();
                    rows[k - 1][j - 1] -= 1;
                    let target = GtPattern::new(rows)?;
                    if !target.is_valid() {
                        continue;
                    }
                    let ti = index_of[&target];
                    let pos = unknowns
                        .iter()
                        .position(|&u| u == ti)
                        .expect("lowering target at next grade");
                    coeffs[pos] = gt_lowering_amplitude(parent, k, j);
                    any = true;
                }
                if !any {
                    continue;
                }
                eq_coeffs.push(coeffs);
                eq_rhs.push(&total_lowering[k - 1] * pv);
            }
        }
        // Solve via the normal equations: the stacked coefficient matrix has
        // full column rank because no vector below the top is annihilated by
        // every raising operator.
        let m = eq_coeffs.len();
        let w = unknowns.len();
        assert!(m >= 1, "every non-top grade must receive equations");
        let b = DMatrix::<f64>::from_fn(m, w, |r, c| eq_coeffs[r][c]);
        let gram = DMatrix::<C64>::from_fn(w, w, |r, c| {
            C64::new((0..m).map(|e| b[(e, r)] * b[(e, c)]).sum::<f64>(), 0.0)
        });
        // rhs_proj[:, c] = sum_e b[e, c] * eq_rhs[e]
        let mut rhs_proj = DMatrix::<C64>::zeros(n, w);
        for e in 0..m {
            for c in 0..w {
                if b[(e, c)] != 0.0 {
                    for row in 0..n {
                        rhs_proj[(row, c)] += eq_rhs[e][row] * C64::new(b[(e, c)], 0.0);
                    }
                }
            }
        }
        // Solve gram * X^T = rhs_proj^T, i.e. X = rhs_proj * gram^{-1}.
        let solved = solve_dense(&gram, &rhs_proj.transpose());
        for (c, &u) in unknowns.iter().enumerate() {
            let v = nalgebra::DVector::<C64>::from_fn(n, |r, _| solved[(c, r)]);
            vectors[u] = Some(v);
        }
    }

    let mut isometry = DMatrix::<C64>::zeros(n, dim_mu);
    for (c, v) in vectors.iter().enumerate() {
        let v = v.as_ref().expect("all grades solved");
        isometry.column_mut(c).copy_from(v);
    }
    // Sanity: columns orthonormal to a loose tolerance (full checks in tests).
    let gram = isometry.adjoint() * &isometry;
    let dev = crate::cg::linalg::mat_norm(&(&gram - DMatrix::<C64>::identity(dim_mu, dim_mu)));
    if dev > 1e-7 * (dim_mu as f64).max(1.0) {
        return Err(Error::MultiplicityAnomaly {
            block: mu.to_string(),
            expected: 1,
            found: usize::MAX,
        });
    }
    Ok(CgBlock {
        mu: mu.clone(),
        mu_patterns: mu_gens_patterns,
        isometry,
    })
}
