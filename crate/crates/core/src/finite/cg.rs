//! Generic Clebsch-Gordan decomposition for finite groups via isotypic
//! projection, with a deterministic multiplicity basis.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::finite::group::FiniteGroupRep;
use crate::C64;

/// One isotypic block of V_lambda (x) V_R: the target irrep index and one
/// isometry V_mu -> V_lambda (x) V_R per multiplicity copy.
#[derive(Debug, Clone)]
pub struct FiniteCgBlock {
    pub mu: usize,
    pub copies: Vec<DMatrix<C64>>,
}

/// Full decomposition table of V_lambda (x) V_R (or the dual of R).
#[derive(Debug, Clone)]
pub struct FiniteCgTable {
    pub lambda: usize,
    pub dual: bool,
    pub product_dim: usize,
    pub blocks: Vec<FiniteCgBlock>,
}

impl FiniteCgTable {
    pub fn block(&self, mu: usize) -> Option<&FiniteCgBlock> {
        self.blocks.iter().find(|b| b.mu == mu)
    }
}

/// Decomposes V_lambda (x) V_R (dual: conjugated R) into irreps: characters
/// fix the multiplicities, group-averaged intertwiners give each copy, and a
/// Gram-Schmidt pass in the Hilbert-Schmidt inner product with a first-entry
/// phase fix makes the copy basis deterministic.
pub fn cg_finite(rep: &FiniteGroupRep, lambda: usize, dual: bool) -> Result<FiniteCgTable> {
    let n = rep.order();
    if lambda >= rep.irreps.len() {
        return Err(Error::IndexOutOfRange(format!(
            "irrep index {lambda} out of range"
        )));
    }
    let factor = |g: usize| -> DMatrix<C64> {
        if dual {
            rep.rep[g].map(|v| v.conj())
        } else {
            rep.rep[g].clone()
        }
    };
    let product: Vec<DMatrix<C64>> = (0..n)
        .map(|g| rep.irreps[lambda].matrices[g].kronecker(&factor(g)))
        .collect();
    let product_dim = product[0].nrows();

    let mut blocks = Vec::new();
    for (mu, target) in rep.irreps.iter().enumerate() {
        // Multiplicity from characters.
        let mut acc = C64::new(0.0, 0.0);
        for g in 0..n {
            acc += product[g].trace() * target.character(g).conj();
        }
        acc /= n as f64;
        let mult = acc.re.round() as i64;
        if (acc - C64::new(mult as f64, 0.0)).norm() > 1e-8 {
            return Err(Error::MultiplicityAnomaly {
                block: target.label.clone(),
                expected: usize::MAX,
                found: mult.max(0) as usize,
            });
        }
        if mult <= 0 {
            continue;
        }
        let mult = mult as usize;
        let d_mu = target.dim();
        // Candidate intertwiners from basis seeds: A_w |m> =
        // (d_mu/|G|) sum_g conj(rho_mu(g)_{m,0}) pi(g) w.
        let mut copies: Vec<DMatrix<C64>> = Vec::new();
        for seed in 0..product_dim {
            if copies.len() == mult {
                break;
            }
            let mut a = DMatrix::<C64>::zeros(product_dim, d_mu);
            for g in 0..n {
                let col = product[g].column(seed);
                for m in 0..d_mu {
                    let coef = target.matrices[g][(m, 0)].conj() * (d_mu as f64 / n as f64);
                    if coef.norm() == 0.0 {
                        continue;
                    }
                    for r in 0..product_dim {
                        a[(r, m)] += coef * col[r];
                    }
                }
            }
            // Project out earlier copies (HS inner product).
            for prev in &copies {
                let overlap = (prev.adjoint() * &a).trace() / C64::new(d_mu as f64, 0.0);
                a -= prev * overlap;
            }
            let norm2 = (a.adjoint() * &a).trace().re / d_mu as f64;
            if norm2 < 1e-10 {
                continue;
            }
            a /= C64::new(norm2.sqrt(), 0.0);
            // Deterministic phase: first sizeable entry (row-major) positive.
            let mut lead = None;
            'scan: for r in 0..product_dim {
                for c in 0..d_mu {
                    if a[(r, c)].norm() > 1e-8 {
                        lead = Some(a[(r, c)]);
                        break 'scan;
                    }
                }
            }
            let lead = lead.expect("normalised intertwiner is nonzero");
            let phase = lead / lead.norm();
            a /= phase;
            copies.push(a);
        }
        if copies.len() != mult {
            return Err(Error::MultiplicityAnomaly {
                block: target.label.clone(),
                expected: mult,
                found: copies.len(),
            });
        }
        blocks.push(FiniteCgBlock { mu, copies });
    }
    Ok(FiniteCgTable {
        lambda,
        dual,
        product_dim,
        blocks,
    })
}
