//! Exact finite-group backend: explicit irreps, generic CG via isotypic
//! projection, permutation-oracle gadgets, and the uniform group average as
//! the moment ground truth.

pub mod cg;
pub mod group;
pub mod permoracle;
pub mod yor;

pub use cg::{cg_finite, FiniteCgBlock, FiniteCgTable};
pub use group::{
    builtin_group, cyclic_group, group_from_json, group_to_json, symmetric_group, FiniteGroup,
    FiniteGroupRep, Irrep,
};

use crate::error::Result;
use crate::query::QueryType;
use crate::C64;

/// Uniform group average of a product of representation entries:
/// (1/|G|) sum_g prod_k entry(type_k; y_k, x_k) prod_k conj(entry(type_k; yhat_k, xhat_k)).
///
/// This is the exact value the compressed oracle must reproduce; indices are
/// 0-based.
pub fn haar_average_finite(
    rep: &FiniteGroupRep,
    queries: &[(QueryType, u32, u32)],
    hatted: &[(QueryType, u32, u32)],
) -> Result<C64> {
    let n = rep.order();
    let mut acc = C64::new(0.0, 0.0);
    for g in 0..n {
        let mut term = C64::new(1.0, 0.0);
        for &(qt, x, y) in queries {
            term *= rep.rep_entry(qt, g, y as usize, x as usize);
        }
        for &(qt, x, y) in hatted {
            term *= rep.rep_entry(qt, g, y as usize, x as usize).conj();
        }
        acc += term;
    }
    Ok(acc / n as f64)
}
