//! Moment extraction: partial-matrix-element oracle evolutions and the
//! commutant-side sum over matrix units.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::oracle::units::{enumerate_finite_paths, path_isometry_finite, path_isometry_u};
use crate::oracle::{Backend, OracleState, QueryIo};
use crate::query::QueryType;
use crate::repcore::{enumerate_paths, partitions, HighestWeight};
use crate::C64;

/// An ordered query script: one type per query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSpec {
    pub types: Vec<QueryType>,
}

impl MomentSpec {
    pub fn forward(t: usize) -> Self {
        Self {
            types: vec![QueryType::Forward; t],
        }
    }

    pub fn parse(script: &str) -> Result<Self> {
        Ok(Self {
            types: QueryType::parse_script(script)?,
        })
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// Trace-form moment: both partial evolutions from the vacuum, then their
/// overlap. Equals the Haar average of the corresponding entry product.
pub fn moment_tensor(
    backend: &Backend,
    spec: &MomentSpec,
    xy: &[(u32, u32)],
    xy_hat: &[(u32, u32)],
) -> Result<C64> {
    if xy.len() != spec.len() || xy_hat.len() != spec.len() {
        return Err(Error::Shape(format!(
            "script length {} needs as many (x, y) and (x^, y^) pairs",
            spec.len()
        )));
    }
    let mut psi = OracleState::vacuum(backend.clone());
    for (k, &qt) in spec.types.iter().enumerate() {
        psi.apply_oracle(
            qt,
            QueryIo::Fixed {
                x: xy[k].0,
                y: xy[k].1,
            },
        )?;
    }
    let mut psi_hat = OracleState::vacuum(backend.clone());
    for (k, &qt) in spec.types.iter().enumerate() {
        psi_hat.apply_oracle(
            qt,
            QueryIo::Fixed {
                x: xy_hat[k].0,
                y: xy_hat[k].1,
            },
        )?;
    }
    let mut acc = C64::new(0.0, 0.0);
    for (key, amp) in &psi.amps {
        if let Some(hat) = psi_hat.amps.get(key) {
            acc += hat.conj() * amp;
        }
    }
    Ok(acc)
}

fn word_index(word: &[u32], base: u32) -> usize {
    word.iter().fold(0usize, |acc, &v| {
        acc * base as usize + v as usize
    })
}

/// Commutant-side evaluation: sum over irreps lambda and path pairs (T, S) of
/// (1/d_lambda) <x^|E_{T,S}|x> <y^|E_{T,S}|y>, with E = W_T W_S^dagger.
///
/// Forward-only (t plain tensor factors). Index words are 0-based, most
/// significant first.
pub fn commutant_moment(
    backend: &Backend,
    x: &[u32],
    y: &[u32],
    x_hat: &[u32],
    y_hat: &[u32],
) -> Result<C64> {
    let t = x.len();
    if [y.len(), x_hat.len(), y_hat.len()] != [t, t, t] {
        return Err(Error::Shape("index words must share the length t".into()));
    }
    let base = backend.work_dim();
    let xi = word_index(x, base);
    let yi = word_index(y, base);
    let xhi = word_index(x_hat, base);
    let yhi = word_index(y_hat, base);
    let mut acc = C64::new(0.0, 0.0);
    match backend {
        Backend::UDense { d, .. } => {
            for parts in partitions(t, (*d as usize).min(t)) {
                let hw = HighestWeight::from_partition(&parts, *d as usize)?;
                let dim = hw.weyl_dimension_big().to_f64().unwrap();
                let paths = enumerate_paths(t, &hw)?;
                let isos: Vec<_> = paths
                    .iter()
                    .map(|p| path_isometry_u(backend, p))
                    .collect::<Result<Vec<_>>>()?;
                for wt in &isos {
                    for ws in &isos {
                        // <a|E|b> = row a of W_T times conj row b of W_S.
                        let e_x = (0..wt.ncols())
                            .map(|c| wt[(xhi, c)] * ws[(xi, c)].conj())
                            .sum::<C64>();
                        let e_y = (0..wt.ncols())
                            .map(|c| wt[(yhi, c)] * ws[(yi, c)].conj())
                            .sum::<C64>();
                        acc += e_x * e_y / dim;
                    }
                }
            }
        }
        Backend::Finite { rep, .. } => {
            let paths = enumerate_finite_paths(backend, t)?;
            // Group paths by endpoint irrep.
            let mut by_end: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
            for (i, p) in paths.iter().enumerate() {
                by_end.entry(*p.irreps.last().unwrap()).or_default().push(i);
            }
            let isos: Vec<_> = paths
                .iter()
                .map(|p| path_isometry_finite(backend, p))
                .collect::<Result<Vec<_>>>()?;
            for (end, members) in by_end {
                let dim = rep.irreps[end].dim() as f64;
                for &ti in &members {
                    for &si in &members {
                        let wt = &isos[ti];
                        let ws = &isos[si];
                        let e_x = (0..wt.ncols())
                            .map(|c| wt[(xhi, c)] * ws[(xi, c)].conj())
                            .sum::<C64>();
                        let e_y = (0..wt.ncols())
                            .map(|c| wt[(yhi, c)] * ws[(yi, c)].conj())
                            .sum::<C64>();
                        acc += e_x * e_y / dim;
                    }
                }
            }
        }
        Backend::UFast { .. } => {
            return Err(Error::UnsupportedQueryType(
                "commutant sums run on the dense backends".into(),
            ))
        }
    }
    Ok(acc)
}
