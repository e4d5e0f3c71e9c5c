//! Finite groups with explicit unitary irreps and a queried representation.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::yor::yor_matrices;
use crate::perm::Perm;
use crate::repcore::partitions;
use crate::C64;

/// Multiplication-table presentation of a finite group; element 0 is the
/// identity.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    pub mult: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn from_mult_table(mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = mult.len();
        if mult.iter().any(|row| row.len() != n) {
            return Err(Error::Shape("multiplication table must be square".into()));
        }
        // Identity at index 0.
        for g in 0..n {
            if mult[0][g] != g || mult[g][0] != g {
                return Err(Error::Shape("element 0 must be the identity".into()));
            }
        }
        // Associativity and inverses.
        for a in 0..n {
            for b in 0..n {
                if mult[a][b] >= n {
                    return Err(Error::Shape("table entry out of range".into()));
                }
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::Shape(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| mult[a][b] == 0 && mult[b][a] == 0)
                .ok_or_else(|| Error::Shape(format!("element {a} has no inverse")))?;
            inverse[a] = inv;
        }
        Ok(Self { mult, inverse })
    }
}

/// An explicit unitary irrep: one matrix per group element.
#[derive(Debug, Clone)]
pub struct Irrep {
    pub label: String,
    pub matrices: Vec<DMatrix<C64>>,
}

impl Irrep {
    pub fn dim(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn character(&self, g: usize) -> C64 {
        self.matrices[g].trace()
    }
}

/// A finite group together with its complete irrep set and the queried
/// unitary representation R.
#[derive(Debug, Clone)]
pub struct FiniteGroupRep {
    pub name: String,
    pub group: FiniteGroup,
    pub irreps: Vec<Irrep>,
    /// The queried representation (may be reducible).
    pub rep: Vec<DMatrix<C64>>,
}

const TOL: f64 = 1e-12;

fn is_unitary(m: &DMatrix<C64>) -> bool {
    let n = m.nrows();
    let dev = m.adjoint() * m - DMatrix::<C64>::identity(n, n);
    dev.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt() < TOL * (n as f64).max(1.0)
}

impl FiniteGroupRep {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn rep_dim(&self) -> usize {
        self.rep[0].nrows()
    }

    /// Entry of the queried representation for one query type, 0-based.
    pub fn rep_entry(&self, qtype: crate::query::QueryType, g: usize, y: usize, x: usize) -> C64 {
        use crate::query::QueryType::*;
        match qtype {
            Forward => self.rep[g][(y, x)],
            Conjugate => self.rep[g][(y, x)].conj(),
            Transpose => self.rep[g][(x, y)],
            Inverse => self.rep[self.group.inverse[g]][(y, x)],
        }
    }

    /// Checks group axioms, homomorphism and unitarity of every irrep and of
    /// R, character orthogonality, and irrep completeness.
    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        let sum_sq: usize = self.irreps.iter().map(|i| i.dim() * i.dim()).sum();
        if sum_sq != n {
            return Err(Error::Shape(format!(
                "irrep dimensions square-sum to {sum_sq}, expected {n}"
            )));
        }
        for mats in self.irreps.iter().map(|i| &i.matrices).chain([&self.rep]) {
            if mats.len() != n {
                return Err(Error::Shape("one matrix per element required".into()));
            }
            for (a, m) in mats.iter().enumerate() {
                if !is_unitary(m) {
                    return Err(Error::Shape(format!("matrix {a} not unitary")));
                }
            }
            for a in 0..n {
                for b in 0..n {
                    let dev = &mats[a] * &mats[b] - &mats[self.group.mult[a][b]];
                    if dev.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt() > TOL * 10.0 {
                        return Err(Error::Shape(format!(
                            "homomorphism fails at ({a},{b})"
                        )));
                    }
                }
            }
        }
        // Character orthogonality.
        for (i, a) in self.irreps.iter().enumerate() {
            for (j, b) in self.irreps.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for g in 0..n {
                    acc += a.character(g) * b.character(g).conj();
                }
                acc /= n as f64;
                let expect = if i == j { 1.0 } else { 0.0 };
                if (acc - C64::new(expect, 0.0)).norm() > TOL * 10.0 {
                    return Err(Error::Shape(format!(
                        "character orthogonality fails at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The symmetric group S_n with Young-orthogonal irreps and the defining
/// permutation representation.
pub fn symmetric_group(n: usize) -> Result<FiniteGroupRep> {
    let perms = Perm::all(n);
    let index = |p: &Perm| perms.iter().position(|q| q == p).unwrap();
    let order = perms.len();
    let mut mult = vec![vec![0usize; order]; order];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            mult[i][j] = index(&p.compose(q));
        }
    }
    let group = FiniteGroup::from_mult_table(mult)?;
    let mut irreps = Vec::new();
    for lambda in partitions(n, n) {
        let label = format!(
            "({})",
            lambda
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        irreps.push(Irrep {
            label,
            matrices: yor_matrices(n, &lambda)?,
        });
    }
    // Defining permutation representation V_g |x> = |g(x)>.
    let rep: Vec<DMatrix<C64>> = perms
        .iter()
        .map(|p| {
            let mut m = DMatrix::<C64>::zeros(n, n);
            for x in 0..n {
                m[(p.apply(x), x)] = C64::new(1.0, 0.0);
            }
            m
        })
        .collect();
    let out = FiniteGroupRep {
        name: format!("S{n}"),
        group,
        irreps,
        rep,
    };
    out.validate()?;
    Ok(out)
}

/// The cyclic group Z_n with its n characters and the regular representation.
pub fn cyclic_group(n: usize) -> Result<FiniteGroupRep> {
    if n == 0 {
        return Err(Error::UnknownGroup("Z0".into()));
    }
    let mut mult = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            mult[a][b] = (a + b) % n;
        }
    }
    let group = FiniteGroup::from_mult_table(mult)?;
    let omega = |j: usize, k: usize| -> C64 {
        let theta = 2.0 * std::f64::consts::PI * (j * k % n) as f64 / n as f64;
        C64::new(theta.cos(), theta.sin())
    };
    let irreps: Vec<Irrep> = (0..n)
        .map(|j| Irrep {
            label: format!("chi{j}"),
            matrices: (0..n)
                .map(|k| DMatrix::from_element(1, 1, omega(j, k)))
                .collect(),
        })
        .collect();
    // Regular representation: cyclic shifts.
    let rep: Vec<DMatrix<C64>> = (0..n)
        .map(|k| {
            let mut m = DMatrix::<C64>::zeros(n, n);
            for x in 0..n {
                m[((x + k) % n, x)] = C64::new(1.0, 0.0);
            }
            m
        })
        .collect();
    let out = FiniteGroupRep {
        name: format!("Z{n}"),
        group,
        irreps,
        rep,
    };
    out.validate()?;
    Ok(out)
}

/// Builds a named builtin group: "S3", "S4", or "Zn" for a positive n.
pub fn builtin_group(name: &str) -> Result<FiniteGroupRep> {
    let lower = name.to_ascii_lowercase();
    if lower == "s3" {
        return symmetric_group(3);
    }
    if lower == "s4" {
        return symmetric_group(4);
    }
    if lower == "s2" {
        return symmetric_group(2);
    }
    if let Some(rest) = lower.strip_prefix('z') {
        if let Ok(n) = rest.parse::<usize>() {
            return cyclic_group(n);
        }
    }
    Err(Error::UnknownGroup(name.to_string()))
}

// --- Group-definition file (JSON) -----------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct IrrepFile {
    label: String,
    dim: usize,
    /// matrices[g][row][col] = [re, im]
    matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GroupFile {
    name: String,
    order: usize,
    mult_table: Vec<Vec<usize>>,
    irreps: Vec<IrrepFile>,
    rep: Vec<Vec<Vec<[f64; 2]>>>,
}

fn matrix_to_rows(m: &DMatrix<C64>) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

fn matrix_from_rows(rows: &[Vec<[f64; 2]>]) -> Result<DMatrix<C64>> {
    let nr = rows.len();
    let nc = rows.first().map(|r| r.len()).unwrap_or(0);
    if nr == 0 || rows.iter().any(|r| r.len() != nc) {
        return Err(Error::Shape("ragged matrix in group file".into()));
    }
    Ok(DMatrix::from_fn(nr, nc, |r, c| {
        C64::new(rows[r][c][0], rows[r][c][1])
    }))
}

/// Serialises a validated group to the JSON group-definition format.
pub fn group_to_json(rep: &FiniteGroupRep) -> String {
    let file = GroupFile {
        name: rep.name.clone(),
        order: rep.order(),
        mult_table: rep.group.mult.clone(),
        irreps: rep
            .irreps
            .iter()
            .map(|i| IrrepFile {
                label: i.label.clone(),
                dim: i.dim(),
                matrices: i.matrices.iter().map(matrix_to_rows).collect(),
            })
            .collect(),
        rep: rep.rep.iter().map(matrix_to_rows).collect(),
    };
    serde_json::to_string_pretty(&file).expect("serialisable")
}

/// Loads and validates a group from the JSON group-definition format.
pub fn group_from_json(text: &str) -> Result<FiniteGroupRep> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| Error::Codec(format!("group file: {e}")))?;
    if file.mult_table.len() != file.order {
        return Err(Error::Shape("order does not match table".into()));
    }
    let group = FiniteGroup::from_mult_table(file.mult_table)?;
    let mut irreps = Vec::new();
    for irrep in &file.irreps {
        let matrices = irrep
            .matrices
            .iter()
            .map(|m| matrix_from_rows(m))
            .collect::<Result<Vec<_>>>()?;
        if matrices.iter().any(|m| m.nrows() != irrep.dim) {
            return Err(Error::Shape(format!(
                "irrep {} dimension mismatch",
                irrep.label
            )));
        }
        irreps.push(Irrep {
            label: irrep.label.clone(),
            matrices,
        });
    }
    let rep = file
        .rep
        .iter()
        .map(|m| matrix_from_rows(m))
        .collect::<Result<Vec<_>>>()?;
    let out = FiniteGroupRep {
        name: file.name,
        group,
        irreps,
        rep,
    };
    out.validate()?;
    Ok(out)
}
