//! Young's orthogonal representation of the symmetric group: exact real
//! orthogonal irrep matrices indexed by standard tableaux (box-addition
//! paths), built from adjacent transpositions and axial distances.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::perm::Perm;
use crate::repcore::{enumerate_paths, HighestWeight, PathLabel};
use crate::C64;

/// Cell (1-based row, column) of the box added at step k of a path.
fn cell_of(path: &PathLabel, k: usize) -> (usize, usize) {
    let row = path.step_row(k);
    let col = path.diagrams()[k].entries()[row - 1] as usize;
    (row, col)
}

/// Matrix of the adjacent transposition (k, k+1), 1-based k, in the standard
/// tableau basis of shape `lambda`.
fn adjacent_transposition(paths: &[PathLabel], k: usize) -> DMatrix<C64> {
    let dim = paths.len();
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for (i, path) in paths.iter().enumerate() {
        let (r1, c1) = cell_of(path, k);
        let (r2, c2) = cell_of(path, k + 1);
        if r1 == r2 {
            m[(i, i)] = C64::new(1.0, 0.0);
            continue;
        }
        if c1 == c2 {
            m[(i, i)] = C64::new(-1.0, 0.0);
            continue;
        }
        // Axial distance between k+1 and k; swapping k and k+1 keeps the
        // tableau standard exactly in this mixed case.
        let d = (c2 as i64 - r2 as i64) - (c1 as i64 - r1 as i64);
        let inv = 1.0 / d as f64;
        m[(i, i)] = C64::new(inv, 0.0);
        // The swapped tableau: exchange which step added which cell.
        let mut diagrams = path.diagrams().to_vec();
        // After swapping, step k adds (r2, c2): diagram k = diagram k-1 + that
        // box.
        diagrams[k] = diagrams[k - 1].add_box(r2).expect("standard after swap");
        let swapped = PathLabel::new(diagrams).expect("standard after swap");
        let j = paths
            .iter()
            .position(|p| p == &swapped)
            .expect("swapped tableau enumerated");
        m[(j, i)] = C64::new((1.0 - inv * inv).sqrt(), 0.0);
    }
    m
}

/// Irrep matrices for every permutation of S_n (ordered as [`Perm::all`]),
/// for the partition `lambda`.
pub fn yor_matrices(n: usize, lambda: &[i64]) -> Result<Vec<DMatrix<C64>>> {
    let hw = HighestWeight::from_partition(lambda, n.max(lambda.len()))?;
    let paths = enumerate_paths(n, &hw)?;
    let dim = paths.len();
    let gens: Vec<DMatrix<C64>> = (1..n)
        .map(|k| adjacent_transposition(&paths, k))
        .collect();
    let perms = Perm::all(n);
    let mut out = Vec::with_capacity(perms.len());
    for p in &perms {
        // Decompose into adjacent transpositions by bubble sort.
        let mut images: Vec<usize> = p.images().to_vec();
        let mut word: Vec<usize> = Vec::new();
        for i in 0..n {
            for j in (i + 1..n).rev() {
                if images[j - 1] > images[j] {
                    images.swap(j - 1, j);
                    word.push(j); // transposition (j, j+1), 1-based j
                }
            }
        }
        // The table got sorted by right-multiplying the recorded adjacent
        // transpositions, so p is their product with the last swap leftmost.
        let mut m = DMatrix::<C64>::identity(dim, dim);
        for &k in word.iter() {
            m = &gens[k - 1] * m;
        }
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yor_is_a_homomorphism() {
        for lambda in [vec![3i64], vec![2, 1], vec![1, 1, 1]] {
            let mats = yor_matrices(3, &lambda).unwrap();
            let perms = Perm::all(3);
            for (i, p) in perms.iter().enumerate() {
                for (j, q) in perms.iter().enumerate() {
                    let pq = p.compose(q);
                    let k = perms.iter().position(|r| r == &pq).unwrap();
                    let dev = (&mats[i] * &mats[j]) - &mats[k];
                    let err: f64 = dev.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
                    assert!(err < 1e-12, "lambda {lambda:?} at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn yor_standard_of_s3_is_two_dimensional_orthogonal() {
        let mats = yor_matrices(3, &[2, 1]).unwrap();
        assert_eq!(mats[0].nrows(), 2);
        for m in &mats {
            let dev = m.adjoint() * m - DMatrix::<C64>::identity(2, 2);
            let err: f64 = dev.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            assert!(err < 1e-12);
        }
    }
}
