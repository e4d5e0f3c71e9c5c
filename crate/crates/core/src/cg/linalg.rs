//! Small dense linear-algebra helpers over complex doubles: deterministic
//! Gaussian elimination for nullspaces and solves at desk scale.

use nalgebra::DMatrix;

use crate::C64;

pub fn mat_norm(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of the (right) nullspace of `a`, via row-reduced echelon
/// form with partial pivoting and the given relative tolerance.
pub fn nullspace(a: &DMatrix<C64>, tol: f64) -> Vec<nalgebra::DVector<C64>> {
    let (rows, cols) = a.shape();
    let mut m = a.clone();
    let scale = mat_norm(&m).max(1.0);
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        // Partial pivot in column c.
        let (best, mag) = (r..rows)
            .map(|i| (i, m[(i, c)].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if mag <= tol * scale {
            continue;
        }
        m.swap_rows(r, best);
        let inv = C64::new(1.0, 0.0) / m[(r, c)];
        for j in c..cols {
            m[(r, j)] *= inv;
        }
        for i in 0..rows {
            if i != r {
                let f = m[(i, c)];
                if f.norm() > 0.0 {
                    for j in c..cols {
                        let sub = f * m[(r, j)];
                        m[(i, j)] -= sub;
                    }
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = nalgebra::DVector::<C64>::zeros(cols);
        v[fc] = C64::new(1.0, 0.0);
        for (pr, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[(pr, fc)];
        }
        let norm = v.norm();
        v /= C64::new(norm, 0.0);
        basis.push(v);
    }
    basis
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting; panics on (numerically) singular input, which indicates a logic
/// error in the callers here.
pub fn solve_dense(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    let mut m = a.clone();
    let mut rhs = b.clone();
    for c in 0..n {
        let (best, mag) = (c..n)
            .map(|i| (i, m[(i, c)].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        assert!(mag > 1e-12, "singular system in solve_dense");
        m.swap_rows(c, best);
        rhs.swap_rows(c, best);
        let inv = C64::new(1.0, 0.0) / m[(c, c)];
        for j in c..n {
            m[(c, j)] *= inv;
        }
        for j in 0..rhs.ncols() {
            rhs[(c, j)] *= inv;
        }
        for i in 0..n {
            if i != c {
                let f = m[(i, c)];
                if f.norm() > 0.0 {
                    for j in c..n {
                        let sub = f * m[(c, j)];
                        m[(i, j)] -= sub;
                    }
                    for j in 0..rhs.ncols() {
                        let sub = f * rhs[(c, j)];
                        rhs[(i, j)] -= sub;
                    }
                }
            }
        }
    }
    rhs
}
