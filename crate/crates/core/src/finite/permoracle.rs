//! Permutation-oracle gadgets: the d-dimensional oracle V_g and the
//! d^2-dimensional in-place oracle U_g |x,y> = |x, y + g(x) mod d>, with the
//! exact integer-matrix equivalences between them (two queries each way).
//!
//! Labels are 0-based with addition modulo d. Over modular addition (as
//! opposed to a self-inverse xor), the V-from-U composite needs the adjoint
//! of the second oracle, which coincides with the usual form at d = 2.

use nalgebra::DMatrix;

use crate::perm::Perm;

/// Permutation matrix V_g with V[g(x), x] = 1.
pub fn v_matrix(g: &Perm) -> DMatrix<i64> {
    let d = g.n();
    let mut m = DMatrix::<i64>::zeros(d, d);
    for x in 0..d {
        m[(g.apply(x), x)] = 1;
    }
    m
}

/// In-place oracle U_g |x,y> = |x, y + g(x) mod d>, basis index x*d + y.
pub fn u_matrix(g: &Perm) -> DMatrix<i64> {
    let d = g.n();
    let mut m = DMatrix::<i64>::zeros(d * d, d * d);
    for x in 0..d {
        for y in 0..d {
            m[(x * d + (y + g.apply(x)) % d, x * d + y)] = 1;
        }
    }
    m
}

/// CX_d |x,y> = |x, x + y mod d>.
pub fn cx_matrix(d: usize) -> DMatrix<i64> {
    let mut m = DMatrix::<i64>::zeros(d * d, d * d);
    for x in 0..d {
        for y in 0..d {
            m[(x * d + (x + y) % d, x * d + y)] = 1;
        }
    }
    m
}

/// SWAP |x,y> = |y,x>.
pub fn swap_matrix(d: usize) -> DMatrix<i64> {
    let mut m = DMatrix::<i64>::zeros(d * d, d * d);
    for x in 0..d {
        for y in 0..d {
            m[(y * d + x, x * d + y)] = 1;
        }
    }
    m
}

fn kron_right_identity(v: &DMatrix<i64>, d: usize) -> DMatrix<i64> {
    let mut m = DMatrix::<i64>::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            if v[(a, b)] != 0 {
                for y in 0..d {
                    m[(a * d + y, b * d + y)] = v[(a, b)];
                }
            }
        }
    }
    m
}

/// U_g built from two V-queries: (V_{g^-1} (x) I) CX_d (V_g (x) I).
pub fn u_from_v(g: &Perm) -> DMatrix<i64> {
    let d = g.n();
    let left = kron_right_identity(&v_matrix(&g.inverse()), d);
    let right = kron_right_identity(&v_matrix(g), d);
    left * cx_matrix(d) * right
}

/// V_g built from two U-queries:
/// (I (x) <0|) U_{g^-1}^dagger SWAP U_g (I (x) |0>).
pub fn v_from_u(g: &Perm) -> DMatrix<i64> {
    let d = g.n();
    let m = u_matrix(&g.inverse()).transpose() * swap_matrix(d) * u_matrix(g);
    DMatrix::from_fn(d, d, |yy, xx| m[(yy * d, xx * d)])
}

/// Both composite constructions agree with the direct definitions, exactly.
pub fn check_equivalences(g: &Perm) -> bool {
    u_from_v(g) == u_matrix(g) && v_from_u(g) == v_matrix(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_from_v_direct_small() {
        // d = 3, g = (0 1): evaluated over all 9 basis states by the matrix
        // equality itself.
        let g = Perm::new(vec![1, 0, 2]).unwrap();
        assert_eq!(u_from_v(&g), u_matrix(&g));
    }

    #[test]
    fn identity_permutation() {
        let g = Perm::identity(3);
        assert!(check_equivalences(&g));
    }

    #[test]
    fn v_from_u_swap_d2() {
        let g = Perm::new(vec![1, 0]).unwrap();
        let v = v_from_u(&g);
        assert_eq!(v, v_matrix(&g));
        assert_eq!(v[(0, 1)], 1);
        assert_eq!(v[(1, 0)], 1);
    }

    #[test]
    fn equivalences_hold_for_all_of_s3() {
        for g in Perm::all(3) {
            assert!(check_equivalences(&g), "failed for {g}");
        }
    }

    #[test]
    fn equivalences_hold_for_larger_permutations() {
        for g in [
            Perm::new(vec![2, 0, 1, 4, 3]).unwrap(),
            Perm::new(vec![4, 3, 2, 1, 0]).unwrap(),
            Perm::new(vec![1, 2, 3, 4, 5, 0]).unwrap(),
        ] {
            assert!(check_equivalences(&g), "failed for {g}");
        }
    }
}
