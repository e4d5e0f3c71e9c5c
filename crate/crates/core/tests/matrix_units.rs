//! Commutant matrix units: projector identities, traces, the matrix-unit
//! algebra, and commutation with the diagonal action.

use cgoracle::finite::symmetric_group;
use cgoracle::oracle::{
    enumerate_finite_paths, matrix_unit_finite, matrix_unit_u, Backend,
};
use cgoracle::repcore::{enumerate_paths, partitions, HighestWeight, PathLabel};
use cgoracle::C64;
use nalgebra::DMatrix;

const CAP: usize = 4096;

fn mat_norm(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn u_paths(t: usize, d: usize) -> Vec<(HighestWeight, Vec<PathLabel>)> {
    partitions(t, d)
        .into_iter()
        .map(|parts| {
            let hw = HighestWeight::from_partition(&parts, d).unwrap();
            let paths = enumerate_paths(t, &hw).unwrap();
            (hw, paths)
        })
        .collect()
}

#[test]
fn symmetric_and_antisymmetric_projectors_at_t2() {
    let backend = Backend::u_dense(2);
    let mut swap = DMatrix::<C64>::zeros(4, 4);
    for x in 0..2usize {
        for y in 0..2usize {
            swap[(y * 2 + x, x * 2 + y)] = C64::new(1.0, 0.0);
        }
    }
    let id = DMatrix::<C64>::identity(4, 4);
    for (hw, sign) in [
        (HighestWeight::from_partition(&[2], 2).unwrap(), 1.0),
        (HighestWeight::from_partition(&[1, 1], 2).unwrap(), -1.0),
    ] {
        let paths = enumerate_paths(2, &hw).unwrap();
        assert_eq!(paths.len(), 1);
        let e = matrix_unit_u(&backend, &paths[0], &paths[0], CAP).unwrap();
        let expect = (&id + &swap * C64::new(sign, 0.0)) * C64::new(0.5, 0.0);
        assert!(mat_norm(&(&e - &expect)) < 1e-10, "hw {hw}");
    }
}

#[test]
fn traces_are_delta_times_dimension() {
    let d = 3usize;
    let backend = Backend::u_dense(d as u32);
    for t in 1..=3usize {
        for (hw, paths) in u_paths(t, d) {
            for (i, pt) in paths.iter().enumerate() {
                for (j, ps) in paths.iter().enumerate() {
                    let e = matrix_unit_u(&backend, pt, ps, CAP).unwrap();
                    let tr = e.trace();
                    let expect = if i == j { hw.weyl_dimension() as f64 } else { 0.0 };
                    assert!((tr - C64::new(expect, 0.0)).norm() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn matrix_unit_algebra_u() {
    // E^l_{T,S} E^m_{S',T'} = delta_{lm} delta_{SS'} E^l_{T,T'}.
    let d = 2usize;
    let t = 3usize;
    let backend = Backend::u_dense(d as u32);
    let families = u_paths(t, d);
    for (ai, (_, paths_a)) in families.iter().enumerate() {
        for (bi, (_, paths_b)) in families.iter().enumerate() {
            for (ti, pt) in paths_a.iter().enumerate().take(2) {
                for (si, ps) in paths_a.iter().enumerate().take(2) {
                    for (sj, ps2) in paths_b.iter().enumerate().take(2) {
                        for (tj, pt2) in paths_b.iter().enumerate().take(2) {
                            let e1 = matrix_unit_u(&backend, pt, ps, CAP).unwrap();
                            let e2 = matrix_unit_u(&backend, ps2, pt2, CAP).unwrap();
                            let prod = &e1 * &e2;
                            let expect = if ai == bi && si == sj {
                                matrix_unit_u(&backend, pt, pt2, CAP).unwrap()
                            } else {
                                DMatrix::<C64>::zeros(prod.nrows(), prod.ncols())
                            };
                            assert!(
                                mat_norm(&(&prod - &expect)) < 1e-9,
                                "a{ai} b{bi} t{ti} s{si} s'{sj} t'{tj}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn commutation_with_diagonal_lie_action() {
    let d = 2usize;
    let t = 2usize;
    let backend = Backend::u_dense(d as u32);
    let gens =
        cgoracle::cg::generators_gt(&HighestWeight::from_partition(&[1], d).unwrap()).unwrap();
    // Diagonal action of each simple generator on (C^d)^(x)t.
    let mut ops: Vec<DMatrix<C64>> = Vec::new();
    for g in gens.raising.iter().chain(&gens.lowering).chain(&gens.cartan) {
        let mut total = DMatrix::<C64>::zeros(d.pow(t as u32), d.pow(t as u32));
        for slot in 0..t {
            let mut factors = vec![DMatrix::<C64>::identity(d, d); t];
            factors[slot] = g.clone();
            let mut kron = DMatrix::<C64>::identity(1, 1);
            for f in &factors {
                kron = kron.kronecker(f);
            }
            total += kron;
        }
        ops.push(total);
    }
    for (_, paths) in u_paths(t, d) {
        for pt in &paths {
            for ps in &paths {
                let e = matrix_unit_u(&backend, pt, ps, CAP).unwrap();
                for op in &ops {
                    let comm = &e * op - op * &e;
                    assert!(mat_norm(&comm) < 1e-9);
                }
            }
        }
    }
}

#[test]
fn finite_units_commute_with_group_action() {
    let s3 = symmetric_group(3).unwrap();
    let backend = Backend::finite(s3.clone());
    let t = 2usize;
    let dr = s3.rep_dim();
    let paths = enumerate_finite_paths(&backend, t).unwrap();
    // Completeness: sum of diagonal units is the identity on V^(x)t.
    let mut sum = DMatrix::<C64>::zeros(dr.pow(t as u32), dr.pow(t as u32));
    for p in &paths {
        let e = matrix_unit_finite(&backend, p, p, CAP).unwrap();
        sum += &e;
        // Commutation with the diagonal group action.
        for g in 0..s3.order() {
            let mut kron = DMatrix::<C64>::identity(1, 1);
            for _ in 0..t {
                kron = kron.kronecker(&s3.rep[g]);
            }
            let comm = &e * &kron - &kron * &e;
            assert!(mat_norm(&comm) < 1e-10, "path {p:?} g {g}");
        }
    }
    assert!(mat_norm(&(&sum - DMatrix::<C64>::identity(dr.pow(2), dr.pow(2)))) < 1e-10);
    // Trace identity with multiplicity-aware paths.
    for (i, pt) in paths.iter().enumerate() {
        for (j, ps) in paths.iter().enumerate() {
            if pt.irreps.last() != ps.irreps.last() {
                continue;
            }
            let e = matrix_unit_finite(&backend, pt, ps, CAP).unwrap();
            let dim = s3.irreps[*pt.irreps.last().unwrap()].dim() as f64;
            let expect = if i == j { dim } else { 0.0 };
            assert!((e.trace() - C64::new(expect, 0.0)).norm() < 1e-10);
        }
    }
}
