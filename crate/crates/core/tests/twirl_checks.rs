//! Twirl application checks: fidelities, the eta(delta) law, gauge and
//! covariance properties, and agreement of the compressed-oracle twirl with
//! the exact reference average and the depolarised-inverse target.

use cgoracle::haar::sample_haar;
use cgoracle::oracle::Backend;
use cgoracle::twirl::{
    average_inversion_fidelity, channel_fidelity, clifford_group_d2, comb_from_json,
    comb_to_json, depolarizing, eta_of_delta, twirl_choi_reference, verify_twirl, Channel, Comb,
};
use cgoracle::C64;
use nalgebra::DMatrix;

fn hadamard() -> DMatrix<C64> {
    let s = 1.0 / 2f64.sqrt();
    DMatrix::from_row_slice(2, 2, &[
        C64::new(s, 0.0),
        C64::new(s, 0.0),
        C64::new(s, 0.0),
        C64::new(-s, 0.0),
    ])
}

fn phase_gate(theta: f64) -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(theta.cos(), theta.sin()),
    ])
}

#[test]
fn channel_fidelity_examples() {
    let u = hadamard();
    // Exact inverse channel: fidelity 1.
    let inv = Channel::unitary(&u.adjoint());
    assert!((channel_fidelity(&inv, &u).unwrap() - 1.0).abs() < 1e-12);
    // Completely depolarising: 1/d^2.
    let dep = Channel::completely_depolarizing(2);
    assert!((channel_fidelity(&dep, &u).unwrap() - 0.25).abs() < 1e-12);
    // Identity channel: |Tr U|^2 / 4. The traceless Hadamard gives 0; the
    // quarter phase gate gives |1 + e^{i pi/2}|^2 / 4 = 1/2.
    let id = Channel::identity(2);
    assert!(channel_fidelity(&id, &u).unwrap().abs() < 1e-12);
    let s = phase_gate(std::f64::consts::PI / 2.0);
    assert!((channel_fidelity(&id, &s).unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn channel_fidelity_is_kraus_gauge_invariant() {
    // Remix the Kraus list by a random unitary; the fidelity cannot move.
    let u = phase_gate(0.71);
    let dep = depolarizing(2, 0.37);
    let before = channel_fidelity(&dep, &u).unwrap();
    let mix = sample_haar(dep.kraus.len(), 99);
    let remixed: Vec<DMatrix<C64>> = (0..dep.kraus.len())
        .map(|i| {
            let mut acc = DMatrix::<C64>::zeros(2, 2);
            for (j, k) in dep.kraus.iter().enumerate() {
                acc += k * mix[(i, j)];
            }
            acc
        })
        .collect();
    let after = channel_fidelity(&Channel::from_kraus(remixed).unwrap(), &u).unwrap();
    assert!((before - after).abs() < 1e-12);
}

#[test]
fn average_fidelities_of_the_reference_combs() {
    // Identity comb: F = E|Tr U|^2 / 4 = 1/4.
    let f = average_inversion_fidelity(&Comb::identity_comb(2), 1).unwrap();
    assert!((f - 0.25).abs() < 1e-12, "identity comb F = {f}");
    // Through comb: F = E|Tr U^2|^2 / 4 = 1/2.
    let f = average_inversion_fidelity(&Comb::through_comb(2), 1).unwrap();
    assert!((f - 0.5).abs() < 1e-12, "through comb F = {f}");
    // Perfect inverter: F = 1.
    let f = average_inversion_fidelity(&Comb::PerfectInverterStub { d: 2 }, 1).unwrap();
    assert!((f - 1.0).abs() < 1e-15);
    // n > 1 is out of scope.
    assert!(average_inversion_fidelity(&Comb::identity_comb(2), 2).is_err());
}

#[test]
fn eta_of_delta_examples() {
    assert!((eta_of_delta(0.0, 2).unwrap()).abs() < 1e-15);
    assert!((eta_of_delta(0.75, 2).unwrap() - 1.0).abs() < 1e-12);
    assert!((eta_of_delta(0.5, 2).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    assert!(eta_of_delta(0.9, 2).is_err());
}

#[test]
fn clifford_group_is_a_3_design_for_frame_potentials() {
    let cl = clifford_group_d2();
    assert_eq!(cl.len(), 24);
    // Frame potential E|Tr(U V^dagger)|^6 over the group must equal the Haar
    // value of E|Tr W|^6, computed independently through the Weingarten
    // oracle: sum over all index words of E[W_aa W_bb W_cc conj(W_dd) ...].
    let mut haar = 0.0;
    for a in 0..2u32 {
        for b in 0..2u32 {
            for c in 0..2u32 {
                for ah in 0..2u32 {
                    for bh in 0..2u32 {
                        for ch in 0..2u32 {
                            let spec = cgoracle::haar::EntryMoment {
                                u: vec![(a, a), (b, b), (c, c)],
                                u_conj: vec![(ah, ah), (bh, bh), (ch, ch)],
                            };
                            haar += cgoracle::haar::rational_to_f64(
                                &cgoracle::haar::haar_moment_unitary(&spec, 2).unwrap(),
                            );
                        }
                    }
                }
            }
        }
    }
    let mut acc = 0.0;
    for a in &cl {
        for b in &cl {
            let w = a * b.adjoint();
            acc += w.trace().norm_sqr().powi(3);
        }
    }
    acc /= (cl.len() * cl.len()) as f64;
    assert!((acc - haar).abs() < 1e-9, "frame potential {acc} vs haar {haar}");
}

#[test]
fn twirl_theorem_identity_comb() {
    let backend = Backend::u_fast(2);
    let comb = Comb::identity_comb(2);
    let us = [
        DMatrix::<C64>::identity(2, 2),
        hadamard(),
        phase_gate(std::f64::consts::PI / 4.0),
    ];
    let report = verify_twirl(&comb, &us, &backend).unwrap();
    assert!((report.delta - 0.75).abs() < 1e-12);
    assert!((report.eta - 1.0).abs() < 1e-12);
    assert!(report.max_dev_oracle_vs_target < 1e-10, "{report:?}");
    assert!(report.max_dev_reference_vs_target < 1e-10, "{report:?}");
    assert!(report.max_dev_oracle_vs_reference < 1e-10, "{report:?}");
}

#[test]
fn twirl_theorem_through_comb() {
    let backend = Backend::u_fast(2);
    let comb = Comb::through_comb(2);
    let us = [
        DMatrix::<C64>::identity(2, 2),
        hadamard(),
        phase_gate(std::f64::consts::PI / 4.0),
    ];
    let report = verify_twirl(&comb, &us, &backend).unwrap();
    assert!((report.delta - 0.5).abs() < 1e-12);
    assert!((report.eta - 2.0 / 3.0).abs() < 1e-12);
    assert!(report.max_dev_oracle_vs_target < 1e-10, "{report:?}");
    assert!(report.max_dev_reference_vs_target < 1e-10, "{report:?}");
    assert!(report.max_dev_oracle_vs_reference < 1e-10, "{report:?}");
}

#[test]
fn twirl_theorem_perfect_inverter_stub() {
    let backend = Backend::u_fast(2);
    let comb = Comb::PerfectInverterStub { d: 2 };
    let us = [hadamard(), phase_gate(1.1)];
    let report = verify_twirl(&comb, &us, &backend).unwrap();
    assert!(report.eta.abs() < 1e-12);
    assert!(report.max_dev_oracle_vs_target < 1e-12);
}

#[test]
fn twirl_output_is_covariant() {
    // T[W U] = T[U] . Ad_{W^dagger} on random W, via the reference route.
    let comb = Comb::through_comb(2);
    let u = phase_gate(0.3);
    let w = sample_haar(2, 1234);
    let left = twirl_choi_reference(&comb, &(&w * &u)).unwrap();
    // Choi of T[U] . Ad_{W^dagger}: Kraus K -> K W^dagger.
    let t_u = twirl_choi_reference(&comb, &u).unwrap();
    let t_u_chan = Channel::from_choi(&t_u, 2, 2, 1e-9).unwrap();
    let composed = Channel {
        kraus: t_u_chan.kraus.iter().map(|k| k * w.adjoint()).collect(),
    };
    let right = composed.choi();
    let dev = (&left - &right)
        .iter()
        .map(|v| v.norm())
        .fold(0.0f64, f64::max);
    assert!(dev < 1e-10, "covariance deviation {dev}");
}

#[test]
fn choi_round_trip_and_positivity_check() {
    let dep = depolarizing(2, 0.44);
    let choi = dep.choi();
    let back = Channel::from_choi(&choi, 2, 2, 1e-10).unwrap();
    let again = back.choi();
    let dev = (&choi - &again)
        .iter()
        .map(|v| v.norm())
        .fold(0.0f64, f64::max);
    assert!(dev < 1e-10);
    // A non-PSD matrix is rejected.
    let mut bad = DMatrix::<C64>::identity(4, 4);
    bad[(0, 0)] = C64::new(-1.0, 0.0);
    assert!(Channel::from_choi(&bad, 2, 2, 1e-10).is_err());
}

#[test]
fn comb_json_round_trip() {
    let comb = Comb::identity_comb(2);
    let text = comb_to_json("identity", &comb).unwrap();
    let back = comb_from_json(&text).unwrap();
    let f = average_inversion_fidelity(&back, 1).unwrap();
    assert!((f - 0.25).abs() < 1e-12);
}
