mod common;

use std::f64::consts::PI;

use common::*;
use cvphase_core::phase_space::random_pure_description_with;
use cvphase_core::{
    cat_state, evolve, exact_norm, measureprob_exact, post_measurement_superposition, simulate_exact,
    superposition_energy_exact, superposition_moments, CircuitSpec, GateSpec, GaussianSuperposition, HeterodyneOutcome,
    Parity,
};
use rand::Rng;

fn random_superposition(modes: usize, chi: usize, seed: u64) -> GaussianSuperposition {
    let mut r = rng(seed);
    let terms = (0..chi)
        .map(|t| {
            (random_complex(&mut r, 1.0), random_pure_description_with(modes, 0.8, 1.2, seed * 10 + t as u64).unwrap())
        })
        .collect();
    GaussianSuperposition::new(terms).unwrap()
}

fn two_mode_cat() -> GaussianSuperposition {
    cat_state(c(1.0, 0.0), Parity::Even).unwrap().with_vacuum_modes(1)
}

#[test]
fn exact_norm_matches_oracle() {
    for modes in [1, 2] {
        for chi in 1..=4 {
            for s in 0..3u64 {
                let psi = random_superposition(modes, chi, 100 * modes as u64 + 10 * chi as u64 + s);
                let fast = exact_norm(&psi).unwrap();
                let slow = fock_superposition(&psi).norm_sqr().sqrt();
                assert!((fast - slow).abs() < 1e-7, "{modes}/{chi}/{s}: {fast} vs {slow}");
            }
        }
    }
}

#[test]
fn three_term_one_mode_norm() {
    let psi = random_superposition(1, 3, 4242);
    let slow = fock_superposition(&psi).norm_sqr().sqrt();
    assert!((exact_norm(&psi).unwrap() - slow).abs() < 1e-7);
}

#[test]
fn even_cat_density_at_origin() {
    let cat = cat_state(c(1.0, 0.0), Parity::Even).unwrap();
    let out = HeterodyneOutcome::new(vec![c(0.0, 0.0)]).unwrap();
    let p = measureprob_exact(&cat, &out).unwrap();
    let slow = fock_superposition(&cat).heterodyne_density(&[c(0.0, 0.0)]).unwrap();
    assert!((p - slow).abs() < 1e-7);
    // |⟨0|cat⟩|²/π = 4N₊² e^{−1}/π
    let n2 = 1.0 / (2.0 * (1.0 + (-2.0f64).exp()));
    assert!((p - 4.0 * n2 * (-1.0f64).exp() / PI).abs() < 1e-12);
}

#[test]
fn energy_and_moments_match_oracle() {
    let cases =
        [cat_state(c(1.0, 0.5), Parity::Odd).unwrap(), random_superposition(1, 3, 7), random_superposition(2, 2, 8)];
    for psi in &cases {
        let v = fock_superposition(psi);
        assert!((superposition_energy_exact(psi).unwrap() - v.energy().unwrap()).abs() < 1e-7);
        let (d, g) = superposition_moments(psi).unwrap();
        let (d0, g0) = v.moments().unwrap();
        assert!((d - d0).norm() < 1e-7);
        assert!((g - g0).norm() < 1e-7);
    }
}

#[test]
fn cat_through_beamsplitter() {
    let gates = vec![GateSpec::Beamsplitter { omega: 0.7, modes: (1, 2) }, GateSpec::PhaseShift { phi: 0.3, mode: 2 }];
    let psi = two_mode_cat();
    let out = evolve(&psi, &gates).unwrap();
    let mut v = fock_superposition(&psi);
    for g in &gates {
        v = v.apply(&oracle_gate(g), 1e-10).unwrap();
    }
    let ov = inner(&fock_superposition(&out), &v);
    assert!((ov - c(1.0, 0.0)).norm() < 1e-6, "{ov}");

    let mut r = rng(5);
    for _ in 0..5 {
        let beta = random_complex(&mut r, 1.5);
        let circ = CircuitSpec::new(2, gates.clone(), HeterodyneOutcome::new(vec![beta]).unwrap()).unwrap();
        let p = simulate_exact(&psi, &circ).unwrap().density;
        assert!((p - v.heterodyne_density(&[beta]).unwrap()).abs() < 1e-6);
    }
}

#[test]
fn density_is_squared_norm_of_projection() {
    let mut r = rng(21);
    for s in 0..10u64 {
        let psi = random_superposition(2, 3, 300 + s);
        let k = r.random_range(1..=2);
        let out = HeterodyneOutcome::new((0..k).map(|_| random_complex(&mut r, 1.0)).collect()).unwrap();
        let p = measureprob_exact(&psi, &out).unwrap();
        let post = post_measurement_superposition(&psi, &out).unwrap();
        let n = exact_norm(&post.state).unwrap();
        assert!((p * PI.powi(k) - n * n).abs() < 1e-9);
        let slow = fock_superposition(&psi).heterodyne_density(out.beta()).unwrap();
        assert!((p - slow).abs() < 1e-7);
    }
}
