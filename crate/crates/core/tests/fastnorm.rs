mod common;

use std::sync::Mutex;

use common::*;
use cvphase_core::sampling::fast_norm_with;
use cvphase_core::{
    cat_state, exact_norm, fast_norm, simulate_approx, simulate_exact, superposition_energy_exact, ApproxOptions,
    CircuitSpec, FastNormPlan, GateSpec, GaussianSuperposition, HeterodyneOutcome, Parity, Result, SampleRunner,
    Sequential,
};

/// Runs blocks in reverse order, to check that the reduction does not depend
/// on scheduling.
struct Reversed;

impl SampleRunner for Reversed {
    fn run_blocks(&self, blocks: u64, f: &(dyn Fn(u64) -> Result<f64> + Sync)) -> Result<Vec<f64>> {
        let mut out = vec![0.0; blocks as usize];
        for b in (0..blocks).rev() {
            out[b as usize] = f(b)?;
        }
        Ok(out)
    }
}

/// Interleaves blocks across scoped threads.
struct Threads(usize);

impl SampleRunner for Threads {
    fn run_blocks(&self, blocks: u64, f: &(dyn Fn(u64) -> Result<f64> + Sync)) -> Result<Vec<f64>> {
        let out = Mutex::new(vec![Ok(0.0); blocks as usize]);
        std::thread::scope(|s| {
            for w in 0..self.0 {
                let out = &out;
                s.spawn(move || {
                    let mut b = w as u64;
                    while b < blocks {
                        let v = f(b);
                        out.lock().unwrap()[b as usize] = v;
                        b += self.0 as u64;
                    }
                });
            }
        });
        out.into_inner().unwrap().into_iter().collect()
    }
}

fn failure_fraction(psi: &GaussianSuperposition, eps: f64, pf: f64, trials: u64) -> f64 {
    let exact = exact_norm(psi).unwrap().powi(2);
    let e = superposition_energy_exact(psi).unwrap();
    let bad = (0..trials)
        .filter(|&seed| {
            let est = fast_norm(psi, eps, pf, e, seed).unwrap();
            (est.value / exact - 1.0).abs() > eps
        })
        .count();
    bad as f64 / trials as f64
}

#[test]
fn failure_rate_on_cats() {
    let cat = cat_state(c(1.0, 0.0), Parity::Even).unwrap();
    let bound = 0.25 + 3.0 * (0.25f64 * 0.75 / 200.0).sqrt();
    assert!(failure_fraction(&cat, 0.5, 0.25, 200) <= bound);
}

#[test]
fn two_mode_weight_is_calibrated() {
    // Mean of the estimator over many probes approaches ‖Ψ‖² up to the mass
    // outside the ball, which the energy bound controls.
    let psi = cat_state(c(0.8, 0.3), Parity::Odd).unwrap().with_vacuum_modes(1);
    let e = superposition_energy_exact(&psi).unwrap();
    let plan = FastNormPlan::new(2, 0.2, 0.05, e).unwrap();
    let est = fast_norm_with(&psi, &plan, 3, &Sequential).unwrap();
    assert!((est.value - 1.0).abs() < 0.2, "{}", est.value);
}

#[test]
fn estimates_do_not_depend_on_scheduling() {
    let psi = cat_state(c(1.0, 0.5), Parity::Even).unwrap();
    let plan = FastNormPlan::new(1, 0.3, 0.2, 5.0).unwrap();
    let a = fast_norm_with(&psi, &plan, 77, &Sequential).unwrap();
    let b = fast_norm_with(&psi, &plan, 77, &Reversed).unwrap();
    let t = fast_norm_with(&psi, &plan, 77, &Threads(3)).unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    assert_eq!(a.value.to_bits(), t.value.to_bits());
    let other = fast_norm_with(&psi, &plan, 78, &Sequential).unwrap();
    assert_ne!(a.value, other.value);
}

#[test]
fn approximate_simulation_tracks_exact() {
    let psi = cat_state(c(1.0, 0.0), Parity::Even).unwrap().with_vacuum_modes(1);
    let circ = CircuitSpec::new(
        2,
        vec![GateSpec::Beamsplitter { omega: 0.5, modes: (1, 2) }, GateSpec::Squeeze { z: 0.2, mode: 2 }],
        HeterodyneOutcome::new(vec![c(0.3, 0.0)]).unwrap(),
    )
    .unwrap();
    let exact = simulate_exact(&psi, &circ).unwrap().density;
    let mut opts = ApproxOptions::new(0.3, 0.2, 11);
    opts.energy_override = Some(12.0);
    let approx = simulate_approx(&psi, &circ, &opts, &Threads(2)).unwrap();
    assert!((approx.density / exact - 1.0).abs() < 0.3);
    let info = approx.approx.unwrap();
    assert_eq!(info.seed, 11);
    assert_eq!(info.energy_bound, 12.0);
    let again = simulate_approx(&psi, &circ, &opts, &Sequential).unwrap();
    assert_eq!(again.density.to_bits(), approx.density.to_bits());
}
