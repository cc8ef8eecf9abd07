use std::f64::consts::PI;

use proptest::prelude::*;
use qaoa_landscape::hamiltonian::{h1, h2, k_local};
use qaoa_landscape::optimize::{minimize, multistart, Bounds, MultistartConfig, Params};
use qaoa_landscape::{EnergyEvaluator, Landscape};

#[test]
fn origin_is_stationary_for_offset_free_hamiltonians() {
    for h in [h1(), h2(), k_local(4).unwrap()] {
        let ev = EnergyEvaluator::auto(h).unwrap();
        let run = minimize(&ev, Params::new(0.0, 0.0), &Bounds::default(), 100).unwrap();
        assert!(run.converged());
        assert_eq!(run.final_params, Params::new(0.0, 0.0));
    }
}

#[test]
fn single_cosine_control_always_succeeds() {
    let f = |b: f64, g: f64| -(0.5 * b).cos() * (0.5 * g).cos();
    let r = multistart(&f, &MultistartConfig::new(17)).unwrap();
    assert_eq!(r.success_count, 100);
    for run in &r.runs {
        assert!(run.final_params.beta.abs() < 1e-6 && run.final_params.gamma.abs() < 1e-6);
    }
}

#[test]
fn multistart_invariants() {
    let ev = EnergyEvaluator::auto(h1()).unwrap();
    let cfg = MultistartConfig::new(99);
    let a = multistart(&ev, &cfg).unwrap();
    assert_eq!(a, multistart(&ev, &cfg).unwrap());
    assert!(a.global_min_estimate <= a.grid_minimum);
    let successes = a
        .runs
        .iter()
        .filter(|r| a.is_success(r.final_energy))
        .count();
    assert_eq!(successes, a.success_count);
    assert_eq!(a.histogram.counts.iter().sum::<usize>(), 100);
    for run in &a.runs {
        assert!(run.final_energy >= a.global_min_estimate - 1e-9);
        assert!(run.final_energy <= ev.energy(run.init_params.beta, run.init_params.gamma) + 1e-12);
        assert!(run.n_evaluations >= 1);
        let init = run.init_params;
        assert!(init.beta.abs() <= 0.9 * PI && init.gamma.abs() <= 0.9 * PI);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn never_increases_energy(k in 1usize..=4, beta in -3.0..3.0f64, gamma in -3.0..3.0f64) {
        let ev = EnergyEvaluator::auto(k_local(k).unwrap()).unwrap();
        let run = minimize(&ev, Params::new(beta, gamma), &Bounds::default(), 200).unwrap();
        prop_assert!(run.final_energy <= ev.energy(beta, gamma) + 1e-12);
        prop_assert!(Bounds::default().contains(run.final_params));
    }
}
