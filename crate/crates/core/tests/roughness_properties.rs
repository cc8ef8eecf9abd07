use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use qaoa_landscape::fourier::spectrum;
use qaoa_landscape::hamiltonian::{k_local, toy};
use qaoa_landscape::roughness::{
    fourier_density, fourier_max, numerical_support, tv_grid, tv_random_directions,
    DirectionSampling,
};
use qaoa_landscape::scan::grid_scan;
use qaoa_landscape::{AxisPair, EnergyEvaluator, FourierSpectrum, Landscape, Method};

const ORIGIN: AxisPair<f64> = AxisPair::new(0.0, 0.0);
const PI_BOX: AxisPair<f64> = AxisPair::new(PI, PI);

fn klocal(k: usize) -> EnergyEvaluator {
    EnergyEvaluator::new(k_local(k).unwrap(), Method::Statevector).unwrap()
}

#[test]
fn direction_estimate_is_stable_across_seeds() {
    for k in 2..=5 {
        let ev = klocal(k);
        let mus: Vec<f64> = (0..8)
            .map(|s| {
                tv_random_directions(&ev, &DirectionSampling::new(PI_BOX, 100 + s))
                    .unwrap()
                    .mean
            })
            .collect();
        let mean = mus.iter().sum::<f64>() / mus.len() as f64;
        let std = (mus.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / mus.len() as f64).sqrt();
        assert!(std / mean <= 0.10, "k={k}: std/mean = {}", std / mean);
    }
}

#[test]
fn grid_and_direction_tv_agree_in_ordering() {
    let mut pairs: Vec<(f64, f64)> = (2..=5)
        .map(|k| {
            let ev = klocal(k);
            let scan = grid_scan(&ev, AxisPair::splat(101), PI_BOX, ORIGIN).unwrap();
            (
                tv_random_directions(&ev, &DirectionSampling::new(PI_BOX, 4))
                    .unwrap()
                    .mean,
                tv_grid(&scan),
            )
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    assert!(pairs.windows(2).all(|w| w[1].1 > w[0].1), "{pairs:?}");
}

#[test]
fn fourier_max_bounded_by_total_variation() {
    for c in [0.0, 1.0, 2.0, 5.0, 10.0] {
        let h = toy(1.0, 1.0, c).unwrap();
        let ev = EnergyEvaluator::new(h, Method::Toy).unwrap();
        let scan = grid_scan(&ev, AxisPair::splat(201), PI_BOX, ORIGIN).unwrap();
        let (lo, hi) = scan.range();
        let tv_raw = tv_grid(&scan) * (hi - lo);
        let fmax = fourier_max(&spectrum(&scan));
        assert!(fmax <= 1.1 * 2.0 / PI * tv_raw, "c={c}: {fmax} vs {tv_raw}");
    }
}

#[test]
fn single_cosine_fourier_max() {
    let (a, f) = (1.7, 6.0);
    let cosine = move |_: f64, g: f64| a * (f * g).cos();
    let scan = grid_scan(&cosine, AxisPair::splat(41), PI_BOX, ORIGIN).unwrap();
    assert!((fourier_max(&spectrum(&scan)) - a / 2.0 * f).abs() < 1e-9);
}

fn scaled<'a>(ev: &'a EnergyEvaluator, alpha: f64) -> impl Landscape + 'a {
    move |b: f64, g: f64| alpha * ev.energy(b, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn metrics_are_scale_invariant(k in 1usize..=5, alpha in 0.1..20.0f64, seed in 0u64..1000) {
        let ev = klocal(k);
        let s = scaled(&ev, alpha);
        let mut sampling = DirectionSampling::new(PI_BOX, seed);
        sampling.n_directions = 25;
        let a = tv_random_directions(&ev, &sampling).unwrap();
        let b = tv_random_directions(&s, &sampling).unwrap();
        prop_assert!((a.mean - b.mean).abs() < 1e-9 && (a.std - b.std).abs() < 1e-9);

        let scan = grid_scan(&ev, AxisPair::splat(41), PI_BOX, ORIGIN).unwrap();
        let scan_s = grid_scan(&s, AxisPair::splat(41), PI_BOX, ORIGIN).unwrap();
        prop_assert!((tv_grid(&scan) - tv_grid(&scan_s)).abs() < 1e-9);
        let (fa, fb) = (fourier_density(&spectrum(&scan)), fourier_density(&spectrum(&scan_s)));
        prop_assert!((fa - fb).abs() < 1e-9);
    }

    #[test]
    fn density_bounded_by_support(values in proptest::collection::vec(-5.0..5.0f64, 49)) {
        let coeffs: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.5 * v)).collect();
        let s = FourierSpectrum::from_coefficients(AxisPair::splat(7), PI_BOX, coeffs).unwrap();
        let fd = fourier_density(&s);
        prop_assert!(fd <= numerical_support(&s) as f64 + 1e-9);
        if numerical_support(&s) > 0 {
            prop_assert!(fd >= 1.0 - 1e-12);
        }
    }
}
