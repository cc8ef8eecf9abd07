//! Roughness metrics: range-normalized total variation along random 1D
//! sections and over the full grid, plus Fourier density, maximum and mean.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::energy::Landscape;
use crate::error::{Error, Result};
use crate::exec::{compensated_sum, Execution};
use crate::fourier::FourierSpectrum;
use crate::scan::{sample_line, AxisPair, LandscapeScan};

/// Default number of random directions and steps per direction.
pub const DEFAULT_DIRECTIONS: usize = 200;
pub const DEFAULT_STEPS: usize = 200;

/// Coefficients below this fraction of the largest magnitude count as zero
/// when locating the highest present frequency.
pub const NUMERICAL_ZERO: f64 = 1e-12;

/// `Σ|f_{j+1} - f_j| / (max - min)`; zero for a constant section.
pub fn tv_1d(samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "total variation needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let range = hi - lo;
    if range == 0.0 {
        return Ok(0.0);
    }
    let variation = compensated_sum(samples.windows(2).map(|w| (w[1] - w[0]).abs()));
    Ok(variation / range)
}

/// Parameters of the random-direction TV estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionSampling {
    pub n_directions: usize,
    pub steps: usize,
    pub seed: u64,
    pub center: AxisPair<f64>,
    /// Landscape period along each axis.
    pub periods: AxisPair<f64>,
    pub span: SectionSpan,
}

/// Length of the section sampled along a direction `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SectionSpan {
    /// `min(P_γ/|d_γ|, P_β/|d_β|)`: one period along the dominant component.
    #[default]
    OnePeriod,
    /// `max(P_γ/|d_γ|, P_β/|d_β|)`: at least one period along both
    /// components. Grows without bound near the axes, so the mean TV
    /// depends on the number of steps.
    SlowerAxis,
}

impl SectionSpan {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::OnePeriod => "one_period",
            Self::SlowerAxis => "slower_axis",
        }
    }
}

impl std::str::FromStr for SectionSpan {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one_period" => Ok(Self::OnePeriod),
            "slower_axis" => Ok(Self::SlowerAxis),
            other => Err(Error::Parse(format!("unknown section span {other:?}"))),
        }
    }
}

impl DirectionSampling {
    pub fn new(periods: AxisPair<f64>, seed: u64) -> Self {
        Self {
            n_directions: DEFAULT_DIRECTIONS,
            steps: DEFAULT_STEPS,
            seed,
            center: AxisPair::new(0.0, 0.0),
            periods,
            span: SectionSpan::default(),
        }
    }
}

/// Mean, standard deviation and `σ/μ` of the per-direction TV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvStatistics {
    pub mean: f64,
    pub std: f64,
    pub index: f64,
}

/// Unit direction `(γ, β)` number `index` for a master seed.
pub fn direction(seed: u64, index: usize) -> AxisPair<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let theta = rng.gen_range(0.0..2.0 * PI);
    AxisPair::new(theta.cos(), theta.sin())
}

/// Section length along `direction`; zero components are skipped.
pub fn direction_span(direction: AxisPair<f64>, periods: AxisPair<f64>, rule: SectionSpan) -> f64 {
    let candidates = [
        (direction.gamma, periods.gamma),
        (direction.beta, periods.beta),
    ]
    .into_iter()
    .filter(|(d, _)| *d != 0.0)
    .map(|(d, p)| p / d.abs());
    match rule {
        SectionSpan::OnePeriod => candidates.fold(f64::INFINITY, f64::min),
        SectionSpan::SlowerAxis => candidates.fold(0.0, f64::max),
    }
}

pub fn tv_random_directions<L: Landscape + ?Sized>(
    landscape: &L,
    sampling: &DirectionSampling,
) -> Result<TvStatistics> {
    tv_random_directions_with(Execution::default(), landscape, sampling)
}

pub fn tv_random_directions_with<L: Landscape + ?Sized>(
    exec: Execution,
    landscape: &L,
    sampling: &DirectionSampling,
) -> Result<TvStatistics> {
    if sampling.n_directions == 0 {
        return Err(Error::InvalidArgument(
            "need at least one direction".to_string(),
        ));
    }
    if sampling.steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 steps per direction, got {}",
            sampling.steps
        )));
    }
    let ok = |p: f64| p.is_finite() && p > 0.0;
    if !ok(sampling.periods.gamma) || !ok(sampling.periods.beta) {
        return Err(Error::InvalidArgument(
            "periods must be positive".to_string(),
        ));
    }

    let tvs = exec.map_range(sampling.n_directions, |i| {
        let d = direction(sampling.seed, i);
        let span = direction_span(d, sampling.periods, sampling.span);
        let samples = sample_line(landscape, sampling.center, d, span, sampling.steps);
        tv_1d(&samples).expect("steps >= 2")
    });

    let n = tvs.len() as f64;
    let mean = compensated_sum(tvs.iter().copied()) / n;
    let var = compensated_sum(tvs.iter().map(|t| (t - mean) * (t - mean))) / n;
    let std = var.sqrt();
    let index = if mean == 0.0 { 0.0 } else { std / mean };
    Ok(TvStatistics { mean, std, index })
}

/// Unnormalized grid variation: the mean periodic 1D total variation of the
/// γ lines plus that of the β lines.
pub fn grid_variation(scan: &LandscapeScan) -> f64 {
    let res = scan.res();
    let along_gamma = compensated_sum((0..res.beta).flat_map(|v| {
        (0..res.gamma).map(move |u| (scan.value((u + 1) % res.gamma, v) - scan.value(u, v)).abs())
    })) / res.beta as f64;
    let along_beta = compensated_sum((0..res.gamma).flat_map(|u| {
        (0..res.beta).map(move |v| (scan.value(u, (v + 1) % res.beta) - scan.value(u, v)).abs())
    })) / res.gamma as f64;
    along_gamma + along_beta
}

/// [`grid_variation`] divided by the scan's value range; zero when flat.
pub fn tv_grid(scan: &LandscapeScan) -> f64 {
    let (lo, hi) = scan.range();
    let range = hi - lo;
    if range == 0.0 {
        0.0
    } else {
        grid_variation(scan) / range
    }
}

/// Numerical sparsity `(Σ|c|)² / Σ|c|²` of the DC-removed spectrum.
pub fn fourier_density(spectrum: &FourierSpectrum) -> f64 {
    let s = spectrum.remove_dc();
    let l1 = compensated_sum(s.magnitudes());
    let l2 = compensated_sum(s.magnitudes().map(|m| m * m));
    if l2 == 0.0 {
        0.0
    } else {
        l1 * l1 / l2
    }
}

fn weighted_magnitudes(spectrum: &FourierSpectrum) -> impl Iterator<Item = (f64, f64)> + '_ {
    spectrum.iter().map(|(kg, kb, c)| {
        let (fg, fb) = spectrum.frequency(kg, kb);
        (c.norm(), fg.hypot(fb))
    })
}

/// `max_ω |c_ω| ‖ω‖`.
pub fn fourier_max(spectrum: &FourierSpectrum) -> f64 {
    weighted_magnitudes(spectrum)
        .map(|(m, w)| m * w)
        .fold(0.0, f64::max)
}

/// `Σ_ω |c_ω| ‖ω‖ / ‖ω̂‖` with `ω̂` the highest-norm frequency whose
/// coefficient is above [`NUMERICAL_ZERO`] relative to the largest one.
pub fn fourier_mean(spectrum: &FourierSpectrum) -> f64 {
    let s = spectrum.remove_dc();
    let max = s.magnitudes().fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    let top = weighted_magnitudes(&s)
        .filter(|&(m, _)| m > NUMERICAL_ZERO * max)
        .map(|(_, w)| w)
        .fold(0.0, f64::max);
    compensated_sum(weighted_magnitudes(&s).map(|(m, w)| m * w)) / top
}

/// Number of coefficients above [`NUMERICAL_ZERO`] relative to the largest
/// (DC removed): the numerical 0-norm that the Fourier density bounds.
pub fn numerical_support(spectrum: &FourierSpectrum) -> usize {
    let s = spectrum.remove_dc();
    let max = s.magnitudes().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    s.magnitudes().filter(|&m| m > NUMERICAL_ZERO * max).count()
}

/// All roughness metrics of one landscape, with the parameters that
/// produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct RoughnessReport {
    pub tv_mean: f64,
    pub tv_std: f64,
    pub tv_index: f64,
    pub tv_grid: f64,
    pub fourier_density: f64,
    pub fourier_max: f64,
    pub fourier_mean: f64,
    pub n_directions: usize,
    pub m_samples: usize,
    pub seed: u64,
    pub center: AxisPair<f64>,
    pub periods: AxisPair<f64>,
    pub span: SectionSpan,
    pub scan_res: AxisPair<usize>,
    pub scan_extent: AxisPair<f64>,
}

impl RoughnessReport {
    /// Combines random-direction TV on `landscape` with grid and Fourier
    /// metrics of its `scan`.
    pub fn compute<L: Landscape + ?Sized>(
        landscape: &L,
        scan: &LandscapeScan,
        spectrum: &FourierSpectrum,
        sampling: &DirectionSampling,
    ) -> Result<Self> {
        let tv = tv_random_directions(landscape, sampling)?;
        Ok(Self {
            tv_mean: tv.mean,
            tv_std: tv.std,
            tv_index: tv.index,
            tv_grid: tv_grid(scan),
            fourier_density: fourier_density(spectrum),
            fourier_max: fourier_max(spectrum),
            fourier_mean: fourier_mean(spectrum),
            n_directions: sampling.n_directions,
            m_samples: sampling.steps,
            seed: sampling.seed,
            center: sampling.center,
            periods: sampling.periods,
            span: sampling.span,
            scan_res: scan.res(),
            scan_extent: scan.extent(),
        })
    }

    /// Flat `key=value` lines; `extra` pairs (such as the command config)
    /// come first.
    pub fn to_text(&self, extra: &[(String, String)]) -> String {
        let mut out = String::new();
        for (k, v) in extra {
            let _ = writeln!(out, "{k}={v}");
        }
        let pairs: [(&str, String); 21] = [
            ("tv_mean", fmt(self.tv_mean)),
            ("tv_std", fmt(self.tv_std)),
            ("tv_index", fmt(self.tv_index)),
            ("tv_grid", fmt(self.tv_grid)),
            ("fourier_density", fmt(self.fourier_density)),
            ("fourier_max", fmt(self.fourier_max)),
            ("fourier_mean", fmt(self.fourier_mean)),
            ("n_directions", self.n_directions.to_string()),
            ("m_samples", self.m_samples.to_string()),
            ("seed", self.seed.to_string()),
            ("center_gamma", fmt(self.center.gamma)),
            ("center_beta", fmt(self.center.beta)),
            ("period_gamma", fmt(self.periods.gamma)),
            ("period_beta", fmt(self.periods.beta)),
            ("section_span", self.span.as_str().to_string()),
            ("res_gamma", self.scan_res.gamma.to_string()),
            ("res_beta", self.scan_res.beta.to_string()),
            ("extent_gamma", fmt(self.scan_extent.gamma)),
            ("extent_beta", fmt(self.scan_extent.beta)),
            ("numerical_zero", fmt(NUMERICAL_ZERO)),
            ("dc_removed", "true".to_string()),
        ];
        for (k, v) in pairs {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::spectrum;
    use crate::scan::grid_scan;
    use num_complex::Complex64;

    const ORIGIN: AxisPair<f64> = AxisPair::new(0.0, 0.0);

    #[test]
    fn tv_1d_examples() {
        let ramp: Vec<f64> = (0..50).map(|i| i as f64 * 0.3).collect();
        assert!((tv_1d(&ramp).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(tv_1d(&[2.0; 10]).unwrap(), 0.0);
        assert!(tv_1d(&[1.0]).is_err());

        // Analytic TV of one sine period is 4A over a range of 2A.
        let sine: Vec<f64> = (0..=2000)
            .map(|i| 3.0 * (2.0 * PI * i as f64 / 2000.0).sin())
            .collect();
        assert!((tv_1d(&sine).unwrap() - 2.0).abs() < 0.02);
    }

    #[test]
    fn spans() {
        let p = AxisPair::new(PI, PI);
        for rule in [SectionSpan::OnePeriod, SectionSpan::SlowerAxis] {
            assert_eq!(direction_span(AxisPair::new(1.0, 0.0), p, rule), PI);
            assert_eq!(direction_span(AxisPair::new(0.0, -1.0), p, rule), PI);
            let s = 0.5f64.sqrt();
            assert!(
                (direction_span(AxisPair::new(s, s), p, rule) - PI * 2f64.sqrt()).abs() < 1e-12
            );
        }
        let d = AxisPair::new(0.6, 0.8);
        let periods = AxisPair::new(2.0 * PI, PI);
        assert!(
            (direction_span(d, periods, SectionSpan::SlowerAxis) - 2.0 * PI / 0.6).abs() < 1e-12
        );
        assert!((direction_span(d, periods, SectionSpan::OnePeriod) - PI / 0.8).abs() < 1e-12);
    }

    #[test]
    fn directions_are_unit_and_seeded() {
        for i in 0..20 {
            let d = direction(9, i);
            assert!((d.gamma.hypot(d.beta) - 1.0).abs() < 1e-12);
            assert_eq!(d, direction(9, i));
        }
        assert_ne!(direction(9, 0), direction(10, 0));
        assert_ne!(direction(9, 0), direction(9, 1));
    }

    #[test]
    fn constant_landscape_has_zero_tv() {
        let f = |_: f64, _: f64| 1.0;
        let tv = tv_random_directions(&f, &DirectionSampling::new(AxisPair::splat(PI), 3)).unwrap();
        assert_eq!(
            tv,
            TvStatistics {
                mean: 0.0,
                std: 0.0,
                index: 0.0
            }
        );
    }

    #[test]
    fn tv_is_deterministic_across_modes() {
        let f = |b: f64, g: f64| (2.0 * g).sin() * (4.0 * b).cos() + (2.0 * b).sin();
        let mut s = DirectionSampling::new(AxisPair::splat(PI), 42);
        s.n_directions = 50;
        let a = tv_random_directions_with(Execution::Sequential, &f, &s).unwrap();
        let b = tv_random_directions_with(Execution::Parallel, &f, &s).unwrap();
        assert_eq!(a, b);
        assert!(a.mean > 0.0 && a.std > 0.0);
        let mut bad = s;
        bad.n_directions = 0;
        assert!(tv_random_directions(&f, &bad).is_err());
    }

    #[test]
    fn grid_tv_of_separable_cosines() {
        let f = |b: f64, g: f64| (2.0 * g).cos() + (2.0 * b).cos();
        let scan = grid_scan(&f, AxisPair::splat(201), AxisPair::splat(PI), ORIGIN).unwrap();
        // Per-axis TV of cos over one period is 4, range of the sum is 4.
        let analytic = (4.0 + 4.0) / 4.0;
        assert!((tv_grid(&scan) - analytic).abs() < 0.05 * analytic);

        let flat = |_: f64, _: f64| -2.0;
        let scan = grid_scan(&flat, AxisPair::splat(11), AxisPair::splat(PI), ORIGIN).unwrap();
        assert_eq!(tv_grid(&scan), 0.0);
    }

    fn synthetic(points: &[(usize, f64)]) -> FourierSpectrum {
        let mut c = vec![Complex64::new(0.0, 0.0); 81];
        for &(idx, m) in points {
            c[idx] = Complex64::from_polar(m, idx as f64);
        }
        FourierSpectrum::from_coefficients(AxisPair::splat(9), AxisPair::splat(PI), c).unwrap()
    }

    #[test]
    fn density_examples() {
        assert_eq!(fourier_density(&synthetic(&[(3, 2.0)])), 1.0);
        for k in 1..10 {
            let pts: Vec<(usize, f64)> = (0..k).map(|i| (i * 7 + 1, 0.7)).collect();
            assert!((fourier_density(&synthetic(&pts)) - k as f64).abs() < 1e-12);
        }
        assert_eq!(fourier_density(&synthetic(&[])), 0.0);
        // DC (index 40 of the 9x9 lattice) is ignored.
        assert_eq!(fourier_density(&synthetic(&[(40, 5.0), (3, 1.0)])), 1.0);
    }

    #[test]
    fn fourier_max_and_mean() {
        let f = |_: f64, g: f64| 3.0 * (4.0 * g).cos();
        let scan = grid_scan(&f, AxisPair::splat(21), AxisPair::splat(PI), ORIGIN).unwrap();
        let s = spectrum(&scan);
        assert!((fourier_max(&s) - 1.5 * 4.0).abs() < 1e-9);
        // Two coefficients of 1.5 at |ω| = 4, divided by |ω̂| = 4.
        assert!((fourier_mean(&s) - 3.0).abs() < 1e-9);
        assert_eq!(numerical_support(&s), 2);

        let zero = synthetic(&[]);
        assert_eq!(fourier_max(&zero), 0.0);
        assert_eq!(fourier_mean(&zero), 0.0);
    }

    #[test]
    fn report_text_has_all_keys() {
        let f = |b: f64, g: f64| (2.0 * g).cos() * (2.0 * b).sin();
        let scan = grid_scan(&f, AxisPair::splat(21), AxisPair::splat(PI), ORIGIN).unwrap();
        let spec = spectrum(&scan);
        let mut sampling = DirectionSampling::new(AxisPair::splat(PI), 1);
        sampling.n_directions = 10;
        let r = RoughnessReport::compute(&f, &scan, &spec, &sampling).unwrap();
        let text = r.to_text(&[("command".to_string(), "roughness".to_string())]);
        assert!(text.starts_with("command=roughness\n"));
        for key in [
            "tv_mean=",
            "tv_std=",
            "tv_index=",
            "tv_grid=",
            "fourier_density=",
            "seed=1",
            "n_directions=10",
            "m_samples=200",
        ] {
            assert!(text.contains(key), "{key}");
        }
        assert!(r.fourier_density >= 1.0);
    }
}
