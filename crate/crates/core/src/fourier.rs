//! 2D discrete Fourier analysis of landscape scans.
//!
//! Coefficients live on an integer lattice `(k_γ, k_β)` with physical
//! frequency `f = 2πk / extent` per axis. The forward transform is scaled by
//! `1/(res_γ res_β)` and re-phased to the origin of parameter space, so
//! `C(β, γ) = Σ c(k) exp(i(f_γ γ + f_β β))` and `A cos(fγ)` shows up as
//! magnitude `A/2` at `±f`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::hamiltonian::{IsingHamiltonian, ENUMERATION_LIMIT};
use crate::scan::{AxisPair, LandscapeScan};

/// Default relative peak threshold for exact-period integer spectra.
pub const DEFAULT_PEAK_THRESHOLD: f64 = 1e-6;

/// Tolerance when matching physical frequencies against predictions.
pub const FREQUENCY_MATCH_TOLERANCE: f64 = 1e-9;

/// One axis of the frequency lattice: `k` runs over `k_min .. k_min + len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeAxis {
    pub k_min: i64,
    pub len: usize,
    pub extent: f64,
}

impl LatticeAxis {
    /// Full lattice `[-⌊n/2⌋, ⌈n/2⌉ - 1]` of an `n`-point scan.
    fn full(n: usize, extent: f64) -> Self {
        Self {
            k_min: -((n / 2) as i64),
            len: n,
            extent,
        }
    }

    pub fn k_max(&self) -> i64 {
        self.k_min + self.len as i64 - 1
    }

    pub fn contains(&self, k: i64) -> bool {
        k >= self.k_min && k <= self.k_max()
    }

    pub fn frequency(&self, k: i64) -> f64 {
        k as f64 * (2.0 * PI / self.extent)
    }

    fn index(&self, k: i64) -> usize {
        (k - self.k_min) as usize
    }

    fn ks(&self) -> impl Iterator<Item = i64> {
        let k_min = self.k_min;
        (0..self.len as i64).map(move |i| k_min + i)
    }
}

/// Complex Fourier coefficients on an integer frequency lattice, row-major
/// with `k_γ` as the slow axis.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum {
    gamma: LatticeAxis,
    beta: LatticeAxis,
    coefficients: Vec<Complex64>,
    leakage_warning: bool,
}

/// A lattice point surfaced by [`FourierSpectrum::peaks`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub k_gamma: i64,
    pub k_beta: i64,
    pub f_gamma: f64,
    pub f_beta: f64,
    pub magnitude: f64,
}

impl FourierSpectrum {
    /// Builds a spectrum from explicit coefficients on the full lattice of a
    /// `res.gamma × res.beta` scan.
    pub fn from_coefficients(
        res: AxisPair<usize>,
        extent: AxisPair<f64>,
        coefficients: Vec<Complex64>,
    ) -> Result<Self> {
        if coefficients.len() != res.gamma * res.beta {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a {}x{} lattice",
                coefficients.len(),
                res.gamma,
                res.beta
            )));
        }
        Ok(Self {
            gamma: LatticeAxis::full(res.gamma, extent.gamma),
            beta: LatticeAxis::full(res.beta, extent.beta),
            coefficients,
            leakage_warning: false,
        })
    }

    pub fn gamma_axis(&self) -> LatticeAxis {
        self.gamma
    }

    pub fn beta_axis(&self) -> LatticeAxis {
        self.beta
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Set when the scanned extent is not a whole number of γ periods, so
    /// frequencies fall between lattice points and leak into neighbors.
    pub fn leakage_warning(&self) -> bool {
        self.leakage_warning
    }

    pub fn with_leakage_warning(mut self, flag: bool) -> Self {
        self.leakage_warning = flag;
        self
    }

    pub fn coefficient(&self, k_gamma: i64, k_beta: i64) -> Option<Complex64> {
        if self.gamma.contains(k_gamma) && self.beta.contains(k_beta) {
            Some(
                self.coefficients
                    [self.gamma.index(k_gamma) * self.beta.len + self.beta.index(k_beta)],
            )
        } else {
            None
        }
    }

    /// Physical frequency `(f_γ, f_β)` of a lattice point.
    pub fn frequency(&self, k_gamma: i64, k_beta: i64) -> (f64, f64) {
        (self.gamma.frequency(k_gamma), self.beta.frequency(k_beta))
    }

    /// `(k_γ, k_β, c)` in lattice order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, Complex64)> + '_ {
        let beta = self.beta;
        self.gamma
            .ks()
            .flat_map(move |kg| beta.ks().map(move |kb| (kg, kb)))
            .zip(self.coefficients.iter())
            .map(|((kg, kb), &c)| (kg, kb, c))
    }

    pub fn magnitudes(&self) -> impl Iterator<Item = f64> + '_ {
        self.coefficients.iter().map(|c| c.norm())
    }

    /// Copy with `c(0, 0) = 0`.
    pub fn remove_dc(&self) -> Self {
        let mut out = self.clone();
        if self.gamma.contains(0) && self.beta.contains(0) {
            let idx = self.gamma.index(0) * self.beta.len + self.beta.index(0);
            out.coefficients[idx] = Complex64::new(0.0, 0.0);
        }
        out
    }

    /// Restriction to `f_γ >= 0`; the other half follows from
    /// `c(-k) = conj(c(k))` for real landscapes.
    pub fn half_spectrum(&self) -> Self {
        let start = self.gamma.k_min.max(0);
        let len = (self.gamma.k_max() - start + 1).max(0) as usize;
        let first = self.gamma.index(start.min(self.gamma.k_max() + 1));
        let coefficients =
            self.coefficients[first * self.beta.len..(first + len) * self.beta.len].to_vec();
        Self {
            gamma: LatticeAxis {
                k_min: start,
                len,
                extent: self.gamma.extent,
            },
            beta: self.beta,
            coefficients,
            leakage_warning: self.leakage_warning,
        }
    }

    /// Lattice points with magnitude `>= threshold × max`, DC excluded, sorted
    /// by descending magnitude (ties in lattice order). Empty for an all-zero
    /// spectrum.
    pub fn peaks(&self, relative_threshold: f64) -> Result<Vec<Peak>> {
        if !(relative_threshold > 0.0 && relative_threshold < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "peak threshold must be in (0, 1), got {relative_threshold}"
            )));
        }
        let spec = self.remove_dc();
        let max = spec.magnitudes().fold(0.0, f64::max);
        if max == 0.0 {
            return Ok(Vec::new());
        }
        let cut = relative_threshold * max;
        let mut peaks: Vec<Peak> = spec
            .iter()
            .filter(|(_, _, c)| c.norm() >= cut)
            .map(|(kg, kb, c)| {
                let (fg, fb) = spec.frequency(kg, kb);
                Peak {
                    k_gamma: kg,
                    k_beta: kb,
                    f_gamma: fg,
                    f_beta: fb,
                    magnitude: c.norm(),
                }
            })
            .collect();
        peaks.sort_by(|a, b| {
            b.magnitude
                .total_cmp(&a.magnitude)
                .then((a.k_gamma, a.k_beta).cmp(&(b.k_gamma, b.k_beta)))
        });
        Ok(peaks)
    }

    /// Rows of `k_gamma,k_beta,f_gamma,f_beta,magnitude,phase` in lattice
    /// order, preceded by `# ` comment lines and a column header.
    pub fn to_text(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        if self.leakage_warning {
            let _ = writeln!(
                out,
                "# warning: spectral leakage, frequencies are not on the lattice"
            );
        }
        let _ = writeln!(out, "k_gamma,k_beta,f_gamma,f_beta,magnitude,phase");
        for (kg, kb, c) in self.iter() {
            let (fg, fb) = self.frequency(kg, kb);
            let _ = writeln!(
                out,
                "{kg},{kb},{fg:.16e},{fb:.16e},{:.16e},{:.16e}",
                c.norm(),
                c.arg()
            );
        }
        out
    }
}

/// Forward 2D DFT of an endpoint-exclusive scan, normalized by
/// `1/(res_γ res_β)` and phased relative to `(γ, β) = (0, 0)`.
pub fn spectrum(scan: &LandscapeScan) -> FourierSpectrum {
    let res = scan.res();
    let (ng, nb) = (res.gamma, res.beta);
    let mut planner = FftPlanner::<f64>::new();

    let mut data: Vec<Complex64> = scan
        .values()
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    let row_fft = planner.plan_fft_forward(nb);
    for row in data.chunks_exact_mut(nb) {
        row_fft.process(row);
    }
    let col_fft = planner.plan_fft_forward(ng);
    let mut column = vec![Complex64::new(0.0, 0.0); ng];
    for v in 0..nb {
        for u in 0..ng {
            column[u] = data[u * nb + v];
        }
        col_fft.process(&mut column);
        for u in 0..ng {
            data[u * nb + v] = column[u];
        }
    }

    let gamma = LatticeAxis::full(ng, scan.extent().gamma);
    let beta = LatticeAxis::full(nb, scan.extent().beta);
    let start = AxisPair::new(
        scan.center().gamma - scan.extent().gamma / 2.0,
        scan.center().beta - scan.extent().beta / 2.0,
    );
    let scale = 1.0 / (ng * nb) as f64;
    let fft_index = |k: i64, n: usize| -> usize { k.rem_euclid(n as i64) as usize };

    let mut coefficients = Vec::with_capacity(ng * nb);
    for kg in gamma.ks() {
        for kb in beta.ks() {
            let raw = data[fft_index(kg, ng) * nb + fft_index(kb, nb)];
            let shift = gamma.frequency(kg) * start.gamma + beta.frequency(kb) * start.beta;
            coefficients.push(raw * Complex64::from_polar(scale, -shift));
        }
    }
    FourierSpectrum {
        gamma,
        beta,
        coefficients,
        leakage_warning: false,
    }
}

/// Whether scanning `h` over a γ extent of `extent_gamma` leaves frequencies
/// off the lattice. Uses the eigenvalue-difference period when the spectrum
/// is enumerable, the coefficient-GCD period otherwise.
pub fn leakage_expected(h: &IsingHamiltonian, extent_gamma: f64) -> bool {
    if h.terms().is_empty() {
        return false;
    }
    let period = if h.n_qubits() <= ENUMERATION_LIMIT.min(16) {
        h.spectral_gamma_period()
    } else {
        h.gamma_period()
    };
    match period {
        Ok(p) => {
            let ratio = extent_gamma / p;
            ratio.round() < 1.0 || (ratio - ratio.round()).abs() > 1e-9
        }
        Err(_) => true,
    }
}

/// `(|f_γ|, |f_β|)` predicted for `Z0 + Z1 + c Z0 Z1`, with coincident
/// entries merged and vanishing components removed. Sorted.
pub fn predict_toy_frequencies(c: f64) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut push = |fg: f64, fb: f64| {
        let p = (fg.abs(), fb.abs());
        if !out.iter().any(|q| {
            (q.0 - p.0).abs() < FREQUENCY_MATCH_TOLERANCE
                && (q.1 - p.1).abs() < FREQUENCY_MATCH_TOLERANCE
        }) {
            out.push(p);
        }
    };
    // Linear terms: ½ sin(2β)[sin((2c+2)γ) + sin((2c-2)γ)]; sin(0·γ) vanishes.
    for fg in [2.0 * c + 2.0, 2.0 * c - 2.0] {
        if fg != 0.0 {
            push(fg, 2.0);
        }
    }
    if c != 0.0 {
        for fg in [2.0 * c + 2.0, 2.0 * c - 2.0] {
            if fg != 0.0 {
                push(fg, 4.0);
            }
        }
        push(4.0, 4.0);
        push(4.0, 0.0);
        push(0.0, 4.0);
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out
}

/// Expands absolute frequency pairs to every sign combination.
pub fn sign_complete(abs_pairs: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for &(a, b) in abs_pairs {
        for sa in [1.0, -1.0] {
            for sb in [1.0, -1.0] {
                let p = (sa * a, sb * b);
                if !out.iter().any(|q| q.0 == p.0 && q.1 == p.1) {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out
}

/// Whether `(f_γ, f_β)` matches a member of `set` within tolerance.
pub fn contains_frequency(set: &[(f64, f64)], f: (f64, f64)) -> bool {
    set.iter().any(|q| {
        (q.0 - f.0).abs() < FREQUENCY_MATCH_TOLERANCE
            && (q.1 - f.1).abs() < FREQUENCY_MATCH_TOLERANCE
    })
}
