//! Bounded quasi-Newton minimization of `C(β, γ)` and a seeded multistart
//! benchmark.
//!
//! [`minimize`] runs BFGS on the box-projected problem: central-difference
//! gradients with step [`GRADIENT_STEP`], Armijo backtracking (`c1 = 1e-4`,
//! halving, at most [`MAX_HALVINGS`] trials), projection of every trial
//! point onto the box, and a projected-gradient stopping test at
//! [`GRADIENT_TOLERANCE`].

use std::cell::Cell;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::energy::Landscape;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::scan::{grid_scan_with, AxisPair};

pub const GRADIENT_STEP: f64 = 1e-6;
pub const GRADIENT_TOLERANCE: f64 = 1e-8;
pub const ARMIJO_C1: f64 = 1e-4;
pub const MAX_HALVINGS: usize = 60;
pub const DEFAULT_MAX_ITERS: usize = 500;
pub const DEFAULT_RUNS: usize = 100;
pub const SUCCESS_TOLERANCE: f64 = 1e-6;
pub const CLUSTER_TOLERANCE: f64 = 1e-4;
pub const DEFAULT_BINS: usize = 50;
pub const REFERENCE_GRID: usize = 201;

/// A point in parameter space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub beta: f64,
    pub gamma: f64,
}

impl Params {
    pub const fn new(beta: f64, gamma: f64) -> Self {
        Self { beta, gamma }
    }

    fn to_array(self) -> [f64; 2] {
        [self.beta, self.gamma]
    }

    fn from_array(x: [f64; 2]) -> Self {
        Self::new(x[0], x[1])
    }
}

/// Axis-aligned box `lower ≤ (β, γ) ≤ upper`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: Params,
    pub upper: Params,
}

impl Bounds {
    pub fn new(lower: Params, upper: Params) -> Result<Self> {
        let ok = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo < hi;
        if !ok(lower.beta, upper.beta) || !ok(lower.gamma, upper.gamma) {
            return Err(Error::InvalidArgument(format!(
                "empty or non-finite bounds {lower:?}..{upper:?}"
            )));
        }
        Ok(Self { lower, upper })
    }

    /// `[-h, h]²`.
    pub fn symmetric(h: f64) -> Result<Self> {
        Self::new(Params::new(-h, -h), Params::new(h, h))
    }

    pub fn contains(&self, p: Params) -> bool {
        (self.lower.beta..=self.upper.beta).contains(&p.beta)
            && (self.lower.gamma..=self.upper.gamma).contains(&p.gamma)
    }

    fn project(&self, x: [f64; 2]) -> [f64; 2] {
        [
            x[0].clamp(self.lower.beta, self.upper.beta),
            x[1].clamp(self.lower.gamma, self.upper.gamma),
        ]
    }

    /// Zeroes gradient components whose descent direction leaves the box.
    fn project_gradient(&self, x: [f64; 2], g: [f64; 2]) -> [f64; 2] {
        let lo = self.lower.to_array();
        let hi = self.upper.to_array();
        let mut out = g;
        for i in 0..2 {
            if (x[i] <= lo[i] && g[i] > 0.0) || (x[i] >= hi[i] && g[i] < 0.0) {
                out[i] = 0.0;
            }
        }
        out
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Self::symmetric(PI).expect("valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    /// Projected gradient norm fell below the tolerance.
    Converged,
    /// The line search found no decrease.
    Stalled,
    MaxIterations,
    /// A non-finite energy was encountered.
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationRun {
    pub init_params: Params,
    pub final_params: Params,
    pub final_energy: f64,
    pub n_evaluations: usize,
    pub iterations: usize,
    pub status: RunStatus,
}

impl OptimizationRun {
    pub fn converged(&self) -> bool {
        self.status == RunStatus::Converged
    }

    pub fn failed(&self) -> bool {
        self.status == RunStatus::Failed
    }
}

struct Counted<'a, L: ?Sized> {
    landscape: &'a L,
    calls: Cell<usize>,
}

impl<L: Landscape + ?Sized> Counted<'_, L> {
    fn eval(&self, x: [f64; 2]) -> f64 {
        self.calls.set(self.calls.get() + 1);
        self.landscape.energy(x[0], x[1])
    }

    fn gradient(&self, x: [f64; 2]) -> [f64; 2] {
        let mut g = [0.0; 2];
        for (i, gi) in g.iter_mut().enumerate() {
            let (mut up, mut down) = (x, x);
            up[i] += GRADIENT_STEP;
            down[i] -= GRADIENT_STEP;
            *gi = (self.eval(up) - self.eval(down)) / (2.0 * GRADIENT_STEP);
        }
        g
    }
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn identity() -> [[f64; 2]; 2] {
    [[1.0, 0.0], [0.0, 1.0]]
}

fn mat_vec(h: &[[f64; 2]; 2], v: [f64; 2]) -> [f64; 2] {
    [dot(h[0], v), dot(h[1], v)]
}

/// Inverse-Hessian BFGS update; skipped when the curvature condition fails.
fn bfgs_update(h: &mut [[f64; 2]; 2], s: [f64; 2], y: [f64; 2]) {
    let sy = dot(s, y);
    if sy <= 1e-12 * dot(s, s).sqrt() * dot(y, y).sqrt() || sy <= 0.0 {
        return;
    }
    let rho = 1.0 / sy;
    let hy = mat_vec(h, y);
    let yhy = dot(y, hy);
    for i in 0..2 {
        for j in 0..2 {
            h[i][j] += (1.0 + rho * yhy) * rho * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
        }
    }
}

/// Minimizes `landscape` from `init` inside `bounds`.
pub fn minimize<L: Landscape + ?Sized>(
    landscape: &L,
    init: Params,
    bounds: &Bounds,
    max_iters: usize,
) -> Result<OptimizationRun> {
    if !bounds.contains(init) {
        return Err(Error::InvalidArgument(format!(
            "initial point {init:?} outside bounds"
        )));
    }
    let f = Counted {
        landscape,
        calls: Cell::new(0),
    };
    let mut x = init.to_array();
    let mut fx = f.eval(x);
    let mut status = RunStatus::MaxIterations;
    let mut iterations = 0;
    let mut hinv = identity();
    let mut g = f.gradient(x);

    if !fx.is_finite() || !g.iter().all(|v| v.is_finite()) {
        status = RunStatus::Failed;
    } else {
        while iterations < max_iters {
            let pg = bounds.project_gradient(x, g);
            if dot(pg, pg).sqrt() < GRADIENT_TOLERANCE {
                status = RunStatus::Converged;
                break;
            }
            iterations += 1;

            let mut step = None;
            for attempt in 0..2 {
                let mut p = mat_vec(&hinv, pg).map(|v| -v);
                if attempt == 1 || dot(p, pg) >= 0.0 {
                    hinv = identity();
                    p = pg.map(|v| -v);
                }
                let mut t = 1.0;
                for _ in 0..MAX_HALVINGS {
                    let trial = bounds.project([x[0] + t * p[0], x[1] + t * p[1]]);
                    let s = [trial[0] - x[0], trial[1] - x[1]];
                    if s == [0.0, 0.0] {
                        break;
                    }
                    let ft = f.eval(trial);
                    if !ft.is_finite() {
                        t *= 0.5;
                        continue;
                    }
                    if ft <= fx + ARMIJO_C1 * dot(g, s).min(0.0) && ft < fx {
                        step = Some((trial, ft, s));
                        break;
                    }
                    t *= 0.5;
                }
                if step.is_some() || hinv == identity() {
                    break;
                }
            }

            let Some((trial, ft, s)) = step else {
                status = RunStatus::Stalled;
                break;
            };
            let gt = f.gradient(trial);
            if !gt.iter().all(|v| v.is_finite()) {
                status = RunStatus::Failed;
                break;
            }
            bfgs_update(&mut hinv, s, [gt[0] - g[0], gt[1] - g[1]]);
            x = trial;
            fx = ft;
            g = gt;
        }
    }

    Ok(OptimizationRun {
        init_params: init,
        final_params: Params::from_array(x),
        final_energy: fx,
        n_evaluations: f.calls.get(),
        iterations,
        status,
    })
}

/// Settings of [`multistart`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultistartConfig {
    pub n_runs: usize,
    pub seed: u64,
    /// Initial points are drawn uniformly from this box.
    pub init_box: Bounds,
    pub bounds: Bounds,
    pub max_iters: usize,
    /// Per-axis resolution of the reference grid for the global minimum.
    pub reference_grid: usize,
    pub success_tolerance: f64,
    pub cluster_tolerance: f64,
    /// Histogram bin width; `None` gives `(max - min) / 50`.
    pub bin_width: Option<f64>,
}

impl MultistartConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            n_runs: DEFAULT_RUNS,
            seed,
            init_box: Bounds::symmetric(0.9 * PI).expect("valid"),
            bounds: Bounds::default(),
            max_iters: DEFAULT_MAX_ITERS,
            reference_grid: REFERENCE_GRID,
            success_tolerance: SUCCESS_TOLERANCE,
            cluster_tolerance: CLUSTER_TOLERANCE,
            bin_width: None,
        }
    }
}

/// Initial point of run `index`.
pub fn initial_point(seed: u64, index: usize, init_box: &Bounds) -> Params {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    Params::new(
        rng.gen_range(init_box.lower.beta..=init_box.upper.beta),
        rng.gen_range(init_box.lower.gamma..=init_box.upper.gamma),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub start: f64,
    pub bin_width: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    /// Bins `values`; a zero-width range gives a single bin.
    pub fn new(values: &[f64], bin_width: Option<f64>) -> Result<Self> {
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
        if values.is_empty() {
            return Ok(Self {
                start: 0.0,
                bin_width: 0.0,
                counts: Vec::new(),
            });
        }
        let width = match bin_width {
            Some(w) if !(w.is_finite() && w > 0.0) => {
                return Err(Error::InvalidArgument(format!(
                    "bin width must be positive, got {w}"
                )))
            }
            Some(w) => w,
            None => (hi - lo) / DEFAULT_BINS as f64,
        };
        if width == 0.0 {
            return Ok(Self {
                start: lo,
                bin_width: 0.0,
                counts: vec![values.len()],
            });
        }
        let n_bins = (((hi - lo) / width).floor() as usize + 1).max(1);
        let mut counts = vec![0; n_bins];
        for &v in values {
            let b = (((v - lo) / width).floor() as usize).min(n_bins - 1);
            counts[b] += 1;
        }
        Ok(Self {
            start: lo,
            bin_width: width,
            counts,
        })
    }
}

/// Number of groups after single-linkage clustering of sorted values with
/// gap `tolerance`.
pub fn count_clusters(values: &[f64], tolerance: f64) -> usize {
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.is_empty() {
        return 0;
    }
    1 + sorted
        .windows(2)
        .filter(|w| w[1] - w[0] > tolerance)
        .count()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkResult {
    pub config: MultistartConfig,
    pub runs: Vec<OptimizationRun>,
    pub grid_minimum: f64,
    pub global_min_estimate: f64,
    pub success_count: usize,
    pub cluster_count: usize,
    pub histogram: Histogram,
}

impl BenchmarkResult {
    /// Whether `energy` counts as reaching the global minimum estimate.
    pub fn is_success(&self, energy: f64) -> bool {
        within(
            energy,
            self.global_min_estimate,
            self.config.success_tolerance,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn within(energy: f64, reference: f64, tolerance: f64) -> bool {
    (energy - reference).abs() <= tolerance * reference.abs().max(1.0)
}

pub fn multistart<L: Landscape + ?Sized>(
    landscape: &L,
    config: &MultistartConfig,
) -> Result<BenchmarkResult> {
    multistart_with(Execution::default(), landscape, config)
}

pub fn multistart_with<L: Landscape + ?Sized>(
    exec: Execution,
    landscape: &L,
    config: &MultistartConfig,
) -> Result<BenchmarkResult> {
    if config.n_runs == 0 {
        return Err(Error::InvalidArgument("need at least one run".to_string()));
    }
    let b = config.bounds;
    let inside = |p: Params| b.contains(p);
    if !inside(config.init_box.lower) || !inside(config.init_box.upper) {
        return Err(Error::InvalidArgument(
            "initialization box must lie inside the bounds".to_string(),
        ));
    }

    let runs: Vec<OptimizationRun> = exec
        .map_range(config.n_runs, |i| {
            let init = initial_point(config.seed, i, &config.init_box);
            minimize(landscape, init, &config.bounds, config.max_iters)
        })
        .into_iter()
        .collect::<Result<_>>()?;

    // The scan is over γ then β; its extent is endpoint-exclusive, so the
    // upper faces of the box are not sampled.
    let extent = AxisPair::new(b.upper.gamma - b.lower.gamma, b.upper.beta - b.lower.beta);
    let center = AxisPair::new(
        0.5 * (b.upper.gamma + b.lower.gamma),
        0.5 * (b.upper.beta + b.lower.beta),
    );
    let scan = grid_scan_with(
        exec,
        landscape,
        AxisPair::splat(config.reference_grid),
        extent,
        center,
    )?;
    let grid_minimum = scan.range().0;

    let finals: Vec<f64> = runs
        .iter()
        .filter(|r| !r.failed())
        .map(|r| r.final_energy)
        .collect();
    let global_min_estimate = finals.iter().copied().fold(grid_minimum, f64::min);
    let success_count = finals
        .iter()
        .filter(|&&e| within(e, global_min_estimate, config.success_tolerance))
        .count();

    Ok(BenchmarkResult {
        config: *config,
        cluster_count: count_clusters(&finals, config.cluster_tolerance),
        histogram: Histogram::new(&finals, config.bin_width)?,
        runs,
        grid_minimum,
        global_min_estimate,
        success_count,
    })
}
