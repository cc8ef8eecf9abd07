//! Endpoint-exclusive 2D grid scans over (γ, β) and 1D line sections.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::energy::Landscape;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hamiltonian::IsingHamiltonian;

/// Default scan resolution per axis.
pub const DEFAULT_RESOLUTION: usize = 201;

/// A value per parameter axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AxisPair<T> {
    pub gamma: T,
    pub beta: T,
}

impl<T> AxisPair<T> {
    pub const fn new(gamma: T, beta: T) -> Self {
        Self { gamma, beta }
    }
}

impl<T: Copy> AxisPair<T> {
    pub const fn splat(v: T) -> Self {
        Self { gamma: v, beta: v }
    }
}

/// Energy values on a `res.gamma × res.beta` grid, row-major with γ as the
/// slow axis. Point `(u, v)` sits at
/// `γ = γ0 - Eγ/2 + u Eγ/res_γ`, `β = β0 - Eβ/2 + v Eβ/res_β`; the right
/// endpoints are excluded so one period tiles exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeScan {
    res: AxisPair<usize>,
    center: AxisPair<f64>,
    extent: AxisPair<f64>,
    values: Vec<f64>,
}

fn axis_coordinate(center: f64, extent: f64, res: usize, index: usize) -> f64 {
    // Multiply before dividing so sublattice points are bit-identical
    // across resolutions.
    center - extent / 2.0 + (index as f64 * extent) / res as f64
}

impl LandscapeScan {
    /// Wraps precomputed values, validating the grid metadata.
    pub fn from_values(
        res: AxisPair<usize>,
        center: AxisPair<f64>,
        extent: AxisPair<f64>,
        values: Vec<f64>,
    ) -> Result<Self> {
        validate_grid(res, center, extent)?;
        if values.len() != res.gamma * res.beta {
            return Err(Error::InvalidArgument(format!(
                "{} values for a {}x{} grid",
                values.len(),
                res.gamma,
                res.beta
            )));
        }
        Ok(Self {
            res,
            center,
            extent,
            values,
        })
    }

    pub fn res(&self) -> AxisPair<usize> {
        self.res
    }

    pub fn center(&self) -> AxisPair<f64> {
        self.center
    }

    pub fn extent(&self) -> AxisPair<f64> {
        self.extent
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, u: usize, v: usize) -> f64 {
        self.values[u * self.res.beta + v]
    }

    pub fn row(&self, u: usize) -> &[f64] {
        &self.values[u * self.res.beta..(u + 1) * self.res.beta]
    }

    pub fn gamma_at(&self, u: usize) -> f64 {
        axis_coordinate(self.center.gamma, self.extent.gamma, self.res.gamma, u)
    }

    pub fn beta_at(&self, v: usize) -> f64 {
        axis_coordinate(self.center.beta, self.extent.beta, self.res.beta, v)
    }

    /// `(min, max)` over all grid values.
    pub fn range(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            })
    }

    /// Serializes as a header (`res_gamma`, `res_beta`, `center`, `extent`)
    /// followed by one comma-separated row per γ. Lines in `comments` are
    /// emitted first, prefixed with `# `.
    pub fn to_text(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "res_gamma,{}", self.res.gamma);
        let _ = writeln!(out, "res_beta,{}", self.res.beta);
        let _ = writeln!(
            out,
            "center,{:.16e},{:.16e}",
            self.center.gamma, self.center.beta
        );
        let _ = writeln!(
            out,
            "extent,{:.16e},{:.16e}",
            self.extent.gamma, self.extent.beta
        );
        for u in 0..self.res.gamma {
            let row: Vec<String> = self.row(u).iter().map(|x| format!("{x:.16e}")).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut header = |key: &str| -> Result<Vec<String>> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing {key} header")))?;
            let mut fields = line.split(',').map(|s| s.trim().to_string());
            match fields.next() {
                Some(k) if k == key => Ok(fields.collect()),
                other => Err(Error::Parse(format!(
                    "expected {key} header, found {other:?}"
                ))),
            }
        };
        let parse_usize = |v: &[String], key: &str| -> Result<usize> {
            match v {
                [x] => x.parse().map_err(|e| Error::Parse(format!("{key}: {e}"))),
                _ => Err(Error::Parse(format!("{key} expects one value"))),
            }
        };
        let parse_pair = |v: &[String], key: &str| -> Result<AxisPair<f64>> {
            match v {
                [g, b] => Ok(AxisPair::new(parse_f64(g)?, parse_f64(b)?)),
                _ => Err(Error::Parse(format!("{key} expects two values"))),
            }
        };
        let res_gamma = parse_usize(&header("res_gamma")?, "res_gamma")?;
        let res_beta = parse_usize(&header("res_beta")?, "res_beta")?;
        let center = parse_pair(&header("center")?, "center")?;
        let extent = parse_pair(&header("extent")?, "extent")?;

        let mut values = Vec::with_capacity(res_gamma * res_beta);
        for (u, line) in lines.enumerate() {
            let row: Vec<f64> = line.split(',').map(parse_f64).collect::<Result<_>>()?;
            if row.len() != res_beta {
                return Err(Error::Parse(format!(
                    "row {u} has {} values, expected {res_beta}",
                    row.len()
                )));
            }
            values.extend(row);
        }
        Self::from_values(AxisPair::new(res_gamma, res_beta), center, extent, values)
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

fn validate_grid(res: AxisPair<usize>, center: AxisPair<f64>, extent: AxisPair<f64>) -> Result<()> {
    if res.gamma < 2 || res.beta < 2 {
        return Err(Error::InvalidArgument(format!(
            "resolution must be >= 2 per axis, got {}x{}",
            res.gamma, res.beta
        )));
    }
    let ok = |x: f64| x.is_finite() && x > 0.0;
    if !ok(extent.gamma) || !ok(extent.beta) {
        return Err(Error::InvalidArgument(format!(
            "extent must be positive, got ({}, {})",
            extent.gamma, extent.beta
        )));
    }
    if !center.gamma.is_finite() || !center.beta.is_finite() {
        return Err(Error::InvalidArgument("center must be finite".to_string()));
    }
    Ok(())
}

/// Scans `values[u][v] = C(β(v), γ(u))` using the default execution mode.
pub fn grid_scan<L: Landscape + ?Sized>(
    landscape: &L,
    res: AxisPair<usize>,
    extent: AxisPair<f64>,
    center: AxisPair<f64>,
) -> Result<LandscapeScan> {
    grid_scan_with(Execution::default(), landscape, res, extent, center)
}

pub fn grid_scan_with<L: Landscape + ?Sized>(
    exec: Execution,
    landscape: &L,
    res: AxisPair<usize>,
    extent: AxisPair<f64>,
    center: AxisPair<f64>,
) -> Result<LandscapeScan> {
    validate_grid(res, center, extent)?;
    let mut values = vec![0.0; res.gamma * res.beta];
    exec.fill(&mut values, |idx| {
        let (u, v) = (idx / res.beta, idx % res.beta);
        let gamma = axis_coordinate(center.gamma, extent.gamma, res.gamma, u);
        let beta = axis_coordinate(center.beta, extent.beta, res.beta, v);
        landscape.energy(beta, gamma)
    });
    Ok(LandscapeScan {
        res,
        center,
        extent,
        values,
    })
}

/// Extents and minimum aliasing-free resolutions for a Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanParams {
    pub extent: AxisPair<f64>,
    pub min_res: AxisPair<usize>,
}

/// Smallest odd integer strictly above `2 × cycles + 1`, where `cycles` is
/// the number of periods of the highest frequency inside the extent.
pub fn nyquist_resolution(max_frequency: f64, extent: f64) -> usize {
    let mut cycles = max_frequency.abs() * extent / (2.0 * PI);
    if (cycles - cycles.round()).abs() < 1e-9 {
        cycles = cycles.round();
    }
    let mut n = (2.0 * cycles + 1.0).floor() as usize + 1;
    if n.is_multiple_of(2) {
        n += 1;
    }
    n
}

/// γ extent = [`IsingHamiltonian::gamma_period`], β extent = π, resolutions
/// from the frequency bounds `2Σ|c_k|` and `2w`.
pub fn recommended_scan_params(h: &IsingHamiltonian) -> Result<ScanParams> {
    let extent = AxisPair::new(h.gamma_period()?, PI);
    let min_res = AxisPair::new(
        nyquist_resolution(h.gamma_frequency_bound(), extent.gamma),
        nyquist_resolution(h.beta_frequency_bound() as f64, extent.beta),
    );
    Ok(ScanParams { extent, min_res })
}

/// Samples `C(origin + t·direction)` at `t = j·t_max/m`, `j = 0..=m`.
pub fn line_section<L: Landscape + ?Sized>(
    landscape: &L,
    origin: AxisPair<f64>,
    direction: AxisPair<f64>,
    t_max: f64,
    m: usize,
) -> Result<Vec<f64>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "need m >= 2 steps, got {m}"
        )));
    }
    let norm = direction.gamma.hypot(direction.beta);
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "direction must be a unit vector, |d| = {norm}"
        )));
    }
    if !t_max.is_finite() {
        return Err(Error::InvalidArgument("t_max must be finite".to_string()));
    }
    Ok(sample_line(landscape, origin, direction, t_max, m))
}

pub(crate) fn sample_line<L: Landscape + ?Sized>(
    landscape: &L,
    origin: AxisPair<f64>,
    direction: AxisPair<f64>,
    t_max: f64,
    m: usize,
) -> Vec<f64> {
    (0..=m)
        .map(|j| {
            let t = (j as f64 * t_max) / m as f64;
            landscape.energy(
                origin.beta + t * direction.beta,
                origin.gamma + t * direction.gamma,
            )
        })
        .collect()
}
