use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use qaoa_landscape::fourier::{
    self, contains_frequency, leakage_expected, predict_toy_frequencies, sign_complete,
};
use qaoa_landscape::hamiltonian::{
    builtin, interpolation_base, interpolation_sequence, interpolation_terms, maxcut_hamiltonian,
    random_regular_graph,
};
use qaoa_landscape::heatmap::to_pgm;
use qaoa_landscape::optimize::{multistart, MultistartConfig};
use qaoa_landscape::roughness::{
    fourier_density, tv_grid, tv_random_directions, DirectionSampling,
};
use qaoa_landscape::scan::{grid_scan, nyquist_resolution};
use qaoa_landscape::{
    AxisPair, EnergyEvaluator, IsingHamiltonian, LandscapeScan, Method, RoughnessReport,
    SectionSpan,
};

use crate::{
    ConcentrationArgs, Failure, InterpolateArgs, LandscapeArgs, OptbenchArgs, RoughnessArgs,
    ScanArgs, SpectrumArgs, TvArgs,
};

type CmdResult<T = ()> = Result<T, Failure>;

const ORIGIN: AxisPair<f64> = AxisPair::new(0.0, 0.0);

fn config(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

fn load_hamiltonian(spec: &str) -> CmdResult<IsingHamiltonian> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| config(format!("{spec}: {e}")))?;
        return Ok(IsingHamiltonian::from_json(&text)?);
    }
    if spec.ends_with(".json") || spec.contains('/') {
        return Err(config(format!("Hamiltonian file {spec} not found")));
    }
    Ok(builtin(spec)?)
}

fn make_evaluator(h: IsingHamiltonian, name: &str) -> CmdResult<EnergyEvaluator> {
    Ok(match name {
        "auto" => EnergyEvaluator::auto(h)?,
        other => EnergyEvaluator::new(h, other.parse::<Method>()?)?,
    })
}

fn parse_values(text: &str, what: &str) -> CmdResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| config(format!("{what} {text:?}: {e}")))
        })
        .collect()
}

fn parse_res(text: &str) -> CmdResult<AxisPair<usize>> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| config(format!("resolution {text:?}: {e}")))
        })
        .collect::<CmdResult<_>>()?;
    match parts[..] {
        [n] => Ok(AxisPair::splat(n)),
        [g, b] => Ok(AxisPair::new(g, b)),
        _ => Err(config(format!(
            "resolution must be N or N_gamma,N_beta, got {text:?}"
        ))),
    }
}

fn parse_extent(text: &str, h: &IsingHamiltonian) -> CmdResult<AxisPair<f64>> {
    if text == "auto" {
        return Ok(AxisPair::new(h.gamma_period()?, PI));
    }
    match parse_values(text, "extent")?[..] {
        [g, b] => Ok(AxisPair::new(g, b)),
        _ => Err(config(format!(
            "extent must be auto or gamma,beta, got {text:?}"
        ))),
    }
}

fn parse_span(text: &str) -> CmdResult<SectionSpan> {
    Ok(text.parse()?)
}

fn write_output(out: Option<&PathBuf>, text: &str) -> CmdResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| config(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

/// Minimum per-axis resolutions for `extent`, from the frequency bounds.
fn nyquist_for(h: &IsingHamiltonian, extent: AxisPair<f64>) -> AxisPair<usize> {
    AxisPair::new(
        nyquist_resolution(h.gamma_frequency_bound(), extent.gamma),
        nyquist_resolution(h.beta_frequency_bound() as f64, extent.beta),
    )
}

/// Warns about aliasing and leakage; returns whether leakage is expected.
fn check_scan_setup(h: &IsingHamiltonian, res: AxisPair<usize>, extent: AxisPair<f64>) -> bool {
    let min = nyquist_for(h, extent);
    if res.gamma < min.gamma {
        warn(&format!(
            "gamma resolution {} is below the Nyquist minimum {}",
            res.gamma, min.gamma
        ));
    }
    if res.beta < min.beta {
        warn(&format!(
            "beta resolution {} is below the Nyquist minimum {}",
            res.beta, min.beta
        ));
    }
    let leak = leakage_expected(h, extent.gamma);
    if leak {
        warn("gamma extent is not a whole number of periods; expect spectral leakage");
    }
    leak
}

struct Prepared {
    evaluator: EnergyEvaluator,
    scan: LandscapeScan,
    leakage: bool,
    header: Vec<String>,
}

fn prepare(command: &str, args: &LandscapeArgs) -> CmdResult<Prepared> {
    let h = load_hamiltonian(&args.hamiltonian)?;
    let res = parse_res(&args.res)?;
    let extent = parse_extent(&args.extent, &h)?;
    let leakage = check_scan_setup(&h, res, extent);
    let evaluator = make_evaluator(h, &args.evaluator)?;
    let scan = grid_scan(&evaluator, res, extent, ORIGIN)?;
    let header = vec![
        format!("command={command}"),
        format!("hamiltonian={}", args.hamiltonian),
        format!("evaluator={}", evaluator.method()),
        format!("res={},{}", res.gamma, res.beta),
        format!("extent={:.16e},{:.16e}", extent.gamma, extent.beta),
    ];
    Ok(Prepared {
        evaluator,
        scan,
        leakage,
        header,
    })
}

pub fn scan(args: ScanArgs) -> CmdResult {
    let p = prepare("scan", &args.landscape)?;
    write_output(args.out.as_ref(), &p.scan.to_text(&p.header))?;
    if let Some(path) = &args.heatmap {
        fs::write(path, to_pgm(&p.scan)).map_err(|e| config(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

pub fn spectrum(args: SpectrumArgs) -> CmdResult {
    let mut p = prepare("spectrum", &args.landscape)?;
    p.header.push(format!("threshold={:e}", args.threshold));
    let half = fourier::spectrum(&p.scan)
        .with_leakage_warning(p.leakage)
        .remove_dc()
        .half_spectrum();
    let peaks = half.peaks(args.threshold)?;

    let predicted = toy_prediction(p.evaluator.hamiltonian());
    let mut listing = String::new();
    let _ = writeln!(
        listing,
        "f_gamma,f_beta,magnitude{}",
        if predicted.is_some() {
            ",predicted"
        } else {
            ""
        }
    );
    for peak in &peaks {
        let _ = write!(
            listing,
            "{:.6},{:.6},{:.6e}",
            peak.f_gamma, peak.f_beta, peak.magnitude
        );
        if let Some(set) = &predicted {
            let _ = write!(
                listing,
                ",{}",
                contains_frequency(set, (peak.f_gamma, peak.f_beta))
            );
        }
        listing.push('\n');
    }
    match &args.out {
        Some(path) => {
            write_output(Some(path), &half.to_text(&p.header))?;
            print!("{listing}");
        }
        None => {
            for line in &p.header {
                println!("# {line}");
            }
            print!("{listing}");
        }
    }
    Ok(())
}

/// Analytic frequencies for `Z0 + Z1 + c Z0 Z1`, if `h` has that form.
fn toy_prediction(h: &IsingHamiltonian) -> Option<Vec<(f64, f64)>> {
    if h.n_qubits() != 2 || h.terms().len() > 3 {
        return None;
    }
    let coeff = |q: &[usize]| {
        h.terms()
            .iter()
            .find(|t| t.qubits() == q)
            .map(|t| t.coefficient())
    };
    if coeff(&[0]) != Some(1.0) || coeff(&[1]) != Some(1.0) {
        return None;
    }
    let c = coeff(&[0, 1]).unwrap_or(0.0);
    Some(sign_complete(&predict_toy_frequencies(c)))
}

fn sampling(tv: &TvArgs, periods: AxisPair<f64>) -> CmdResult<DirectionSampling> {
    let mut s = DirectionSampling::new(periods, tv.seed);
    s.n_directions = tv.directions;
    s.steps = tv.steps;
    s.span = parse_span(&tv.span)?;
    Ok(s)
}

pub fn roughness(args: RoughnessArgs) -> CmdResult {
    let p = prepare("roughness", &args.landscape)?;
    let spec = fourier::spectrum(&p.scan);
    let s = sampling(&args.tv, AxisPair::new(p.scan.extent().gamma, PI))?;
    let report = RoughnessReport::compute(&p.evaluator, &p.scan, &spec, &s)?;
    let mut extra: Vec<(String, String)> = p
        .header
        .iter()
        .filter_map(|l| {
            l.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
        })
        .collect();
    extra.push(("leakage_warning".to_string(), p.leakage.to_string()));
    write_output(args.out.as_ref(), &report.to_text(&extra))
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

pub fn interpolate(args: InterpolateArgs) -> CmdResult {
    let res = parse_res(&args.res)?;
    let span = parse_span(&args.tv.span)?;
    let steps = interpolation_sequence(&interpolation_base(), &interpolation_terms())?;
    let mut out = String::new();
    let header = [
        "command=interpolate".to_string(),
        format!("evaluator={}", args.evaluator),
        format!("res={},{}", res.gamma, res.beta),
        format!("seed={}", args.tv.seed),
        format!("n_directions={}", args.tv.directions),
        format!("m_samples={}", args.tv.steps),
        format!("section_span={}", span.as_str()),
    ];
    for line in &header {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(
        out,
        "step,n_terms,max_weight,tv_mean,tv_std,tv_grid,fourier_density"
    );
    for (step, h) in steps.into_iter().enumerate() {
        let extent = AxisPair::new(h.gamma_period()?, PI);
        check_scan_setup(&h, res, extent);
        let (n_terms, weight) = (h.terms().len(), h.max_pauli_weight());
        let ev = make_evaluator(h, &args.evaluator)?;
        let scan = grid_scan(&ev, res, extent, ORIGIN)?;
        let tv = tv_random_directions(&ev, &sampling(&args.tv, extent)?)?;
        let _ = writeln!(
            out,
            "{step},{n_terms},{weight},{:.10e},{:.10e},{:.10e},{:.10e}",
            tv.mean,
            tv.std,
            tv_grid(&scan),
            fourier_density(&fourier::spectrum(&scan))
        );
    }
    write_output(args.out.as_ref(), &out)
}

/// Seed of graph `index` of size `n`.
fn graph_seed(seed: u64, n: usize, index: usize) -> u64 {
    seed ^ ((n as u64) << 32) ^ index as u64
}

pub fn concentration(args: ConcentrationArgs) -> CmdResult {
    let res = parse_res(&args.res)?;
    let sizes: Vec<usize> = args
        .sizes
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| config(format!("sizes {:?}: {e}", args.sizes)))
        })
        .collect::<CmdResult<_>>()?;
    let weights = match parse_values(&args.weights, "weights")?[..] {
        [lo, hi] if lo <= hi => (lo, hi),
        _ => {
            return Err(config(format!(
                "weights must be low,high, got {:?}",
                args.weights
            )))
        }
    };
    if args.n_seeds == 0 {
        return Err(config("n-seeds must be at least 1"));
    }
    let span = parse_span(&args.tv.span)?;
    // Random real weights have no common period; scans and sections use π.
    let extent = AxisPair::new(PI, PI);
    warn("random weights: scanning a fixed pi x pi window, spectra include leakage");

    let mut out = String::new();
    let header = [
        "command=concentration".to_string(),
        "evaluator=closed_form".to_string(),
        format!("sizes={}", args.sizes),
        format!("n_seeds={}", args.n_seeds),
        format!("weights={},{}", weights.0, weights.1),
        format!("res={},{}", res.gamma, res.beta),
        format!("extent={:.16e},{:.16e}", extent.gamma, extent.beta),
        format!("seed={}", args.tv.seed),
        format!("n_directions={}", args.tv.directions),
        format!("m_samples={}", args.tv.steps),
        format!("section_span={}", span.as_str()),
        "leakage_warning=true".to_string(),
    ];
    for line in &header {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(
        out,
        "n,tv_mean,tv_std,fd_mean,fd_std,tv_grid_mean,tv_grid_std"
    );
    for &n in &sizes {
        let (mut tvs, mut fds, mut grids) = (Vec::new(), Vec::new(), Vec::new());
        for i in 0..args.n_seeds {
            let graph = random_regular_graph(n, 3, weights, graph_seed(args.tv.seed, n, i))?;
            let ev = EnergyEvaluator::new(maxcut_hamiltonian(&graph), Method::ClosedForm)?;
            let scan = grid_scan(&ev, res, extent, ORIGIN)?;
            let mut s = sampling(&args.tv, extent)?;
            s.seed = graph_seed(args.tv.seed, n, i);
            tvs.push(tv_random_directions(&ev, &s)?.mean);
            fds.push(fourier_density(&fourier::spectrum(&scan)));
            grids.push(tv_grid(&scan));
        }
        let (t, ts) = mean_std(&tvs);
        let (f, fs) = mean_std(&fds);
        let (g, gs) = mean_std(&grids);
        let _ = writeln!(
            out,
            "{n},{t:.10e},{ts:.10e},{f:.10e},{fs:.10e},{g:.10e},{gs:.10e}"
        );
    }
    write_output(args.out.as_ref(), &out)
}

pub fn optbench(args: OptbenchArgs) -> CmdResult {
    let h = load_hamiltonian(&args.hamiltonian)?;
    let ev = make_evaluator(h, &args.evaluator)?;
    let mut cfg = MultistartConfig::new(args.seed);
    cfg.n_runs = args.runs;
    cfg.max_iters = args.max_iters;
    cfg.bin_width = args.bin_width;
    let result = multistart(&ev, &cfg)?;
    eprintln!(
        "success {}/{} (global min estimate {:.10}), {} clusters",
        result.success_count, cfg.n_runs, result.global_min_estimate, result.cluster_count
    );
    let doc = serde_json::json!({
        "command": "optbench",
        "hamiltonian": args.hamiltonian,
        "evaluator": ev.method().to_string(),
        "result": serde_json::to_value(&result).map_err(|e| config(e.to_string()))?,
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| config(e.to_string()))? + "\n";
    write_output(args.out.as_ref(), &text)
}
