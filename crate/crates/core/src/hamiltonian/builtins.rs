//! Named Hamiltonians used throughout the landscape studies.

use super::{IsingHamiltonian, PauliZTerm};
use crate::error::{Error, Result};

/// Reduces a product of Z operators with Z_i Z_i = 1.
fn z_product(qubits: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &q in qubits {
        if let Some(pos) = out.iter().position(|&x| x == q) {
            out.remove(pos);
        } else {
            out.push(q);
        }
    }
    out.sort_unstable();
    out
}

fn sign(exp: usize) -> f64 {
    if exp.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `-2.75 Z0 - 3.25 Z1 + 3.75 Z0 Z1`.
pub fn h1() -> IsingHamiltonian {
    IsingHamiltonian::build(2, [(vec![0], -2.75), (vec![1], -3.25), (vec![0, 1], 3.75)])
        .expect("static Hamiltonian")
}

/// The 6-qubit factoring Hamiltonian with 1- to 4-body terms in multiples of 1/8.
pub fn h2() -> IsingHamiltonian {
    let mut raw: Vec<(Vec<usize>, f64)> = Vec::new();
    for i in 0..6 {
        raw.push((vec![i], 0.25));
    }
    for i in [0, 2, 4] {
        raw.push((vec![i, i + 1], 0.75));
    }
    // For i = 2 this reads Z2 Z4 Z4 Z5 = Z2 Z5.
    for i in [0, 2] {
        raw.push((z_product(&[i, i + 2, 4, 5]), 0.125));
    }
    for i in 2..=5 {
        raw.push((vec![0, i], 0.125 * sign(i + 1)));
        raw.push((vec![1, i], 0.125 * sign(i)));
    }
    for i in 2..=3 {
        raw.push((vec![i, 4], 0.125 * sign(i)));
        raw.push((vec![i, 5], 0.125 * sign(i + 1)));
    }
    for i in 2..=5 {
        raw.push((vec![0, 1, i], -0.125));
    }
    for i in 0..=3 {
        raw.push((vec![i, 4, 5], -0.125));
    }
    for i in [0, 1, 4, 5] {
        raw.push((vec![2, 3, i], -0.125));
    }
    IsingHamiltonian::build(6, raw).expect("static Hamiltonian")
}

/// `a Z0 + b Z1 + c Z0 Z1`.
pub fn toy(a: f64, b: f64, c: f64) -> Result<IsingHamiltonian> {
    IsingHamiltonian::build(2, [(vec![0], a), (vec![1], b), (vec![0, 1], c)])
}

/// All-ones 1-body Hamiltonian on 6 qubits plus, for `k >= 2`, the single
/// term `Z0 Z1 ... Z_{k-1}`.
pub fn k_local(k: usize) -> Result<IsingHamiltonian> {
    if k == 0 || k > 6 {
        return Err(Error::InvalidArgument(format!(
            "k-local order must be in 1..=6, got {k}"
        )));
    }
    let mut raw: Vec<(Vec<usize>, f64)> = (0..6).map(|i| (vec![i], 1.0)).collect();
    if k >= 2 {
        raw.push(((0..k).collect(), 1.0));
    }
    IsingHamiltonian::build(6, raw)
}

/// All 1-, 2- and 3-body terms on 6 qubits with unit coefficients. With
/// `Some(order)`, the lexicographically first term of that order instead
/// gets coefficient 25.
pub fn single_large_coefficient(order: Option<usize>) -> Result<IsingHamiltonian> {
    if let Some(k) = order {
        if !(1..=3).contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "large-coefficient order must be 1, 2 or 3, got {k}"
            )));
        }
    }
    let mut raw: Vec<(Vec<usize>, f64)> = Vec::new();
    for i in 0..6 {
        raw.push((vec![i], 1.0));
    }
    for i in 0..6 {
        for j in i + 1..6 {
            raw.push((vec![i, j], 1.0));
        }
    }
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                raw.push((vec![i, j, k], 1.0));
            }
        }
    }
    if let Some(k) = order {
        let first: Vec<usize> = (0..k).collect();
        for (q, c) in raw.iter_mut() {
            if *q == first {
                *c = 25.0;
            }
        }
    }
    IsingHamiltonian::build(6, raw)
}

/// `Σ_{i=0}^{5} Z_i`, the start of the 1-body to 3-body interpolation.
pub fn interpolation_base() -> IsingHamiltonian {
    k_local(1).expect("static Hamiltonian")
}

/// The 20 three-body terms on 6 qubits in lexicographic order.
pub fn interpolation_terms() -> Vec<PauliZTerm> {
    let mut out = Vec::with_capacity(20);
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                out.push(PauliZTerm::new(vec![i, j, k], 1.0).expect("distinct qubits"));
            }
        }
    }
    out
}

fn parse_floats(s: &str, expected: usize) -> Result<Vec<f64>> {
    let values: Vec<f64> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{x:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if values.len() != expected {
        return Err(Error::Parse(format!(
            "expected {expected} values, got {}",
            values.len()
        )));
    }
    Ok(values)
}

/// Resolves a builtin name: `H1`, `H2`, `H6`..`H9`, `toy:a,b,c`,
/// `klocal:k`, `interp:j` (j in 0..=20) or `zero:n`.
pub fn builtin(name: &str) -> Result<IsingHamiltonian> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    match (head, arg) {
        ("H1", None) => Ok(h1()),
        ("H2", None) => Ok(h2()),
        ("H6", None) => single_large_coefficient(None),
        ("H7", None) => single_large_coefficient(Some(1)),
        ("H8", None) => single_large_coefficient(Some(2)),
        ("H9", None) => single_large_coefficient(Some(3)),
        ("toy", Some(a)) => {
            let v = parse_floats(a, 3)?;
            toy(v[0], v[1], v[2])
        }
        ("klocal", Some(a)) => {
            let k = a
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("klocal order {a:?}: {e}")))?;
            k_local(k)
        }
        ("interp", Some(a)) => {
            let j: usize = a
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("interpolation step {a:?}: {e}")))?;
            let terms = interpolation_terms();
            if j > terms.len() {
                return Err(Error::InvalidArgument(format!(
                    "interpolation step must be <= {}, got {j}",
                    terms.len()
                )));
            }
            interpolation_base().with_terms(&terms[..j])
        }
        ("zero", Some(a)) => {
            let n = a
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("qubit count {a:?}: {e}")))?;
            Ok(IsingHamiltonian::zero(n))
        }
        _ => Err(Error::Parse(format!(
            "unknown builtin Hamiltonian {name:?}"
        ))),
    }
}
