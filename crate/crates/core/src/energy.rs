//! Depth-1 QAOA energy `C(β, γ) = <+|U(β,γ)† H U(β,γ)|+>` with
//! `U = exp(-iβ Σ X_i) exp(-iγ H)`.
//!
//! Three routes are provided: an exact statevector simulation for any
//! diagonal Hamiltonian, the closed-form expression for Hamiltonians with at
//! most 2-body terms, and the explicit formula for `a Z0 + b Z1 + c Z0 Z1`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::{IsingHamiltonian, ENUMERATION_LIMIT};

/// A real cost surface over the two QAOA angles.
pub trait Landscape: Sync {
    fn energy(&self, beta: f64, gamma: f64) -> f64;
}

impl<F> Landscape for F
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    fn energy(&self, beta: f64, gamma: f64) -> f64 {
        self(beta, gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Statevector,
    ClosedForm,
    Toy,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Statevector => "statevector",
            Method::ClosedForm => "closed",
            Method::Toy => "toy",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "statevector" => Ok(Method::Statevector),
            "closed" | "closed_form" => Ok(Method::ClosedForm),
            "toy" => Ok(Method::Toy),
            _ => Err(Error::Parse(format!("unknown evaluator {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
enum Kernel {
    Statevector(Vec<f64>),
    ClosedForm(ClosedForm),
    Toy { a: f64, b: f64, c: f64 },
}

/// Energy evaluator bound to one Hamiltonian and one evaluation route.
#[derive(Debug, Clone)]
pub struct EnergyEvaluator {
    hamiltonian: IsingHamiltonian,
    method: Method,
    kernel: Kernel,
}

impl EnergyEvaluator {
    pub fn new(hamiltonian: IsingHamiltonian, method: Method) -> Result<Self> {
        let kernel = match method {
            Method::Statevector => Kernel::Statevector(statevector_diagonal(&hamiltonian)?),
            Method::ClosedForm => Kernel::ClosedForm(ClosedForm::new(&hamiltonian)?),
            Method::Toy => {
                let (a, b, c) = toy_coefficients(&hamiltonian)?;
                Kernel::Toy { a, b, c }
            }
        };
        Ok(Self {
            hamiltonian,
            method,
            kernel,
        })
    }

    /// Closed form when every term has weight <= 2, statevector otherwise.
    pub fn auto(hamiltonian: IsingHamiltonian) -> Result<Self> {
        let method = if hamiltonian.max_pauli_weight() <= 2 {
            Method::ClosedForm
        } else {
            Method::Statevector
        };
        Self::new(hamiltonian, method)
    }

    pub fn hamiltonian(&self) -> &IsingHamiltonian {
        &self.hamiltonian
    }

    pub fn method(&self) -> Method {
        self.method
    }
}

impl Landscape for EnergyEvaluator {
    fn energy(&self, beta: f64, gamma: f64) -> f64 {
        let value = match &self.kernel {
            Kernel::Statevector(diag) => statevector_expectation(diag, beta, gamma),
            Kernel::ClosedForm(cf) => cf.energy(beta, gamma),
            Kernel::Toy { a, b, c } => toy_energy(*a, *b, *c, beta, gamma),
        };
        value + self.hamiltonian.offset()
    }
}

fn statevector_diagonal(h: &IsingHamiltonian) -> Result<Vec<f64>> {
    if h.n_qubits() > ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit {
            n_qubits: h.n_qubits(),
            limit: ENUMERATION_LIMIT,
        });
    }
    h.diagonal()
}

/// Exact statevector energy for any diagonal Hamiltonian (offset included).
pub fn statevector_energy(h: &IsingHamiltonian, beta: f64, gamma: f64) -> Result<f64> {
    let diag = statevector_diagonal(h)?;
    Ok(statevector_expectation(&diag, beta, gamma) + h.offset())
}

/// `Σ_z |ψ(z)|² E(z)` after the phase layer and the X mixer.
fn statevector_expectation(diag: &[f64], beta: f64, gamma: f64) -> f64 {
    let dim = diag.len();
    let norm = 1.0 / (dim as f64).sqrt();
    let mut psi: Vec<Complex64> = diag
        .iter()
        .map(|&e| Complex64::from_polar(norm, -gamma * e))
        .collect();

    // exp(-iβX) = [[cos β, -i sin β], [-i sin β, cos β]] on every qubit.
    let (s, c) = beta.sin_cos();
    let off = Complex64::new(0.0, -s);
    let mut stride = 1;
    while stride < dim {
        for block in psi.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = x0 * c + x1 * off;
                *a1 = x0 * off + x1 * c;
            }
        }
        stride *= 2;
    }

    psi.iter().zip(diag).map(|(a, &e)| a.norm_sqr() * e).sum()
}

/// Closed-form energy for Hamiltonians with 1- and 2-body terms only.
pub fn closed_form_energy(h: &IsingHamiltonian, beta: f64, gamma: f64) -> Result<f64> {
    Ok(ClosedForm::new(h)?.energy(beta, gamma) + h.offset())
}

/// Fields `h_i` and couplings `J_ij` of a 2-local Hamiltonian, laid out for
/// the per-term expectation formulas.
#[derive(Debug, Clone)]
struct ClosedForm {
    n: usize,
    fields: Vec<f64>,
    edges: Vec<(usize, usize, f64)>,
    neighbors: Vec<Vec<(usize, f64)>>,
    /// Dense `J` lookup, 0 where no edge exists.
    couplings: Vec<f64>,
}

impl ClosedForm {
    fn new(h: &IsingHamiltonian) -> Result<Self> {
        let n = h.n_qubits();
        let mut fields = vec![0.0; n];
        let mut edges = Vec::new();
        let mut neighbors = vec![Vec::new(); n];
        let mut couplings = vec![0.0; n * n];
        for t in h.terms() {
            match *t.qubits() {
                [i] => fields[i] = t.coefficient(),
                [i, j] => {
                    let w = t.coefficient();
                    edges.push((i, j, w));
                    neighbors[i].push((j, w));
                    neighbors[j].push((i, w));
                    couplings[i * n + j] = w;
                    couplings[j * n + i] = w;
                }
                _ => return Err(Error::UnsupportedOrder(t.weight())),
            }
        }
        Ok(Self {
            n,
            fields,
            edges,
            neighbors,
            couplings,
        })
    }

    fn coupling(&self, i: usize, j: usize) -> f64 {
        self.couplings[i * self.n + j]
    }

    fn energy(&self, beta: f64, gamma: f64) -> f64 {
        let s2b = (2.0 * beta).sin();
        let s4b = (4.0 * beta).sin();
        let s2b_sq = s2b * s2b;
        let g2 = 2.0 * gamma;

        let mut total = 0.0;
        for (i, &hi) in self.fields.iter().enumerate() {
            if hi == 0.0 {
                continue;
            }
            let prod: f64 = self.neighbors[i]
                .iter()
                .map(|&(_, w)| (g2 * w).cos())
                .product();
            total += hi * s2b * (g2 * hi).sin() * prod;
        }

        for &(i, j, w) in &self.edges {
            let (hi, hj) = (self.fields[i], self.fields[j]);
            let others = |a: usize, b: usize| -> f64 {
                self.neighbors[a]
                    .iter()
                    .filter(|&&(k, _)| k != b)
                    .map(|&(_, wk)| (g2 * wk).cos())
                    .product()
            };
            let linear = 0.5
                * w
                * s4b
                * (g2 * w).sin()
                * ((g2 * hi).cos() * others(i, j) + (g2 * hj).cos() * others(j, i));

            // Neighbors of exactly one endpoint, and shared neighbors.
            let mut exclusive = 1.0;
            let mut shared_plus = 1.0;
            let mut shared_minus = 1.0;
            for &(k, wik) in &self.neighbors[i] {
                if k == j {
                    continue;
                }
                let wjk = self.coupling(j, k);
                if wjk == 0.0 {
                    exclusive *= (g2 * wik).cos();
                } else {
                    shared_plus *= (g2 * (wik + wjk)).cos();
                    shared_minus *= (g2 * (wik - wjk)).cos();
                }
            }
            for &(k, wjk) in &self.neighbors[j] {
                if k != i && self.coupling(i, k) == 0.0 {
                    exclusive *= (g2 * wjk).cos();
                }
            }
            let quadratic = -0.5
                * w
                * s2b_sq
                * exclusive
                * ((g2 * (hi + hj)).cos() * shared_plus - (g2 * (hi - hj)).cos() * shared_minus);

            total += linear + quadratic;
        }
        total
    }
}

fn toy_coefficients(h: &IsingHamiltonian) -> Result<(f64, f64, f64)> {
    if h.n_qubits() != 2 {
        return Err(Error::NotToyHamiltonian);
    }
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for t in h.terms() {
        match *t.qubits() {
            [0] => a = t.coefficient(),
            [1] => b = t.coefficient(),
            [0, 1] => c = t.coefficient(),
            _ => return Err(Error::NotToyHamiltonian),
        }
    }
    Ok((a, b, c))
}

/// Energy of `a Z0 + b Z1 + c Z0 Z1` from its explicit trigonometric form.
pub fn toy_energy(a: f64, b: f64, c: f64, beta: f64, gamma: f64) -> f64 {
    let s2b = (2.0 * beta).sin();
    let s4b = (4.0 * beta).sin();
    let cc = (2.0 * c * gamma).cos();
    a * s2b * (2.0 * a * gamma).sin() * cc
        + b * s2b * (2.0 * b * gamma).sin() * cc
        + 0.5
            * c
            * (s4b * (2.0 * c * gamma).sin() * ((2.0 * a * gamma).cos() + (2.0 * b * gamma).cos())
                - s2b * s2b * ((2.0 * (a + b) * gamma).cos() - (2.0 * (a - b) * gamma).cos()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{h1, h2, k_local, toy};
    use std::f64::consts::PI;

    #[test]
    fn toy_point_value() {
        let h = toy(1.0, 1.0, 1.0).unwrap();
        let (b, g) = (PI / 4.0, PI / 8.0);
        assert!((toy_energy(1.0, 1.0, 1.0, b, g) - 1.5).abs() < 1e-12);
        assert!((closed_form_energy(&h, b, g).unwrap() - 1.5).abs() < 1e-12);
        assert!((statevector_energy(&h, b, g).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn zero_slices() {
        for h in [h1(), h2(), k_local(5).unwrap()] {
            for x in [0.3, -1.1, 2.7] {
                assert!(statevector_energy(&h, 0.0, x).unwrap().abs() < 1e-12);
                assert!(statevector_energy(&h, x, 0.0).unwrap().abs() < 1e-12);
            }
        }
        for x in [0.3, -1.1] {
            assert!(closed_form_energy(&h1(), x, 0.0).unwrap().abs() < 1e-12);
            assert_eq!(toy_energy(1.0, 2.0, 3.0, 0.0, x), 0.0);
            assert!(toy_energy(1.0, 2.0, 3.0, x, 0.0).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_rejects_higher_order() {
        assert_eq!(
            closed_form_energy(&k_local(3).unwrap(), 0.1, 0.2),
            Err(Error::UnsupportedOrder(3))
        );
        assert!(EnergyEvaluator::new(h2(), Method::ClosedForm).is_err());
        assert!(EnergyEvaluator::new(h2(), Method::Toy).is_err());
    }

    #[test]
    fn auto_picks_route() {
        assert_eq!(
            EnergyEvaluator::auto(h1()).unwrap().method(),
            Method::ClosedForm
        );
        assert_eq!(
            EnergyEvaluator::auto(h2()).unwrap().method(),
            Method::Statevector
        );
    }

    #[test]
    fn offset_is_added_by_every_route() {
        let h =
            IsingHamiltonian::build(2, [(vec![], 2.0), (vec![0], 1.0), (vec![0, 1], 0.5)]).unwrap();
        for m in [Method::Statevector, Method::ClosedForm, Method::Toy] {
            let e = EnergyEvaluator::new(h.clone(), m).unwrap();
            assert!((e.energy(0.0, 0.7) - 2.0).abs() < 1e-12, "{m}");
        }
    }

    #[test]
    fn qubit_guard() {
        let big = IsingHamiltonian::build(25, [(vec![24], 1.0)]).unwrap();
        assert!(matches!(
            statevector_energy(&big, 0.1, 0.1),
            Err(Error::EnumerationLimit { .. })
        ));
        // The closed form has no enumeration limit.
        assert!(closed_form_energy(&big, 0.1, 0.1).is_ok());
    }

    #[test]
    fn method_names() {
        for m in [Method::Statevector, Method::ClosedForm, Method::Toy] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }
}
