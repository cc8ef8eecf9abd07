//! Diagonal k-body Ising Hamiltonians and their analytic spectral properties.

mod builtins;
mod graph;
mod io;
pub mod rational;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub use builtins::{
    builtin, h1, h2, interpolation_base, interpolation_terms, k_local, single_large_coefficient,
    toy,
};
pub use graph::{maxcut_hamiltonian, random_regular_graph, WeightedGraph};
pub use io::{GraphDocument, HamiltonianDocument};

/// Largest qubit count for which the 2^n eigenvalues are enumerated.
pub const ENUMERATION_LIMIT: usize = 24;

/// Absolute tolerance when deduplicating eigenvalue differences.
pub const FREQUENCY_TOLERANCE: f64 = 1e-9;

/// A weighted product of Pauli-Z operators on a set of distinct qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliZTerm {
    qubits: Vec<usize>,
    coefficient: f64,
}

impl PauliZTerm {
    pub fn new(qubits: impl Into<Vec<usize>>, coefficient: f64) -> Result<Self> {
        let mut qubits = qubits.into();
        qubits.sort_unstable();
        if let Some(w) = qubits.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedQubit(w[0]));
        }
        if !coefficient.is_finite() {
            return Err(Error::NonFiniteCoefficient(coefficient));
        }
        Ok(Self {
            qubits,
            coefficient,
        })
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    /// Number of qubits the term acts on.
    pub fn weight(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_identity(&self) -> bool {
        self.qubits.is_empty()
    }

    /// Bitmask of the qubits, qubit 0 in the least significant bit.
    pub fn mask(&self) -> u64 {
        self.qubits.iter().fold(0, |m, &q| m | (1 << q))
    }
}

/// `H = offset + Σ_k c_k Z_{S_k}` in canonical form: terms sorted by
/// (weight, qubits), distinct qubit sets, no zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingHamiltonian {
    n_qubits: usize,
    terms: Vec<PauliZTerm>,
    offset: f64,
}

impl IsingHamiltonian {
    /// Builds a canonical Hamiltonian from raw `(qubit set, coefficient)`
    /// pairs. Duplicate qubit sets are merged by adding coefficients, exact
    /// zeros are dropped, and empty qubit sets accumulate into the offset.
    pub fn build<I, Q>(n_qubits: usize, raw_terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Q, f64)>,
        Q: Into<Vec<usize>>,
    {
        let mut merged: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        let mut offset = 0.0;
        for (qubits, coefficient) in raw_terms {
            let term = PauliZTerm::new(qubits, coefficient)?;
            if let Some(&q) = term.qubits.iter().find(|&&q| q >= n_qubits) {
                return Err(Error::QubitOutOfRange { index: q, n_qubits });
            }
            if term.is_identity() {
                offset += term.coefficient;
            } else {
                *merged.entry(term.qubits).or_insert(0.0) += term.coefficient;
            }
        }
        let mut terms: Vec<PauliZTerm> = merged
            .into_iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(qubits, coefficient)| PauliZTerm {
                qubits,
                coefficient,
            })
            .collect();
        terms.sort_by(|a, b| {
            a.weight()
                .cmp(&b.weight())
                .then_with(|| a.qubits.cmp(&b.qubits))
        });
        Ok(Self {
            n_qubits,
            terms,
            offset,
        })
    }

    /// The zero Hamiltonian on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: Vec::new(),
            offset: 0.0,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Non-identity terms in canonical order.
    pub fn terms(&self) -> &[PauliZTerm] {
        &self.terms
    }

    /// Constant identity contribution.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.coefficient).collect()
    }

    /// Returns `self + term`, re-canonicalized.
    pub fn with_term(&self, term: &PauliZTerm) -> Result<Self> {
        self.with_terms(std::slice::from_ref(term))
    }

    pub fn with_terms(&self, extra: &[PauliZTerm]) -> Result<Self> {
        let raw = self
            .terms
            .iter()
            .chain(extra)
            .map(|t| (t.qubits.clone(), t.coefficient))
            .chain(std::iter::once((Vec::new(), self.offset)));
        Self::build(self.n_qubits, raw)
    }

    /// Multiplies every coefficient (and the offset) by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let raw = self
            .terms
            .iter()
            .map(|t| (t.qubits.clone(), t.coefficient * factor))
            .chain(std::iter::once((Vec::new(), self.offset * factor)));
        Self::build(self.n_qubits, raw)
    }

    /// Maximum number of qubits acted on by a single term (0 if none).
    pub fn max_pauli_weight(&self) -> usize {
        self.terms.iter().map(PauliZTerm::weight).max().unwrap_or(0)
    }

    /// Upper bound `2w` on the magnitude of β frequencies.
    pub fn beta_frequency_bound(&self) -> usize {
        2 * self.max_pauli_weight()
    }

    /// Upper bound `2 Σ|c_k|` on the magnitude of γ frequencies.
    pub fn gamma_frequency_bound(&self) -> f64 {
        2.0 * self.terms.iter().map(|t| t.coefficient.abs()).sum::<f64>()
    }

    /// γ period `π / gcd(|c_k|)` from the coefficient GCD. This is a valid
    /// period but not necessarily the smallest one; see
    /// [`spectral_gamma_period`](Self::spectral_gamma_period).
    pub fn gamma_period(&self) -> Result<f64> {
        if self.terms.is_empty() {
            return Err(Error::NoTerms);
        }
        let g = rational::real_gcd(&self.coefficients())?;
        Ok(PI / g)
    }

    /// Smallest period implied by the eigenvalue differences,
    /// `2π / gcd({λ_i - λ_j})`. Requires enumerating all bitstrings.
    pub fn spectral_gamma_period(&self) -> Result<f64> {
        self.check_enumerable()?;
        if self.terms.is_empty() {
            return Err(Error::NoTerms);
        }
        let lattice = rational::CommonLattice::new(&self.coefficients())?;
        let masks: Vec<u64> = self.terms.iter().map(PauliZTerm::mask).collect();
        let eigen = |z: u64| -> i128 {
            masks
                .iter()
                .zip(&lattice.values)
                .map(|(&m, &c)| {
                    if (z & m).count_ones().is_multiple_of(2) {
                        c
                    } else {
                        -c
                    }
                })
                .sum()
        };
        let reference = eigen(0);
        let g = (1..1_u64 << self.n_qubits).fold(0_u128, |g, z| {
            rational::gcd_u128(g, (eigen(z) - reference).unsigned_abs())
        });
        if g == 0 {
            return Err(Error::NoTerms);
        }
        Ok(2.0 * PI * lattice.scale as f64 / g as f64)
    }

    /// Eigenvalue of the bitstring with integer encoding `z` (qubit 0 is the
    /// least significant bit), including the offset.
    pub fn eigenvalue_index(&self, z: u64) -> f64 {
        self.offset
            + self
                .terms
                .iter()
                .map(|t| {
                    if (z & t.mask()).count_ones().is_multiple_of(2) {
                        t.coefficient
                    } else {
                        -t.coefficient
                    }
                })
                .sum::<f64>()
    }

    /// Eigenvalue of the computational basis state `bits`, where `bits[i]` is
    /// the value of qubit `i`.
    pub fn eigenvalue(&self, bits: &[u8]) -> Result<f64> {
        if bits.len() != self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "bitstring of length {} for {} qubits",
                bits.len(),
                self.n_qubits
            )));
        }
        let mut z = 0_u64;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => z |= 1 << i,
                _ => return Err(Error::InvalidArgument(format!("bit value {b}"))),
            }
        }
        Ok(self.eigenvalue_index(z))
    }

    /// All 2^n eigenvalues indexed by bitstring, offset excluded.
    pub fn diagonal(&self) -> Result<Vec<f64>> {
        self.check_enumerable()?;
        let masks: Vec<(u64, f64)> = self
            .terms
            .iter()
            .map(|t| (t.mask(), t.coefficient))
            .collect();
        Ok((0..1_u64 << self.n_qubits)
            .map(|z| {
                masks
                    .iter()
                    .map(|&(m, c)| if (z & m).count_ones() % 2 == 0 { c } else { -c })
                    .sum()
            })
            .collect())
    }

    /// Sorted set of eigenvalue differences `λ_i - λ_j`, deduplicated within
    /// [`FREQUENCY_TOLERANCE`].
    pub fn gamma_frequency_set(&self) -> Result<Vec<f64>> {
        let eigen = dedup_sorted(self.diagonal()?);
        let diffs = eigen
            .iter()
            .flat_map(|a| eigen.iter().map(move |b| a - b))
            .collect();
        Ok(dedup_sorted(diffs))
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.n_qubits > ENUMERATION_LIMIT {
            return Err(Error::EnumerationLimit {
                n_qubits: self.n_qubits,
                limit: ENUMERATION_LIMIT,
            });
        }
        Ok(())
    }
}

fn dedup_sorted(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(values.len());
    for v in values {
        match out.last() {
            Some(&last) if (v - last).abs() <= FREQUENCY_TOLERANCE => {}
            _ => out.push(v),
        }
    }
    out
}

/// Sequence `base, base + t_1, base + t_1 + t_2, ...` adding one term at a time.
pub fn interpolation_sequence(
    base: &IsingHamiltonian,
    added_terms: &[PauliZTerm],
) -> Result<Vec<IsingHamiltonian>> {
    (0..=added_terms.len())
        .map(|j| base.with_terms(&added_terms[..j]))
        .collect()
}
