use thiserror::Error;

/// Errors raised by Hamiltonian construction, evaluation, and analysis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit {0} appears more than once in a single term")]
    RepeatedQubit(usize),

    #[error("coefficient {0} is not finite")]
    NonFiniteCoefficient(f64),

    #[error("coefficients are incommensurate: {0} has no rational approximation with denominator <= {1}")]
    IncommensurateCoefficients(f64, u64),

    #[error("Hamiltonian has no non-identity terms")]
    NoTerms,

    #[error("{n_qubits} qubits exceed the enumeration limit of {limit}")]
    EnumerationLimit { n_qubits: usize, limit: usize },

    #[error("closed-form energy supports terms of weight <= 2, found weight {0}")]
    UnsupportedOrder(usize),

    #[error("toy evaluator requires a 2-qubit Hamiltonian of the form a Z0 + b Z1 + c Z0 Z1")]
    NotToyHamiltonian,

    #[error("infeasible regular graph: {0}")]
    InfeasibleGraph(String),

    #[error("random regular graph pairing rejected {0} times")]
    RetryLimit(usize),

    #[error("invalid graph edge ({0}, {1})")]
    InvalidEdge(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
