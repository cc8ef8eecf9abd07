//! Cost and Fourier landscapes of depth-1 QAOA for diagonal Ising
//! Hamiltonians.
//!
//! The crate evaluates `C(β, γ)` ([`energy`]), scans it on periodic grids
//! ([`scan`]), transforms scans into integer-lattice Fourier spectra
//! ([`fourier`]), scores roughness ([`roughness`]) and benchmarks multistart
//! local optimization ([`optimize`]).

pub mod energy;
pub mod error;
pub mod exec;
pub mod fourier;
pub mod hamiltonian;
pub mod heatmap;
pub mod optimize;
pub mod roughness;
pub mod scan;

pub use energy::{EnergyEvaluator, Landscape, Method};
pub use error::{Error, Result};
pub use exec::Execution;
pub use fourier::{FourierSpectrum, Peak};
pub use hamiltonian::{IsingHamiltonian, PauliZTerm, WeightedGraph};
pub use optimize::{BenchmarkResult, Bounds, MultistartConfig, OptimizationRun, Params};
pub use roughness::{DirectionSampling, RoughnessReport, SectionSpan};
pub use scan::{AxisPair, LandscapeScan};
