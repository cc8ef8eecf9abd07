//! JSON documents for Hamiltonians and graphs.
//!
//! ```json
//! {"n_qubits": 2, "terms": [{"qubits": [0], "coeff": -2.75}, {"qubits": [0, 1], "coeff": 3.75}]}
//! {"n_nodes": 3, "edges": [[0, 1, 1.0], [1, 2, -0.5]]}
//! ```
//!
//! An identity offset is written as a term with an empty `qubits` array.

use serde::{Deserialize, Serialize};

use super::{IsingHamiltonian, WeightedGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDocument {
    pub qubits: Vec<usize>,
    pub coeff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianDocument {
    pub n_qubits: usize,
    pub terms: Vec<TermDocument>,
}

impl HamiltonianDocument {
    pub fn from_hamiltonian(h: &IsingHamiltonian) -> Self {
        let mut terms: Vec<TermDocument> = h
            .terms()
            .iter()
            .map(|t| TermDocument {
                qubits: t.qubits().to_vec(),
                coeff: t.coefficient(),
            })
            .collect();
        if h.offset() != 0.0 {
            terms.insert(
                0,
                TermDocument {
                    qubits: Vec::new(),
                    coeff: h.offset(),
                },
            );
        }
        Self {
            n_qubits: h.n_qubits(),
            terms,
        }
    }

    pub fn to_hamiltonian(&self) -> Result<IsingHamiltonian> {
        IsingHamiltonian::build(
            self.n_qubits,
            self.terms.iter().map(|t| (t.qubits.clone(), t.coeff)),
        )
    }
}

impl IsingHamiltonian {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: HamiltonianDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.to_hamiltonian()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&HamiltonianDocument::from_hamiltonian(self))
            .expect("plain data serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n_nodes: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        WeightedGraph::new(doc.n_nodes, doc.edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDocument {
            n_nodes: self.n_nodes(),
            edges: self.edges().to_vec(),
        })
        .expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{h2, random_regular_graph};

    #[test]
    fn hamiltonian_round_trip() {
        let h = h2();
        assert_eq!(IsingHamiltonian::from_json(&h.to_json()).unwrap(), h);

        let with_offset = IsingHamiltonian::build(2, [(vec![], 1.5), (vec![0, 1], -0.1)]).unwrap();
        assert_eq!(
            IsingHamiltonian::from_json(&with_offset.to_json()).unwrap(),
            with_offset
        );
    }

    #[test]
    fn parses_documented_format() {
        let h = IsingHamiltonian::from_json(
            r#"{"n_qubits": 2, "terms": [{"qubits": [0], "coeff": -2.75},
                {"qubits": [1], "coeff": -3.25}, {"qubits": [0, 1], "coeff": 3.75}]}"#,
        )
        .unwrap();
        assert_eq!(h, crate::hamiltonian::h1());
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            IsingHamiltonian::from_json(
                r#"{"n_qubits": 1, "terms": [{"qubits": [3], "coeff": 1}]}"#
            ),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(matches!(
            IsingHamiltonian::from_json("{not json"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn graph_round_trip() {
        let g = random_regular_graph(8, 3, (-10.0, 10.0), 3).unwrap();
        assert_eq!(WeightedGraph::from_json(&g.to_json()).unwrap(), g);
        let parsed =
            WeightedGraph::from_json(r#"{"n_nodes": 3, "edges": [[0, 1, 1.0], [1, 2, -0.5]]}"#)
                .unwrap();
        assert_eq!(parsed.edges().len(), 2);
    }
}
