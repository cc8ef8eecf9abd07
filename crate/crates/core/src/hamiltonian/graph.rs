use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IsingHamiltonian;
use crate::error::{Error, Result};

/// Maximum number of rejected pairings before giving up.
const MAX_PAIRING_ATTEMPTS: usize = 100_000;

/// Undirected weighted simple graph. Edges are stored as `(i, j, w)` with
/// `i < j`, sorted by endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n_nodes: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn new(
        n_nodes: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b, w) in edges {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if i == j || j >= n_nodes || !w.is_finite() || !seen.insert((i, j)) {
                return Err(Error::InvalidEdge(a, b));
            }
            out.push((i, j, w));
        }
        out.sort_by_key(|x| (x.0, x.1));
        Ok(Self {
            n_nodes,
            edges: out,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j, _)| i == node || j == node)
            .count()
    }
}

/// Offset-free MaxCut Hamiltonian `Σ_(i,j) -w_ij/2 Z_i Z_j`. The constant
/// `Σ w_ij / 2` is dropped.
pub fn maxcut_hamiltonian(graph: &WeightedGraph) -> IsingHamiltonian {
    IsingHamiltonian::build(
        graph.n_nodes,
        graph.edges.iter().map(|&(i, j, w)| (vec![i, j], -0.5 * w)),
    )
    .expect("graph edges are valid qubit pairs")
}

/// Random simple `degree`-regular graph on `n` nodes by configuration-model
/// pairing with rejection, weights uniform in `[low, high]`.
pub fn random_regular_graph(
    n: usize,
    degree: usize,
    weight_range: (f64, f64),
    seed: u64,
) -> Result<WeightedGraph> {
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::InfeasibleGraph(format!(
            "n * degree = {} is odd",
            n * degree
        )));
    }
    if degree >= n && !(n == 0 && degree == 0) {
        return Err(Error::InfeasibleGraph(format!(
            "degree {degree} must be smaller than n = {n}"
        )));
    }
    let (low, high) = weight_range;
    if !(low.is_finite() && high.is_finite() && low <= high) {
        return Err(Error::InvalidArgument(format!(
            "invalid weight range [{low}, {high}]"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    let pairs = (0..MAX_PAIRING_ATTEMPTS)
        .find_map(|_| {
            stubs.shuffle(&mut rng);
            try_pairing(&stubs)
        })
        .ok_or(Error::RetryLimit(MAX_PAIRING_ATTEMPTS))?;

    let edges = pairs.into_iter().map(|(i, j)| {
        let w = if low == high {
            low
        } else {
            rng.gen_range(low..=high)
        };
        (i, j, w)
    });
    WeightedGraph::new(n, edges.collect::<Vec<_>>())
}

/// Pairs consecutive stubs; `None` on a self-loop or repeated edge.
fn try_pairing(stubs: &[usize]) -> Option<BTreeSet<(usize, usize)>> {
    let mut pairs = BTreeSet::new();
    for chunk in stubs.chunks_exact(2) {
        let (i, j) = (chunk[0].min(chunk[1]), chunk[0].max(chunk[1]));
        if i == j || !pairs.insert((i, j)) {
            return None;
        }
    }
    Some(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maxcut_terms() {
        let g = WeightedGraph::new(2, [(0, 1, 1.0)]).unwrap();
        let h = maxcut_hamiltonian(&g);
        assert_eq!(h.terms().len(), 1);
        assert_eq!(h.terms()[0].qubits(), &[0, 1]);
        assert_eq!(h.terms()[0].coefficient(), -0.5);
        assert_eq!(h.offset(), 0.0);

        let tri = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let h = maxcut_hamiltonian(&tri);
        assert_eq!(h.coefficients(), vec![-0.5; 3]);

        let zero = WeightedGraph::new(2, [(0, 1, 0.0)]).unwrap();
        assert!(maxcut_hamiltonian(&zero).terms().is_empty());
    }

    #[test]
    fn graph_validation() {
        assert!(WeightedGraph::new(3, [(1, 1, 1.0)]).is_err());
        assert!(WeightedGraph::new(3, [(0, 3, 1.0)]).is_err());
        assert!(WeightedGraph::new(3, [(0, 1, 1.0), (1, 0, 2.0)]).is_err());
        let g = WeightedGraph::new(3, [(2, 0, 1.5)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2, 1.5)]);
    }

    #[test]
    fn k4_is_unique_cubic_graph_on_four_nodes() {
        let g = random_regular_graph(4, 3, (1.0, 1.0), 0).unwrap();
        let pairs: Vec<(usize, usize)> = g.edges().iter().map(|&(i, j, _)| (i, j)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn odd_stub_count_is_infeasible() {
        assert!(matches!(
            random_regular_graph(5, 3, (0.0, 1.0), 1),
            Err(Error::InfeasibleGraph(_))
        ));
        assert!(matches!(
            random_regular_graph(3, 3, (0.0, 1.0), 1),
            Err(Error::InfeasibleGraph(_))
        ));
    }

    #[test]
    fn deterministic_and_regular() {
        let a = random_regular_graph(8, 3, (-10.0, 10.0), 7).unwrap();
        let b = random_regular_graph(8, 3, (-10.0, 10.0), 7).unwrap();
        assert_eq!(a, b);
        for n in [8, 12, 16, 20] {
            let g = random_regular_graph(n, 3, (-10.0, 10.0), n as u64).unwrap();
            assert_eq!(g.edges().len(), 3 * n / 2);
            for v in 0..n {
                assert_eq!(g.degree(v), 3);
            }
            assert!(g.edges().iter().all(|e| (-10.0..=10.0).contains(&e.2)));
        }
        let c = random_regular_graph(8, 3, (-10.0, 10.0), 8).unwrap();
        assert_ne!(a, c);
    }
}
