//! Parameterized fixtures shared by the benchmarks: graphs and actions
//! whose size scales with one knob.

use std::collections::BTreeMap;

use secgraph_core::covers::SubgroupRep;
use secgraph_core::{FiniteGroup, Graph, GraphAction};

/// The loop graph: one vertex, one loop.
pub fn loop_graph() -> Graph {
    Graph::from_pairs(1, &[(0, 0)])
}

/// One vertex with `k` loops: the rose with free vertex group of rank `k`.
pub fn rose(k: usize) -> Graph {
    Graph::from_pairs(1, &vec![(0, 0); k])
}

/// The degree-`n` cyclic representation of a single generator.
pub fn cyclic_rep(edge: usize, n: usize) -> SubgroupRep {
    SubgroupRep {
        degree: n,
        generators: BTreeMap::from([(edge, (0..n).map(|c| (c + 1) % n).collect())]),
    }
}

/// A chain of `n` swapped parallel-edge pairs: vertices `0..=n`, two edges
/// between consecutive vertices, and an involution swapping every pair.
/// Every vertex is fixed, no edge is, so there are `n + 1` section classes
/// and the class at the far end has paths of length `2n`.
pub fn swap_chain(n: usize) -> (Graph, GraphAction) {
    let mut pairs = Vec::with_capacity(2 * n);
    for i in 0..n {
        pairs.push((i, i + 1));
        pairs.push((i, i + 1));
    }
    let graph = Graph::from_pairs(n + 1, &pairs);
    let identity_edges: Vec<usize> = (0..2 * n).collect();
    let swapped: Vec<usize> = (0..2 * n).map(|e| e ^ 1).collect();
    let action = GraphAction::new(
        FiniteGroup::cyclic(2),
        vec![(0..=n).collect(), (0..=n).collect()],
        vec![identity_edges, swapped],
    );
    (graph, action)
}
