//! Finite groups as multiplication tables and their orientation-preserving
//! actions on graphs.
//!
//! Groups here are small and explicit: element `0` is the identity and the
//! whole table is validated exhaustively. Actions assign each element a
//! vertex permutation and an edge permutation that commute with source and
//! target, so no element can invert an edge.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Component, Graph};
use crate::paths::PathWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupViolation {
    #[error("multiplication table is not square of order {0}")]
    NotSquare(usize),
    #[error("table entry out of range at ({0}, {1})")]
    EntryOutOfRange(usize, usize),
    #[error("element 0 is not an identity")]
    NoIdentity,
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("row or column {0} is not a permutation")]
    NotInvertible(usize),
    #[error("subgroup misses the identity")]
    SubgroupMissingIdentity,
    #[error("subgroup member {0} is not a group element")]
    SubgroupUnknownElement(usize),
    #[error("subgroup not closed: {0} * {1} falls outside")]
    SubgroupNotClosed(usize, usize),
}

/// A finite group presented by its full multiplication table;
/// `table[a][b]` is the product `a * b` and element `0` is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupData", into = "GroupData")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
}

/// Wire form of a group: `{"order": n, "table": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupData {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl From<FiniteGroup> for GroupData {
    fn from(g: FiniteGroup) -> GroupData {
        GroupData { order: g.order(), table: g.table }
    }
}

impl TryFrom<GroupData> for FiniteGroup {
    type Error = GroupViolation;

    fn try_from(data: GroupData) -> Result<FiniteGroup, GroupViolation> {
        if data.table.len() != data.order {
            return Err(GroupViolation::NotSquare(data.order));
        }
        FiniteGroup::new(data.table)
    }
}

impl FiniteGroup {
    /// Validates the group axioms exhaustively.
    pub fn new(table: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupViolation> {
        let n = table.len();
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupViolation::NotSquare(n));
            }
            for (b, &ab) in row.iter().enumerate() {
                if ab >= n {
                    return Err(GroupViolation::EntryOutOfRange(a, b));
                }
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(GroupViolation::NoIdentity);
            }
        }
        for a in 0..n {
            let row: BTreeSet<usize> = table[a].iter().copied().collect();
            let col: BTreeSet<usize> = (0..n).map(|b| table[b][a]).collect();
            if row.len() != n || col.len() != n {
                return Err(GroupViolation::NotInvertible(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupViolation::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { table })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { table: vec![vec![0]] }
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup { table }
    }

    /// Direct product, elements ordered as `a * |H| + b` for `(a, b)`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| {
                        let (a1, b1) = (x / m, x % m);
                        let (a2, b2) = (y / m, y % m);
                        g.mul(a1, a2) * m + h.mul(b1, b2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { table }
    }

    /// Symmetric group on `n` letters; elements are the permutations of
    /// `0..n` in lexicographic one-line order, so `0` is the identity.
    pub fn symmetric(n: usize) -> FiniteGroup {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur: Vec<usize> = (0..n).collect();
            loop {
                out.push(cur.clone());
                // next lexicographic permutation
                let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1])
                else {
                    break;
                };
                let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
                cur.swap(i, j);
                cur[i + 1..].reverse();
            }
            out
        }
        let ps = perms(n);
        let index: BTreeMap<Vec<usize>, usize> =
            ps.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let table = ps
            .iter()
            .map(|p| {
                ps.iter()
                    .map(|q| {
                        // (p * q)(x) = p(q(x))
                        let composite: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                        index[&composite]
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("validated table")
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// All subgroups, each sorted, ordered by (size, members). Exponential
    /// in principle; meant for the small groups this crate works with.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let n = self.order();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let subsets = 1usize << (n - 1);
        for mask in 0..subsets {
            // element 0 always included; bit i stands for element i + 1
            let members: Vec<usize> = std::iter::once(0)
                .chain((1..n).filter(|&e| mask >> (e - 1) & 1 == 1))
                .collect();
            let set: BTreeSet<usize> = members.iter().copied().collect();
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| set.contains(&self.mul(a, b))));
            if closed {
                found.insert(members);
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by_key(|m| (m.len(), m.clone()));
        out.into_iter().map(|members| Subgroup { members }).collect()
    }
}

/// A validated subgroup: a sorted member list closed under product and
/// inverse, containing the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn new(
        group: &FiniteGroup,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Subgroup, GroupViolation> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if !set.contains(&0) {
            return Err(GroupViolation::SubgroupMissingIdentity);
        }
        for &m in &set {
            if m >= group.order() {
                return Err(GroupViolation::SubgroupUnknownElement(m));
            }
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&group.mul(a, b)) {
                    return Err(GroupViolation::SubgroupNotClosed(a, b));
                }
            }
        }
        Ok(Subgroup { members: set.into_iter().collect() })
    }

    pub fn trivial() -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn full(group: &FiniteGroup) -> Subgroup {
        Subgroup { members: group.elements().collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.binary_search(&e).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionViolation {
    #[error(transparent)]
    Group(#[from] GroupViolation),
    #[error("graph ids are not dense (vertices 0..n, edges 0..m)")]
    GraphNotDense,
    #[error("element {element}: wrong permutation length")]
    WrongPermutationLength { element: usize },
    #[error("element {element}: not a permutation")]
    NotAPermutation { element: usize },
    #[error("wrong number of permutations (one vertex and one edge permutation per element)")]
    WrongPermutationCount,
    #[error("element 0 does not act as the identity")]
    IdentityActsNontrivially,
    #[error("action is not a homomorphism at pair ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("element {element} does not commute with s,t on edge {edge}")]
    NotOrientationPreserving { element: usize, edge: usize },
}

/// Per-element vertex and edge permutations over a dense graph.
///
/// The graph itself is passed to the operations that need it; an action is
/// meaningful only for the graph it was validated against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphAction {
    pub group: FiniteGroup,
    pub vertex_perms: Vec<Vec<usize>>,
    pub edge_perms: Vec<Vec<usize>>,
}

/// The fixed subgraph `X^H`: vertices and edges fixed by every element of a
/// subgroup, keeping their original ids, with its component partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSubgraph {
    pub graph: Graph,
    pub components: Vec<Component>,
}

impl FixedSubgraph {
    /// Index of the component containing `v`, if fixed.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.components.iter().position(|c| c.vertices.binary_search(&v).is_ok())
    }
}

impl GraphAction {
    pub fn new(
        group: FiniteGroup,
        vertex_perms: Vec<Vec<usize>>,
        edge_perms: Vec<Vec<usize>>,
    ) -> GraphAction {
        GraphAction { group, vertex_perms, edge_perms }
    }

    /// The trivial action of a group on a dense graph.
    pub fn trivial(group: FiniteGroup, g: &Graph) -> GraphAction {
        let n = group.order();
        GraphAction {
            group,
            vertex_perms: vec![(0..g.vertex_count()).collect(); n],
            edge_perms: vec![(0..g.edge_count()).collect(); n],
        }
    }

    /// Verifies every action invariant against the graph: identity acts
    /// trivially, the assignment is a homomorphism, every permutation is a
    /// permutation, and each element commutes with source and target.
    pub fn validate(&self, g: &Graph) -> Result<(), ActionViolation> {
        if !g.is_dense() {
            return Err(ActionViolation::GraphNotDense);
        }
        let n = self.group.order();
        if self.vertex_perms.len() != n || self.edge_perms.len() != n {
            return Err(ActionViolation::WrongPermutationCount);
        }
        let (nv, ne) = (g.vertex_count(), g.edge_count());
        for e in 0..n {
            for (perm, len) in [(&self.vertex_perms[e], nv), (&self.edge_perms[e], ne)] {
                if perm.len() != len {
                    return Err(ActionViolation::WrongPermutationLength { element: e });
                }
                let image: BTreeSet<usize> = perm.iter().copied().collect();
                if image.len() != len || perm.iter().any(|&x| x >= len) {
                    return Err(ActionViolation::NotAPermutation { element: e });
                }
            }
        }
        if self.vertex_perms[0] != (0..nv).collect::<Vec<_>>()
            || self.edge_perms[0] != (0..ne).collect::<Vec<_>>()
        {
            return Err(ActionViolation::IdentityActsNontrivially);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.group.mul(a, b);
                let vertices_agree = (0..nv)
                    .all(|v| self.vertex_perms[a][self.vertex_perms[b][v]] == self.vertex_perms[ab][v]);
                let edges_agree = (0..ne)
                    .all(|x| self.edge_perms[a][self.edge_perms[b][x]] == self.edge_perms[ab][x]);
                if !vertices_agree || !edges_agree {
                    return Err(ActionViolation::NotAHomomorphism(a, b));
                }
            }
        }
        for e in &g.edges {
            for a in 0..n {
                let image = &g.edges[self.edge_perms[a][e.id]];
                if image.src != self.vertex_perms[a][e.src] || image.tgt != self.vertex_perms[a][e.tgt] {
                    return Err(ActionViolation::NotOrientationPreserving { element: a, edge: e.id });
                }
            }
        }
        Ok(())
    }

    pub fn vertex_image(&self, element: usize, v: usize) -> usize {
        self.vertex_perms[element][v]
    }

    pub fn edge_image(&self, element: usize, e: usize) -> usize {
        self.edge_perms[element][e]
    }

    /// The induced action on path words: start and steps map through the
    /// permutations, signs are preserved, and the image is already reduced.
    pub fn act_on_path(&self, element: usize, p: &PathWord) -> PathWord {
        let steps = p
            .steps()
            .iter()
            .map(|s| crate::paths::Step { edge: self.edge_perms[element][s.edge], dir: s.dir })
            .collect();
        PathWord::from_reduced_parts(
            self.vertex_perms[element][p.start()],
            self.vertex_perms[element][p.end()],
            steps,
        )
    }

    /// The subgraph fixed pointwise by every element of `h`, with original
    /// ids and its component partition.
    pub fn fixed_subgraph(&self, g: &Graph, h: &Subgroup) -> FixedSubgraph {
        let vertices: Vec<usize> = g
            .vertices
            .iter()
            .copied()
            .filter(|&v| h.members().iter().all(|&a| self.vertex_perms[a][v] == v))
            .collect();
        let edges: Vec<crate::graph::Edge> = g
            .edges
            .iter()
            .copied()
            .filter(|e| h.members().iter().all(|&a| self.edge_perms[a][e.id] == e.id))
            .collect();
        let graph = Graph::new(vertices, edges);
        let components = graph.components();
        FixedSubgraph { graph, components }
    }

    /// The action of a subgroup re-indexed as a group in its own right;
    /// element `i` of the result is `h.members()[i]`.
    pub fn sub_action(&self, h: &Subgroup) -> GraphAction {
        let members = h.members();
        let index: BTreeMap<usize, usize> =
            members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let table = members
            .iter()
            .map(|&a| members.iter().map(|&b| index[&self.group.mul(a, b)]).collect())
            .collect();
        GraphAction {
            group: FiniteGroup { table },
            vertex_perms: members.iter().map(|&m| self.vertex_perms[m].clone()).collect(),
            edge_perms: members.iter().map(|&m| self.edge_perms[m].clone()).collect(),
        }
    }
}
