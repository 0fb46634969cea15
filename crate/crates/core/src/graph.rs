//! Finite directed multigraphs.
//!
//! A [`Graph`] is a plain vertex/edge list with integer ids; loops and
//! parallel edges are allowed. Ids need not be contiguous (subgraphs keep the
//! ids of their parent), but every deterministic choice below — component
//! order, spanning forests, breadth-first roots — is made by ascending id so
//! that repeated runs and different hosts agree byte for byte.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A directed edge. `src` and `tgt` may coincide (a loop).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub src: usize,
    pub tgt: usize,
}

/// A finite directed multigraph given by explicit vertex and edge lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

/// First violated graph invariant, if any.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphViolation {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(usize),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(usize),
    #[error("dangling src: edge {edge} has src {src} not in the vertex set")]
    DanglingSrc { edge: usize, src: usize },
    #[error("dangling tgt: edge {edge} has tgt {tgt} not in the vertex set")]
    DanglingTgt { edge: usize, tgt: usize },
}

/// One connected component: its vertices and the edges joining them,
/// both sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Graph {
    pub fn new(vertices: Vec<usize>, edges: Vec<Edge>) -> Graph {
        Graph { vertices, edges }
    }

    /// Graph on vertices `0..n` with edge ids assigned in list order.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph {
            vertices: (0..n).collect(),
            edges: pairs
                .iter()
                .enumerate()
                .map(|(id, &(src, tgt))| Edge { id, src, tgt })
                .collect(),
        }
    }

    pub fn empty() -> Graph {
        Graph { vertices: Vec::new(), edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Checks the graph invariants, reporting the first violation found:
    /// unique vertex ids, unique edge ids, and edge endpoints that exist.
    pub fn validate(&self) -> Result<(), GraphViolation> {
        let mut seen = BTreeSet::new();
        for &v in &self.vertices {
            if !seen.insert(v) {
                return Err(GraphViolation::DuplicateVertex(v));
            }
        }
        let mut ids = BTreeSet::new();
        for e in &self.edges {
            if !ids.insert(e.id) {
                return Err(GraphViolation::DuplicateEdge(e.id));
            }
        }
        for e in &self.edges {
            if !seen.contains(&e.src) {
                return Err(GraphViolation::DanglingSrc { edge: e.id, src: e.src });
            }
            if !seen.contains(&e.tgt) {
                return Err(GraphViolation::DanglingTgt { edge: e.id, tgt: e.tgt });
            }
        }
        Ok(())
    }

    /// True when vertex ids are exactly `0..n` and edge ids exactly `0..m`.
    /// Permutation actions index into dense graphs only.
    pub fn is_dense(&self) -> bool {
        let vs: BTreeSet<usize> = self.vertices.iter().copied().collect();
        let es: BTreeSet<usize> = self.edges.iter().map(|e| e.id).collect();
        vs.len() == self.vertices.len()
            && es.len() == self.edges.len()
            && vs.iter().copied().eq(0..self.vertices.len())
            && es.iter().copied().eq(0..self.edges.len())
    }

    /// Connected components (edges traversable in both directions), ordered
    /// by least vertex id.
    pub fn components(&self) -> Vec<Component> {
        let index = GraphIndex::new(self);
        let mut assigned: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comps: Vec<Component> = Vec::new();
        for &root in index.vertices.iter() {
            if assigned.contains_key(&root) {
                continue;
            }
            let id = comps.len();
            let mut vs = vec![root];
            assigned.insert(root, id);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for arc in index.incident(u) {
                    if let std::collections::btree_map::Entry::Vacant(slot) =
                        assigned.entry(arc.other)
                    {
                        slot.insert(id);
                        vs.push(arc.other);
                        queue.push_back(arc.other);
                    }
                }
            }
            vs.sort_unstable();
            comps.push(Component { vertices: vs, edges: Vec::new() });
        }
        for e in &self.edges {
            if let Some(&c) = assigned.get(&e.src) {
                comps[c].edges.push(e.id);
            }
        }
        for c in &mut comps {
            c.edges.sort_unstable();
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A spanning tree per component, as a set of edge ids: the unique
    /// forest obtained by scanning edges in ascending id and keeping each
    /// edge that joins two previously separate pieces.
    pub fn spanning_forest(&self) -> BTreeSet<usize> {
        let mut dsu = DisjointSets::new(&self.vertices);
        let mut edges: Vec<&Edge> = self.edges.iter().collect();
        edges.sort_unstable_by_key(|e| e.id);
        let mut forest = BTreeSet::new();
        for e in edges {
            if dsu.union(e.src, e.tgt) {
                forest.insert(e.id);
            }
        }
        forest
    }

    /// Free ranks of the reduced homology of the graph:
    /// `(components - 1, edges - vertices + components)`, with `(0, 0)` for
    /// the empty graph.
    pub fn reduced_betti(&self) -> (usize, usize) {
        let c = self.components().len();
        let b0 = c.saturating_sub(1);
        let b1 = self.edges.len() + c - self.vertices.len();
        (b0, b1)
    }
}

/// A map of graphs: total maps on vertex and edge ids commuting with
/// source and target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMap {
    pub domain: Graph,
    pub codomain: Graph,
    pub vertex_map: BTreeMap<usize, usize>,
    pub edge_map: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphMapViolation {
    #[error("vertex {0} of the domain has no image")]
    MissingVertexImage(usize),
    #[error("edge {0} of the domain has no image")]
    MissingEdgeImage(usize),
    #[error("vertex {vertex} maps to {image}, not a codomain vertex")]
    ImageVertexAbsent { vertex: usize, image: usize },
    #[error("edge {edge} maps to {image}, not a codomain edge")]
    ImageEdgeAbsent { edge: usize, image: usize },
    #[error("edge {edge}: does not commute with src")]
    SrcMismatch { edge: usize },
    #[error("edge {edge}: does not commute with tgt")]
    TgtMismatch { edge: usize },
    #[error("composition mismatch: codomain of the first map differs from domain of the second")]
    ComposeMismatch,
}

impl GraphMap {
    pub fn identity(g: &Graph) -> GraphMap {
        GraphMap {
            domain: g.clone(),
            codomain: g.clone(),
            vertex_map: g.vertices.iter().map(|&v| (v, v)).collect(),
            edge_map: g.edges.iter().map(|e| (e.id, e.id)).collect(),
        }
    }

    pub fn vertex_image(&self, v: usize) -> Option<usize> {
        self.vertex_map.get(&v).copied()
    }

    pub fn edge_image(&self, e: usize) -> Option<usize> {
        self.edge_map.get(&e).copied()
    }

    pub fn validate(&self) -> Result<(), GraphMapViolation> {
        let cod_vs: BTreeSet<usize> = self.codomain.vertices.iter().copied().collect();
        let cod_edges: BTreeMap<usize, &Edge> =
            self.codomain.edges.iter().map(|e| (e.id, e)).collect();
        for &v in &self.domain.vertices {
            let img = self
                .vertex_map
                .get(&v)
                .copied()
                .ok_or(GraphMapViolation::MissingVertexImage(v))?;
            if !cod_vs.contains(&img) {
                return Err(GraphMapViolation::ImageVertexAbsent { vertex: v, image: img });
            }
        }
        for e in &self.domain.edges {
            let img = self
                .edge_map
                .get(&e.id)
                .copied()
                .ok_or(GraphMapViolation::MissingEdgeImage(e.id))?;
            let f = cod_edges
                .get(&img)
                .ok_or(GraphMapViolation::ImageEdgeAbsent { edge: e.id, image: img })?;
            if self.vertex_map.get(&e.src) != Some(&f.src) {
                return Err(GraphMapViolation::SrcMismatch { edge: e.id });
            }
            if self.vertex_map.get(&e.tgt) != Some(&f.tgt) {
                return Err(GraphMapViolation::TgtMismatch { edge: e.id });
            }
        }
        Ok(())
    }

    /// Covering condition: over every codomain edge, each vertex in the
    /// fiber of its source carries exactly one lift, and likewise for
    /// targets.
    pub fn is_covering(&self) -> bool {
        if self.validate().is_err() {
            return false;
        }
        let mut fiber: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &self.domain.vertices {
            fiber.entry(self.vertex_map[&v]).or_default().push(v);
        }
        let mut lifts: BTreeMap<usize, Vec<&Edge>> = BTreeMap::new();
        for e in &self.domain.edges {
            lifts.entry(self.edge_map[&e.id]).or_default().push(e);
        }
        fn unique_lifts(ends: &[usize], fiber_vs: &[usize]) -> bool {
            let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
            for &v in ends {
                *seen.entry(v).or_insert(0) += 1;
            }
            fiber_vs.iter().all(|v| seen.get(v).copied().unwrap_or(0) == 1)
                && seen.values().sum::<usize>() == fiber_vs.len()
        }
        let empty: Vec<usize> = Vec::new();
        for e in &self.codomain.edges {
            let over = lifts.get(&e.id).map(Vec::as_slice).unwrap_or(&[]);
            let srcs: Vec<usize> = over.iter().map(|l| l.src).collect();
            let tgts: Vec<usize> = over.iter().map(|l| l.tgt).collect();
            if !unique_lifts(&srcs, fiber.get(&e.src).unwrap_or(&empty))
                || !unique_lifts(&tgts, fiber.get(&e.tgt).unwrap_or(&empty))
            {
                return false;
            }
        }
        true
    }

    /// Composite `self` then `next` (so `self.domain -> next.codomain`).
    pub fn then(&self, next: &GraphMap) -> Result<GraphMap, GraphMapViolation> {
        if self.codomain != next.domain {
            return Err(GraphMapViolation::ComposeMismatch);
        }
        Ok(GraphMap {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            vertex_map: self
                .vertex_map
                .iter()
                .map(|(&v, &w)| (v, next.vertex_map[&w]))
                .collect(),
            edge_map: self
                .edge_map
                .iter()
                .map(|(&e, &f)| (e, next.edge_map[&f]))
                .collect(),
        })
    }
}

/// One traversable direction of an edge incident to a vertex.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Arc {
    pub edge: usize,
    pub forward: bool,
    pub other: usize,
}

/// Lookup structure built once per operation: vertex order and sorted
/// incidence lists.
pub(crate) struct GraphIndex {
    pub vertices: Vec<usize>,
    adjacency: BTreeMap<usize, Vec<Arc>>,
}

impl GraphIndex {
    pub fn new(g: &Graph) -> GraphIndex {
        let mut vertices: Vec<usize> = g.vertices.clone();
        vertices.sort_unstable();
        let mut adjacency: BTreeMap<usize, Vec<Arc>> =
            vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in &g.edges {
            if let Some(list) = adjacency.get_mut(&e.src) {
                list.push(Arc { edge: e.id, forward: true, other: e.tgt });
            }
            if let Some(list) = adjacency.get_mut(&e.tgt) {
                list.push(Arc { edge: e.id, forward: false, other: e.src });
            }
        }
        for list in adjacency.values_mut() {
            list.sort_unstable_by_key(|a| (a.edge, !a.forward));
        }
        GraphIndex { vertices, adjacency }
    }

    pub fn incident(&self, v: usize) -> &[Arc] {
        self.adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }
}

struct DisjointSets {
    parent: BTreeMap<usize, usize>,
}

impl DisjointSets {
    fn new(vertices: &[usize]) -> DisjointSets {
        DisjointSets { parent: vertices.iter().map(|&v| (v, v)).collect() }
    }

    fn find(&mut self, v: usize) -> usize {
        let p = self.parent[&v];
        if p == v {
            return v;
        }
        let root = self.find(p);
        self.parent.insert(v, root);
        root
    }

    /// Joins the two classes; false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent.insert(ra.max(rb), ra.min(rb));
        true
    }
}
