//! Finite covering graphs from permutation representations of the
//! fundamental group.
//!
//! A finite-index subgroup of the free vertex group is specified by how each
//! free generator (one per non-forest edge) permutes the cosets `0..d`. The
//! cover has one sheet per coset: forest edges stay inside a sheet,
//! non-forest edges jump sheets through their permutation. Towers of covers
//! induce maps on cycle spaces whose integer structure is computed exactly.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphMap};
use crate::paths::{free_generators, tree_path, Dir, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("base graph ids are not dense")]
    BaseNotDense,
    #[error("base graph is not connected")]
    BaseNotConnected,
    #[error("degree must be at least 1")]
    BadDegree,
    #[error("generator for edge {0} is not a permutation of the cosets")]
    BadPermutation(usize),
    #[error("edge {0} is not a free generator (missing or in the forest)")]
    NotAGenerator(usize),
    #[error("disconnected cover requested: generators do not act transitively")]
    NonTransitive,
    #[error("no factorization: witness does not define a covering over the lower stage")]
    NoFactorization,
    #[error("witness has wrong length or out-of-range cosets")]
    BadWitness,
}

/// A finite-index subgroup of the free vertex group, given by coset
/// permutations of its generators. Missing generators act as the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRep {
    pub degree: usize,
    pub generators: BTreeMap<usize, Vec<usize>>,
}

impl SubgroupRep {
    /// The trivial representation: the whole group, a degree-1 cover.
    pub fn trivial() -> SubgroupRep {
        SubgroupRep { degree: 1, generators: BTreeMap::new() }
    }

    fn perm<'a>(&'a self, edge: usize, identity: &'a [usize]) -> &'a [usize] {
        self.generators.get(&edge).map(Vec::as_slice).unwrap_or(identity)
    }

    /// Validates the permutations against the generator set of `g` relative
    /// to `forest`, including transitivity.
    pub fn validate(&self, g: &Graph, forest: &BTreeSet<usize>) -> Result<(), CoverError> {
        if self.degree == 0 {
            return Err(CoverError::BadDegree);
        }
        let gens = free_generators(g, forest);
        for (&edge, perm) in &self.generators {
            if !gens.contains(&edge) {
                return Err(CoverError::NotAGenerator(edge));
            }
            let image: BTreeSet<usize> = perm.iter().copied().collect();
            if perm.len() != self.degree || image.len() != self.degree
                || perm.iter().any(|&c| c >= self.degree)
            {
                return Err(CoverError::BadPermutation(edge));
            }
        }
        if !self.is_transitive() {
            return Err(CoverError::NonTransitive);
        }
        Ok(())
    }

    /// Whether the generated permutation group acts transitively on cosets.
    pub fn is_transitive(&self) -> bool {
        let d = self.degree;
        if d <= 1 {
            return d == 1;
        }
        let mut seen = vec![false; d];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let inverses: Vec<Vec<usize>> = self
            .generators
            .values()
            .map(|p| {
                let mut inv = vec![0; d];
                for (i, &x) in p.iter().enumerate() {
                    inv[x] = i;
                }
                inv
            })
            .collect();
        while let Some(c) = queue.pop_front() {
            for p in self.generators.values().map(Vec::as_slice).chain(inverses.iter().map(Vec::as_slice)) {
                let next = p[c];
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }
}

/// A built cover: the cover graph, the covering projection, and the sheet
/// decomposition of its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub cover: Graph,
    pub projection: GraphMap,
    pub lifts: Vec<Lift>,
}

/// Which coset sheet a cover vertex lives on, and which base vertex it
/// projects to. Indexed by cover vertex id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lift {
    pub coset: usize,
    pub base_vertex: usize,
}

impl CoverResult {
    pub fn degree(&self) -> usize {
        let base = self.projection.codomain.vertex_count().max(1);
        self.cover.vertex_count() / base
    }
}

/// Builds the degree-`d` connected cover determined by `rep`.
///
/// Cover vertex `(c, v)` gets id `c * |V| + v`; the copy of edge `e` on
/// sheet `c` gets id `c * |E| + e`, runs from `(c, s(e))` and ends at
/// `(x_e(c), t(e))`, where `x_e` is the generator permutation for a
/// non-forest edge and the identity otherwise.
pub fn build_cover(
    g: &Graph,
    forest: &BTreeSet<usize>,
    rep: &SubgroupRep,
) -> Result<CoverResult, CoverError> {
    if !g.is_dense() {
        return Err(CoverError::BaseNotDense);
    }
    if !g.is_connected() {
        return Err(CoverError::BaseNotConnected);
    }
    rep.validate(g, forest)?;
    let (nv, ne, d) = (g.vertex_count(), g.edge_count(), rep.degree);
    let identity: Vec<usize> = (0..d).collect();
    let mut edges = Vec::with_capacity(d * ne);
    for c in 0..d {
        for e in &g.edges {
            let target_coset =
                if forest.contains(&e.id) { c } else { rep.perm(e.id, &identity)[c] };
            edges.push(Edge {
                id: c * ne + e.id,
                src: c * nv + e.src,
                tgt: target_coset * nv + e.tgt,
            });
        }
    }
    let cover = Graph::new((0..d * nv).collect(), edges);
    let projection = GraphMap {
        domain: cover.clone(),
        codomain: g.clone(),
        vertex_map: (0..d * nv).map(|cv| (cv, cv % nv)).collect(),
        edge_map: (0..d * ne).map(|ce| (ce, ce % ne)).collect(),
    };
    let lifts = (0..d * nv).map(|cv| Lift { coset: cv / nv, base_vertex: cv % nv }).collect();
    Ok(CoverResult { cover, projection, lifts })
}

/// Derives the unique basepoint-preserving coset surjection exhibiting the
/// `higher` cover as a cover of the `lower` one, when it exists.
pub fn derive_factor_witness(
    g: &Graph,
    forest: &BTreeSet<usize>,
    lower: &SubgroupRep,
    higher: &SubgroupRep,
) -> Option<Vec<usize>> {
    let gens = free_generators(g, forest);
    let lo_id: Vec<usize> = (0..lower.degree).collect();
    let hi_id: Vec<usize> = (0..higher.degree).collect();
    let mut witness: Vec<Option<usize>> = vec![None; higher.degree];
    witness[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let w = witness[c].unwrap();
        for &e in &gens {
            let hp = higher.perm(e, &hi_id);
            let lp = lower.perm(e, &lo_id);
            // forward and backward along the generator
            let steps = [
                (hp[c], lp[w]),
                (
                    hp.iter().position(|&x| x == c).unwrap(),
                    lp.iter().position(|&x| x == w).unwrap(),
                ),
            ];
            for (hc, lc) in steps {
                match witness[hc] {
                    None => {
                        witness[hc] = Some(lc);
                        queue.push_back(hc);
                    }
                    Some(existing) if existing != lc => return None,
                    Some(_) => {}
                }
            }
        }
    }
    witness.into_iter().collect()
}

/// The integer structure of a map between cycle spaces: its elementary
/// divisors (Smith normal form diagonal, zero entries dropped).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferRank {
    pub divisors: Vec<i128>,
}

impl TransferRank {
    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Rank of the induced map with `Z/m` coefficients when `m` is prime;
    /// in general the number of elementary divisors invertible mod `m`.
    pub fn rank_mod(&self, m: u64) -> usize {
        self.divisors.iter().filter(|&&d| gcd(d.unsigned_abs(), m as u128) == 1).count()
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Rank data of the map induced on cycle spaces by the factorization
/// `higher -> lower` described by `witness` (higher coset -> lower coset).
///
/// The matrix is taken in the fundamental-cycle bases attached to the
/// deterministic spanning forests of the two covers, then diagonalized
/// over the integers.
pub fn h1_transfer_rank(
    lower: &CoverResult,
    higher: &CoverResult,
    witness: &[usize],
) -> Result<TransferRank, CoverError> {
    let base = &lower.projection.codomain;
    if higher.projection.codomain != *base {
        return Err(CoverError::NoFactorization);
    }
    let (nv, ne) = (base.vertex_count(), base.edge_count());
    let (dl, dh) = (lower.degree(), higher.degree());
    if witness.len() != dh || witness.iter().any(|&c| c >= dl) {
        return Err(CoverError::BadWitness);
    }
    let factor = GraphMap {
        domain: higher.cover.clone(),
        codomain: lower.cover.clone(),
        vertex_map: (0..dh * nv).map(|cv| (cv, witness[cv / nv] * nv + cv % nv)).collect(),
        edge_map: (0..dh * ne).map(|ce| (ce, witness[ce / ne] * ne + ce % ne)).collect(),
    };
    if factor.validate().is_err() || !factor.is_covering() {
        return Err(CoverError::NoFactorization);
    }

    let hi_forest = higher.cover.spanning_forest();
    let lo_forest = lower.cover.spanning_forest();
    let hi_gens = free_generators(&higher.cover, &hi_forest);
    let lo_gens = free_generators(&lower.cover, &lo_forest);
    let lo_row: BTreeMap<usize, usize> =
        lo_gens.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let mut matrix = vec![vec![0i128; hi_gens.len()]; lo_gens.len()];
    for (col, &he) in hi_gens.iter().enumerate() {
        let e = higher.cover.edge(he).expect("generator edge");
        // fundamental cycle: the edge itself plus the tree path closing it
        let closing = tree_path(&higher.cover, &hi_forest, e.tgt, e.src)
            .expect("cover is connected");
        let mut cycle: Vec<Step> = vec![Step::forward(he)];
        cycle.extend_from_slice(closing.steps());
        for step in cycle {
            let image = factor.edge_map[&step.edge];
            if let Some(&row) = lo_row.get(&image) {
                matrix[row][col] += if step.dir == Dir::Forward { 1 } else { -1 };
            }
        }
    }
    Ok(TransferRank { divisors: smith_divisors(matrix) })
}

/// Nonzero diagonal of the Smith normal form, in divisibility order.
fn smith_divisors(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        if !move_min_pivot(&mut m, t) {
            break;
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                move_min_pivot(&mut m, t);
                continue;
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for i in t..rows {
                        m[i][j] -= q * m[i][t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                move_min_pivot(&mut m, t);
                continue;
            }
            // pivot must divide the rest of the submatrix
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % m[t][t] != 0);
            match offender {
                Some((i, _)) => {
                    for jj in t..cols {
                        let add = m[i][jj];
                        m[t][jj] += add;
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Swaps a minimal-magnitude nonzero entry of the trailing submatrix into
/// the pivot position. False when the submatrix is zero.
fn move_min_pivot(m: &mut [Vec<i128>], t: usize) -> bool {
    let rows = m.len();
    let cols = m[0].len();
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    let Some((bi, bj)) = best else {
        return false;
    };
    m.swap(t, bi);
    for row in m.iter_mut() {
        row.swap(t, bj);
    }
    true
}
