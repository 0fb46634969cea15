//! Sections of the extension of a finite group acting on a connected graph
//! by the fundamental group of the graph.
//!
//! An element over the acting group is a pair `(g, α)` with `α` a reduced
//! path `g(v) → v`; these compose by `(σ,α)∘(τ,β) = (στ, σ(β)·α)`. A
//! [`Section`] picks one such path per group element so that the pairs
//! multiply like the group — the cocycle law `α_{gh} = g(α_h)·α_g`. Every
//! section moves the universal cover through lifted automorphisms, and the
//! center of the orbit of the basepoint lift is a vertex fixed by all of
//! them; projecting it back down lands in the fixed subgraph `X^G`, whose
//! connected components classify sections up to conjugation. Everything here
//! is constructive and every produced witness is re-verified before being
//! returned.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::actions::{GraphAction, Subgroup};
use crate::graph::Graph;
use crate::paths::{enumerate_reduced_paths, tree_path, PathError, PathWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("basepoint mismatch")]
    BasepointMismatch,
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("section table has {got} entries, group has order {expected}")]
    WrongTableSize { expected: usize, got: usize },
    #[error("alpha for element {element} runs {start} -> {end}, expected {expected_start} -> {expected_end}")]
    WrongEndpoints {
        element: usize,
        start: usize,
        end: usize,
        expected_start: usize,
        expected_end: usize,
    },
    #[error("identity alpha is not the empty path")]
    IdentityNotEmpty,
    #[error("cocycle law fails at pair ({0}, {1})")]
    CocycleFails(usize, usize),
    #[error("vertex {vertex} is not fixed by element {element}")]
    NotFixed { vertex: usize, element: usize },
    #[error("missing alpha for element {0}")]
    MissingAlpha(usize),
    #[error("internal invariant failure: center not fixed")]
    CenterNotFixed,
    #[error("internal invariant failure: conjugacy witness rejected")]
    ConjugacyVerificationFailed,
}

impl SectionError {
    /// Errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            SectionError::CenterNotFixed | SectionError::ConjugacyVerificationFailed
        )
    }
}

/// A morphism of the extension groupoid over the basepoint: a group element
/// together with a reduced path `g(v) → v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QElement {
    pub element: usize,
    pub alpha: PathWord,
}

impl QElement {
    pub fn identity(v: usize) -> QElement {
        QElement { element: 0, alpha: PathWord::empty(v) }
    }
}

/// `(σ,α)∘(τ,β) = (στ, σ(β)·α)`: apply `σ` to the second path, then follow
/// the first.
pub fn q_compose(
    action: &GraphAction,
    p: &QElement,
    q: &QElement,
) -> Result<QElement, SectionError> {
    if p.alpha.end() != q.alpha.end() {
        return Err(SectionError::BasepointMismatch);
    }
    let moved = action.act_on_path(p.element, &q.alpha);
    let alpha = moved.compose(&p.alpha)?;
    Ok(QElement { element: action.group.mul(p.element, q.element), alpha })
}

/// `(g,α)⁻¹ = (g⁻¹, g⁻¹(α)⁻¹)`.
pub fn q_inverse(action: &GraphAction, p: &QElement) -> QElement {
    let inv = action.group.inverse(p.element);
    QElement { element: inv, alpha: action.act_on_path(inv, &p.alpha).invert() }
}

/// A candidate section: one path `α_g : g(v) → v` per group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    basepoint: usize,
    alphas: Vec<PathWord>,
}

impl Section {
    pub fn new(basepoint: usize, alphas: Vec<PathWord>) -> Section {
        Section { basepoint, alphas }
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn alpha(&self, element: usize) -> &PathWord {
        &self.alphas[element]
    }

    pub fn alphas(&self) -> &[PathWord] {
        &self.alphas
    }
}

/// Wire form of a section: `{"basepoint": v, "alphas": {"g": "literal"}}`.
/// The identity entry may be omitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectionData {
    pub basepoint: usize,
    pub alphas: BTreeMap<usize, String>,
}

impl SectionData {
    pub fn from_section(s: &Section) -> SectionData {
        SectionData {
            basepoint: s.basepoint(),
            alphas: s
                .alphas()
                .iter()
                .enumerate()
                .map(|(g, a)| (g, a.to_string()))
                .collect(),
        }
    }

    pub fn to_section(&self, g: &Graph, order: usize) -> Result<Section, SectionError> {
        let mut alphas = Vec::with_capacity(order);
        for element in 0..order {
            let alpha = match self.alphas.get(&element) {
                Some(literal) => PathWord::from_literal(g, literal)?,
                None if element == 0 => PathWord::empty(self.basepoint),
                None => return Err(SectionError::MissingAlpha(element)),
            };
            alphas.push(alpha);
        }
        Ok(Section { basepoint: self.basepoint, alphas })
    }
}

/// Full check of the section laws: table size, endpoints, identity entry,
/// and the cocycle law over all pairs of group elements.
pub fn check_section(graph: &Graph, action: &GraphAction, s: &Section) -> Result<(), SectionError> {
    let n = action.group.order();
    if s.alphas.len() != n {
        return Err(SectionError::WrongTableSize { expected: n, got: s.alphas.len() });
    }
    if !graph.has_vertex(s.basepoint) {
        return Err(SectionError::Path(PathError::StartAbsent(s.basepoint)));
    }
    let v = s.basepoint;
    for g in 0..n {
        let alpha = &s.alphas[g];
        let expected_start = action.vertex_image(g, v);
        if alpha.start() != expected_start || alpha.end() != v {
            return Err(SectionError::WrongEndpoints {
                element: g,
                start: alpha.start(),
                end: alpha.end(),
                expected_start,
                expected_end: v,
            });
        }
    }
    if !s.alphas[0].is_empty() {
        return Err(SectionError::IdentityNotEmpty);
    }
    for g in 0..n {
        for h in 0..n {
            let lhs = &s.alphas[action.group.mul(g, h)];
            let rhs = action.act_on_path(g, &s.alphas[h]).compose(&s.alphas[g])?;
            if *lhs != rhs {
                return Err(SectionError::CocycleFails(g, h));
            }
        }
    }
    Ok(())
}

pub fn is_section(graph: &Graph, action: &GraphAction, s: &Section) -> bool {
    check_section(graph, action, s).is_ok()
}

/// The section attached to a fixed vertex `w` through a connecting path
/// `φ : v → w`, namely `α_g = g(φ)·φ⁻¹`.
pub fn section_from_fixed_vertex(
    graph: &Graph,
    action: &GraphAction,
    w: usize,
    phi: &PathWord,
) -> Result<Section, SectionError> {
    if phi.end() != w {
        return Err(SectionError::WrongEndpoints {
            element: 0,
            start: phi.start(),
            end: phi.end(),
            expected_start: phi.start(),
            expected_end: w,
        });
    }
    for g in action.group.elements() {
        if action.vertex_image(g, w) != w {
            return Err(SectionError::NotFixed { vertex: w, element: g });
        }
    }
    let back = phi.invert();
    let alphas = action
        .group
        .elements()
        .map(|g| action.act_on_path(g, phi).compose(&back))
        .collect::<Result<Vec<_>, _>>()?;
    let section = Section { basepoint: phi.start(), alphas };
    debug_assert!(check_section(graph, action, &section).is_ok());
    Ok(section)
}

/// A vertex of the universal cover: a reduced path word out of the
/// basepoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniversalVertex(pub PathWord);

impl UniversalVertex {
    pub fn basepoint(v: usize) -> UniversalVertex {
        UniversalVertex(PathWord::empty(v))
    }

    pub fn path(&self) -> &PathWord {
        &self.0
    }

    /// The underlying graph vertex this cover vertex sits over.
    pub fn project(&self) -> usize {
        self.0.end()
    }
}

/// The lifted automorphism of the universal cover attached to `(g, α_g)`:
/// `p ↦ α_g⁻¹ · g(p)`. Given the cocycle law this is a left action covering
/// the action on the graph.
pub fn act_on_universal(
    action: &GraphAction,
    s: &Section,
    g: usize,
    p: &UniversalVertex,
) -> UniversalVertex {
    let moved = action.act_on_path(g, &p.0);
    let twisted = s
        .alpha(g)
        .invert()
        .compose(&moved)
        .expect("alpha endpoints match the lifted action");
    UniversalVertex(twisted)
}

/// A vertex of the universal cover fixed by every lifted automorphism of
/// `s`, computed as the center of the orbit of the basepoint lift.
///
/// The orbit of the empty word spans a finite subtree (its prefix closure,
/// which is the convex hull since the basepoint lift belongs to the orbit);
/// repeatedly deleting all leaves of that subtree at once leaves one vertex,
/// or two adjacent vertices of which both are fixed — the lexicographically
/// smaller word is returned. Fixedness is verified for every group element
/// before returning.
pub fn fixed_universal_vertex(
    graph: &Graph,
    action: &GraphAction,
    s: &Section,
) -> Result<UniversalVertex, SectionError> {
    let base = UniversalVertex::basepoint(s.basepoint());
    let orbit: BTreeSet<PathWord> = action
        .group
        .elements()
        .map(|g| act_on_universal(action, s, g, &base).0)
        .collect();

    let mut alive: BTreeSet<PathWord> = BTreeSet::new();
    for p in &orbit {
        for prefix in p.prefixes(graph) {
            alive.insert(prefix);
        }
    }

    let parent = |p: &PathWord| -> PathWord {
        let last = *p.steps().last().expect("non-empty word");
        let e = graph.edge(last.edge).expect("edge of a hull word");
        let end = match last.dir {
            crate::paths::Dir::Forward => e.src,
            crate::paths::Dir::Backward => e.tgt,
        };
        PathWord::from_reduced_parts(p.start(), end, p.steps()[..p.len() - 1].to_vec())
    };

    while alive.len() > 2 {
        let mut degree: BTreeMap<&PathWord, usize> = alive.iter().map(|p| (p, 0)).collect();
        for p in &alive {
            if p.is_empty() {
                continue;
            }
            let par = parent(p);
            if alive.contains(&par) {
                *degree.get_mut(p).unwrap() += 1;
                *degree.get_mut(&par).unwrap() += 1;
            }
        }
        let leaves: Vec<PathWord> = degree
            .iter()
            .filter(|&(_, &d)| d <= 1)
            .map(|(p, _)| (*p).clone())
            .collect();
        for leaf in leaves {
            alive.remove(&leaf);
        }
    }

    // smallest word first; with two survivors both are fixed
    let center = UniversalVertex(alive.into_iter().next().expect("orbit is non-empty"));
    for g in action.group.elements() {
        if act_on_universal(action, s, g, &center) != center {
            return Err(SectionError::CenterNotFixed);
        }
    }
    Ok(center)
}

/// A conjugacy class of sections, tagged by the connected component of the
/// fixed subgraph its fixed vertices land in. Classes compare equal exactly
/// when their component tags agree.
#[derive(Debug, Clone)]
pub struct SectionClass {
    pub section: Section,
    pub component: usize,
    pub fixed_vertex: usize,
}

impl PartialEq for SectionClass {
    fn eq(&self, other: &Self) -> bool {
        self.component == other.component
    }
}

impl Eq for SectionClass {}

/// One section class per connected component of the fixed subgraph `X^G`,
/// built from the least-id fixed vertex of each component and the spanning
/// forest path connecting the basepoint to it.
pub fn sections_enumerate(
    graph: &Graph,
    action: &GraphAction,
    basepoint: usize,
) -> Result<Vec<SectionClass>, SectionError> {
    if !graph.has_vertex(basepoint) {
        return Err(SectionError::Path(PathError::StartAbsent(basepoint)));
    }
    if !graph.is_connected() {
        return Err(SectionError::DisconnectedGraph);
    }
    let forest = graph.spanning_forest();
    let fixed = action.fixed_subgraph(graph, &Subgroup::full(&action.group));
    let mut classes = Vec::with_capacity(fixed.components.len());
    for (component, comp) in fixed.components.iter().enumerate() {
        let w = comp.vertices[0];
        let phi = tree_path(graph, &forest, basepoint, w)?;
        let section = section_from_fixed_vertex(graph, action, w, &phi)?;
        classes.push(SectionClass { section, component, fixed_vertex: w });
    }
    Ok(classes)
}

/// Decides conjugacy of two sections over the same action and basepoint.
///
/// Both fixed universal vertices are computed and projected to the fixed
/// subgraph; the sections are conjugate exactly when the projections share
/// a component. On success the conjugating loop `ψ` (with
/// `α'_g = g(ψ)·α_g·ψ⁻¹`) is built from the two fixed vertices and a
/// connecting path inside the fixed subgraph, and verified against every
/// group element before being returned.
pub fn are_conjugate(
    graph: &Graph,
    action: &GraphAction,
    s1: &Section,
    s2: &Section,
) -> Result<Option<PathWord>, SectionError> {
    if s1.basepoint() != s2.basepoint() {
        return Err(SectionError::BasepointMismatch);
    }
    let p1 = fixed_universal_vertex(graph, action, s1)?;
    let p2 = fixed_universal_vertex(graph, action, s2)?;
    let fixed = action.fixed_subgraph(graph, &Subgroup::full(&action.group));
    let c1 = fixed.component_of(p1.project());
    let c2 = fixed.component_of(p2.project());
    let (Some(c1), Some(c2)) = (c1, c2) else {
        return Err(SectionError::CenterNotFixed);
    };
    if c1 != c2 {
        return Ok(None);
    }
    let sub_forest = fixed.graph.spanning_forest();
    let connecting = tree_path(&fixed.graph, &sub_forest, p1.project(), p2.project())?;
    // ψ = p2 · c⁻¹ · p1⁻¹, a loop at the basepoint
    let psi = p2
        .path()
        .compose(&connecting.invert())?
        .compose(&p1.path().invert())?;
    for g in action.group.elements() {
        let conjugated = action
            .act_on_path(g, &psi)
            .compose(s1.alpha(g))?
            .compose(&psi.invert())?;
        if conjugated != *s2.alpha(g) {
            return Err(SectionError::ConjugacyVerificationFailed);
        }
    }
    Ok(Some(psi))
}

/// The same table read over a subgroup, together with the subgroup's own
/// action; entry `i` of the result corresponds to `h.members()[i]`.
pub fn restrict(action: &GraphAction, s: &Section, h: &Subgroup) -> (GraphAction, Section) {
    let sub = action.sub_action(h);
    let alphas = h.members().iter().map(|&m| s.alpha(m).clone()).collect();
    (sub, Section { basepoint: s.basepoint(), alphas })
}

/// Exhaustively enumerates every section whose paths all have length at most
/// `max_len`, in lexicographic order of candidate choices. Candidates per
/// element are reduced paths ordered by length then steps. Elements that are
/// products of earlier ones have their path dictated by the cocycle law once
/// the earlier choices are made, so only the remaining elements branch; the
/// result set and its order match the plain exhaustive filter.
pub fn brute_force_cocycles(
    graph: &Graph,
    action: &GraphAction,
    basepoint: usize,
    max_len: usize,
) -> Result<Vec<Section>, SectionError> {
    if !graph.has_vertex(basepoint) {
        return Err(SectionError::Path(PathError::StartAbsent(basepoint)));
    }
    if !graph.is_connected() {
        return Err(SectionError::DisconnectedGraph);
    }
    let n = action.group.order();
    // least pair of earlier elements multiplying to k, if any
    let forced_by: Vec<Option<(usize, usize)>> = (0..n)
        .map(|k| {
            (1..k)
                .flat_map(|a| (1..k).map(move |b| (a, b)))
                .find(|&(a, b)| action.group.mul(a, b) == k)
        })
        .collect();
    let candidates: Vec<Vec<PathWord>> = (1..n)
        .map(|g| {
            if forced_by[g].is_some() {
                Vec::new()
            } else {
                enumerate_reduced_paths(
                    graph,
                    action.vertex_image(g, basepoint),
                    basepoint,
                    max_len,
                )
            }
        })
        .collect();

    struct Search<'a> {
        graph: &'a Graph,
        action: &'a GraphAction,
        candidates: &'a [Vec<PathWord>],
        forced_by: &'a [Option<(usize, usize)>],
        max_len: usize,
        basepoint: usize,
        alphas: Vec<Option<PathWord>>,
        found: Vec<Section>,
    }

    impl Search<'_> {
        /// Checks every cocycle pair whose three entries are assigned and
        /// involve the latest element.
        fn consistent(&self, latest: usize) -> Result<bool, SectionError> {
            let n = self.action.group.order();
            for g in 0..n {
                for h in 0..n {
                    let gh = self.action.group.mul(g, h);
                    if g != latest && h != latest && gh != latest {
                        continue;
                    }
                    let (Some(ag), Some(ah), Some(agh)) =
                        (&self.alphas[g], &self.alphas[h], &self.alphas[gh])
                    else {
                        continue;
                    };
                    if self.action.act_on_path(g, ah).compose(ag)? != *agh {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }

        fn run(&mut self, element: usize) -> Result<(), SectionError> {
            let n = self.action.group.order();
            if element == n {
                let section = Section {
                    basepoint: self.basepoint,
                    alphas: self.alphas.iter().map(|a| a.clone().unwrap()).collect(),
                };
                debug_assert!(check_section(self.graph, self.action, &section).is_ok());
                self.found.push(section);
                return Ok(());
            }
            if let Some((a, b)) = self.forced_by[element] {
                let dictated = self
                    .action
                    .act_on_path(a, self.alphas[b].as_ref().expect("earlier element assigned"))
                    .compose(self.alphas[a].as_ref().expect("earlier element assigned"))?;
                if dictated.len() <= self.max_len {
                    self.alphas[element] = Some(dictated);
                    if self.consistent(element)? {
                        self.run(element + 1)?;
                    }
                    self.alphas[element] = None;
                }
                return Ok(());
            }
            for i in 0..self.candidates[element - 1].len() {
                self.alphas[element] = Some(self.candidates[element - 1][i].clone());
                if self.consistent(element)? {
                    self.run(element + 1)?;
                }
            }
            self.alphas[element] = None;
            Ok(())
        }
    }

    let mut alphas: Vec<Option<PathWord>> = vec![None; n];
    alphas[0] = Some(PathWord::empty(basepoint));
    let mut search = Search {
        graph,
        action,
        candidates: &candidates,
        forced_by: &forced_by,
        max_len,
        basepoint,
        alphas,
        found: Vec::new(),
    };
    search.run(1)?;
    Ok(search.found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::FiniteGroup;
    use crate::paths::Step;

    fn parallel_swap() -> (Graph, GraphAction) {
        let g = Graph::from_pairs(2, &[(0, 1), (0, 1)]);
        let action = GraphAction::new(
            FiniteGroup::cyclic(2),
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0, 1], vec![1, 0]],
        );
        action.validate(&g).unwrap();
        (g, action)
    }

    fn rotating_cycle(n: usize) -> (Graph, GraphAction) {
        let g = Graph::from_pairs(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>());
        let perms: Vec<Vec<usize>> =
            (0..n).map(|k| (0..n).map(|i| (i + k) % n).collect()).collect();
        let action = GraphAction::new(FiniteGroup::cyclic(n), perms.clone(), perms);
        action.validate(&g).unwrap();
        (g, action)
    }

    /// The section of the parallel-edge swap fixing vertex 1: α_σ = +1 -0.
    fn swap_section_b(g: &Graph, action: &GraphAction) -> Section {
        let phi = PathWord::new(g, 0, [Step::forward(0)]).unwrap();
        section_from_fixed_vertex(g, action, 1, &phi).unwrap()
    }

    #[test]
    fn q_identity_composes_trivially() {
        let (g, action) = parallel_swap();
        let _ = g;
        let id = QElement::identity(0);
        let r = q_compose(&action, &id, &id).unwrap();
        assert_eq!(r, id);
    }

    #[test]
    fn q_inverse_cancels() {
        let (g, action) = parallel_swap();
        let alpha = PathWord::new(&g, 0, [Step::forward(1), Step::backward(0)]).unwrap();
        let p = QElement { element: 1, alpha };
        let inv = q_inverse(&action, &p);
        assert_eq!(q_compose(&action, &p, &inv).unwrap(), QElement::identity(0));
        assert_eq!(q_compose(&action, &inv, &p).unwrap(), QElement::identity(0));
    }

    #[test]
    fn swap_element_squares_to_identity() {
        let (g, action) = parallel_swap();
        let alpha = PathWord::new(&g, 0, [Step::forward(1), Step::backward(0)]).unwrap();
        let p = QElement { element: 1, alpha };
        assert_eq!(q_compose(&action, &p, &p).unwrap(), QElement::identity(0));
    }

    #[test]
    fn q_compose_is_associative_on_samples() {
        let (g, action) = parallel_swap();
        let x = QElement {
            element: 1,
            alpha: PathWord::new(&g, 0, [Step::forward(1), Step::backward(0)]).unwrap(),
        };
        let y = QElement {
            element: 1,
            alpha: PathWord::new(&g, 0, [Step::forward(0), Step::backward(1)]).unwrap(),
        };
        let z = QElement::identity(0);
        for a in [&x, &y, &z] {
            for b in [&x, &y, &z] {
                for c in [&x, &y, &z] {
                    let left = q_compose(&action, &q_compose(&action, a, b).unwrap(), c).unwrap();
                    let right = q_compose(&action, a, &q_compose(&action, b, c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn trivial_group_empty_alpha_is_section() {
        let g = Graph::from_pairs(2, &[(0, 1)]);
        let action = GraphAction::trivial(FiniteGroup::trivial(), &g);
        let s = Section::new(0, vec![PathWord::empty(0)]);
        assert!(is_section(&g, &action, &s));
    }

    #[test]
    fn rotation_with_empty_alphas_is_not_a_section() {
        let (g, action) = rotating_cycle(3);
        let s = Section::new(0, vec![PathWord::empty(0); 3]);
        assert!(matches!(
            check_section(&g, &action, &s),
            Err(SectionError::WrongEndpoints { .. })
        ));
    }

    #[test]
    fn swap_section_checks() {
        let (g, action) = parallel_swap();
        let s = swap_section_b(&g, &action);
        assert_eq!(s.alpha(1).to_string(), "0: +1 -0");
        assert!(is_section(&g, &action, &s));
    }

    #[test]
    fn section_from_basepoint_is_all_empty() {
        let (g, action) = parallel_swap();
        let s = section_from_fixed_vertex(&g, &action, 0, &PathWord::empty(0)).unwrap();
        assert!(s.alphas().iter().all(|a| a.is_empty()));
        assert!(is_section(&g, &action, &s));
    }

    #[test]
    fn unfixed_vertex_rejected() {
        let (g, action) = rotating_cycle(3);
        let err = section_from_fixed_vertex(&g, &action, 0, &PathWord::empty(0)).unwrap_err();
        assert!(matches!(err, SectionError::NotFixed { vertex: 0, .. }));
        let _ = g;
    }

    #[test]
    fn different_phi_gives_conjugate_section() {
        // s_{φ·ℓ} is conjugate to s_φ with witness ℓ
        let (g, action) = parallel_swap();
        let phi = PathWord::new(&g, 0, [Step::forward(0)]).unwrap();
        let ell = PathWord::new(&g, 0, [Step::forward(1), Step::backward(0)]).unwrap();
        let phi2 = ell.compose(&phi).unwrap();
        let s1 = section_from_fixed_vertex(&g, &action, 1, &phi).unwrap();
        let s2 = section_from_fixed_vertex(&g, &action, 1, &phi2).unwrap();
        let psi = are_conjugate(&g, &action, &s1, &s2).unwrap().unwrap();
        assert_eq!(psi, ell);
    }

    #[test]
    fn universal_action_examples() {
        let (g, action) = parallel_swap();
        let s = swap_section_b(&g, &action);
        let base = UniversalVertex::basepoint(0);
        assert_eq!(act_on_universal(&action, &s, 0, &base), base);
        let moved = act_on_universal(&action, &s, 1, &base);
        assert_eq!(moved.path().to_string(), "0: +0 -1");
        let _ = g;
    }

    #[test]
    fn universal_action_reduces_to_path_action_when_basepoint_fixed() {
        let (g, action) = parallel_swap();
        let s = section_from_fixed_vertex(&g, &action, 0, &PathWord::empty(0)).unwrap();
        let p = UniversalVertex(PathWord::new(&g, 0, [Step::forward(0)]).unwrap());
        let acted = act_on_universal(&action, &s, 1, &p);
        assert_eq!(acted.0, action.act_on_path(1, &p.0));
    }

    #[test]
    fn universal_action_is_left_action() {
        let (g, action) = parallel_swap();
        for s in [swap_section_b(&g, &action)] {
            let p = UniversalVertex(PathWord::new(&g, 0, [Step::forward(0)]).unwrap());
            for a in 0..2 {
                for b in 0..2 {
                    let lhs = act_on_universal(&action, &s, a, &act_on_universal(&action, &s, b, &p));
                    let rhs = act_on_universal(&action, &s, action.group.mul(a, b), &p);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn fixed_vertex_of_basepoint_section_is_empty_word() {
        let (g, action) = parallel_swap();
        let s = section_from_fixed_vertex(&g, &action, 0, &PathWord::empty(0)).unwrap();
        let center = fixed_universal_vertex(&g, &action, &s).unwrap();
        assert!(center.path().is_empty());
    }

    #[test]
    fn fixed_vertex_of_swap_section_is_middle_of_hull() {
        // orbit {ε, +0 -1}; hull ε — +0 — +0 -1; center +0, over vertex 1
        let (g, action) = parallel_swap();
        let s = swap_section_b(&g, &action);
        let center = fixed_universal_vertex(&g, &action, &s).unwrap();
        assert_eq!(center.path().to_string(), "0: +0");
        assert_eq!(center.project(), 1);
    }

    #[test]
    fn fixed_vertex_trivial_group() {
        let g = Graph::from_pairs(2, &[(0, 1)]);
        let action = GraphAction::trivial(FiniteGroup::trivial(), &g);
        let s = Section::new(0, vec![PathWord::empty(0)]);
        let center = fixed_universal_vertex(&g, &action, &s).unwrap();
        assert!(center.path().is_empty());
    }

    #[test]
    fn enumerate_rotation_has_no_classes() {
        for n in 2..6 {
            let (g, action) = rotating_cycle(n);
            assert!(sections_enumerate(&g, &action, 0).unwrap().is_empty());
        }
    }

    #[test]
    fn enumerate_swap_has_two_classes() {
        let (g, action) = parallel_swap();
        let classes = sections_enumerate(&g, &action, 0).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].fixed_vertex, 0);
        assert_eq!(classes[1].fixed_vertex, 1);
        assert_ne!(classes[0], classes[1]);
        for class in &classes {
            assert!(is_section(&g, &action, &class.section));
        }
        assert!(are_conjugate(&g, &action, &classes[0].section, &classes[1].section)
            .unwrap()
            .is_none());
    }

    #[test]
    fn enumerate_trivial_group_single_class() {
        let g = Graph::from_pairs(3, &[(0, 1), (1, 2)]);
        let action = GraphAction::trivial(FiniteGroup::trivial(), &g);
        let classes = sections_enumerate(&g, &action, 0).unwrap();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn enumerate_rejects_disconnected() {
        let g = Graph::new(vec![0, 1], vec![]);
        let action = GraphAction::trivial(FiniteGroup::trivial(), &g);
        assert!(matches!(
            sections_enumerate(&g, &action, 0),
            Err(SectionError::DisconnectedGraph)
        ));
    }

    #[test]
    fn self_conjugacy_gives_empty_witness() {
        let (g, action) = parallel_swap();
        let s = swap_section_b(&g, &action);
        let psi = are_conjugate(&g, &action, &s, &s).unwrap().unwrap();
        assert!(psi.is_empty());
    }

    #[test]
    fn restriction_examples() {
        let (g, action) = parallel_swap();
        let s = swap_section_b(&g, &action);
        let (sub, restricted) = restrict(&action, &s, &Subgroup::trivial());
        assert_eq!(sub.group.order(), 1);
        assert!(is_section(&g, &sub, &restricted));
        assert!(restricted.alpha(0).is_empty());

        let (full, same) = restrict(&action, &s, &Subgroup::full(&action.group));
        assert_eq!(same, s);
        assert_eq!(full.group.order(), 2);
    }

    #[test]
    fn brute_force_trivial_group() {
        let g = Graph::from_pairs(2, &[(0, 1)]);
        let action = GraphAction::trivial(FiniteGroup::trivial(), &g);
        let sections = brute_force_cocycles(&g, &action, 0, 3).unwrap();
        assert_eq!(sections.len(), 1);
        assert!(sections[0].alpha(0).is_empty());
    }

    #[test]
    fn brute_force_rotation_finds_nothing() {
        for n in 2..6 {
            let (g, action) = rotating_cycle(n);
            assert!(brute_force_cocycles(&g, &action, 0, 2 * n).unwrap().is_empty());
        }
    }

    #[test]
    fn brute_force_swap_finds_both_classes() {
        let (g, action) = parallel_swap();
        let sections = brute_force_cocycles(&g, &action, 0, 2).unwrap();
        // ε, +0 -1 and +1 -0 all satisfy the law at length ≤ 2
        assert_eq!(sections.len(), 3);
        let classes = sections_enumerate(&g, &action, 0).unwrap();
        for s in &sections {
            let matches: Vec<usize> = classes
                .iter()
                .enumerate()
                .filter_map(|(i, class)| {
                    are_conjugate(&g, &action, &class.section, s).unwrap().map(|_| i)
                })
                .collect();
            assert_eq!(matches.len(), 1, "each brute section matches exactly one class");
        }
    }

    #[test]
    fn non_conjugate_sections_have_disjoint_fixed_vertices() {
        let (g, action) = parallel_swap();
        let classes = sections_enumerate(&g, &action, 0).unwrap();
        let p0 = fixed_universal_vertex(&g, &action, &classes[0].section).unwrap();
        let p1 = fixed_universal_vertex(&g, &action, &classes[1].section).unwrap();
        assert_ne!(p0, p1);
        // no deck translate of one fixed vertex hits the other
        for psi in enumerate_reduced_paths(&g, 0, 0, 4) {
            let translated = psi.invert().compose(p0.path()).unwrap();
            assert_ne!(translated, *p1.path());
        }
    }

    #[test]
    fn round_trip_fixed_vertex_lands_in_component_of_origin() {
        let (g, action) = parallel_swap();
        let fixed = action.fixed_subgraph(&g, &Subgroup::full(&action.group));
        for w in [0usize, 1] {
            let forest = g.spanning_forest();
            let phi = tree_path(&g, &forest, 0, w).unwrap();
            let s = section_from_fixed_vertex(&g, &action, w, &phi).unwrap();
            let center = fixed_universal_vertex(&g, &action, &s).unwrap();
            assert_eq!(fixed.component_of(center.project()), fixed.component_of(w));
        }
    }

    #[test]
    fn section_data_round_trip() {
        let (g, action) = parallel_swap();
        let s = swap_section_b(&g, &action);
        let data = SectionData::from_section(&s);
        let back = data.to_section(&g, action.group.order()).unwrap();
        assert_eq!(back, s);
        let json = serde_json::to_string(&data).unwrap();
        let reparsed: SectionData = serde_json::from_str(&json).unwrap();
        assert_eq!(reparsed.to_section(&g, 2).unwrap(), s);
    }
}
