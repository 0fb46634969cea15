//! Reduced edge words: the morphisms of the fundamental groupoid of a graph.
//!
//! A [`PathWord`] walks signed edges (`+e` along the edge, `-e` against it)
//! and is stored fully reduced — no step is immediately followed by its
//! inverse — so two words are homotopic relative to their endpoints exactly
//! when they are equal. Loops at a basepoint translate to [`FreeWord`]s over
//! the non-forest edges of a spanning forest; that translation is the usual
//! identification of the vertex group with a free group.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphIndex};

/// Direction of travel along an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Forward,
    Backward,
}

/// A signed edge: one step of a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub edge: usize,
    pub dir: Dir,
}

impl Step {
    pub fn forward(edge: usize) -> Step {
        Step { edge, dir: Dir::Forward }
    }

    pub fn backward(edge: usize) -> Step {
        Step { edge, dir: Dir::Backward }
    }

    pub fn inverse(self) -> Step {
        Step {
            edge: self.edge,
            dir: match self.dir {
                Dir::Forward => Dir::Backward,
                Dir::Backward => Dir::Forward,
            },
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.dir {
            Dir::Forward => '+',
            Dir::Backward => '-',
        };
        write!(f, "{}{}", sign, self.edge)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("start vertex {0} is not in the graph")]
    StartAbsent(usize),
    #[error("unknown edge {edge} at position {position}")]
    UnknownEdge { edge: usize, position: usize },
    #[error("endpoint mismatch at position {position}: at vertex {at}, step {step} requires {required}")]
    EndpointMismatch { position: usize, at: usize, step: String, required: usize },
    #[error("cannot compose: first word ends at {end}, second starts at {start}")]
    ComposeMismatch { end: usize, start: usize },
    #[error("vertices {0} and {1} lie in different components")]
    DifferentComponents(usize, usize),
    #[error("word is not a loop: starts at {start}, ends at {end}")]
    NotALoop { start: usize, end: usize },
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("malformed path literal: {0}")]
    BadLiteral(String),
}

/// A reduced signed-edge word with remembered endpoints.
///
/// Equality, ordering and hashing look at `(start, steps)` only; the end
/// vertex is determined by those for words over a fixed graph. Ordering is
/// lexicographic on the step sequence, which is the tie-break order used by
/// the orbit-center algorithm.
#[derive(Debug, Clone)]
pub struct PathWord {
    start: usize,
    end: usize,
    steps: Vec<Step>,
}

impl PartialEq for PathWord {
    fn eq(&self, other: &Self) -> bool {
        self.start == other.start && self.steps == other.steps
    }
}

impl Eq for PathWord {}

impl std::hash::Hash for PathWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.start.hash(state);
        self.steps.hash(state);
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.start, &self.steps).cmp(&(other.start, &other.steps))
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.start)?;
        for s in &self.steps {
            write!(f, " {}", s)?;
        }
        Ok(())
    }
}

impl PathWord {
    /// The empty path at `v`.
    pub fn empty(v: usize) -> PathWord {
        PathWord { start: v, end: v, steps: Vec::new() }
    }

    /// Validates a raw step sequence against the graph and reduces it.
    /// This is the normal form map: the result is the unique reduced word
    /// homotopic to the input, and re-running it is the identity.
    pub fn new(
        g: &Graph,
        start: usize,
        steps: impl IntoIterator<Item = Step>,
    ) -> Result<PathWord, PathError> {
        if !g.has_vertex(start) {
            return Err(PathError::StartAbsent(start));
        }
        let edges: BTreeMap<usize, (usize, usize)> =
            g.edges.iter().map(|e| (e.id, (e.src, e.tgt))).collect();
        let mut at = start;
        let mut reduced: Vec<Step> = Vec::new();
        for (position, step) in steps.into_iter().enumerate() {
            let &(src, tgt) = edges
                .get(&step.edge)
                .ok_or(PathError::UnknownEdge { edge: step.edge, position })?;
            let (from, to) = match step.dir {
                Dir::Forward => (src, tgt),
                Dir::Backward => (tgt, src),
            };
            if from != at {
                return Err(PathError::EndpointMismatch {
                    position,
                    at,
                    step: step.to_string(),
                    required: from,
                });
            }
            at = to;
            if reduced.last() == Some(&step.inverse()) {
                reduced.pop();
            } else {
                reduced.push(step);
            }
        }
        Ok(PathWord { start, end: at, steps: reduced })
    }

    /// Bypasses validation; callers guarantee the parts came from a valid
    /// reduced walk on the relevant graph.
    pub(crate) fn from_reduced_parts(start: usize, end: usize, steps: Vec<Step>) -> PathWord {
        PathWord { start, end, steps }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Concatenation followed by reduction; `self` first, then `q`.
    pub fn compose(&self, q: &PathWord) -> Result<PathWord, PathError> {
        if self.end != q.start {
            return Err(PathError::ComposeMismatch { end: self.end, start: q.start });
        }
        let mut steps = self.steps.clone();
        for &s in &q.steps {
            if steps.last() == Some(&s.inverse()) {
                steps.pop();
            } else {
                steps.push(s);
            }
        }
        Ok(PathWord { start: self.start, end: q.end, steps })
    }

    /// Steps reversed with directions flipped.
    pub fn invert(&self) -> PathWord {
        PathWord {
            start: self.end,
            end: self.start,
            steps: self.steps.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    /// The reduced prefixes `ε, s₁, s₁s₂, …` of this word, i.e. the vertices
    /// of the universal cover its walk visits.
    pub(crate) fn prefixes(&self, g: &Graph) -> Vec<PathWord> {
        let edges: BTreeMap<usize, (usize, usize)> =
            g.edges.iter().map(|e| (e.id, (e.src, e.tgt))).collect();
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(PathWord::empty(self.start));
        for (k, step) in self.steps.iter().enumerate() {
            let (src, tgt) = edges[&step.edge];
            let at = match step.dir {
                Dir::Forward => tgt,
                Dir::Backward => src,
            };
            debug_assert!(match step.dir {
                Dir::Forward => out[k].end == src,
                Dir::Backward => out[k].end == tgt,
            });
            out.push(PathWord::from_reduced_parts(self.start, at, self.steps[..=k].to_vec()));
        }
        out
    }

    /// Parses a path literal `"v: +3 -7 +2"`; the empty word is `"v:"`.
    /// The result is unvalidated raw input.
    pub fn parse_literal(s: &str) -> Result<(usize, Vec<Step>), PathError> {
        let bad = || PathError::BadLiteral(s.to_string());
        let (head, rest) = s.split_once(':').ok_or_else(bad)?;
        let start: usize = head.trim().parse().map_err(|_| bad())?;
        let mut steps = Vec::new();
        for token in rest.split_whitespace() {
            let (sign, digits) = token.split_at(1);
            let edge: usize = digits.parse().map_err(|_| bad())?;
            let dir = match sign {
                "+" => Dir::Forward,
                "-" => Dir::Backward,
                _ => return Err(bad()),
            };
            steps.push(Step { edge, dir });
        }
        Ok((start, steps))
    }

    /// Parses and validates a path literal against a graph.
    pub fn from_literal(g: &Graph, s: &str) -> Result<PathWord, PathError> {
        let (start, steps) = PathWord::parse_literal(s)?;
        PathWord::new(g, start, steps)
    }
}

/// The unique reduced path from `u` to `w` that uses only forest edges.
pub fn tree_path(
    g: &Graph,
    forest: &BTreeSet<usize>,
    u: usize,
    w: usize,
) -> Result<PathWord, PathError> {
    if !g.has_vertex(u) {
        return Err(PathError::StartAbsent(u));
    }
    if !g.has_vertex(w) {
        return Err(PathError::StartAbsent(w));
    }
    if u == w {
        return Ok(PathWord::empty(u));
    }
    let index = GraphIndex::new(g);
    // breadth-first over forest edges, remembering the arriving step
    let mut back: BTreeMap<usize, (usize, Step)> = BTreeMap::new();
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for arc in index.incident(x) {
            if !forest.contains(&arc.edge) || arc.other == u || back.contains_key(&arc.other) {
                continue;
            }
            let dir = if arc.forward { Dir::Forward } else { Dir::Backward };
            back.insert(arc.other, (x, Step { edge: arc.edge, dir }));
            if arc.other == w {
                queue.clear();
                break;
            }
            queue.push_back(arc.other);
        }
    }
    if !back.contains_key(&w) {
        return Err(PathError::DifferentComponents(u, w));
    }
    let mut steps = Vec::new();
    let mut at = w;
    while at != u {
        let (prev, step) = back[&at];
        steps.push(step);
        at = prev;
    }
    steps.reverse();
    // a tree path never backtracks, so the walk is already reduced
    Ok(PathWord::from_reduced_parts(u, w, steps))
}

/// One letter of a free-group word: a generator index with an inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.gen, if self.inv { "^-1" } else { "" })
    }
}

/// A reduced word in a free group, one generator per non-forest edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn empty() -> FreeWord {
        FreeWord::default()
    }

    /// Reduces an arbitrary letter sequence.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> FreeWord {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        FreeWord::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// Non-forest edges in ascending id order: the generator list of the vertex
/// group relative to `forest`.
pub fn free_generators(g: &Graph, forest: &BTreeSet<usize>) -> Vec<usize> {
    let mut gens: Vec<usize> =
        g.edges.iter().map(|e| e.id).filter(|id| !forest.contains(id)).collect();
    gens.sort_unstable();
    gens
}

/// Collapses the forest: each non-forest step of a loop becomes a letter,
/// forest steps vanish. This is the inverse of [`free_word_to_loop`] on
/// reduced loops.
pub fn loop_to_free_word(
    g: &Graph,
    forest: &BTreeSet<usize>,
    lp: &PathWord,
) -> Result<FreeWord, PathError> {
    if lp.start() != lp.end() {
        return Err(PathError::NotALoop { start: lp.start(), end: lp.end() });
    }
    let gens = free_generators(g, forest);
    let index_of: BTreeMap<usize, usize> =
        gens.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    Ok(FreeWord::new(lp.steps().iter().filter_map(|s| {
        index_of.get(&s.edge).map(|&gen| Letter { gen, inv: s.dir == Dir::Backward })
    })))
}

/// Expands each generator to its canonical loop at `v`: along the forest to
/// the edge's source, through the edge, and back along the forest.
pub fn free_word_to_loop(
    g: &Graph,
    forest: &BTreeSet<usize>,
    v: usize,
    word: &FreeWord,
) -> Result<PathWord, PathError> {
    let gens = free_generators(g, forest);
    let mut out = PathWord::empty(v);
    if !g.has_vertex(v) {
        return Err(PathError::StartAbsent(v));
    }
    for l in word.letters() {
        let &edge_id = gens.get(l.gen).ok_or(PathError::UnknownGenerator(l.gen))?;
        let e = g.edge(edge_id).expect("generator edge exists");
        let through = tree_path(g, forest, v, e.src)?
            .compose(&PathWord::from_reduced_parts(e.src, e.tgt, vec![Step::forward(edge_id)]))?
            .compose(&tree_path(g, forest, e.tgt, v)?)?;
        let factor = if l.inv { through.invert() } else { through };
        out = out.compose(&factor)?;
    }
    Ok(out)
}

/// All reduced paths from `from` to `to` of length at most `max_len`,
/// ordered by length then lexicographically by step sequence.
pub fn enumerate_reduced_paths(
    g: &Graph,
    from: usize,
    to: usize,
    max_len: usize,
) -> Vec<PathWord> {
    if !g.has_vertex(from) || !g.has_vertex(to) {
        return Vec::new();
    }
    let index = GraphIndex::new(g);
    let mut found: Vec<PathWord> = Vec::new();
    let mut stack: Vec<Step> = Vec::new();
    fn walk(
        index: &GraphIndex,
        at: usize,
        to: usize,
        max_len: usize,
        stack: &mut Vec<Step>,
        start: usize,
        found: &mut Vec<PathWord>,
    ) {
        if at == to {
            found.push(PathWord::from_reduced_parts(start, at, stack.clone()));
        }
        if stack.len() == max_len {
            return;
        }
        for arc in index.incident(at) {
            let step = Step {
                edge: arc.edge,
                dir: if arc.forward { Dir::Forward } else { Dir::Backward },
            };
            if stack.last() == Some(&step.inverse()) {
                continue;
            }
            stack.push(step);
            walk(index, arc.other, to, max_len, stack, start, found);
            stack.pop();
        }
    }
    walk(&index, from, to, max_len, &mut stack, from, &mut found);
    found.sort_by(|a, b| (a.len(), a.steps()).cmp(&(b.len(), b.steps())));
    found
}
