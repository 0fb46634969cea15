//! Curves modeled by incidence graphs: irreducible components and singular
//! points as vertices, branches as edges, with a finite Galois group
//! permuting all three. Local data lives on places — a decomposition
//! subgroup plus an oracle listing the components known to carry a local
//! point. Everything the descent decision needs reduces to fixed-subgraph
//! combinatorics and section classes of the incidence graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::actions::{FiniteGroup, GraphAction, Subgroup};
use crate::graph::{Edge, Graph};
use crate::sections::{
    fixed_universal_vertex, restrict, sections_enumerate, SectionClass, SectionError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error(transparent)]
    Group(#[from] crate::actions::GroupViolation),
    #[error(transparent)]
    Action(#[from] crate::actions::ActionViolation),
    #[error(transparent)]
    Section(#[from] SectionError),
    #[error("component ids are not dense integers from 0")]
    ComponentsNotDense,
    #[error("singular point ids are not dense integers from 0")]
    PointsNotDense,
    #[error("branch {0} references unknown component {1}")]
    BranchUnknownComponent(usize, usize),
    #[error("branch {0} references unknown singular point {1}")]
    BranchUnknownPoint(usize, usize),
    #[error("galois block has wrong permutation cardinalities")]
    GaloisShapeMismatch,
    #[error("place {place}: local component {component} does not exist")]
    LocalComponentUnknown { place: String, component: usize },
    #[error("place {place}: local component {component} is not fixed by the decomposition group")]
    LocalComponentNotFixed { place: String, component: usize },
    #[error("unknown place index {0}")]
    UnknownPlace(usize),
    #[error("not geometrically connected")]
    NotGeometricallyConnected,
    #[error("theorem contradiction at place {place}: {reason}")]
    TheoremContradiction { place: String, reason: String },
}

impl DescentError {
    pub fn is_internal(&self) -> bool {
        match self {
            DescentError::TheoremContradiction { .. } => true,
            DescentError::Section(e) => e.is_internal(),
            _ => false,
        }
    }
}

/// A branch: a point of the normalization, joining a component to the
/// singular point it passes through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub component: usize,
    pub point: usize,
}

/// The Galois group of the splitting field with its permutation action on
/// components, singular points and branches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisAction {
    pub group: FiniteGroup,
    pub component_perms: Vec<Vec<usize>>,
    pub point_perms: Vec<Vec<usize>>,
    pub branch_perms: Vec<Vec<usize>>,
}

/// A place: its decomposition subgroup and the components asserted to carry
/// a local point there. Fixed singular points always count as local points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Place {
    pub name: String,
    pub decomposition: Vec<usize>,
    pub local_components: Vec<usize>,
}

/// A transverse conical curve, combinatorially: what it is made of and how
/// the arithmetic moves it around.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDescription {
    pub components: Vec<usize>,
    pub singular_points: Vec<usize>,
    pub branches: Vec<Branch>,
    pub galois: GaloisAction,
    pub places: Vec<Place>,
}

/// Per-place outcome of the local realizability check for one section class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCheck {
    pub place: String,
    /// Projection of the fixed universal vertex of the restricted section.
    pub fixed_vertex: usize,
    /// Local-point vertices found in its component of the fixed subgraph.
    pub local_witnesses: Vec<usize>,
    pub realizable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalRealizability {
    pub realizable: bool,
    pub places: Vec<LocalCheck>,
}

/// How a component witness is known to have a point at one place: through
/// the oracle, or through an adjacent fixed singular point lying on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEvidence {
    pub place: String,
    pub in_oracle: bool,
    pub adjacent_singular: Option<usize>,
}

/// The vertex certifying a rational point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointWitness {
    /// A Galois-fixed singular point is itself a rational point.
    SingularPoint { vertex: usize, point: usize },
    /// A Galois-fixed component with points everywhere locally; rational by
    /// the local-global principle for conics, taken as an axiom.
    Component { vertex: usize, component: usize, places: Vec<ComponentEvidence> },
}

/// Outcome of the finite-descent decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "PascalCase")]
pub enum DescentVerdict {
    /// The incidence graph admits no section at all.
    NoSection,
    /// Sections exist but none is locally realizable.
    ObstructedEverywhereLocally,
    /// A locally realizable class exists; its fixed vertex certifies a
    /// rational point.
    RationalPoint { witness: PointWitness },
}

/// Validated working form: the incidence graph, the assembled action, and
/// one subgroup per place.
struct Prepared {
    graph: Graph,
    action: GraphAction,
    decompositions: Vec<Subgroup>,
    component_count: usize,
}

impl CurveDescription {
    fn prepare(&self) -> Result<Prepared, DescentError> {
        let nc = self.components.len();
        let np = self.singular_points.len();
        let comp_set: BTreeSet<usize> = self.components.iter().copied().collect();
        if comp_set.len() != nc || !comp_set.iter().copied().eq(0..nc) {
            return Err(DescentError::ComponentsNotDense);
        }
        let point_set: BTreeSet<usize> = self.singular_points.iter().copied().collect();
        if point_set.len() != np || !point_set.iter().copied().eq(0..np) {
            return Err(DescentError::PointsNotDense);
        }
        for (i, b) in self.branches.iter().enumerate() {
            if b.component >= nc {
                return Err(DescentError::BranchUnknownComponent(i, b.component));
            }
            if b.point >= np {
                return Err(DescentError::BranchUnknownPoint(i, b.point));
            }
        }
        let order = self.galois.group.order();
        if self.galois.component_perms.len() != order
            || self.galois.point_perms.len() != order
            || self.galois.branch_perms.len() != order
        {
            return Err(DescentError::GaloisShapeMismatch);
        }

        let vertices: Vec<usize> = (0..nc + np).collect();
        let edges: Vec<Edge> = self
            .branches
            .iter()
            .enumerate()
            .map(|(id, b)| Edge { id, src: b.component, tgt: nc + b.point })
            .collect();
        let graph = Graph::new(vertices, edges);

        let vertex_perms: Vec<Vec<usize>> = (0..order)
            .map(|g| {
                let cp = &self.galois.component_perms[g];
                let pp = &self.galois.point_perms[g];
                if cp.len() != nc || pp.len() != np {
                    return Vec::new();
                }
                cp.iter().copied().chain(pp.iter().map(|&p| nc + p)).collect()
            })
            .collect();
        if vertex_perms.iter().any(|p| p.len() != nc + np) {
            return Err(DescentError::GaloisShapeMismatch);
        }
        let action = GraphAction::new(
            self.galois.group.clone(),
            vertex_perms,
            self.galois.branch_perms.clone(),
        );
        action.validate(&graph)?;

        let mut decompositions = Vec::with_capacity(self.places.len());
        for place in &self.places {
            let subgroup = Subgroup::new(&self.galois.group, place.decomposition.iter().copied())?;
            for &c in &place.local_components {
                if c >= nc {
                    return Err(DescentError::LocalComponentUnknown {
                        place: place.name.clone(),
                        component: c,
                    });
                }
                let fixed = subgroup
                    .members()
                    .iter()
                    .all(|&g| self.galois.component_perms[g][c] == c);
                if !fixed {
                    return Err(DescentError::LocalComponentNotFixed {
                        place: place.name.clone(),
                        component: c,
                    });
                }
            }
            decompositions.push(subgroup);
        }
        Ok(Prepared { graph, action, decompositions, component_count: nc })
    }

    pub fn validate(&self) -> Result<(), DescentError> {
        self.prepare().map(|_| ())
    }

    /// Vertex id of a component in the incidence graph.
    pub fn component_vertex(&self, component: usize) -> usize {
        component
    }

    /// Vertex id of a singular point in the incidence graph.
    pub fn point_vertex(&self, point: usize) -> usize {
        self.components.len() + point
    }
}

impl Prepared {
    fn basepoint(&self) -> usize {
        0
    }

    fn is_point_vertex(&self, v: usize) -> bool {
        v >= self.component_count
    }

    fn local_points(&self, curve: &CurveDescription, place_index: usize) -> BTreeSet<usize> {
        let place = &curve.places[place_index];
        let d = &self.decompositions[place_index];
        let fixed = self.action.fixed_subgraph(&self.graph, d);
        let mut out = BTreeSet::new();
        for &v in &fixed.graph.vertices {
            if self.is_point_vertex(v) || place.local_components.contains(&v) {
                out.insert(v);
            }
        }
        out
    }

    fn local_checks(
        &self,
        curve: &CurveDescription,
        class: &SectionClass,
    ) -> Result<LocalRealizability, DescentError> {
        let mut places = Vec::with_capacity(curve.places.len());
        for (i, place) in curve.places.iter().enumerate() {
            let d = &self.decompositions[i];
            let (sub_action, sub_section) = restrict(&self.action, &class.section, d);
            let center = fixed_universal_vertex(&self.graph, &sub_action, &sub_section)?;
            let w = center.project();
            let fixed = self.action.fixed_subgraph(&self.graph, d);
            let comp = fixed
                .component_of(w)
                .ok_or(SectionError::CenterNotFixed)?;
            let locals = self.local_points(curve, i);
            let witnesses: Vec<usize> = fixed.components[comp]
                .vertices
                .iter()
                .copied()
                .filter(|v| locals.contains(v))
                .collect();
            places.push(LocalCheck {
                place: place.name.clone(),
                fixed_vertex: w,
                realizable: !witnesses.is_empty(),
                local_witnesses: witnesses,
            });
        }
        Ok(LocalRealizability { realizable: places.iter().all(|c| c.realizable), places })
    }
}

/// The incidence graph together with the assembled Galois action on it.
/// Components occupy the low vertex ids, singular points follow; edge `i`
/// runs from the component of branch `i` to its singular point.
pub fn incidence_graph(curve: &CurveDescription) -> Result<(Graph, GraphAction), DescentError> {
    let prepared = curve.prepare()?;
    Ok((prepared.graph, prepared.action))
}

/// Vertices of the fixed subgraph of the place's decomposition group that
/// carry a local point: every fixed singular point, plus the fixed
/// components the oracle lists.
pub fn local_points_at(
    curve: &CurveDescription,
    place_index: usize,
) -> Result<BTreeSet<usize>, DescentError> {
    let prepared = curve.prepare()?;
    if place_index >= curve.places.len() {
        return Err(DescentError::UnknownPlace(place_index));
    }
    Ok(prepared.local_points(curve, place_index))
}

/// Restricts the class representative to each decomposition group, finds
/// its fixed component there, and asks whether that component contains a
/// local point.
pub fn is_locally_realizable(
    curve: &CurveDescription,
    class: &SectionClass,
) -> Result<LocalRealizability, DescentError> {
    let prepared = curve.prepare()?;
    prepared.local_checks(curve, class)
}

/// All section classes of the incidence graph action.
pub fn section_classes(curve: &CurveDescription) -> Result<Vec<SectionClass>, DescentError> {
    let prepared = curve.prepare()?;
    if !prepared.graph.is_connected() {
        return Err(DescentError::NotGeometricallyConnected);
    }
    Ok(sections_enumerate(&prepared.graph, &prepared.action, prepared.basepoint())?)
}

/// Whether some section class is locally realizable: the finite-descent
/// obstruction is empty.
pub fn fin_descent_nonempty(curve: &CurveDescription) -> Result<bool, DescentError> {
    let prepared = curve.prepare()?;
    if !prepared.graph.is_connected() {
        return Err(DescentError::NotGeometricallyConnected);
    }
    let classes = sections_enumerate(&prepared.graph, &prepared.action, prepared.basepoint())?;
    for class in &classes {
        if prepared.local_checks(curve, class)?.realizable {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether every place sees at least one local point.
pub fn adelic_nonempty(curve: &CurveDescription) -> Result<bool, DescentError> {
    let prepared = curve.prepare()?;
    Ok((0..curve.places.len()).all(|i| !prepared.local_points(curve, i).is_empty()))
}

/// Decides the descent verdict and extracts a rational-point witness when
/// one exists.
///
/// When a locally realizable class is found, its fixed component either
/// contains a Galois-fixed singular point (an unconditional witness) or is
/// a single fixed component vertex; in the latter case the component is
/// verified to have a local point at every place — through the oracle or
/// through an adjacent fixed singular point — before being returned. A
/// verification failure is reported as a theorem contradiction, which
/// signals an inconsistent oracle or a bug, not bad input.
pub fn rational_point_witness(curve: &CurveDescription) -> Result<DescentVerdict, DescentError> {
    let prepared = curve.prepare()?;
    if !prepared.graph.is_connected() {
        return Err(DescentError::NotGeometricallyConnected);
    }
    let classes = sections_enumerate(&prepared.graph, &prepared.action, prepared.basepoint())?;
    if classes.is_empty() {
        return Ok(DescentVerdict::NoSection);
    }
    let full = Subgroup::full(&prepared.action.group);
    let fixed_full = prepared.action.fixed_subgraph(&prepared.graph, &full);
    let mut chosen: Option<&SectionClass> = None;
    for class in &classes {
        if prepared.local_checks(curve, class)?.realizable {
            chosen = Some(class);
            break;
        }
    }
    let Some(class) = chosen else {
        return Ok(DescentVerdict::ObstructedEverywhereLocally);
    };

    let component = &fixed_full.components[class.component];
    if let Some(&pt) = component.vertices.iter().find(|&&v| prepared.is_point_vertex(v)) {
        return Ok(DescentVerdict::RationalPoint {
            witness: PointWitness::SingularPoint {
                vertex: pt,
                point: pt - prepared.component_count,
            },
        });
    }

    // no fixed singular point in this component of the fixed subgraph: it
    // is a single component vertex, the conic case
    let c0 = component.vertices[0];
    let mut evidence = Vec::with_capacity(curve.places.len());
    for (i, place) in curve.places.iter().enumerate() {
        let d = &prepared.decompositions[i];
        let fixed = prepared.action.fixed_subgraph(&prepared.graph, d);
        let locals = prepared.local_points(curve, i);
        let comp = fixed.component_of(c0).ok_or_else(|| DescentError::TheoremContradiction {
            place: place.name.clone(),
            reason: format!("fixed component vertex {c0} is not fixed by the decomposition group"),
        })?;
        if !fixed.components[comp].vertices.iter().any(|v| locals.contains(v)) {
            return Err(DescentError::TheoremContradiction {
                place: place.name.clone(),
                reason: format!(
                    "component vertex {c0} sits in a fixed component with no local point"
                ),
            });
        }
        let in_oracle = place.local_components.contains(&c0);
        let adjacent_singular = fixed
            .graph
            .edges
            .iter()
            .filter(|e| e.src == c0)
            .map(|e| e.tgt)
            .filter(|v| locals.contains(v))
            .min();
        if !in_oracle && adjacent_singular.is_none() {
            return Err(DescentError::TheoremContradiction {
                place: place.name.clone(),
                reason: format!(
                    "component vertex {c0} has no local point: not in the oracle and no \
                     adjacent fixed singular point"
                ),
            });
        }
        evidence.push(ComponentEvidence {
            place: place.name.clone(),
            in_oracle,
            adjacent_singular,
        });
    }
    Ok(DescentVerdict::RationalPoint {
        witness: PointWitness::Component { vertex: c0, component: c0, places: evidence },
    })
}
