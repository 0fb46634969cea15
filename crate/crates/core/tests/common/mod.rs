//! Shared generators for the integration suites: random orientation
//! preserving group actions on graphs and random curve descriptions, built
//! orbit by orbit so validity holds by construction.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use secgraph_core::descent::{Branch, CurveDescription, GaloisAction, Place};
use secgraph_core::{FiniteGroup, Graph, GraphAction, Subgroup};

pub fn group_zoo() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z/2", FiniteGroup::cyclic(2)),
        ("Z/3", FiniteGroup::cyclic(3)),
        ("Z/4", FiniteGroup::cyclic(4)),
        (
            "Z/2xZ/2",
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        ),
        ("S3", FiniteGroup::symmetric(3)),
    ]
}

/// Left cosets of a subgroup, ordered by least representative.
fn left_cosets(group: &FiniteGroup, members: &[usize]) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; group.order()];
    let mut cosets = Vec::new();
    for x in group.elements() {
        if assigned[x] {
            continue;
        }
        let mut coset: Vec<usize> = members.iter().map(|&m| group.mul(x, m)).collect();
        coset.sort_unstable();
        coset.dedup();
        for &y in &coset {
            assigned[y] = true;
        }
        cosets.push(coset);
    }
    cosets
}

/// element -> coset index, for one coset list.
fn coset_index(group: &FiniteGroup, cosets: &[Vec<usize>]) -> Vec<usize> {
    let mut index = vec![0; group.order()];
    for (i, coset) in cosets.iter().enumerate() {
        for &x in coset {
            index[x] = i;
        }
    }
    index
}

/// A disjoint union of coset orbits: a G-set with dense element ids.
struct OrbitSet {
    /// (first id of the orbit, element -> coset index within it)
    orbits: Vec<(usize, Vec<usize>, Vec<Vec<usize>>)>,
    size: usize,
}

impl OrbitSet {
    fn new() -> OrbitSet {
        OrbitSet { orbits: Vec::new(), size: 0 }
    }

    fn push(&mut self, group: &FiniteGroup, stabilizer: &[usize]) {
        let cosets = left_cosets(group, stabilizer);
        let index = coset_index(group, &cosets);
        self.orbits.push((self.size, index, cosets.clone()));
        self.size += cosets.len();
    }

    /// The permutation of ids induced by a group element.
    fn perm(&self, group: &FiniteGroup, g: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size);
        for (base, index, cosets) in &self.orbits {
            for coset in cosets {
                let image = group.mul(g, coset[0]);
                out.push(base + index[image]);
            }
        }
        out
    }

    fn perms(&self, group: &FiniteGroup) -> Vec<Vec<usize>> {
        group.elements().map(|g| self.perm(group, g)).collect()
    }
}

/// One orbit of edges: endpoints chosen for a pair `(u, w)`, multiplicity
/// controlled by a subgroup of the pair stabilizer.
struct EdgeOrbit {
    endpoints: Vec<(usize, usize)>,
    index: Vec<usize>,
    cosets: Vec<Vec<usize>>,
}

fn edge_orbit(
    group: &FiniteGroup,
    vperms: &[Vec<usize>],
    stab_sub: &[usize],
    u: usize,
    w: usize,
) -> EdgeOrbit {
    let cosets = left_cosets(group, stab_sub);
    let index = coset_index(group, &cosets);
    let endpoints = cosets
        .iter()
        .map(|coset| {
            let r = coset[0];
            (vperms[r][u], vperms[r][w])
        })
        .collect();
    EdgeOrbit { endpoints, index, cosets }
}

/// Subgroups of `group` contained in the joint stabilizer of `u` and `w`.
fn stabilizer_subgroups<'a>(
    group: &FiniteGroup,
    subgroups: &'a [Subgroup],
    vperms: &[Vec<usize>],
    u: usize,
    w: usize,
) -> Vec<&'a Subgroup> {
    let stab: Vec<usize> = group
        .elements()
        .filter(|&g| vperms[g][u] == u && vperms[g][w] == w)
        .collect();
    subgroups
        .iter()
        .filter(|k| k.members().iter().all(|m| stab.contains(m)))
        .collect()
}

fn connected(total_v: usize, orbits: &[EdgeOrbit]) -> bool {
    if total_v == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..total_v).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] == x {
            x
        } else {
            let r = find(parent, parent[x]);
            parent[x] = r;
            r
        }
    }
    for orbit in orbits {
        for &(u, w) in &orbit.endpoints {
            let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
            parent[ru.max(rw)] = ru.min(rw);
        }
    }
    (0..total_v).all(|v| find(&mut parent, v) == find(&mut parent, 0))
}

/// A random connected graph with a validated orientation-preserving action
/// of `group`, within the given size bounds.
pub fn random_equivariant_graph(
    rng: &mut ChaCha8Rng,
    group: &FiniteGroup,
    max_vertices: usize,
    max_edges: usize,
) -> (Graph, GraphAction) {
    loop {
        if let Some(found) = try_equivariant_graph(rng, group, max_vertices, max_edges) {
            return found;
        }
    }
}

fn try_equivariant_graph(
    rng: &mut ChaCha8Rng,
    group: &FiniteGroup,
    max_vertices: usize,
    max_edges: usize,
) -> Option<(Graph, GraphAction)> {
    let subgroups = group.subgroups();
    let mut vertices = OrbitSet::new();
    for _ in 0..rng.gen_range(1..=3usize) {
        let h = subgroups.choose(rng).unwrap();
        vertices.push(group, h.members());
        if vertices.size > max_vertices {
            return None;
        }
    }
    let vperms = vertices.perms(group);

    let mut orbits: Vec<EdgeOrbit> = Vec::new();
    let mut total_e = 0;
    for _attempt in 0..60 {
        if connected(vertices.size, &orbits) && (total_e >= max_edges || rng.gen_bool(0.4)) {
            let (graph, action) = assemble(group, &vertices, &vperms, &orbits);
            debug_assert_eq!(action.validate(&graph), Ok(()));
            return Some((graph, action));
        }
        let u = rng.gen_range(0..vertices.size);
        let w = rng.gen_range(0..vertices.size);
        let eligible = stabilizer_subgroups(group, &subgroups, &vperms, u, w);
        let k = eligible.choose(rng).unwrap();
        let orbit = edge_orbit(group, &vperms, k.members(), u, w);
        if total_e + orbit.endpoints.len() > max_edges {
            continue;
        }
        total_e += orbit.endpoints.len();
        orbits.push(orbit);
    }
    None
}

fn assemble(
    group: &FiniteGroup,
    vertices: &OrbitSet,
    vperms: &[Vec<usize>],
    orbits: &[EdgeOrbit],
) -> (Graph, GraphAction) {
    let mut pairs = Vec::new();
    let mut bases = Vec::new();
    for orbit in orbits {
        bases.push(pairs.len());
        pairs.extend_from_slice(&orbit.endpoints);
    }
    let graph = Graph::from_pairs(vertices.size, &pairs);
    let eperms: Vec<Vec<usize>> = group
        .elements()
        .map(|g| {
            let mut perm = Vec::with_capacity(pairs.len());
            for (orbit, &base) in orbits.iter().zip(&bases) {
                for coset in &orbit.cosets {
                    let image = group.mul(g, coset[0]);
                    perm.push(base + orbit.index[image]);
                }
            }
            perm
        })
        .collect();
    (graph, GraphAction::new(group.clone(), vperms.to_vec(), eperms))
}

/// A random curve description over `group`, with a connected incidence
/// graph and consistent place data.
pub fn random_curve(
    rng: &mut ChaCha8Rng,
    group: &FiniteGroup,
    max_components: usize,
    max_points: usize,
    max_places: usize,
) -> CurveDescription {
    loop {
        if let Some(curve) = try_curve(rng, group, max_components, max_points, max_places) {
            return curve;
        }
    }
}

fn try_curve(
    rng: &mut ChaCha8Rng,
    group: &FiniteGroup,
    max_components: usize,
    max_points: usize,
    max_places: usize,
) -> Option<CurveDescription> {
    let subgroups = group.subgroups();
    let mut components = OrbitSet::new();
    for _ in 0..rng.gen_range(1..=2usize) {
        components.push(group, subgroups.choose(rng).unwrap().members());
        if components.size > max_components {
            return None;
        }
    }
    let mut points = OrbitSet::new();
    for _ in 0..rng.gen_range(0..=2usize) {
        points.push(group, subgroups.choose(rng).unwrap().members());
        if points.size > max_points {
            return None;
        }
    }
    if points.size == 0 && components.size > 1 {
        return None;
    }
    let comp_perms = components.perms(group);
    let point_perms = points.perms(group);

    // vertex permutations of the incidence graph, for stabilizer lookups
    let nc = components.size;
    let vperms: Vec<Vec<usize>> = group
        .elements()
        .map(|g| {
            comp_perms[g]
                .iter()
                .copied()
                .chain(point_perms[g].iter().map(|&p| nc + p))
                .collect()
        })
        .collect();

    let mut orbits: Vec<EdgeOrbit> = Vec::new();
    let mut total_branches = 0;
    let mut done = false;
    for _attempt in 0..60 {
        if connected(nc + points.size, &orbits) {
            done = true;
            break;
        }
        if points.size == 0 {
            break;
        }
        let c = rng.gen_range(0..nc);
        let p = nc + rng.gen_range(0..points.size);
        let eligible = stabilizer_subgroups(group, &subgroups, &vperms, c, p);
        let k = eligible.choose(rng).unwrap();
        let orbit = edge_orbit(group, &vperms, k.members(), c, p);
        if total_branches + orbit.endpoints.len() > 4 * max_points.max(1) {
            continue;
        }
        total_branches += orbit.endpoints.len();
        orbits.push(orbit);
    }
    if !done && !connected(nc + points.size, &orbits) {
        return None;
    }

    let mut branches = Vec::new();
    let mut bases = Vec::new();
    for orbit in &orbits {
        bases.push(branches.len());
        for &(c, p) in &orbit.endpoints {
            branches.push(Branch { component: c, point: p - nc });
        }
    }
    let branch_perms: Vec<Vec<usize>> = group
        .elements()
        .map(|g| {
            let mut perm = Vec::with_capacity(branches.len());
            for (orbit, &base) in orbits.iter().zip(&bases) {
                for coset in &orbit.cosets {
                    let image = group.mul(g, coset[0]);
                    perm.push(base + orbit.index[image]);
                }
            }
            perm
        })
        .collect();

    let mut places = Vec::new();
    for i in 0..rng.gen_range(0..=max_places) {
        let d = subgroups.choose(rng).unwrap();
        let fixed_components: Vec<usize> = (0..nc)
            .filter(|&c| d.members().iter().all(|&g| comp_perms[g][c] == c))
            .collect();
        let local_components: Vec<usize> =
            fixed_components.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
        places.push(Place {
            name: format!("p{i}"),
            decomposition: d.members().to_vec(),
            local_components,
        });
    }

    let curve = CurveDescription {
        components: (0..nc).collect(),
        singular_points: (0..points.size).collect(),
        branches,
        galois: GaloisAction {
            group: group.clone(),
            component_perms: comp_perms,
            point_perms,
            branch_perms,
        },
        places,
    };
    debug_assert_eq!(curve.validate(), Ok(()));
    Some(curve)
}
