//! Labeled hypergraphs, the special-vertex marking, and residual statistics.
//!
//! Edges are addressed by *position* (index into [`LabeledHypergraph::edges`])
//! internally; labels are the generator ids exposed to users. For an open
//! neighborhood hypergraph the two coincide.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub label: usize,
    /// Sorted, duplicate-free.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledHypergraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
    positions: HashMap<usize, usize>,
}

impl LabeledHypergraph {
    /// Vertices are `0..vertex_count`. Edges must be nonempty with distinct
    /// labels; parallel edges are allowed.
    pub fn new(vertex_count: usize, edges: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        let mut positions = HashMap::with_capacity(edges.len());
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut out = Vec::with_capacity(edges.len());
        for (pos, (label, mut members)) in edges.into_iter().enumerate() {
            if positions.insert(label, pos).is_some() {
                return Err(Error::Precondition(format!("duplicate edge label {label}")));
            }
            members.sort_unstable();
            members.dedup();
            if members.is_empty() {
                return Err(Error::Precondition(format!("edge {label} is empty")));
            }
            if let Some(&bad) = members.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::Precondition(format!(
                    "edge {label} contains vertex {bad} outside 0..{vertex_count}"
                )));
            }
            for &v in &members {
                incidence[v].push(pos);
            }
            out.push(Edge { label, members });
        }
        Ok(LabeledHypergraph {
            vertex_count,
            edges: out,
            incidence,
            positions,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, pos: usize) -> &Edge {
        &self.edges[pos]
    }

    /// Positions of the edges containing `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn position_of(&self, label: usize) -> Option<usize> {
        self.positions.get(&label).copied()
    }

    /// Converts a set of labels into a covered-flag vector indexed by position.
    pub fn covered_from_labels(&self, labels: &[usize]) -> Result<Vec<bool>> {
        let mut covered = vec![false; self.edges.len()];
        for &label in labels {
            let pos = self
                .position_of(label)
                .ok_or_else(|| Error::Precondition(format!("unknown edge label {label}")))?;
            covered[pos] = true;
        }
        Ok(covered)
    }

    pub fn is_vertex_cover(&self, set: &[usize]) -> bool {
        let mut chosen = vec![false; self.vertex_count];
        for &v in set {
            chosen[v] = true;
        }
        self.edges
            .iter()
            .all(|e| e.members.iter().any(|&v| chosen[v]))
    }

    /// One line per edge, `edge <label>[*]: v1 v2 ...`, special edges starred,
    /// then a `special:` line.
    pub fn render(&self, marking: &SpecialMarking) -> String {
        let mut out = String::new();
        for (pos, e) in self.edges.iter().enumerate() {
            let star = if marking.is_special_edge(pos) {
                "*"
            } else {
                ""
            };
            let members: Vec<String> = e.members.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "edge {}{}: {}", e.label, star, members.join(" "));
        }
        let special: Vec<String> = marking
            .special_vertices()
            .iter()
            .map(usize::to_string)
            .collect();
        let _ = writeln!(out, "special: {}", special.join(" "));
        out
    }
}

/// The fixed set S of special vertices and the edges they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialMarking {
    vertex: Vec<bool>,
    edge: Vec<bool>,
}

impl SpecialMarking {
    /// No special vertices; used for hypergraphs that are not neighborhood
    /// hypergraphs.
    pub fn empty(h: &LabeledHypergraph) -> Self {
        SpecialMarking {
            vertex: vec![false; h.vertex_count()],
            edge: vec![false; h.edge_count()],
        }
    }

    pub fn is_special_vertex(&self, v: usize) -> bool {
        self.vertex[v]
    }

    pub fn is_special_edge(&self, pos: usize) -> bool {
        self.edge[pos]
    }

    pub fn special_vertices(&self) -> Vec<usize> {
        (0..self.vertex.len()).filter(|&v| self.vertex[v]).collect()
    }

    /// Positions of the special edges.
    pub fn special_edges(&self) -> Vec<usize> {
        (0..self.edge.len()).filter(|&p| self.edge[p]).collect()
    }
}

/// Marks, in each edge that contains a vertex of degree 1 (degree taken in
/// the initial hypergraph), the smallest such vertex as special. The edge
/// labeled by a special vertex is a special edge.
pub fn select_special_vertices(h: &LabeledHypergraph, degrees: &[usize]) -> Result<SpecialMarking> {
    if degrees.len() != h.vertex_count() {
        return Err(Error::Precondition(format!(
            "degree list has {} entries for {} vertices",
            degrees.len(),
            h.vertex_count()
        )));
    }
    let mut marking = SpecialMarking::empty(h);
    for e in h.edges() {
        if let Some(&v) = e.members.iter().find(|&&v| degrees[v] == 1) {
            marking.vertex[v] = true;
        }
    }
    for v in marking.special_vertices() {
        let pos = h.position_of(v).ok_or_else(|| {
            Error::Precondition(format!(
                "special vertex {v} generates no edge (not a neighborhood hypergraph?)"
            ))
        })?;
        marking.edge[pos] = true;
    }
    for pos in marking.special_edges() {
        if let Some(&s) = h.edge(pos).members.iter().find(|&&v| marking.vertex[v]) {
            return Err(Error::Precondition(format!(
                "special edge {} contains special vertex {s}; the graph has a K2 component",
                h.edge(pos).label
            )));
        }
    }
    Ok(marking)
}

/// A connected piece of the residual hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    /// Edge positions.
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualStats {
    pub nonspecial_vertices: usize,
    pub special_vertices: usize,
    pub nonspecial_edges: usize,
    pub special_edges: usize,
    pub type_x: usize,
    pub max_degree: usize,
    pub components: Vec<Component>,
}

impl ResidualStats {
    pub fn vertex_count(&self) -> usize {
        self.nonspecial_vertices + self.special_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.nonspecial_edges + self.special_edges
    }
}

/// Per-vertex degree in the residual hypergraph (0 means absent).
pub fn residual_degrees(h: &LabeledHypergraph, covered: &[bool]) -> Vec<usize> {
    let mut deg = vec![0; h.vertex_count()];
    for (pos, e) in h.edges().iter().enumerate() {
        if !covered[pos] {
            for &v in &e.members {
                deg[v] += 1;
            }
        }
    }
    deg
}

/// Recomputes every residual quantity from scratch.
pub fn residual_stats(
    h: &LabeledHypergraph,
    marking: &SpecialMarking,
    covered: &[bool],
) -> ResidualStats {
    let deg = residual_degrees(h, covered);
    let mut stats = ResidualStats {
        nonspecial_vertices: 0,
        special_vertices: 0,
        nonspecial_edges: 0,
        special_edges: 0,
        type_x: 0,
        max_degree: deg.iter().copied().max().unwrap_or(0),
        components: residual_components(h, covered, &deg),
    };
    for (v, &d) in deg.iter().enumerate() {
        if d > 0 {
            if marking.is_special_vertex(v) {
                stats.special_vertices += 1;
            } else {
                stats.nonspecial_vertices += 1;
            }
        }
    }
    for pos in (0..h.edge_count()).filter(|&p| !covered[p]) {
        if marking.is_special_edge(pos) {
            stats.special_edges += 1;
        } else {
            stats.nonspecial_edges += 1;
        }
    }
    stats.type_x = count_type_x(h, marking, &stats.components);
    stats
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Components of the residual; covered edges never link vertices.
fn residual_components(h: &LabeledHypergraph, covered: &[bool], deg: &[usize]) -> Vec<Component> {
    let n = h.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    for (pos, e) in h.edges().iter().enumerate() {
        if covered[pos] {
            continue;
        }
        let root = find(&mut parent, e.members[0]);
        for &v in &e.members[1..] {
            let r = find(&mut parent, v);
            if r != root {
                parent[r] = root;
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut comps: Vec<Component> = Vec::new();
    for (v, &d) in deg.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let r = find(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(Component {
                vertices: Vec::new(),
                edges: Vec::new(),
            });
        }
        comps[slot[r]].vertices.push(v);
    }
    for (pos, e) in h.edges().iter().enumerate() {
        if !covered[pos] {
            let r = find(&mut parent, e.members[0]);
            comps[slot[r]].edges.push(pos);
        }
    }
    comps
}

/// Components that consist of exactly one edge holding at least two
/// non-special vertices. A component of parallel edges does not count.
pub fn count_type_x(
    h: &LabeledHypergraph,
    marking: &SpecialMarking,
    components: &[Component],
) -> usize {
    components
        .iter()
        .filter(|c| c.edges.len() == 1 && nonspecial_members(h, marking, c.edges[0]) >= 2)
        .count()
}

pub(crate) fn nonspecial_members(
    h: &LabeledHypergraph,
    marking: &SpecialMarking,
    pos: usize,
) -> usize {
    h.edge(pos)
        .members
        .iter()
        .filter(|&&v| !marking.is_special_vertex(v))
        .count()
}

/// Structural properties of a residual hypergraph that the greedy analysis
/// relies on. Every field is `true` when the property holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub max_degree: usize,
    pub max_degree_at_most_two: bool,
    /// Distinct present edges share at most one vertex.
    pub linear: bool,
    /// Every present edge holds at most one special vertex.
    pub one_special_per_edge: bool,
    /// Every present vertex lies in at most one present special edge.
    pub one_special_edge_per_vertex: bool,
    /// No present special edge contains a special vertex.
    pub special_edges_avoid_special_vertices: bool,
    /// No neighbor of a special vertex lies in a special edge.
    pub special_neighbors_off_special_edges: bool,
    /// No degree-2 vertex has two or more special neighbors.
    pub degree_two_special_neighbors: bool,
    /// Every present special vertex lies in a single-edge component.
    pub special_vertices_isolated: bool,
}

impl AuditReport {
    /// Conditions that hold on every residual after the first phase.
    pub fn after_phase_one(&self) -> bool {
        self.max_degree_at_most_two
            && self.linear
            && self.special_neighbors_off_special_edges
            && self.degree_two_special_neighbors
    }

    pub fn marking_consistent(&self) -> bool {
        self.one_special_per_edge
            && self.one_special_edge_per_vertex
            && self.special_edges_avoid_special_vertices
    }
}

pub fn structural_audit(
    h: &LabeledHypergraph,
    marking: &SpecialMarking,
    covered: &[bool],
) -> AuditReport {
    let deg = residual_degrees(h, covered);
    let present_edges: Vec<usize> = (0..h.edge_count()).filter(|&p| !covered[p]).collect();
    let max_degree = deg.iter().copied().max().unwrap_or(0);

    let mut linear = true;
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    'outer: for v in (0..h.vertex_count()).filter(|&v| deg[v] >= 2) {
        let inc: Vec<usize> = h
            .incident(v)
            .iter()
            .copied()
            .filter(|&p| !covered[p])
            .collect();
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                if !pairs.insert((a, b)) {
                    linear = false;
                    break 'outer;
                }
            }
        }
    }

    let special_in = |pos: usize| {
        h.edge(pos)
            .members
            .iter()
            .filter(|&&v| marking.is_special_vertex(v))
            .count()
    };
    let one_special_per_edge = present_edges.iter().all(|&p| special_in(p) <= 1);
    let special_edges_avoid_special_vertices = present_edges
        .iter()
        .filter(|&&p| marking.is_special_edge(p))
        .all(|&p| special_in(p) == 0);

    let mut special_edge_count = vec![0usize; h.vertex_count()];
    for &p in present_edges
        .iter()
        .filter(|&&p| marking.is_special_edge(p))
    {
        for &v in &h.edge(p).members {
            special_edge_count[v] += 1;
        }
    }
    let one_special_edge_per_vertex = special_edge_count.iter().all(|&c| c <= 1);

    let present_incident = |v: usize| h.incident(v).iter().copied().filter(move |&p| !covered[p]);

    let mut special_neighbors_off_special_edges = true;
    let mut special_vertices_isolated = true;
    for s in (0..h.vertex_count()).filter(|&v| deg[v] > 0 && marking.is_special_vertex(v)) {
        for p in present_incident(s) {
            for &u in &h.edge(p).members {
                if u != s && special_edge_count[u] > 0 {
                    special_neighbors_off_special_edges = false;
                }
            }
        }
        let isolated = deg[s] == 1
            && present_incident(s).all(|p| h.edge(p).members.iter().all(|&u| deg[u] == 1));
        if !isolated {
            special_vertices_isolated = false;
        }
    }

    let mut degree_two_special_neighbors = true;
    for v in (0..h.vertex_count()).filter(|&v| deg[v] == 2) {
        let mut specials: Vec<usize> = present_incident(v)
            .flat_map(|p| h.edge(p).members.iter().copied())
            .filter(|&u| u != v && marking.is_special_vertex(u))
            .collect();
        specials.sort_unstable();
        specials.dedup();
        if specials.len() >= 2 {
            degree_two_special_neighbors = false;
        }
    }

    AuditReport {
        max_degree,
        max_degree_at_most_two: max_degree <= 2,
        linear,
        one_special_per_edge,
        one_special_edge_per_vertex,
        special_edges_avoid_special_vertices,
        special_neighbors_off_special_edges,
        degree_two_special_neighbors,
        special_vertices_isolated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_onh, Graph};

    fn onh_with_marking(g: &Graph) -> (LabeledHypergraph, SpecialMarking) {
        let h = build_onh(g).unwrap();
        let m = select_special_vertices(&h, &h.degrees()).unwrap();
        (h, m)
    }

    #[test]
    fn special_vertices_of_small_paths() {
        let (h, m) = onh_with_marking(&Graph::path(3));
        assert_eq!(m.special_vertices(), vec![0]);
        assert_eq!(m.special_edges(), vec![h.position_of(0).unwrap()]);
        assert_eq!(h.edge(m.special_edges()[0]).members, vec![1]);

        let (_, m) = onh_with_marking(&Graph::cycle(4));
        assert!(m.special_vertices().is_empty());
        assert!(m.special_edges().is_empty());

        let (h, m) = onh_with_marking(&Graph::path(4));
        assert_eq!(m.special_vertices(), vec![0, 3]);
        let members: Vec<_> = m
            .special_edges()
            .iter()
            .map(|&p| h.edge(p).members.clone())
            .collect();
        assert_eq!(members, vec![vec![1], vec![2]]);
    }

    #[test]
    fn k2_component_is_rejected() {
        let h = build_onh(&Graph::path(2)).unwrap();
        assert!(matches!(
            select_special_vertices(&h, &h.degrees()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn residual_stats_of_p3() {
        let (h, m) = onh_with_marking(&Graph::path(3));
        let s = residual_stats(&h, &m, &[false; 3]);
        assert_eq!(
            (
                s.nonspecial_vertices,
                s.special_vertices,
                s.nonspecial_edges,
                s.special_edges,
                s.type_x,
                s.max_degree
            ),
            (2, 1, 2, 1, 0, 2)
        );
        assert_eq!(s.components.len(), 2);

        let covered = h.covered_from_labels(&[0, 2]).unwrap();
        let s = residual_stats(&h, &m, &covered);
        assert_eq!(
            (
                s.nonspecial_vertices,
                s.special_vertices,
                s.nonspecial_edges,
                s.special_edges,
                s.type_x
            ),
            (1, 1, 1, 0, 0)
        );
    }

    #[test]
    fn star_leaves_form_type_x_component() {
        let (h, m) = onh_with_marking(&Graph::star(3));
        let s = residual_stats(&h, &m, &[false; 4]);
        assert_eq!(s.type_x, 1);
        assert_eq!(s.components.len(), 2);
    }

    #[test]
    fn type_x_counting_rules() {
        // vertices 0,1 non-special; 2 special via its own 1-edge {3}
        let h = LabeledHypergraph::new(
            6,
            vec![
                (10, vec![0, 1]),
                (11, vec![2, 3]),
                (2, vec![4]),
                (12, vec![5, 1]),
                (13, vec![5, 1]),
            ],
        )
        .unwrap();
        let mut m = SpecialMarking::empty(&h);
        m.vertex[2] = true;
        m.edge[2] = true;
        // {0,1} shares 1 with the parallel pair, so cover those two first.
        let covered = vec![false, false, false, true, true];
        assert_eq!(residual_stats(&h, &m, &covered).type_x, 1);
        // {2,3} has only one non-special member.
        let covered = vec![true, false, true, true, true];
        assert_eq!(residual_stats(&h, &m, &covered).type_x, 0);
        // two parallel edges {1,5},{1,5} form one component that is not Type-X.
        let covered = vec![true, true, true, false, false];
        assert_eq!(residual_stats(&h, &m, &covered).type_x, 0);
    }

    #[test]
    fn audit_examples() {
        let (h, m) = onh_with_marking(&Graph::cycle(4));
        let a = structural_audit(&h, &m, &[false; 4]);
        assert!(!a.linear);
        assert_eq!(a.max_degree, 2);

        let (h, m) = onh_with_marking(&Graph::path(3));
        let a = structural_audit(&h, &m, &[false; 3]);
        assert_eq!(a.max_degree, 2);
        assert!(a.linear);
        assert!(a.marking_consistent());

        let a = structural_audit(&h, &m, &[true; 3]);
        assert!(a.after_phase_one() && a.marking_consistent() && a.special_vertices_isolated);
        assert_eq!(a.max_degree, 0);
    }

    #[test]
    fn render_marks_special_edges() {
        let (h, m) = onh_with_marking(&Graph::path(3));
        assert_eq!(
            h.render(&m),
            "edge 0*: 1\nedge 1: 0 2\nedge 2: 1\nspecial: 0\n"
        );
    }

    #[test]
    fn hypergraph_validation() {
        assert!(LabeledHypergraph::new(2, vec![(0, vec![])]).is_err());
        assert!(LabeledHypergraph::new(2, vec![(0, vec![0]), (0, vec![1])]).is_err());
        assert!(LabeledHypergraph::new(2, vec![(0, vec![2])]).is_err());
    }
}
