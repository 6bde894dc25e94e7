//! Simple undirected graphs, the text interchange format, and the
//! brute-force domination oracles.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::LabeledHypergraph;

/// Largest order accepted by the subset-search oracles unless overridden.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;

/// A simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, which makes equality structural and
/// iteration order deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (idx, &(u, v)) in edges.iter().enumerate() {
            g.try_add_edge(u, v)
                .map_err(|msg| Error::Precondition(format!("edge #{idx}: {msg}")))?;
        }
        Ok(g)
    }

    fn try_add_edge(&mut self, u: usize, v: usize) -> std::result::Result<(), String> {
        let n = self.order();
        if u >= n || v >= n {
            let bad = if u >= n { u } else { v };
            return Err(format!("vertex id {bad} out of range (n = {n})"));
        }
        if u == v {
            return Err(format!("self-loop at vertex {u}"));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(format!("duplicate edge {u} {v}")),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    /// Parses the `n m` / `u v` text format. Lines starting with `#` and blank
    /// lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut g = Graph::empty(0);
        let mut seen = 0usize;
        let mut last_line = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::parse(
                    line_no,
                    format!("expected two fields, found {}", fields.len()),
                ));
            }
            let a: usize = fields[0]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("not a vertex id: {:?}", fields[0])))?;
            let b: usize = fields[1]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("not a vertex id: {:?}", fields[1])))?;
            match header {
                None => {
                    header = Some((a, b));
                    g = Graph::empty(a);
                }
                Some((_, m)) => {
                    if seen == m {
                        return Err(Error::parse(
                            line_no,
                            format!("more than the declared {m} edges"),
                        ));
                    }
                    g.try_add_edge(a, b)
                        .map_err(|msg| Error::parse(line_no, msg))?;
                    seen += 1;
                }
            }
        }
        match header {
            None => Err(Error::parse(last_line.max(1), "missing `n m` header")),
            Some((_, m)) if seen < m => Err(Error::parse(
                last_line.max(1),
                format!("declared {m} edges but found {seen}"),
            )),
            Some(_) => Ok(g),
        }
    }

    /// Renders the graph in the format accepted by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.order(), edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nbrs| nbrs.iter().map(|&v| v + shift).collect::<Vec<_>>()),
        );
        Graph { adj }
    }

    /// Open-neighborhood bit masks; requires `n <= 64`.
    pub fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.order() <= 64, "bit masks need n <= 64");
        self.adj
            .iter()
            .map(|nbrs| nbrs.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete edges are valid")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<Vec<usize>>,
    pub min_order: usize,
}

/// Succeeds iff every component has at least three vertices, i.e. the graph
/// has neither isolated vertices nor isolated edges.
pub fn validate_min_component_order(g: &Graph) -> Result<ComponentReport> {
    let components = g.components();
    if let Some(bad) = components.iter().find(|c| c.len() < 3) {
        return Err(Error::Precondition(format!(
            "component {:?} has order {} (every component needs at least 3 vertices)",
            bad,
            bad.len()
        )));
    }
    let min_order = components.iter().map(Vec::len).min().unwrap_or(0);
    Ok(ComponentReport {
        components,
        min_order,
    })
}

/// Open neighborhood hypergraph: one edge per vertex `v`, labeled `v`, with
/// members `N(v)`. Parallel edges are kept.
pub fn build_onh(g: &Graph) -> Result<LabeledHypergraph> {
    if let Some(v) = (0..g.order()).find(|&v| g.degree(v) == 0) {
        return Err(Error::Precondition(format!(
            "vertex {v} is isolated; its open neighborhood would be an empty edge"
        )));
    }
    let edges = (0..g.order())
        .map(|v| (v, g.neighbors(v).to_vec()))
        .collect();
    LabeledHypergraph::new(g.order(), edges)
}

pub fn is_total_dominating_set(g: &Graph, set: &BTreeSet<usize>) -> bool {
    (0..g.order()).all(|v| g.neighbors(v).iter().any(|u| set.contains(u)))
}

pub fn is_dominating_set(g: &Graph, set: &BTreeSet<usize>) -> bool {
    (0..g.order()).all(|v| set.contains(&v) || g.neighbors(v).iter().any(|u| set.contains(u)))
}

/// Minimum total dominating set size by subset search in increasing size.
pub fn brute_force_total_domination_number(g: &Graph, limit: usize) -> Result<usize> {
    if let Some(v) = (0..g.order()).find(|&v| g.degree(v) == 0) {
        return Err(Error::Precondition(format!(
            "vertex {v} is isolated; no total dominating set exists"
        )));
    }
    let masks = g.neighbor_masks_checked(limit)?;
    Ok(smallest_cover(&masks))
}

/// Minimum dominating set size by subset search in increasing size.
pub fn brute_force_domination_number(g: &Graph, limit: usize) -> Result<usize> {
    let mut masks = g.neighbor_masks_checked(limit)?;
    for (v, m) in masks.iter_mut().enumerate() {
        *m |= 1 << v;
    }
    Ok(smallest_cover(&masks))
}

impl Graph {
    fn neighbor_masks_checked(&self, limit: usize) -> Result<Vec<u64>> {
        let n = self.order();
        if n > limit.min(63) {
            return Err(Error::Capability(format!(
                "subset search limited to n <= {}, graph has n = {n}",
                limit.min(63)
            )));
        }
        Ok(self.neighbor_masks())
    }
}

/// Smallest k such that the union of some k of `reach` masks covers every
/// vertex. Subsets of each size are enumerated with Gosper's hack.
fn smallest_cover(reach: &[u64]) -> usize {
    let n = reach.len();
    if n == 0 {
        return 0;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for k in 1..=n {
        let mut subset: u64 = (1u64 << k) - 1;
        while subset <= full {
            let mut covered = 0u64;
            let mut rest = subset;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                covered |= reach[v];
                rest &= rest - 1;
            }
            if covered == full {
                return k;
            }
            let low = subset & subset.wrapping_neg();
            let ripple = subset + low;
            subset = (((ripple ^ subset) >> 2) / low) | ripple;
        }
    }
    // Only reachable when some vertex can never be covered.
    usize::MAX
}
