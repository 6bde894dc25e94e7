//! Independent oracles shared by the integration tests. Nothing here calls
//! the crate's game engine or solver; graphs are the only shared type.

#![allow(dead_code)]

use std::collections::HashMap;

use proptest::prelude::*;
use totdom::Graph;

/// Open neighborhoods as bit masks.
pub fn neighborhoods(g: &Graph) -> Vec<u64> {
    (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect()
}

/// Graph-side rules: a vertex may be chosen when it totally dominates some
/// vertex not yet totally dominated. `dominated` is the set of vertices with
/// a chosen neighbor.
pub struct GraphGame {
    pub n: usize,
    pub nbhd: Vec<u64>,
}

impl GraphGame {
    pub fn new(g: &Graph) -> Self {
        GraphGame {
            n: g.order(),
            nbhd: neighborhoods(g),
        }
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn legal(&self, dominated: u64, v: usize) -> bool {
        self.nbhd[v] & !dominated != 0
    }

    pub fn legal_moves(&self, dominated: u64) -> Vec<usize> {
        (0..self.n).filter(|&v| self.legal(dominated, v)).collect()
    }

    /// Optimal game length, Dominator minimizing and Staller maximizing.
    pub fn value(&self, staller_first: bool) -> usize {
        let mut memo = HashMap::new();
        self.value_from(0, staller_first, &mut memo)
    }

    fn value_from(
        &self,
        dominated: u64,
        staller: bool,
        memo: &mut HashMap<(u64, bool), usize>,
    ) -> usize {
        if dominated == self.full() {
            return 0;
        }
        if let Some(&v) = memo.get(&(dominated, staller)) {
            return v;
        }
        let vals = self
            .legal_moves(dominated)
            .into_iter()
            .map(|v| 1 + self.value_from(dominated | self.nbhd[v], !staller, memo));
        let best = if staller { vals.max() } else { vals.min() }.expect("a legal move exists");
        memo.insert((dominated, staller), best);
        best
    }

    /// Replays `moves` on the graph side. Returns false if a move is illegal
    /// or the game does not end exactly after the last move.
    pub fn replays(&self, moves: &[usize]) -> bool {
        let mut dominated = 0u64;
        for &v in moves {
            if dominated == self.full() || !self.legal(dominated, v) {
                return false;
            }
            dominated |= self.nbhd[v];
        }
        dominated == self.full()
    }
}

/// Transversal game value by plain recursion over the uncovered edge sets,
/// without any memoization. Edges are given as member lists.
pub fn reference_value(edges: &[Vec<usize>], n: usize, staller_first: bool) -> usize {
    fn go(edges: &[Vec<usize>], n: usize, uncovered: &[bool], staller: bool) -> usize {
        if uncovered.iter().all(|&u| !u) {
            return 0;
        }
        let mut best: Option<usize> = None;
        for v in 0..n {
            let hits: Vec<usize> = (0..edges.len())
                .filter(|&p| uncovered[p] && edges[p].contains(&v))
                .collect();
            if hits.is_empty() {
                continue;
            }
            let mut next = uncovered.to_vec();
            for p in hits {
                next[p] = false;
            }
            let val = 1 + go(edges, n, &next, !staller);
            best = Some(match best {
                None => val,
                Some(b) if staller => b.max(val),
                Some(b) => b.min(val),
            });
        }
        best.expect("a legal move exists")
    }
    go(edges, n, &vec![true; edges.len()], staller_first)
}

/// The open neighborhood hypergraph written out directly from the graph.
pub fn neighborhood_edges(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect()
}

/// Connected graph on `n` vertices from a parent list and extra edges.
pub fn connected_from(n: usize, parents: &[usize], extra: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1] % v, v)).collect();
    for &(a, b) in extra {
        let (a, b) = (a % n, b % n);
        if a != b && !edges.contains(&(a, b)) && !edges.contains(&(b, a)) {
            edges.push((a, b));
        }
    }
    Graph::from_edges(n, &edges).expect("simple graph")
}

/// Connected graph with `lo..=hi` vertices.
pub fn arb_connected(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(0usize..64, n - 1),
            proptest::collection::vec((0usize..64, 0usize..64), 0..=n),
        )
            .prop_map(|(n, parents, extra)| connected_from(n, &parents, &extra))
    })
}

/// One or two components, each with at least three vertices.
pub fn arb_graph(max_component: usize) -> impl Strategy<Value = Graph> {
    (
        arb_connected(3, max_component),
        proptest::option::of(arb_connected(3, max_component)),
    )
        .prop_map(|(a, b)| match b {
            Some(b) => a.disjoint_union(&b),
            None => a,
        })
}

/// Writes `g` to a fresh temporary file.
pub fn graph_file(g: &Graph) -> tempfile::NamedTempFile {
    use std::io::Write;
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(g.to_text().as_bytes()).expect("write graph");
    f
}
