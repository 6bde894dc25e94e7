//! Small-graph enumeration up to isomorphism.
//!
//! Connected graphs on `n` vertices are grown from those on `n - 1` by adding
//! a vertex with every nonempty neighborhood (removing a non-cut vertex
//! inverts this), then deduplicated by canonical form.

use std::collections::HashSet;

use crate::graph::Graph;

/// Largest order whose upper-triangle adjacency fits in a `u64` code.
pub const MAX_CANONICAL_ORDER: usize = 11;

fn pair_bit(i: usize, j: usize) -> u32 {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    (b * (b - 1) / 2 + a) as u32
}

fn code_under(g: &Graph, position: &[usize]) -> u64 {
    g.edges().into_iter().fold(0u64, |c, (u, v)| {
        c | (1u64 << pair_bit(position[u], position[v]))
    })
}

/// Canonical code: the minimum adjacency code over all relabelings that
/// order vertices by (degree, sorted neighbor degrees). The ordering key is
/// an isomorphism invariant, so isomorphic graphs get equal codes.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.order();
    assert!(
        n <= MAX_CANONICAL_ORDER,
        "canonical codes need n <= {MAX_CANONICAL_ORDER}"
    );
    let key = |v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.sort_by_key(|&v| key(v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in vertices {
        match cells.last_mut() {
            Some(cell) if key(cell[0]) == key(v) => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut position = vec![0; n];
    let mut best = u64::MAX;
    permute_cells(g, &mut cells, 0, &mut order, &mut position, &mut best);
    best
}

fn permute_cells(
    g: &Graph,
    cells: &mut [Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    position: &mut [usize],
    best: &mut u64,
) {
    if cell == cells.len() {
        for (pos, &v) in order.iter().enumerate() {
            position[v] = pos;
        }
        *best = (*best).min(code_under(g, position));
        return;
    }
    let len = cells[cell].len();
    permute_within(g, cells, cell, len, order, position, best);
}

/// Heap's algorithm over the current cell, recursing into the next cell for
/// each arrangement.
fn permute_within(
    g: &Graph,
    cells: &mut [Vec<usize>],
    cell: usize,
    k: usize,
    order: &mut Vec<usize>,
    position: &mut [usize],
    best: &mut u64,
) {
    if k <= 1 {
        let mark = order.len();
        order.extend_from_slice(&cells[cell]);
        permute_cells(g, cells, cell + 1, order, position, best);
        order.truncate(mark);
        return;
    }
    permute_within(g, cells, cell, k - 1, order, position, best);
    for i in 0..k - 1 {
        let j = if k.is_multiple_of(2) { i } else { 0 };
        cells[cell].swap(j, k - 1);
        permute_within(g, cells, cell, k - 1, order, position, best);
    }
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in a deterministic order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_CANONICAL_ORDER);
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for order in 2..=n {
        let prev = order - 1;
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for subset in 1u32..(1 << prev) {
                let mut edges = g.edges();
                edges.extend(
                    (0..prev)
                        .filter(|&v| subset >> v & 1 == 1)
                        .map(|v| (v, prev)),
                );
                let h = Graph::from_edges(order, &edges).expect("extension is simple");
                if seen.insert(canonical_code(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert_eq!(connected_graphs(7).len(), 853);
    }

    #[test]
    fn relabeling_preserves_code() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let perm = [4, 2, 0, 5, 1, 3];
        let edges: Vec<_> = g
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        let h = Graph::from_edges(6, &edges).unwrap();
        assert_eq!(canonical_code(&g), canonical_code(&h));
        assert_ne!(
            canonical_code(&Graph::path(6)),
            canonical_code(&Graph::cycle(6))
        );
    }
}
