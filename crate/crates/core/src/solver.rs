//! Exact minimax values of the transversal game and the longest game a
//! Staller can force against the greedy Dominator.
//!
//! Both searches key positions on the set of uncovered edges (as a bit mask
//! over edge positions) together with the player to move; legality and all
//! future play depend on nothing else.

use rustc_hash::FxHashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{play_game, Board, Player, Trace};
use crate::hypergraph::LabeledHypergraph;
use crate::potential::WeightScheme;
use crate::strategy::{Greedy, Scripted};

pub const DEFAULT_EXACT_EDGE_LIMIT: usize = 22;
pub const DEFAULT_WORST_EDGE_LIMIT: usize = 26;

/// Above this many edges the exact solver switches from a flat table to a
/// hash map.
const FLAT_TABLE_MAX_EDGES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub value: usize,
    pub best_first_moves: Vec<usize>,
    pub explored_states: usize,
    pub first: Player,
}

/// Bit mask of the edges containing each vertex.
fn incidence_masks(h: &LabeledHypergraph) -> Vec<u64> {
    (0..h.vertex_count())
        .map(|v| h.incident(v).iter().fold(0u64, |m, &p| m | (1 << p)))
        .collect()
}

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

enum Memo {
    Flat(Vec<u8>),
    Sparse(FxHashMap<(u64, bool), u8>),
}

const UNKNOWN: u8 = u8::MAX;

impl Memo {
    fn new(m: usize) -> Self {
        if m <= FLAT_TABLE_MAX_EDGES {
            Memo::Flat(vec![UNKNOWN; 2usize << m])
        } else {
            Memo::Sparse(FxHashMap::default())
        }
    }

    fn get(&self, mask: u64, staller: bool) -> Option<u8> {
        match self {
            Memo::Flat(t) => {
                let x = t[((mask as usize) << 1) | staller as usize];
                (x != UNKNOWN).then_some(x)
            }
            Memo::Sparse(t) => t.get(&(mask, staller)).copied(),
        }
    }

    fn put(&mut self, mask: u64, staller: bool, value: u8) {
        match self {
            Memo::Flat(t) => t[((mask as usize) << 1) | staller as usize] = value,
            Memo::Sparse(t) => {
                t.insert((mask, staller), value);
            }
        }
    }
}

struct ExactSearch {
    inc: Vec<u64>,
    memo: Memo,
    explored: usize,
}

impl ExactSearch {
    /// Remaining game length under optimal play from `uncovered`.
    fn value(&mut self, uncovered: u64, staller: bool) -> u8 {
        if uncovered == 0 {
            return 0;
        }
        if let Some(v) = self.memo.get(uncovered, staller) {
            return v;
        }
        let mut children: Vec<u64> = self
            .inc
            .iter()
            .filter(|&&m| m & uncovered != 0)
            .map(|&m| uncovered & !m)
            .collect();
        children.sort_unstable();
        children.dedup();
        let mut best: Option<u8> = None;
        for child in children {
            let val = 1 + self.value(child, !staller);
            best = Some(match best {
                None => val,
                Some(b) if staller => b.max(val),
                Some(b) => b.min(val),
            });
            if !staller && val == 1 {
                break;
            }
        }
        let best = best.expect("nonempty uncovered set has a legal move");
        self.memo.put(uncovered, staller, best);
        self.explored += 1;
        best
    }
}

/// Exact game length when both sides play optimally: Dominator minimizes and
/// Staller maximizes the number of moves.
pub fn solve_exact_game(
    h: &LabeledHypergraph,
    first: Player,
    edge_limit: usize,
) -> Result<SolveResult> {
    let m = h.edge_count();
    if m > edge_limit.min(64) {
        return Err(Error::Capability(format!(
            "exact solver limited to {} edges, hypergraph has {m}",
            edge_limit.min(64)
        )));
    }
    let mut search = ExactSearch {
        inc: incidence_masks(h),
        memo: Memo::new(m),
        explored: 0,
    };
    let root = full_mask(m);
    let staller = first == Player::Staller;
    let value = search.value(root, staller) as usize;
    let mut best_first_moves = Vec::new();
    for v in 0..h.vertex_count() {
        let hit = search.inc[v] & root;
        if hit != 0 && 1 + search.value(root & !hit, !staller) as usize == value {
            best_first_moves.push(v);
        }
    }
    Ok(SolveResult {
        value,
        best_first_moves,
        explored_states: search.explored,
        first,
    })
}

/// Dominator-start and Staller-start values.
pub fn solve_both(h: &LabeledHypergraph, edge_limit: usize) -> Result<(SolveResult, SolveResult)> {
    Ok((
        solve_exact_game(h, Player::Dominator, edge_limit)?,
        solve_exact_game(h, Player::Staller, edge_limit)?,
    ))
}

/// Residual weight as a function of the uncovered-edge mask.
///
/// A present edge is a lone component exactly when every edge meeting it is
/// covered, so the whole weight reduces to bit operations on precomputed
/// masks.
struct MaskWeights {
    /// Edges through each vertex.
    inc: Vec<u64>,
    /// Vertices of each edge.
    members: Vec<u64>,
    /// Edges sharing a vertex with each edge, itself included.
    touching: Vec<u64>,
    special_vertex: Vec<bool>,
    special_edges: u64,
    /// Edges with at least two non-special members.
    wide: u64,
    scheme: WeightScheme,
}

impl MaskWeights {
    fn new(board: &Board, scheme: &WeightScheme) -> Self {
        let h = &board.hypergraph;
        assert!(
            h.vertex_count() <= 64,
            "mask weights need at most 64 vertices"
        );
        let inc = incidence_masks(h);
        let touching = h
            .edges()
            .iter()
            .map(|e| e.members.iter().fold(0u64, |m, &u| m | inc[u]))
            .collect();
        let mut special_edges = 0u64;
        let mut wide = 0u64;
        for p in 0..h.edge_count() {
            if board.marking.is_special_edge(p) {
                special_edges |= 1 << p;
            }
            let nonspecial = h
                .edge(p)
                .members
                .iter()
                .filter(|&&u| !board.marking.is_special_vertex(u))
                .count();
            if nonspecial >= 2 {
                wide |= 1 << p;
            }
        }
        let members = h
            .edges()
            .iter()
            .map(|e| e.members.iter().fold(0u64, |m, &u| m | (1 << u)))
            .collect();
        MaskWeights {
            inc,
            members,
            touching,
            special_vertex: (0..h.vertex_count())
                .map(|v| board.marking.is_special_vertex(v))
                .collect(),
            special_edges,
            wide,
            scheme: *scheme,
        }
    }

    #[cfg(test)]
    fn weight(&self, mask: u64) -> i64 {
        let s = &self.scheme;
        let mut f = 0;
        for (v, &m) in self.inc.iter().enumerate() {
            if m & mask != 0 {
                f += if self.special_vertex[v] {
                    s.special_vertex
                } else {
                    s.vertex
                };
            }
        }
        let special = (mask & self.special_edges).count_ones() as i64;
        let plain = (mask & !self.special_edges).count_ones() as i64;
        f += s.special_edge * special + s.edge * plain;
        f - s.type_x * self.lone_wide_edges(mask, u64::MAX)
    }

    fn lone_wide_edges(&self, mask: u64, within: u64) -> i64 {
        let mut rest = mask & within & self.wide;
        let mut count = 0;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.touching[p] & mask == 1 << p {
                count += 1;
            }
        }
        count
    }

    /// Weight drop of covering `hit` (nonempty, within `mask`). Only edges
    /// meeting `hit` can change status, so only those are inspected.
    fn decrease(&self, mask: u64, hit: u64) -> i64 {
        let s = &self.scheme;
        let after = mask & !hit;
        let special = (hit & self.special_edges).count_ones() as i64;
        let plain = (hit & !self.special_edges).count_ones() as i64;
        let mut d = s.special_edge * special + s.edge * plain;
        let mut near = 0u64;
        let mut vertices = 0u64;
        let mut rest = hit;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            near |= self.touching[p];
            vertices |= self.members[p];
        }
        while vertices != 0 {
            let u = vertices.trailing_zeros() as usize;
            vertices &= vertices - 1;
            if self.inc[u] & after == 0 {
                d += if self.special_vertex[u] {
                    s.special_vertex
                } else {
                    s.vertex
                };
            }
        }
        d - s.type_x * (self.lone_wide_edges(mask, near) - self.lone_wide_edges(after, near))
    }

    /// Greedy choice: largest decrease, smallest id on ties.
    fn greedy(&self, mask: u64) -> usize {
        let mut best: Option<(i64, usize)> = None;
        for (v, &m) in self.inc.iter().enumerate() {
            let hit = m & mask;
            if hit != 0 {
                let d = self.decrease(mask, hit);
                if best.is_none_or(|(bd, _)| d > bd) {
                    best = Some((d, v));
                }
            }
        }
        best.expect("nonempty residual has a legal move").1
    }
}

struct WorstSearch {
    weights: MaskWeights,
    dominator_memo: FxHashMap<u64, u8>,
    staller_memo: FxHashMap<u64, u8>,
}

impl WorstSearch {
    /// Longest remaining game against greedy from `mask`.
    fn remaining(&mut self, mask: u64, staller: bool) -> u8 {
        if mask == 0 {
            return 0;
        }
        let memo = if staller {
            &self.staller_memo
        } else {
            &self.dominator_memo
        };
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let value = if staller {
            self.best_staller_move(mask).1
        } else {
            let v = self.weights.greedy(mask);
            1 + self.remaining(mask & !self.weights.inc[v], true)
        };
        let memo = if staller {
            &mut self.staller_memo
        } else {
            &mut self.dominator_memo
        };
        memo.insert(mask, value);
        value
    }

    /// The smallest vertex among those maximizing the remaining length.
    fn best_staller_move(&mut self, mask: u64) -> (usize, u8) {
        let mut best: Option<(usize, u8)> = None;
        let mut seen: Vec<u64> = Vec::new();
        for v in 0..self.weights.inc.len() {
            let hit = self.weights.inc[v] & mask;
            if hit == 0 || seen.contains(&hit) {
                continue;
            }
            seen.push(hit);
            let val = 1 + self.remaining(mask & !hit, false);
            if best.is_none_or(|(_, b)| val > b) {
                best = Some((v, val));
            }
        }
        best.expect("nonempty residual has a legal move")
    }
}

fn check_worst_limit(board: &Board, edge_limit: usize) -> Result<()> {
    let m = board.hypergraph.edge_count();
    let limit = edge_limit.min(64);
    if m > limit || board.hypergraph.vertex_count() > 64 {
        return Err(Error::Capability(format!(
            "worst-case Staller search limited to {limit} edges, hypergraph has {m}"
        )));
    }
    Ok(())
}

impl WorstSearch {
    fn new(board: &Board, scheme: &WeightScheme) -> Self {
        WorstSearch {
            weights: MaskWeights::new(board, scheme),
            dominator_memo: FxHashMap::default(),
            staller_memo: FxHashMap::default(),
        }
    }

    fn trace(&mut self, board: &Arc<Board>, first: Player) -> Result<Trace> {
        let scheme = self.weights.scheme;
        let mut mask = full_mask(board.hypergraph.edge_count());
        let mut staller = first == Player::Staller;
        let value = self.remaining(mask, staller) as usize;
        let mut staller_line = Vec::new();
        while mask != 0 {
            let v = if staller {
                let (v, _) = self.best_staller_move(mask);
                staller_line.push(v);
                v
            } else {
                self.weights.greedy(mask)
            };
            mask &= !self.weights.inc[v];
            staller = !staller;
        }
        let trace = play_game(
            board,
            &mut Greedy { scheme },
            &mut Scripted::new("worst", staller_line),
            first,
            &scheme,
        )?;
        if trace.length != value {
            return Err(Error::Internal(format!(
                "worst-case line replays to {} moves, search value {value}",
                trace.length
            )));
        }
        Ok(trace)
    }
}

/// The longest game Staller can force when Dominator plays greedily, as a
/// full trace. Among longest lines the lexicographically least is returned.
pub fn worst_staller_vs_greedy(
    board: &Arc<Board>,
    scheme: &WeightScheme,
    first: Player,
    edge_limit: usize,
) -> Result<Trace> {
    check_worst_limit(board, edge_limit)?;
    WorstSearch::new(board, scheme).trace(board, first)
}

/// Both starts of [`worst_staller_vs_greedy`], Dominator start first, sharing
/// one search table.
pub fn worst_staller_traces(
    board: &Arc<Board>,
    scheme: &WeightScheme,
    edge_limit: usize,
) -> Result<[Trace; 2]> {
    check_worst_limit(board, edge_limit)?;
    let mut search = WorstSearch::new(board, scheme);
    Ok([
        search.trace(board, Player::Dominator)?,
        search.trace(board, Player::Staller)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_onh, Graph};

    fn solve(g: &Graph, first: Player) -> usize {
        solve_exact_game(&build_onh(g).unwrap(), first, DEFAULT_EXACT_EDGE_LIMIT)
            .unwrap()
            .value
    }

    #[test]
    fn spot_values() {
        assert_eq!(solve(&Graph::path(3), Player::Dominator), 2);
        assert_eq!(solve(&Graph::path(3), Player::Staller), 2);
        assert_eq!(solve(&Graph::path(4), Player::Dominator), 3);
        assert_eq!(solve(&Graph::path(4), Player::Staller), 3);
        assert_eq!(solve(&Graph::cycle(4), Player::Dominator), 2);
        assert_eq!(solve(&Graph::star(3), Player::Dominator), 2);
    }

    #[test]
    fn best_first_moves_achieve_value() {
        let h = build_onh(&Graph::path(4)).unwrap();
        let r = solve_exact_game(&h, Player::Dominator, 22).unwrap();
        assert!(!r.best_first_moves.is_empty());
        assert!(r.explored_states > 0);
        let h = build_onh(&Graph::star(3)).unwrap();
        let r = solve_exact_game(&h, Player::Dominator, 22).unwrap();
        // playing a leaf covers N(center); the center is then forced: 2 moves.
        assert_eq!(r.best_first_moves, vec![0, 1, 2, 3]);
    }

    #[test]
    fn limits_are_enforced() {
        let h = build_onh(&Graph::cycle(23)).unwrap();
        assert!(matches!(
            solve_exact_game(&h, Player::Dominator, 22),
            Err(Error::Capability(_))
        ));
        let b = Arc::new(Board::from_graph(&Graph::cycle(27)).unwrap());
        assert!(matches!(
            worst_staller_vs_greedy(&b, &WeightScheme::STANDARD, Player::Dominator, 26),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn worst_staller_examples() {
        let p = WeightScheme::STANDARD;
        let run = |g: &Graph, first| {
            let b = Arc::new(Board::from_graph(g).unwrap());
            worst_staller_vs_greedy(&b, &p, first, DEFAULT_WORST_EDGE_LIMIT).unwrap()
        };
        let t = run(&Graph::path(3), Player::Dominator);
        assert_eq!(t.length, 2);
        assert_eq!(t.decreases(), vec![37, 29]);
        assert!(run(&Graph::path(4), Player::Dominator).length <= 3);
        let t = run(&Graph::star(3), Player::Dominator);
        assert_eq!(t.length, 2);
        assert_eq!(t.turns[0].vertex, 0);
        assert_eq!(t.staller, "worst");
        let t = run(&Graph::path(4), Player::Staller);
        assert_eq!(t.length, 3);
        let b = Arc::new(Board::from_graph(&Graph::cycle(7)).unwrap());
        let both = worst_staller_traces(&b, &p, 26).unwrap();
        assert_eq!(both[0], run(&Graph::cycle(7), Player::Dominator));
        assert_eq!(both[1], run(&Graph::cycle(7), Player::Staller));
    }

    #[test]
    fn mask_weights_match_state_weights() {
        use crate::game::GameState;
        use crate::strategy::greedy_dominator_move;
        let p = WeightScheme::STANDARD;
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (2, 5),
                (5, 6),
                (6, 7),
                (1, 8),
            ],
        )
        .unwrap();
        let b = Arc::new(Board::from_graph(&g).unwrap());
        let w = MaskWeights::new(&b, &p);
        for bits in 0u64..(1 << 9) {
            let covered: Vec<bool> = (0..9).map(|i| bits >> i & 1 == 1).collect();
            let s = GameState::with_covered(Arc::clone(&b), covered, Player::Dominator).unwrap();
            let mask = !bits & full_mask(9);
            assert_eq!(w.weight(mask), s.weight(&p));
            for v in s.legal_moves() {
                let d = crate::potential::move_decrease(&s, v, &p).unwrap();
                assert_eq!(w.decrease(mask, w.inc[v] & mask), d);
            }
            if mask != 0 {
                assert_eq!(Ok(w.greedy(mask)), greedy_dominator_move(&s, &p));
            }
        }
    }

    #[test]
    fn sparse_memo_agrees_with_flat_table() {
        let h = build_onh(&Graph::cycle(9)).unwrap();
        let mut flat = ExactSearch {
            inc: incidence_masks(&h),
            memo: Memo::new(9),
            explored: 0,
        };
        let mut sparse = ExactSearch {
            inc: incidence_masks(&h),
            memo: Memo::Sparse(FxHashMap::default()),
            explored: 0,
        };
        for staller in [false, true] {
            assert_eq!(
                flat.value(full_mask(9), staller),
                sparse.value(full_mask(9), staller)
            );
        }
    }
}
