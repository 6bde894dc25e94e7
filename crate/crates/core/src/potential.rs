//! The weight function on residual hypergraphs, the decrease caused by a
//! move, and the post-hoc phase partition of a finished game.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::GameState;
use crate::hypergraph::{nonspecial_members, residual_stats, ResidualStats};

/// Decrease a Dominator move must reach on every odd turn so far for the
/// turn to stay in phase 1.
pub const PHASE_ONE_THRESHOLD: i64 = 40;
pub const PHASE_TWO_THRESHOLD: i64 = 38;

/// Coefficients of the residual weight
/// `vertex·n_h + special_vertex·n_s + edge·e_h + special_edge·e_s − type_x·x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightScheme {
    pub vertex: i64,
    pub special_vertex: i64,
    pub edge: i64,
    pub special_edge: i64,
    pub type_x: i64,
}

impl Default for WeightScheme {
    fn default() -> Self {
        WeightScheme::STANDARD
    }
}

impl WeightScheme {
    pub const STANDARD: WeightScheme = WeightScheme {
        vertex: 13,
        special_vertex: 7,
        edge: 9,
        special_edge: 15,
        type_x: 7,
    };

    pub fn new(
        vertex: i64,
        special_vertex: i64,
        edge: i64,
        special_edge: i64,
        type_x: i64,
    ) -> Result<Self> {
        let s = WeightScheme {
            vertex,
            special_vertex,
            edge,
            special_edge,
            type_x,
        };
        if [vertex, special_vertex, edge, special_edge, type_x]
            .iter()
            .any(|&w| w < 0)
        {
            return Err(Error::Usage(format!(
                "weights must be non-negative, got {s:?}"
            )));
        }
        Ok(s)
    }

    pub fn is_standard(&self) -> bool {
        *self == WeightScheme::STANDARD
    }

    pub fn scaled(&self, factor: i64) -> WeightScheme {
        WeightScheme {
            vertex: self.vertex * factor,
            special_vertex: self.special_vertex * factor,
            edge: self.edge * factor,
            special_edge: self.special_edge * factor,
            type_x: self.type_x * factor,
        }
    }

    fn vertex_weight(&self, special: bool) -> i64 {
        if special {
            self.special_vertex
        } else {
            self.vertex
        }
    }

    fn edge_weight(&self, special: bool) -> i64 {
        if special {
            self.special_edge
        } else {
            self.edge
        }
    }
}

pub fn weight_of_residual(stats: &ResidualStats, scheme: &WeightScheme) -> i64 {
    scheme.vertex * stats.nonspecial_vertices as i64
        + scheme.special_vertex * stats.special_vertices as i64
        + scheme.edge * stats.nonspecial_edges as i64
        + scheme.special_edge * stats.special_edges as i64
        - scheme.type_x * stats.type_x as i64
}

/// Weight drop caused by playing `v`, evaluated locally around `v`.
///
/// Only the edges through `v`, their members, and edges that lose their last
/// neighbor are touched; [`move_decrease_by_recomputation`] is the reference.
pub fn move_decrease(state: &GameState, v: usize, scheme: &WeightScheme) -> Result<i64> {
    let h = state.hypergraph();
    let marking = state.marking();
    let deg = state.degrees();
    let covered = state.covered();

    let removed: Vec<usize> = h
        .incident(v)
        .iter()
        .copied()
        .filter(|&p| !covered[p])
        .collect();
    if removed.is_empty() {
        return Err(Error::IllegalMove { vertex: v });
    }

    let mut d: i64 = removed
        .iter()
        .map(|&p| scheme.edge_weight(marking.is_special_edge(p)))
        .sum();

    let mut hits: Vec<usize> = removed
        .iter()
        .flat_map(|&p| h.edge(p).members.iter().copied())
        .collect();
    hits.sort_unstable();
    let mut runs: Vec<(usize, usize)> = Vec::with_capacity(hits.len());
    for u in hits {
        match runs.last_mut() {
            Some((last, c)) if *last == u => *c += 1,
            _ => runs.push((u, 1)),
        }
    }
    let hits_of = |u: usize| {
        runs.binary_search_by_key(&u, |&(w, _)| w)
            .map_or(0, |i| runs[i].1)
    };

    for &(u, c) in &runs {
        if deg[u] as usize == c {
            d += scheme.vertex_weight(marking.is_special_vertex(u));
        }
    }

    // v's component was a lone edge: it disappears entirely.
    if removed.len() == 1 {
        let e = &h.edge(removed[0]).members;
        if e.iter().all(|&u| deg[u] == 1) && nonspecial_members(h, marking, removed[0]) >= 2 {
            d -= scheme.type_x;
        }
    }

    // Edges left as the only edge of all their members become new lone edges.
    let mut fresh: Vec<usize> = Vec::new();
    for &(u, c) in &runs {
        if deg[u] as usize != c + 1 {
            continue;
        }
        let Some(f) = h
            .incident(u)
            .iter()
            .copied()
            .find(|&p| !covered[p] && !removed.contains(&p))
        else {
            continue;
        };
        let isolated = h
            .edge(f)
            .members
            .iter()
            .all(|&w| deg[w] as usize - hits_of(w) == 1);
        if isolated && nonspecial_members(h, marking, f) >= 2 {
            fresh.push(f);
        }
    }
    fresh.sort_unstable();
    fresh.dedup();
    d += scheme.type_x * fresh.len() as i64;
    Ok(d)
}

/// Weight before minus weight after, both computed from scratch.
pub fn move_decrease_by_recomputation(
    state: &GameState,
    v: usize,
    scheme: &WeightScheme,
) -> Result<i64> {
    if !state.is_legal(v) {
        return Err(Error::IllegalMove { vertex: v });
    }
    let h = state.hypergraph();
    let before = weight_of_residual(&residual_stats(h, state.marking(), state.covered()), scheme);
    let mut after_cover = state.covered().to_vec();
    for &p in h.incident(v) {
        after_cover[p] = true;
    }
    let after = weight_of_residual(&residual_stats(h, state.marking(), &after_cover), scheme);
    Ok(before - after)
}

/// Turn-to-phase assignment for turns `1..=j*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhasePartition {
    /// `phase_of[i - 1]` is the phase (1..=4) of turn `i`.
    pub phase_of: Vec<u8>,
}

impl PhasePartition {
    pub fn len(&self) -> usize {
        self.phase_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phase_of.is_empty()
    }

    /// Turn indices (1-based) of phase `k`.
    pub fn turns(&self, k: u8) -> Vec<usize> {
        (1..=self.phase_of.len())
            .filter(|&i| self.phase_of[i - 1] == k)
            .collect()
    }

    pub fn first(&self, k: u8) -> Option<usize> {
        self.turns(k).first().copied()
    }

    /// `b_k`: the last turn of phase `k`, or `b_{k-1}` when phase `k` is
    /// empty, with `b_0 = 0`.
    pub fn last(&self, k: u8) -> usize {
        if k == 0 {
            return 0;
        }
        self.turns(k)
            .last()
            .copied()
            .unwrap_or_else(|| self.last(k - 1))
    }
}

/// Phase 1: every odd turn so far decreased by at least 40. Phase 2: at least
/// 38. Afterwards the phase is 3 while the residual before the turn has a
/// vertex of degree two or more, and 4 once it is a set of disjoint edges.
pub fn classify_phases(decreases: &[i64], max_degrees: &[usize]) -> Result<PhasePartition> {
    if decreases.len() != max_degrees.len() {
        return Err(Error::Internal(format!(
            "{} decreases but {} degree entries",
            decreases.len(),
            max_degrees.len()
        )));
    }
    let mut odd_ge_40 = true;
    let mut odd_ge_38 = true;
    let mut phase_of = Vec::with_capacity(decreases.len());
    for (idx, (&d, &delta)) in decreases.iter().zip(max_degrees).enumerate() {
        let turn = idx + 1;
        if turn % 2 == 1 {
            odd_ge_40 &= d >= PHASE_ONE_THRESHOLD;
            odd_ge_38 &= d >= PHASE_TWO_THRESHOLD;
        }
        let phase = if odd_ge_40 {
            1
        } else if odd_ge_38 {
            2
        } else if delta >= 2 {
            3
        } else if delta == 1 {
            4
        } else {
            return Err(Error::Internal(format!(
                "turn {turn} played on an empty residual"
            )));
        };
        phase_of.push(phase);
    }
    Ok(PhasePartition { phase_of })
}
