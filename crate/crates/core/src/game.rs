//! The transversal game on a labeled hypergraph. Played on an open
//! neighborhood hypergraph it is the total domination game on the graph.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_onh, Graph};
use crate::hypergraph::{
    residual_stats, select_special_vertices, LabeledHypergraph, ResidualStats, SpecialMarking,
};
use crate::potential::{
    classify_phases, move_decrease, weight_of_residual, PhasePartition, WeightScheme,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Dominator,
    Staller,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Dominator => Player::Staller,
            Player::Staller => Player::Dominator,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Dominator => "dominator",
            Player::Staller => "staller",
        })
    }
}

/// The immutable part of a game: the hypergraph and its special marking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Board {
    pub hypergraph: LabeledHypergraph,
    pub marking: SpecialMarking,
}

impl Board {
    pub fn new(hypergraph: LabeledHypergraph, marking: SpecialMarking) -> Self {
        Board {
            hypergraph,
            marking,
        }
    }

    /// Open neighborhood hypergraph of `g` with special vertices selected.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let h = build_onh(g)?;
        let marking = select_special_vertices(&h, &h.degrees())?;
        Ok(Board::new(h, marking))
    }

    /// A hypergraph without special vertices.
    pub fn unmarked(h: LabeledHypergraph) -> Self {
        let marking = SpecialMarking::empty(&h);
        Board::new(h, marking)
    }
}

/// Position in a game. Cloning is cheap relative to a move's work; moves
/// return new states.
#[derive(Clone, Debug)]
pub struct GameState {
    board: Arc<Board>,
    covered: Vec<bool>,
    degree: Vec<u32>,
    uncovered: usize,
    moves: Vec<usize>,
    next: Player,
}

impl GameState {
    pub fn new(board: Arc<Board>, first: Player) -> Self {
        let h = &board.hypergraph;
        let degree = h.degrees().into_iter().map(|d| d as u32).collect();
        let uncovered = h.edge_count();
        GameState {
            covered: vec![false; uncovered],
            degree,
            uncovered,
            moves: Vec::new(),
            next: first,
            board,
        }
    }

    /// State with the given edges (by position) already covered and no move
    /// history.
    pub fn with_covered(board: Arc<Board>, covered: Vec<bool>, next: Player) -> Result<Self> {
        let h = &board.hypergraph;
        if covered.len() != h.edge_count() {
            return Err(Error::Precondition(format!(
                "covered set has {} flags for {} edges",
                covered.len(),
                h.edge_count()
            )));
        }
        let degree = crate::hypergraph::residual_degrees(h, &covered)
            .into_iter()
            .map(|d| d as u32)
            .collect();
        let uncovered = covered.iter().filter(|&&c| !c).count();
        Ok(GameState {
            covered,
            degree,
            uncovered,
            moves: Vec::new(),
            next,
            board,
        })
    }

    pub fn board(&self) -> &Arc<Board> {
        &self.board
    }

    pub fn hypergraph(&self) -> &LabeledHypergraph {
        &self.board.hypergraph
    }

    pub fn marking(&self) -> &SpecialMarking {
        &self.board.marking
    }

    /// Covered flags indexed by edge position.
    pub fn covered(&self) -> &[bool] {
        &self.covered
    }

    pub fn covered_labels(&self) -> Vec<usize> {
        let h = self.hypergraph();
        let mut labels: Vec<usize> = (0..h.edge_count())
            .filter(|&p| self.covered[p])
            .map(|p| h.edge(p).label)
            .collect();
        labels.sort_unstable();
        labels
    }

    /// Residual degree of every vertex.
    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn moves(&self) -> &[usize] {
        &self.moves
    }

    pub fn next_player(&self) -> Player {
        self.next
    }

    pub fn uncovered_count(&self) -> usize {
        self.uncovered
    }

    pub fn is_over(&self) -> bool {
        self.uncovered == 0
    }

    pub fn is_legal(&self, v: usize) -> bool {
        v < self.degree.len() && self.degree[v] > 0
    }

    /// Vertices in at least one uncovered edge, ascending.
    pub fn legal_moves(&self) -> Vec<usize> {
        (0..self.degree.len())
            .filter(|&v| self.degree[v] > 0)
            .collect()
    }

    pub fn apply_move(&self, v: usize) -> Result<GameState> {
        let mut next = self.clone();
        next.play(v)?;
        Ok(next)
    }

    /// In-place variant of [`GameState::apply_move`].
    pub fn play(&mut self, v: usize) -> Result<()> {
        if !self.is_legal(v) {
            return Err(Error::IllegalMove { vertex: v });
        }
        let board = Arc::clone(&self.board);
        for &p in board.hypergraph.incident(v) {
            if !self.covered[p] {
                self.covered[p] = true;
                self.uncovered -= 1;
                for &u in &board.hypergraph.edge(p).members {
                    self.degree[u] -= 1;
                }
            }
        }
        self.moves.push(v);
        self.next = self.next.other();
        Ok(())
    }

    pub fn residual_stats(&self) -> ResidualStats {
        residual_stats(self.hypergraph(), self.marking(), &self.covered)
    }

    pub fn weight(&self, scheme: &WeightScheme) -> i64 {
        weight_of_residual(&self.residual_stats(), scheme)
    }

    /// True when `v` lies in exactly one uncovered edge and that edge is a
    /// whole component of the residual.
    pub fn is_isolated_edge_move(&self, v: usize) -> bool {
        if self.degree.get(v) != Some(&1) {
            return false;
        }
        let h = self.hypergraph();
        h.incident(v)
            .iter()
            .find(|&&p| !self.covered[p])
            .is_some_and(|&p| h.edge(p).members.iter().all(|&u| self.degree[u] == 1))
    }
}

/// A move-selection rule for one side of the game.
pub trait Policy {
    fn name(&self) -> String;

    fn choose(&mut self, state: &GameState) -> Result<usize>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurnRecord {
    /// Turn index; a Staller opening move is turn 0.
    pub i: usize,
    pub player: Player,
    pub vertex: usize,
    pub d: i64,
    /// Maximum residual degree before the move.
    pub delta_before: usize,
    pub isolated_edge_move: bool,
    pub f_after: i64,
    /// Phase 1..=4; 0 for the Staller opening move.
    pub phase: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub n: usize,
    pub f0: i64,
    /// Total number of moves, the opening move included.
    pub length: usize,
    pub first_player: Player,
    pub dominator: String,
    pub staller: String,
    pub standard_scheme: bool,
    pub turns: Vec<TurnRecord>,
}

impl Trace {
    pub fn moves(&self) -> Vec<usize> {
        self.turns.iter().map(|t| t.vertex).collect()
    }

    /// Records of turns `1..=j*`, i.e. without a Staller opening move.
    pub fn main_turns(&self) -> &[TurnRecord] {
        match self.turns.first() {
            Some(t) if t.i == 0 => &self.turns[1..],
            _ => &self.turns,
        }
    }

    pub fn opening(&self) -> Option<&TurnRecord> {
        self.turns.first().filter(|t| t.i == 0)
    }

    /// `j*`: number of turns after any Staller opening move.
    pub fn main_length(&self) -> usize {
        self.main_turns().len()
    }

    pub fn decreases(&self) -> Vec<i64> {
        self.turns.iter().map(|t| t.d).collect()
    }

    pub fn phases(&self) -> Result<PhasePartition> {
        let main = self.main_turns();
        let ds: Vec<i64> = main.iter().map(|t| t.d).collect();
        let deltas: Vec<usize> = main.iter().map(|t| t.delta_before).collect();
        classify_phases(&ds, &deltas)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Trace> {
        serde_json::from_str(text).map_err(|e| Error::Usage(format!("bad trace JSON: {e}")))
    }
}

/// Plays to the end and records every turn. A Staller opening is recorded
/// as turn 0 and phases are assigned to turns `1..=j*` of the remainder.
pub fn play_game(
    board: &Arc<Board>,
    dominator: &mut dyn Policy,
    staller: &mut dyn Policy,
    first: Player,
    scheme: &WeightScheme,
) -> Result<Trace> {
    let mut state = GameState::new(Arc::clone(board), first);
    let f0 = state.weight(scheme);
    let mut f = f0;
    let mut turns = Vec::new();
    let offset = usize::from(first == Player::Dominator);
    while !state.is_over() {
        let player = state.next_player();
        let policy: &mut dyn Policy = match player {
            Player::Dominator => &mut *dominator,
            Player::Staller => &mut *staller,
        };
        let v = policy.choose(&state)?;
        if !state.is_legal(v) {
            return Err(Error::Policy {
                policy: policy.name(),
                message: format!("chose vertex {v}, which covers no uncovered edge"),
            });
        }
        let d = move_decrease(&state, v, scheme)?;
        let delta_before = state.max_degree();
        let isolated_edge_move = state.is_isolated_edge_move(v);
        state.play(v)?;
        let f_after = state.weight(scheme);
        if f - f_after != d {
            return Err(Error::Internal(format!(
                "turn {}: local decrease {d} disagrees with recomputed {}",
                turns.len() + offset,
                f - f_after
            )));
        }
        f = f_after;
        turns.push(TurnRecord {
            i: turns.len() + offset,
            player,
            vertex: v,
            d,
            delta_before,
            isolated_edge_move,
            f_after,
            phase: 0,
        });
    }
    let mut trace = Trace {
        n: board.hypergraph.vertex_count(),
        f0,
        length: turns.len(),
        first_player: first,
        dominator: dominator.name(),
        staller: staller.name(),
        standard_scheme: scheme.is_standard(),
        turns,
    };
    let phases = trace.phases()?;
    let skip = usize::from(first == Player::Staller);
    for (t, &p) in trace.turns.iter_mut().skip(skip).zip(&phases.phase_of) {
        t.phase = p;
    }
    Ok(trace)
}

/// Replays a move list, failing on the first illegal move.
pub fn replay(board: &Arc<Board>, first: Player, moves: &[usize]) -> Result<GameState> {
    let mut state = GameState::new(Arc::clone(board), first);
    for &v in moves {
        state.play(v)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn board(g: &Graph) -> Arc<Board> {
        Arc::new(Board::from_graph(g).unwrap())
    }

    #[test]
    fn legal_moves_and_terminal_state() {
        let s = GameState::new(board(&Graph::path(3)), Player::Dominator);
        assert_eq!(s.legal_moves(), vec![0, 1, 2]);

        let b = board(&Graph::path(4));
        let covered = b.hypergraph.covered_from_labels(&[1]).unwrap();
        let s = GameState::with_covered(b, covered, Player::Dominator).unwrap();
        assert_eq!(s.legal_moves(), vec![1, 2, 3]);

        let b = board(&Graph::path(3));
        let s = GameState::with_covered(b, vec![true; 3], Player::Staller).unwrap();
        assert!(s.is_over());
        assert!(s.legal_moves().is_empty());
        assert_eq!(
            s.apply_move(0).unwrap_err(),
            Error::IllegalMove { vertex: 0 }
        );
    }

    #[test]
    fn moves_cover_incident_edges() {
        let s = GameState::new(board(&Graph::path(3)), Player::Dominator);
        let s = s.apply_move(1).unwrap();
        assert_eq!(s.covered_labels(), vec![0, 2]);
        assert_eq!(s.next_player(), Player::Staller);
        assert_eq!(s.moves(), &[1]);

        let s = GameState::new(board(&Graph::cycle(4)), Player::Dominator);
        let s = s.apply_move(0).unwrap();
        assert_eq!(s.covered_labels(), vec![1, 3]);
        assert_eq!(
            s.apply_move(0).unwrap_err(),
            Error::IllegalMove { vertex: 0 }
        );
        assert!(s.apply_move(99).is_err());
    }

    struct Fixed(Vec<usize>);

    impl Policy for Fixed {
        fn name(&self) -> String {
            "fixed".into()
        }
        fn choose(&mut self, _: &GameState) -> Result<usize> {
            Ok(self.0.remove(0))
        }
    }

    #[test]
    fn illegal_policy_choice_names_the_policy() {
        let b = board(&Graph::path(3));
        let err = play_game(
            &b,
            &mut Fixed(vec![1]),
            &mut Fixed(vec![1]),
            Player::Dominator,
            &WeightScheme::STANDARD,
        )
        .unwrap_err();
        assert!(
            matches!(err, Error::Policy { ref policy, .. } if policy == "fixed"),
            "{err}"
        );
    }

    #[test]
    fn staller_opening_is_turn_zero() {
        let b = board(&Graph::path(4));
        let t = play_game(
            &b,
            &mut Fixed(vec![1, 2]),
            &mut Fixed(vec![3, 0]),
            Player::Staller,
            &WeightScheme::STANDARD,
        )
        .unwrap();
        assert_eq!(t.turns[0].i, 0);
        assert_eq!(t.turns[0].d, 16);
        assert_eq!(t.turns[0].phase, 0);
        assert_eq!(t.turns[1].i, 1);
        assert_eq!(t.main_length(), t.length - 1);
        let players: Vec<Player> = t.turns.iter().map(|r| r.player).collect();
        for w in players.windows(2) {
            assert_ne!(w[0], w[1]);
        }
        assert_eq!(t.turns.last().unwrap().f_after, 0);
        assert_eq!(t.decreases().iter().sum::<i64>(), t.f0);
    }

    #[test]
    fn isolated_edge_flag() {
        let s = GameState::new(board(&Graph::path(3)), Player::Dominator)
            .apply_move(1)
            .unwrap();
        assert!(s.is_isolated_edge_move(0));
        assert!(s.is_isolated_edge_move(2));
        // {0,2} is a lone component from the start; 1 lies in two edges
        let s = GameState::new(board(&Graph::path(3)), Player::Dominator);
        assert!(s.is_isolated_edge_move(0));
        assert!(!s.is_isolated_edge_move(1));
        let s = GameState::new(board(&Graph::cycle(4)), Player::Dominator);
        assert!(!s.is_isolated_edge_move(0));
    }
}
