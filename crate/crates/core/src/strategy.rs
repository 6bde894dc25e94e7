//! Move-selection policies: the greedy Dominator and three Staller
//! adversaries of increasing strength (random, myopic, and the exhaustive
//! worst case in [`crate::solver`]).

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameState, Policy};
use crate::potential::{move_decrease, WeightScheme};

fn terminal(policy: &str) -> Error {
    Error::Policy {
        policy: policy.to_string(),
        message: "asked to move in a finished game".into(),
    }
}

/// The legal vertex with the largest decrease; ties go to the smallest id.
pub fn greedy_dominator_move(state: &GameState, scheme: &WeightScheme) -> Result<usize> {
    let mut best: Option<(i64, usize)> = None;
    for v in state.legal_moves() {
        let d = move_decrease(state, v, scheme)?;
        if best.is_none_or(|(bd, _)| d > bd) {
            best = Some((d, v));
        }
    }
    best.map(|(_, v)| v).ok_or_else(|| terminal("greedy"))
}

/// The legal vertex with the smallest decrease; ties go to the smallest id.
pub fn staller_myopic_move(state: &GameState, scheme: &WeightScheme) -> Result<usize> {
    let mut best: Option<(i64, usize)> = None;
    for v in state.legal_moves() {
        let d = move_decrease(state, v, scheme)?;
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, v));
        }
    }
    best.map(|(_, v)| v).ok_or_else(|| terminal("myopic"))
}

/// Uniform choice among the legal moves (ascending order) drawn from `rng`.
pub fn staller_random_move<R: Rng + ?Sized>(state: &GameState, rng: &mut R) -> Result<usize> {
    let moves = state.legal_moves();
    if moves.is_empty() {
        return Err(terminal("random"));
    }
    Ok(moves[rng.gen_range(0..moves.len())])
}

#[derive(Clone, Debug)]
pub struct Greedy {
    pub scheme: WeightScheme,
}

impl Policy for Greedy {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn choose(&mut self, state: &GameState) -> Result<usize> {
        greedy_dominator_move(state, &self.scheme)
    }
}

#[derive(Clone, Debug)]
pub struct Myopic {
    pub scheme: WeightScheme,
}

impl Policy for Myopic {
    fn name(&self) -> String {
        "myopic".into()
    }

    fn choose(&mut self, state: &GameState) -> Result<usize> {
        staller_myopic_move(state, &self.scheme)
    }
}

#[derive(Clone, Debug)]
pub struct RandomMover {
    rng: ChaCha8Rng,
}

impl RandomMover {
    pub fn new(seed: u64) -> Self {
        RandomMover {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Policy for RandomMover {
    fn name(&self) -> String {
        "random".into()
    }

    fn choose(&mut self, state: &GameState) -> Result<usize> {
        staller_random_move(state, &mut self.rng)
    }
}

/// Plays a fixed move list; used to replay recorded lines.
#[derive(Clone, Debug)]
pub struct Scripted {
    name: String,
    moves: VecDeque<usize>,
}

impl Scripted {
    pub fn new(name: impl Into<String>, moves: impl IntoIterator<Item = usize>) -> Self {
        Scripted {
            name: name.into(),
            moves: moves.into_iter().collect(),
        }
    }
}

impl Policy for Scripted {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn choose(&mut self, _state: &GameState) -> Result<usize> {
        self.moves.pop_front().ok_or_else(|| Error::Policy {
            policy: self.name.clone(),
            message: "script exhausted".into(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StallerKind {
    Worst,
    Myopic,
    Random,
}

impl std::fmt::Display for StallerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StallerKind::Worst => "worst",
            StallerKind::Myopic => "myopic",
            StallerKind::Random => "random",
        })
    }
}
