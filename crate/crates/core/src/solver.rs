use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Arena, GameId};

/// Normal-play outcome class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// The previous player (the one who just moved) wins.
    P,
    /// The next player to move wins.
    N,
}

impl Outcome {
    pub fn from_grundy(value: u32) -> Self {
        if value == 0 { Outcome::P } else { Outcome::N }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P => "P",
            Outcome::N => "N",
        })
    }
}

/// Least natural number not in `values`.
pub fn mex(values: impl IntoIterator<Item = u32>) -> u32 {
    let values: Vec<u32> = values.into_iter().collect();
    // The answer is at most values.len().
    let mut seen = vec![false; values.len() + 1];
    for v in values {
        if let Some(slot) = seen.get_mut(v as usize) {
            *slot = true;
        }
    }
    seen.iter().position(|&s| !s).expect("one slot stays free") as u32
}

const UNKNOWN: u32 = u32::MAX;

/// Memoized Grundy values over one arena.
///
/// Evaluation is a post-order walk with an explicit stack, so form height is
/// bounded by memory rather than the call stack.
#[derive(Debug, Default, Clone)]
pub struct Solver {
    memo: Vec<u32>,
}

impl Solver {
    pub fn new() -> Self {
        Solver::default()
    }

    fn known(&self, g: GameId) -> Option<u32> {
        match self.memo.get(g.index()) {
            Some(&v) if v != UNKNOWN => Some(v),
            _ => None,
        }
    }

    pub fn grundy(&mut self, arena: &Arena, g: GameId) -> u32 {
        if let Some(v) = self.known(g) {
            return v;
        }
        if self.memo.len() < arena.len() {
            self.memo.resize(arena.len(), UNKNOWN);
        }
        let mut stack = vec![g];
        while let Some(&top) = stack.last() {
            if self.known(top).is_some() {
                stack.pop();
                continue;
            }
            let before = stack.len();
            stack.extend(arena.options(top).iter().copied().filter(|&o| self.known(o).is_none()));
            if stack.len() > before {
                continue;
            }
            stack.pop();
            let value = mex(arena.options(top).iter().map(|&o| self.memo[o.index()]));
            self.memo[top.index()] = value;
        }
        self.memo[g.index()]
    }

    pub fn outcome(&mut self, arena: &Arena, g: GameId) -> Outcome {
        Outcome::from_grundy(self.grundy(arena, g))
    }

    /// Options of `g` that are P-positions.
    pub fn winning_moves(&mut self, arena: &Arena, g: GameId) -> Vec<GameId> {
        self.grundy(arena, g);
        arena.options(g).iter().copied().filter(|&o| self.memo[o.index()] == 0).collect()
    }

    /// Equality of value: `G + X` and `H + X` have the same outcome for every `X`.
    pub fn equal_values(&mut self, arena: &Arena, g: GameId, h: GameId) -> bool {
        self.grundy(arena, g) == self.grundy(arena, h)
    }
}
