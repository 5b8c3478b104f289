//! Nim with a pass, solved directly on pile multisets.
//!
//! A state is a sorted multiset of nonzero piles plus whether the pass is
//! still unused. The pass may be taken only while some pile is nonempty and
//! leaves plain Nim behind.

use std::collections::BTreeSet;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::game::canonical_piles;
use crate::report::{Mode, ReportBuilder, VerificationReport};
use crate::{mex, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NimPassState {
    piles: Box<[u32]>,
    pass_available: bool,
}

impl NimPassState {
    pub fn new(piles: &[u32], pass_available: bool) -> Self {
        NimPassState { piles: canonical_piles(piles), pass_available }
    }

    pub fn piles(&self) -> &[u32] {
        &self.piles
    }

    pub fn pass_available(&self) -> bool {
        self.pass_available
    }

    pub fn has_pass_move(&self) -> bool {
        self.pass_available && !self.piles.is_empty()
    }

    pub fn nim_sum(&self) -> u32 {
        self.piles.iter().fold(0, |acc, &p| acc ^ p)
    }

    /// Every legal move and the state it leads to. Pile indices refer to
    /// the sorted pile list of `self`.
    pub fn successors(&self) -> Vec<(Move, NimPassState)> {
        let mut out = Vec::new();
        for (pile, &from) in self.piles.iter().enumerate() {
            for to in 0..from {
                let mut next = self.piles.to_vec();
                next[pile] = to;
                out.push((Move::Reduce { pile, from, to }, NimPassState::new(&next, self.pass_available)));
            }
        }
        if self.has_pass_move() {
            out.push((Move::Pass, NimPassState { piles: self.piles.clone(), pass_available: false }));
        }
        out
    }
}

impl fmt::Display for NimPassState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.piles.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")?;
        if self.pass_available {
            write!(f, "*")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Reduce { pile: usize, from: u32, to: u32 },
    Pass,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Reduce { pile, from, to } => write!(f, "pile {pile}: {from}->{to}"),
            Move::Pass => write!(f, "pass"),
        }
    }
}

/// Memoized Grundy values for Nim with a pass.
#[derive(Debug, Clone)]
pub struct NimPassSolver {
    memo: FxHashMap<NimPassState, u32>,
    fast_path: bool,
}

impl Default for NimPassSolver {
    fn default() -> Self {
        NimPassSolver::new()
    }
}

impl NimPassSolver {
    /// Solver that evaluates pass-free states by nim-sum.
    pub fn new() -> Self {
        NimPassSolver { memo: FxHashMap::default(), fast_path: true }
    }

    /// Solver that recurses through pass-free states too.
    pub fn without_fast_path() -> Self {
        NimPassSolver { memo: FxHashMap::default(), fast_path: false }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn grundy(&mut self, state: &NimPassState) -> u32 {
        if self.fast_path && !state.pass_available {
            return state.nim_sum();
        }
        if state.piles.is_empty() {
            return 0;
        }
        if let Some(&v) = self.memo.get(state) {
            return v;
        }
        // Recursion depth is bounded by the stone count.
        let values: Vec<u32> = state.successors().iter().map(|(_, next)| self.grundy(next)).collect();
        let value = mex(values);
        self.memo.insert(state.clone(), value);
        value
    }

    pub fn outcome(&mut self, state: &NimPassState) -> Outcome {
        Outcome::from_grundy(self.grundy(state))
    }

    pub fn winning_moves(&mut self, state: &NimPassState) -> Vec<(Move, NimPassState)> {
        let mut moves = state.successors();
        moves.retain(|(_, next)| self.grundy(next) == 0);
        moves
    }

    /// Grundy values of `(a, b)*` for `0 <= a <= b <= max`.
    pub fn two_pile_table(&mut self, max: u32) -> GrundyTable {
        let mut values = Vec::with_capacity(GrundyTable::cells(max));
        for b in 0..=max {
            for a in 0..=b {
                values.push(self.grundy(&NimPassState::new(&[a, b], true)));
            }
        }
        GrundyTable { max, values }
    }
}

/// Triangular table of two-pile Grundy values with a pass available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrundyTable {
    max: u32,
    values: Vec<u32>,
}

impl GrundyTable {
    fn cells(max: u32) -> usize {
        let n = max as usize + 1;
        n * (n + 1) / 2
    }

    fn index(a: u32, b: u32) -> usize {
        let (a, b) = if a <= b { (a as usize, b as usize) } else { (b as usize, a as usize) };
        b * (b + 1) / 2 + a
    }

    pub fn max(&self) -> u32 {
        self.max
    }

    /// Value of `(a, b)*`; pile order does not matter.
    pub fn get(&self, a: u32, b: u32) -> Option<u32> {
        if a.max(b) > self.max {
            return None;
        }
        Some(self.values[Self::index(a, b)])
    }

    /// `(a, b, grundy)` for `a <= b`, ordered by `a` then `b`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        (0..=self.max).flat_map(move |a| (a..=self.max).map(move |b| (a, b, self.values[Self::index(a, b)])))
    }
}

pub type Triple = [u32; 3];

fn sorted_triple(mut t: Triple) -> Triple {
    t.sort_unstable();
    t
}

/// P-positions of three-pile Nim with a pass derived from the two-pile
/// table: `(a, b, c)*` is a P-position exactly when `c` is the value of
/// `(a, b)*`. Only triples with every pile at most `max` are kept.
pub fn three_pile_ppos_ner(solver: &mut NimPassSolver, max: u32) -> BTreeSet<Triple> {
    let table = solver.two_pile_table(max);
    table.entries().filter(|&(_, _, c)| c <= max).map(|(a, b, c)| sorted_triple([a, b, c])).collect()
}

/// P-positions of three-pile Nim with a pass, all piles at most `max`, by
/// direct search.
pub fn three_pile_ppos_direct(solver: &mut NimPassSolver, max: u32) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for a in 0..=max {
        for b in a..=max {
            for c in b..=max {
                if solver.grundy(&NimPassState::new(&[a, b, c], true)) == 0 {
                    out.insert([a, b, c]);
                }
            }
        }
    }
    out
}

fn triple_expr(t: &Triple) -> String {
    format!("pass(nim({},{},{}))", t[0], t[1], t[2])
}

/// Compares the table-derived and directly searched P-positions on the
/// cube of side `max`.
pub fn cross_check_three_pile(max: u32) -> VerificationReport {
    let mut report = ReportBuilder::new("three-pile", Mode::Exhaustive, None);
    let mut derived_solver = NimPassSolver::new();
    let derived = three_pile_ppos_ner(&mut derived_solver, max);
    let mut direct_solver = NimPassSolver::new();
    let direct = three_pile_ppos_direct(&mut direct_solver, max);
    for a in 0..=max {
        for b in a..=max {
            for c in b..=max {
                report.case();
                let t = [a, b, c];
                let (from_table, searched) = (derived.contains(&t), direct.contains(&t));
                if from_table != searched {
                    let show = |p: bool| if p { "P" } else { "N" };
                    report.fail(vec![triple_expr(&t)], show(from_table), show(searched));
                }
            }
        }
    }
    report.finish()
}
