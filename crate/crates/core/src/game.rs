use std::fmt;
use std::hash::BuildHasher;

use hashbrown::HashTable;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::GameError;

pub const DEFAULT_MAX_NODES: usize = 50_000_000;

/// Handle of an interned form. Only meaningful for the [`Arena`] that
/// produced it; ids are never serialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GameId(u32);

impl GameId {
    /// The game with no options.
    pub const EMPTY: GameId = GameId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: usize,
    /// Total length of all option lists together.
    pub max_option_entries: usize,
    /// Total stones accepted by [`Arena::nim_position`].
    pub max_nim_stones: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_nodes: DEFAULT_MAX_NODES, max_option_entries: 1 << 28, max_nim_stones: 4096 }
    }
}

/// How a node was first produced; used to print forms back as expressions.
///
/// `Pass`, `Split` and `Sum` only ever reference ids older than the node
/// they label, so following labels always terminates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Label {
    Literal,
    Star(u32),
    Nim(Box<[u32]>),
    Pass(GameId),
    Split(GameId, GameId),
    Sum(GameId, GameId),
}

impl Label {
    fn rank(&self) -> u8 {
        match self {
            Label::Star(_) => 2,
            Label::Nim(_) => 1,
            _ => 0,
        }
    }
}

/// Hash-consed store of impartial game forms.
///
/// Option lists are kept sorted and deduplicated in one flat buffer. Every
/// option is interned before the node that lists it, so ids are a
/// topological order of the form DAG.
pub struct Arena {
    options: Vec<GameId>,
    offsets: Vec<usize>,
    birthdays: Vec<u32>,
    labels: Vec<Label>,
    table: HashTable<GameId>,
    hasher: FxBuildHasher,
    limits: Limits,
    nimbers: Vec<GameId>,
    nim_memo: FxHashMap<Box<[u32]>, GameId>,
    pub(crate) pass_memo: FxHashMap<GameId, GameId>,
    pub(crate) split_memo: FxHashMap<(GameId, GameId), GameId>,
    pub(crate) sum_memo: FxHashMap<(GameId, GameId), GameId>,
}

impl Default for Arena {
    fn default() -> Self {
        Arena::new()
    }
}

impl fmt::Debug for Arena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arena").field("nodes", &self.len()).field("limits", &self.limits).finish()
    }
}

impl Arena {
    pub fn new() -> Self {
        Arena::with_limits(Limits::default())
    }

    pub fn with_limits(mut limits: Limits) -> Self {
        limits.max_nodes = limits.max_nodes.min(u32::MAX as usize);
        let mut arena = Arena {
            options: Vec::new(),
            offsets: vec![0],
            birthdays: Vec::new(),
            labels: Vec::new(),
            table: HashTable::new(),
            hasher: FxBuildHasher,
            limits,
            nimbers: Vec::new(),
            nim_memo: FxHashMap::default(),
            pass_memo: FxHashMap::default(),
            split_memo: FxHashMap::default(),
            sum_memo: FxHashMap::default(),
        };
        let (empty, _) = arena.intern_sorted(&[], Label::Star(0)).expect("empty game fits any limit");
        debug_assert_eq!(empty, GameId::EMPTY);
        arena.nimbers.push(empty);
        arena
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Number of interned nodes.
    pub fn len(&self) -> usize {
        self.birthdays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, g: GameId) -> bool {
        g.index() < self.len()
    }

    pub fn empty(&self) -> GameId {
        GameId::EMPTY
    }

    /// Options of `g`, sorted ascending by id.
    pub fn options(&self, g: GameId) -> &[GameId] {
        let i = g.index();
        &self.options[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn birthday(&self, g: GameId) -> u32 {
        self.birthdays[g.index()]
    }

    pub(crate) fn label(&self, g: GameId) -> &Label {
        &self.labels[g.index()]
    }

    /// Iterator over every id in interning order.
    pub fn ids(&self) -> impl Iterator<Item = GameId> {
        (0..self.len() as u32).map(GameId)
    }

    /// Interns the form whose options are exactly `options` (duplicates and
    /// order are ignored).
    pub fn mk_game(&mut self, options: impl IntoIterator<Item = GameId>) -> Result<GameId, GameError> {
        let mut opts: Vec<GameId> = options.into_iter().collect();
        if let Some(&bad) = opts.iter().find(|g| !self.contains(**g)) {
            return Err(GameError::UnknownId(bad));
        }
        opts.sort_unstable();
        opts.dedup();
        Ok(self.intern_sorted(&opts, Label::Literal)?.0)
    }

    /// `opts` may be unsorted; ids must already be interned.
    pub(crate) fn intern_unsorted(&mut self, mut opts: Vec<GameId>, label: Label) -> Result<GameId, GameError> {
        opts.sort_unstable();
        opts.dedup();
        Ok(self.intern_sorted(&opts, label)?.0)
    }

    fn intern_sorted(&mut self, opts: &[GameId], label: Label) -> Result<(GameId, bool), GameError> {
        let hash = self.hasher.hash_one(opts);
        let Arena { options, offsets, table, .. } = self;
        let slice_of = |id: GameId| &options[offsets[id.index()]..offsets[id.index() + 1]];
        if let Some(&id) = table.find(hash, |&id| slice_of(id) == opts) {
            return Ok((id, false));
        }
        if self.len() >= self.limits.max_nodes {
            return Err(GameError::ResourceLimit { what: "arena nodes", limit: self.limits.max_nodes as u64 });
        }
        if self.options.len() + opts.len() > self.limits.max_option_entries {
            return Err(GameError::ResourceLimit {
                what: "option entries",
                limit: self.limits.max_option_entries as u64,
            });
        }
        let id = GameId(self.len() as u32);
        let birthday = opts.iter().map(|g| self.birthdays[g.index()] + 1).max().unwrap_or(0);
        self.options.extend_from_slice(opts);
        self.offsets.push(self.options.len());
        self.birthdays.push(birthday);
        self.labels.push(label);
        let Arena { options, offsets, table, hasher, .. } = self;
        table.insert_unique(hash, id, |&other| {
            hasher.hash_one(&options[offsets[other.index()]..offsets[other.index() + 1]])
        });
        Ok((id, true))
    }

    fn relabel(&mut self, g: GameId, label: Label) {
        let slot = &mut self.labels[g.index()];
        if label.rank() > slot.rank() {
            *slot = label;
        }
    }

    /// `*n`: the form with options `*0, ..., *(n-1)`.
    pub fn nimber(&mut self, n: u32) -> Result<GameId, GameError> {
        if let Some(&g) = self.nimbers.get(n as usize) {
            return Ok(g);
        }
        let entries = (n as u64) * (n as u64 + 1) / 2;
        if n as usize >= self.limits.max_nodes || entries > self.limits.max_option_entries as u64 {
            return Err(GameError::ResourceLimit { what: "nimber size", limit: self.limits.max_nodes as u64 });
        }
        while self.nimbers.len() <= n as usize {
            let k = self.nimbers.len() as u32;
            let opts = self.nimbers.clone();
            let (g, _) = self.intern_sorted(&opts, Label::Star(k))?;
            self.relabel(g, Label::Star(k));
            self.nimbers.push(g);
        }
        Ok(self.nimbers[n as usize])
    }

    /// The `*n` with this id, if the arena has built it.
    pub fn as_nimber(&self, g: GameId) -> Option<u32> {
        match self.label(g) {
            Label::Star(n) => Some(*n),
            _ => None,
        }
    }

    /// The Nim position with the given piles. Zero piles are dropped and
    /// pile order is irrelevant.
    pub fn nim_position(&mut self, piles: &[u32]) -> Result<GameId, GameError> {
        let key = canonical_piles(piles);
        let stones: u64 = key.iter().map(|&p| p as u64).sum();
        if stones > self.limits.max_nim_stones {
            return Err(GameError::ResourceLimit { what: "nim stones", limit: self.limits.max_nim_stones });
        }
        if key.is_empty() {
            return Ok(GameId::EMPTY);
        }
        if let Some(&g) = self.nim_memo.get(&key) {
            return Ok(g);
        }

        let mut stack: Vec<Box<[u32]>> = vec![key.clone()];
        let mut children: Vec<Box<[u32]>> = Vec::new();
        while let Some(top) = stack.last() {
            if self.nim_memo.contains_key(top) {
                stack.pop();
                continue;
            }
            children.clear();
            nim_successors(top, &mut children);
            let before = stack.len();
            for child in &children {
                if !child.is_empty() && !self.nim_memo.contains_key(child) {
                    stack.push(child.clone());
                }
            }
            if stack.len() > before {
                continue;
            }
            let top = stack.pop().expect("stack is nonempty");
            let opts: Vec<GameId> = children
                .iter()
                .map(|c| if c.is_empty() { GameId::EMPTY } else { self.nim_memo[c] })
                .collect();
            let label = nim_label(&top);
            let g = self.intern_unsorted(opts, label.clone())?;
            self.relabel(g, label);
            self.nim_memo.insert(top, g);
        }
        Ok(self.nim_memo[&key])
    }
}

fn nim_label(piles: &[u32]) -> Label {
    match piles {
        [p] => Label::Star(*p),
        _ => Label::Nim(piles.into()),
    }
}

pub(crate) fn canonical_piles(piles: &[u32]) -> Box<[u32]> {
    let mut key: Vec<u32> = piles.iter().copied().filter(|&p| p > 0).collect();
    key.sort_unstable();
    key.into_boxed_slice()
}

/// Every canonical position reachable by shrinking one pile.
fn nim_successors(piles: &[u32], out: &mut Vec<Box<[u32]>>) {
    for (i, &p) in piles.iter().enumerate() {
        if i > 0 && piles[i - 1] == p {
            continue;
        }
        for smaller in 0..p {
            let mut next = piles.to_vec();
            next[i] = smaller;
            out.push(canonical_piles(&next));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_id_zero() {
        let mut arena = Arena::new();
        assert_eq!(arena.empty(), GameId::EMPTY);
        assert_eq!(arena.options(GameId::EMPTY), &[]);
        assert_eq!(arena.birthday(GameId::EMPTY), 0);
        assert_eq!(arena.mk_game([]).unwrap(), GameId::EMPTY);
        assert_eq!(arena.nimber(0).unwrap(), GameId::EMPTY);
        assert_eq!(arena.nim_position(&[]).unwrap(), GameId::EMPTY);
        assert_eq!(arena.nim_position(&[0, 0]).unwrap(), GameId::EMPTY);
    }

    #[test]
    fn mk_game_interns() {
        let mut arena = Arena::new();
        let e = arena.empty();
        let star1 = arena.mk_game([e]).unwrap();
        assert_eq!(star1, arena.nimber(1).unwrap());
        let star2 = arena.nimber(2).unwrap();
        assert_eq!(arena.options(star2), &[e, star1]);
        let again = arena.mk_game([star1, e, star1]).unwrap();
        assert_eq!(again, star2);
        let before = arena.len();
        let same = arena.mk_game(arena.options(star2).to_vec()).unwrap();
        assert_eq!(same, star2);
        assert_eq!(arena.len(), before);
    }

    #[test]
    fn mk_game_rejects_unknown_ids() {
        let mut arena = Arena::new();
        let err = arena.mk_game([GameId(17)]).unwrap_err();
        assert_eq!(err, GameError::UnknownId(GameId(17)));
    }

    #[test]
    fn nim_positions() {
        let mut arena = Arena::new();
        let one = arena.nim_position(&[1]).unwrap();
        let pair = arena.nim_position(&[1, 1]).unwrap();
        assert_eq!(arena.options(pair), &[one]);
        assert_eq!(arena.nim_position(&[2]).unwrap(), arena.nimber(2).unwrap());
        assert_eq!(arena.nim_position(&[5, 0, 3]).unwrap(), arena.nim_position(&[3, 5]).unwrap());
        let g = arena.nim_position(&[3, 5]).unwrap();
        assert_eq!(arena.birthday(g), 8);
    }

    #[test]
    fn birthdays_of_nimbers() {
        let mut arena = Arena::new();
        for n in 0..20 {
            let g = arena.nimber(n).unwrap();
            assert_eq!(arena.birthday(g), n);
            assert_eq!(arena.as_nimber(g), Some(n));
        }
    }

    #[test]
    fn node_cap_is_a_clean_error() {
        let mut arena = Arena::with_limits(Limits { max_nodes: 10, ..Limits::default() });
        assert!(arena.nimber(8).is_ok());
        assert!(matches!(arena.nimber(12), Err(GameError::ResourceLimit { .. })));
        let mut arena = Arena::with_limits(Limits { max_nodes: 10, ..Limits::default() });
        assert!(matches!(arena.nim_position(&[4, 4]), Err(GameError::ResourceLimit { .. })));
    }

    #[test]
    fn huge_nimbers_are_refused_up_front() {
        let mut arena = Arena::new();
        assert!(matches!(arena.nimber(4_000_000_000), Err(GameError::ResourceLimit { .. })));
        assert!(matches!(arena.nimber(1_000_000), Err(GameError::ResourceLimit { .. })));
        assert_eq!(arena.len(), 1);
    }

    #[test]
    fn stone_cap() {
        let mut arena = Arena::with_limits(Limits { max_nim_stones: 10, ..Limits::default() });
        assert!(arena.nim_position(&[5, 5]).is_ok());
        assert!(matches!(arena.nim_position(&[5, 6]), Err(GameError::ResourceLimit { what: "nim stones", .. })));
    }
}
