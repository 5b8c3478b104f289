use crate::game::Label;
use crate::{Arena, GameError, GameId};

/// A pending structural construction. All three share the same shape: the
/// result's options are the results of smaller constructions, so they are
/// built bottom-up from one explicit stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Build {
    Pass(GameId),
    Split(GameId, GameId),
    Sum(GameId, GameId),
}

fn sum_key(g: GameId, h: GameId) -> (GameId, GameId) {
    if g <= h { (g, h) } else { (h, g) }
}

impl Arena {
    /// `G*`: `G` plus a single pass that can only be taken while `G` still
    /// has a move. `E* = E`; otherwise the options are `G` itself and `g*`
    /// for every option `g`.
    pub fn pass_op(&mut self, g: GameId) -> Result<GameId, GameError> {
        self.check(g)?;
        self.build(Build::Pass(g))
    }

    /// `G ∘ H`: like `G + H`, except moves in `H` are only available while
    /// `G` has options. Not commutative and not associative.
    pub fn split_sum(&mut self, g: GameId, h: GameId) -> Result<GameId, GameError> {
        self.check(g)?;
        self.check(h)?;
        self.build(Build::Split(g, h))
    }

    /// Structural disjunctive sum `G + H`.
    pub fn disjunctive_sum(&mut self, g: GameId, h: GameId) -> Result<GameId, GameError> {
        self.check(g)?;
        self.check(h)?;
        self.build(Build::Sum(g, h))
    }

    fn check(&self, g: GameId) -> Result<(), GameError> {
        if self.contains(g) { Ok(()) } else { Err(GameError::UnknownId(g)) }
    }

    fn lookup(&self, b: Build) -> Option<GameId> {
        match b {
            Build::Pass(g) if g == GameId::EMPTY => Some(GameId::EMPTY),
            Build::Pass(g) => self.pass_memo.get(&g).copied(),
            // G = E is tested first; when both are E the cases agree.
            Build::Split(g, _) if g == GameId::EMPTY => Some(GameId::EMPTY),
            Build::Split(g, h) if h == GameId::EMPTY => Some(g),
            Build::Split(g, h) => self.split_memo.get(&(g, h)).copied(),
            Build::Sum(g, h) => {
                let (lo, hi) = sum_key(g, h);
                if lo == GameId::EMPTY {
                    Some(hi)
                } else {
                    self.sum_memo.get(&(lo, hi)).copied()
                }
            }
        }
    }

    fn children(&self, b: Build, out: &mut Vec<Build>) {
        match b {
            Build::Pass(g) => out.extend(self.options(g).iter().map(|&o| Build::Pass(o))),
            Build::Split(g, h) => {
                out.extend(self.options(h).iter().map(|&o| Build::Split(g, o)));
                out.extend(self.options(g).iter().map(|&o| Build::Split(o, h)));
            }
            Build::Sum(g, h) => {
                out.extend(self.options(h).iter().map(|&o| Build::Sum(g, o)));
                out.extend(self.options(g).iter().map(|&o| Build::Sum(o, h)));
            }
        }
    }

    fn build(&mut self, root: Build) -> Result<GameId, GameError> {
        if let Some(done) = self.lookup(root) {
            return Ok(done);
        }
        let mut stack = vec![root];
        let mut children = Vec::new();
        while let Some(&top) = stack.last() {
            if self.lookup(top).is_some() {
                stack.pop();
                continue;
            }
            children.clear();
            self.children(top, &mut children);
            let before = stack.len();
            stack.extend(children.iter().copied().filter(|&c| self.lookup(c).is_none()));
            if stack.len() > before {
                continue;
            }
            stack.pop();

            let mut opts: Vec<GameId> =
                children.iter().map(|&c| self.lookup(c).expect("children are built")).collect();
            let label = match top {
                Build::Pass(g) => {
                    opts.push(g);
                    Label::Pass(g)
                }
                Build::Split(g, h) => Label::Split(g, h),
                Build::Sum(g, h) => Label::Sum(g, h),
            };
            let id = self.intern_unsorted(opts, label)?;
            match top {
                Build::Pass(g) => {
                    self.pass_memo.insert(g, id);
                }
                Build::Split(g, h) => {
                    self.split_memo.insert((g, h), id);
                }
                Build::Sum(g, h) => {
                    self.sum_memo.insert(sum_key(g, h), id);
                }
            }
        }
        Ok(self.lookup(root).expect("root is built"))
    }
}
