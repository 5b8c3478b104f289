//! Exhaustive and randomized checking of the split-sum laws.
//!
//! Each check runs over its own [`Session`] (arena plus solver), first on
//! every form up to a birthday cap and then on seeded random forms. Reports
//! carry counterexamples as printable expressions, never raw ids.

mod checks;

use std::fmt;
use std::str::FromStr;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::expr::format_game;
use crate::nim_pass::cross_check_three_pile;
use crate::report::{Mode, VerificationReport};
use crate::{Arena, GameError, GameId, Limits, Outcome, Solver};

pub use checks::{
    check_double_pass, check_mixed_n, check_ner, check_nimber_characterization, check_p_closure, check_pass_split,
    check_right_congruence, check_split_assoc, check_sum_rule, check_three_pile_random, is_hereditarily_transitive,
};

/// Largest birthday [`enumerate_by_birthday`] accepts; day 5 has 2^65536 forms.
pub const MAX_ENUMERATION_DAY: u32 = 4;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("cannot enumerate forms born by day {requested}: cap is {cap}")]
    BirthdayCap { requested: u32, cap: u32 },
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

/// An arena with its Grundy memo, plus the nimber-like memo used by the
/// characterization check.
#[derive(Debug, Default)]
pub struct Session {
    pub arena: Arena,
    pub solver: Solver,
    nimber_like: Vec<Option<bool>>,
}

impl Session {
    pub fn new() -> Self {
        Session::default()
    }

    pub fn with_limits(limits: Limits) -> Self {
        Session { arena: Arena::with_limits(limits), ..Session::default() }
    }

    pub fn grundy(&mut self, g: GameId) -> u32 {
        self.solver.grundy(&self.arena, g)
    }

    pub fn outcome(&mut self, g: GameId) -> Outcome {
        self.solver.outcome(&self.arena, g)
    }

    pub fn expr(&self, g: GameId) -> String {
        format_game(&self.arena, g)
    }

    /// Hereditarily transitive, with every option nimber-like as well.
    pub fn is_nimber_like(&mut self, g: GameId) -> bool {
        if self.nimber_like.len() < self.arena.len() {
            self.nimber_like.resize(self.arena.len(), None);
        }
        let mut stack = vec![g];
        while let Some(&top) = stack.last() {
            if self.nimber_like[top.index()].is_some() {
                stack.pop();
                continue;
            }
            let before = stack.len();
            stack.extend(self.arena.options(top).iter().copied().filter(|o| self.nimber_like[o.index()].is_none()));
            if stack.len() > before {
                continue;
            }
            stack.pop();
            let value = is_hereditarily_transitive(&self.arena, top)
                && self.arena.options(top).iter().all(|o| self.nimber_like[o.index()] == Some(true));
            self.nimber_like[top.index()] = Some(value);
        }
        self.nimber_like[g.index()].expect("computed above")
    }
}

/// Every form born by day `day`: day 0 is `[E]` and day `d` is all subsets
/// of day `d - 1`, giving 1, 2, 4, 16, 65536 forms.
pub fn enumerate_by_birthday(arena: &mut Arena, day: u32) -> Result<Vec<GameId>, VerifyError> {
    if day > MAX_ENUMERATION_DAY {
        return Err(VerifyError::BirthdayCap { requested: day, cap: MAX_ENUMERATION_DAY });
    }
    let mut forms = vec![arena.empty()];
    for _ in 0..day {
        let prev = std::mem::take(&mut forms);
        let count = 1usize << prev.len();
        forms.reserve(count);
        for mask in 0..count {
            let opts = prev.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &g)| g);
            forms.push(arena.mk_game(opts)?);
        }
    }
    Ok(forms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub max_birthday: u32,
    pub max_options: u32,
    pub samples: u64,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_birthday: 5, max_options: 3, samples: 500, seed: 42 }
    }
}

/// Samples a form of birthday at most `cfg.max_birthday`: each level draws
/// an option count in `0..=max_options` and samples every option one level
/// shallower.
pub fn random_game<R: Rng + ?Sized>(arena: &mut Arena, cfg: &GenConfig, rng: &mut R) -> Result<GameId, GameError> {
    random_game_at(arena, cfg.max_birthday, cfg.max_options, rng)
}

fn random_game_at<R: Rng + ?Sized>(arena: &mut Arena, budget: u32, max_options: u32, rng: &mut R) -> Result<GameId, GameError> {
    if budget == 0 {
        return Ok(arena.empty());
    }
    let k = rng.gen_range(0..=max_options);
    let mut opts = Vec::with_capacity(k as usize);
    for _ in 0..k {
        opts.push(random_game_at(arena, budget - 1, max_options, rng)?);
    }
    arena.mk_game(opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    PClosure,
    MixedN,
    SplitAssoc,
    RightCongruence,
    Ner,
    SumRule,
    NimberCharacterization,
    DoublePass,
    PassSplit,
    ThreePile,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::PClosure,
        Check::MixedN,
        Check::SplitAssoc,
        Check::RightCongruence,
        Check::Ner,
        Check::SumRule,
        Check::NimberCharacterization,
        Check::DoublePass,
        Check::PassSplit,
        Check::ThreePile,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::PClosure => "p-closure",
            Check::MixedN => "mixed-n",
            Check::SplitAssoc => "split-assoc",
            Check::RightCongruence => "right-congruence",
            Check::Ner => "ner",
            Check::SumRule => "sum-rule",
            Check::NimberCharacterization => "nimber-characterization",
            Check::DoublePass => "double-pass",
            Check::PassSplit => "pass-split",
            Check::ThreePile => "three-pile",
        }
    }

    /// `"all"` or a single check name.
    pub fn parse_selection(s: &str) -> Result<Vec<Check>, VerifyError> {
        if s == "all" {
            return Ok(Check::ALL.to_vec());
        }
        Ok(vec![s.parse()?])
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| VerifyError::UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Birthday cap for pairwise and triple sweeps (clamped to 3). Unary
    /// sweeps go one day further, up to day 4.
    pub exhaustive_birthday: u32,
    /// Largest pile used by the Nim-form sweeps.
    pub nim_max_pile: u32,
    pub three_pile_max: u32,
    pub gen: GenConfig,
    pub limits: Limits,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            exhaustive_birthday: 3,
            nim_max_pile: 6,
            three_pile_max: 12,
            gen: GenConfig::default(),
            limits: Limits::default(),
        }
    }
}

impl SuiteConfig {
    fn pair_day(&self) -> u32 {
        self.exhaustive_birthday.min(3)
    }

    fn unary_day(&self) -> u32 {
        (self.exhaustive_birthday + 1).min(MAX_ENUMERATION_DAY)
    }
}

/// Runs each selected check exhaustively and then, if `cfg.gen.samples > 0`,
/// on random cases. Checks run on separate threads with their own arenas;
/// reports come back in selection order.
pub fn run_suite(selection: &[Check], cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, VerifyError> {
    let results: Vec<Result<Vec<VerificationReport>, VerifyError>> = thread::scope(|scope| {
        let handles: Vec<_> = selection
            .iter()
            .map(|&check| {
                thread::Builder::new()
                    .name(check.name().to_string())
                    .stack_size(64 << 20)
                    .spawn_scoped(scope, move || run_check(check, cfg))
                    .expect("spawn verifier thread")
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread panicked")).collect()
    });
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    Ok(reports)
}

/// All sorted pile triples with entries in `0..=max`; zeros stand for
/// missing piles, so this covers every Nim form with at most three piles.
pub fn nim_triples(max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in a..=max {
            for c in b..=max {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

fn nim_forms(session: &mut Session, max: u32) -> Result<Vec<GameId>, GameError> {
    nim_triples(max).iter().map(|p| session.arena.nim_position(p)).collect()
}

fn pairs(forms: &[GameId]) -> Vec<(GameId, GameId)> {
    forms.iter().flat_map(|&g| forms.iter().map(move |&h| (g, h))).collect()
}

fn triples(forms: &[GameId]) -> Vec<(GameId, GameId, GameId)> {
    let mut out = Vec::with_capacity(forms.len().pow(3));
    for &g in forms {
        for &h in forms {
            for &k in forms {
                out.push((g, h, k));
            }
        }
    }
    out
}

fn run_check(check: Check, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, VerifyError> {
    let mut reports = vec![run_exhaustive(check, cfg)?];
    if cfg.gen.samples > 0 {
        let mut report = run_random(check, cfg)?;
        report.mode = Mode::Random;
        report.seed = Some(cfg.gen.seed);
        reports.push(report);
    }
    Ok(reports)
}

fn run_exhaustive(check: Check, cfg: &SuiteConfig) -> Result<VerificationReport, VerifyError> {
    let mut s = Session::with_limits(cfg.limits);
    let report = match check {
        Check::PClosure => {
            let forms = enumerate_by_birthday(&mut s.arena, cfg.pair_day())?;
            check_p_closure(&mut s, pairs(&forms))?
        }
        Check::MixedN => {
            let forms = enumerate_by_birthday(&mut s.arena, cfg.pair_day())?;
            check_mixed_n(&mut s, pairs(&forms))?
        }
        Check::SplitAssoc => {
            let forms = enumerate_by_birthday(&mut s.arena, cfg.pair_day())?;
            check_split_assoc(&mut s, triples(&forms))?
        }
        Check::RightCongruence => {
            let forms = enumerate_by_birthday(&mut s.arena, cfg.pair_day())?;
            check_right_congruence(&mut s, triples(&forms))?
        }
        Check::Ner => {
            let forms = enumerate_by_birthday(&mut s.arena, cfg.pair_day())?;
            let cases: Vec<_> =
                pairs(&forms).into_iter().flat_map(|(g, h)| (0..=3).map(move |n| (g, h, n))).collect();
            check_ner(&mut s, cases)?
        }
        Check::SumRule => {
            let forms = enumerate_by_birthday(&mut s.arena, cfg.pair_day())?;
            let cases: Vec<_> = nim_triples(cfg.nim_max_pile)
                .into_iter()
                .flat_map(|p| forms.iter().map(move |&h| (p.clone(), h)))
                .collect();
            check_sum_rule(&mut s, cases)?
        }
        Check::NimberCharacterization => {
            let forms = enumerate_by_birthday(&mut s.arena, cfg.unary_day())?;
            check_nimber_characterization(&mut s, forms)?
        }
        Check::DoublePass => {
            let mut forms = enumerate_by_birthday(&mut s.arena, cfg.unary_day())?;
            forms.extend(nim_forms(&mut s, cfg.nim_max_pile)?);
            check_double_pass(&mut s, forms)?
        }
        Check::PassSplit => {
            let mut forms = enumerate_by_birthday(&mut s.arena, cfg.unary_day())?;
            forms.extend(nim_forms(&mut s, cfg.nim_max_pile)?);
            check_pass_split(&mut s, forms)?
        }
        Check::ThreePile => cross_check_three_pile(cfg.three_pile_max),
    };
    Ok(report)
}

const MAX_REJECTIONS: usize = 10_000;

fn sample_where<R: Rng>(
    s: &mut Session,
    gen: &GenConfig,
    rng: &mut R,
    mut accept: impl FnMut(&mut Session, GameId) -> bool,
) -> Result<Option<GameId>, GameError> {
    for _ in 0..MAX_REJECTIONS {
        let g = random_game(&mut s.arena, gen, rng)?;
        if accept(s, g) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn run_random(check: Check, cfg: &SuiteConfig) -> Result<VerificationReport, VerifyError> {
    let gen = &cfg.gen;
    let mut rng = ChaCha8Rng::seed_from_u64(gen.seed);
    rng.set_stream(check as u64);
    let mut s = Session::with_limits(cfg.limits);
    let n = gen.samples;
    let is_p = |s: &mut Session, g: GameId| s.outcome(g) == Outcome::P;

    let report = match check {
        Check::PClosure => {
            let mut cases = Vec::new();
            for _ in 0..n {
                let g = sample_where(&mut s, gen, &mut rng, is_p)?;
                let h = sample_where(&mut s, gen, &mut rng, is_p)?;
                cases.extend(g.zip(h));
            }
            check_p_closure(&mut s, cases)?
        }
        Check::MixedN => {
            let mut cases = Vec::new();
            for _ in 0..n {
                let p = sample_where(&mut s, gen, &mut rng, is_p)?;
                let q = sample_where(&mut s, gen, &mut rng, |s, g| !is_p(s, g))?;
                if let Some((p, q)) = p.zip(q) {
                    cases.push(if rng.gen_bool(0.5) { (p, q) } else { (q, p) });
                }
            }
            check_mixed_n(&mut s, cases)?
        }
        Check::SplitAssoc => {
            let mut cases = Vec::new();
            for _ in 0..n {
                let g = random_game(&mut s.arena, gen, &mut rng)?;
                let h = random_game(&mut s.arena, gen, &mut rng)?;
                let k = random_game(&mut s.arena, gen, &mut rng)?;
                cases.push((g, h, k));
            }
            check_split_assoc(&mut s, cases)?
        }
        Check::RightCongruence => {
            let mut cases = Vec::new();
            for _ in 0..n {
                let g = random_game(&mut s.arena, gen, &mut rng)?;
                let h = random_game(&mut s.arena, gen, &mut rng)?;
                let target = s.grundy(h);
                let k = match sample_where(&mut s, gen, &mut rng, |s, k| k != h && s.grundy(k) == target)? {
                    Some(k) => k,
                    None => {
                        // Adding a P-position keeps the value and changes the form.
                        let zero = sample_where(&mut s, gen, &mut rng, |s, z| z != GameId::EMPTY && is_p(s, z))?
                            .unwrap_or(GameId::EMPTY);
                        s.arena.disjunctive_sum(h, zero)?
                    }
                };
                cases.push((g, h, k));
            }
            check_right_congruence(&mut s, cases)?
        }
        Check::Ner => {
            let mut cases = Vec::new();
            for _ in 0..n {
                let g = random_game(&mut s.arena, gen, &mut rng)?;
                let h = random_game(&mut s.arena, gen, &mut rng)?;
                cases.push((g, h, rng.gen_range(0..=7)));
            }
            check_ner(&mut s, cases)?
        }
        Check::SumRule => {
            let mut cases = Vec::new();
            for _ in 0..n {
                let count = rng.gen_range(1..=3);
                let piles: Vec<u32> = (0..count).map(|_| rng.gen_range(0..=cfg.nim_max_pile + 2)).collect();
                let h = random_game(&mut s.arena, gen, &mut rng)?;
                cases.push((piles, h));
            }
            check_sum_rule(&mut s, cases)?
        }
        Check::NimberCharacterization => {
            let mut forms = Vec::new();
            for _ in 0..n {
                forms.push(random_game(&mut s.arena, gen, &mut rng)?);
            }
            check_nimber_characterization(&mut s, forms)?
        }
        Check::DoublePass => {
            let mut forms = Vec::new();
            for _ in 0..n {
                forms.push(random_game(&mut s.arena, gen, &mut rng)?);
            }
            check_double_pass(&mut s, forms)?
        }
        Check::PassSplit => {
            let mut forms = Vec::new();
            for _ in 0..n {
                forms.push(random_game(&mut s.arena, gen, &mut rng)?);
            }
            check_pass_split(&mut s, forms)?
        }
        Check::ThreePile => {
            let max = 2 * cfg.three_pile_max;
            let cases: Vec<[u32; 3]> =
                (0..n).map(|_| [0; 3].map(|_: u32| rng.gen_range(0..=max))).collect();
            check_three_pile_random(cases)
        }
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let mut arena = Arena::new();
        let counts: Vec<usize> = (0..=3).map(|d| enumerate_by_birthday(&mut arena, d).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 16]);
        assert_eq!(enumerate_by_birthday(&mut arena, 0).unwrap(), vec![arena.empty()]);
        let day2 = enumerate_by_birthday(&mut arena, 2).unwrap();
        let e = arena.empty();
        let star1 = arena.nimber(1).unwrap();
        let only_star1 = arena.mk_game([star1]).unwrap();
        let star2 = arena.nimber(2).unwrap();
        assert_eq!(day2, vec![e, star1, only_star1, star2]);
        assert!(matches!(enumerate_by_birthday(&mut arena, 5), Err(VerifyError::BirthdayCap { requested: 5, cap: 4 })));
    }

    #[test]
    fn day_four_has_65536_distinct_forms() {
        let mut arena = Arena::new();
        let forms = enumerate_by_birthday(&mut arena, 4).unwrap();
        assert_eq!(forms.len(), 65536);
        let mut sorted = forms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 65536);
        assert!(forms.iter().all(|&g| arena.birthday(g) <= 4));
    }

    #[test]
    fn random_games_respect_the_budget() {
        let mut arena = Arena::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let zero = GenConfig { max_birthday: 0, ..GenConfig::default() };
        for _ in 0..20 {
            assert_eq!(random_game(&mut arena, &zero, &mut rng).unwrap(), arena.empty());
        }
        let cfg = GenConfig { max_birthday: 3, max_options: 3, ..GenConfig::default() };
        for _ in 0..1000 {
            let g = random_game(&mut arena, &cfg, &mut rng).unwrap();
            assert!(arena.birthday(g) <= 3);
        }
    }

    #[test]
    fn random_games_are_reproducible() {
        let cfg = GenConfig::default();
        let draw = |seed| {
            let mut arena = Arena::new();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_game(&mut arena, &cfg, &mut rng).unwrap();
            format_game(&arena, g)
        };
        assert_eq!(draw(11), draw(11));
    }

    #[test]
    fn selection_parsing() {
        assert_eq!(Check::parse_selection("all").unwrap().len(), 10);
        assert_eq!(Check::parse_selection("ner").unwrap(), vec![Check::Ner]);
        assert!(matches!(Check::parse_selection("bogus"), Err(VerifyError::UnknownCheck(_))));
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
    }

    #[test]
    fn hereditary_transitivity() {
        let mut s = Session::new();
        let e = s.arena.empty();
        assert!(is_hereditarily_transitive(&s.arena, e));
        for n in 0..6 {
            let g = s.arena.nimber(n).unwrap();
            assert!(is_hereditarily_transitive(&s.arena, g));
            assert!(s.is_nimber_like(g));
        }
        let star1 = s.arena.nimber(1).unwrap();
        let only_star1 = s.arena.mk_game([star1]).unwrap();
        assert!(!is_hereditarily_transitive(&s.arena, only_star1));
        let star2 = s.arena.nimber(2).unwrap();
        let e_star2 = s.arena.mk_game([e, star2]).unwrap();
        assert!(!s.is_nimber_like(e_star2));
        assert!(s.is_nimber_like(e));
    }
}
