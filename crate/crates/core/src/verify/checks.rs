use super::Session;
use crate::nim_pass::{NimPassSolver, NimPassState};
use crate::report::{Mode, ReportBuilder, VerificationReport};
use crate::{Arena, GameError, GameId, Outcome};

fn builder(theorem: &str) -> ReportBuilder {
    ReportBuilder::new(theorem, Mode::Exhaustive, None)
}

/// Every option of an option of `g` is itself an option of `g`.
pub fn is_hereditarily_transitive(arena: &Arena, g: GameId) -> bool {
    let opts = arena.options(g);
    opts.iter().all(|&o| arena.options(o).iter().all(|sub| opts.binary_search(sub).is_ok()))
}

/// Split sum of two P-positions is a P-position.
pub fn check_p_closure(
    s: &mut Session,
    pairs: impl IntoIterator<Item = (GameId, GameId)>,
) -> Result<VerificationReport, GameError> {
    let mut report = builder("p-closure");
    for (g, h) in pairs {
        if s.outcome(g) != Outcome::P || s.outcome(h) != Outcome::P {
            continue;
        }
        report.case();
        let split = s.arena.split_sum(g, h)?;
        let got = s.outcome(split);
        if got != Outcome::P {
            report.fail(vec![s.expr(g), s.expr(h)], "P", got.to_string());
        }
    }
    Ok(report.finish())
}

/// If exactly one of `G`, `H` is a P-position, `G ∘ H` is an N-position.
///
/// `G = E` is excluded and listed: `E ∘ H` is `E` whatever `H` is, so the
/// claim cannot hold there when `H` is an N-position.
pub fn check_mixed_n(
    s: &mut Session,
    pairs: impl IntoIterator<Item = (GameId, GameId)>,
) -> Result<VerificationReport, GameError> {
    let mut report = builder("mixed-n");
    for (g, h) in pairs {
        if (s.outcome(g) == Outcome::P) == (s.outcome(h) == Outcome::P) {
            continue;
        }
        if g == GameId::EMPTY {
            report.exclude(vec![s.expr(g), s.expr(h)]);
            continue;
        }
        report.case();
        let split = s.arena.split_sum(g, h)?;
        let got = s.outcome(split);
        if got != Outcome::N {
            report.fail(vec![s.expr(g), s.expr(h)], "N", got.to_string());
        }
    }
    Ok(report.finish())
}

/// `(G ∘ H) ∘ K` and `G ∘ (H + K)` have equal values.
pub fn check_split_assoc(
    s: &mut Session,
    triples: impl IntoIterator<Item = (GameId, GameId, GameId)>,
) -> Result<VerificationReport, GameError> {
    let mut report = builder("split-assoc");
    for (g, h, k) in triples {
        report.case();
        let inner = s.arena.split_sum(g, h)?;
        let left = s.arena.split_sum(inner, k)?;
        let hk = s.arena.disjunctive_sum(h, k)?;
        let right = s.arena.split_sum(g, hk)?;
        let (lv, rv) = (s.grundy(left), s.grundy(right));
        if lv != rv {
            report.fail(vec![s.expr(g), s.expr(h), s.expr(k)], format!("*{rv}"), format!("*{lv}"));
        }
    }
    Ok(report.finish())
}

/// `H = K` implies `G ∘ H = G ∘ K`.
pub fn check_right_congruence(
    s: &mut Session,
    triples: impl IntoIterator<Item = (GameId, GameId, GameId)>,
) -> Result<VerificationReport, GameError> {
    let mut report = builder("right-congruence");
    for (g, h, k) in triples {
        if s.grundy(h) != s.grundy(k) {
            continue;
        }
        report.case();
        let gh = s.arena.split_sum(g, h)?;
        let gk = s.arena.split_sum(g, k)?;
        let (hv, kv) = (s.grundy(gh), s.grundy(gk));
        if hv != kv {
            report.fail(vec![s.expr(g), s.expr(h), s.expr(k)], format!("*{hv}"), format!("*{kv}"));
        }
    }
    Ok(report.finish())
}

/// `G ∘ H + *n` is a P-position exactly when `(G + *n) ∘ H` is.
pub fn check_ner(
    s: &mut Session,
    cases: impl IntoIterator<Item = (GameId, GameId, u32)>,
) -> Result<VerificationReport, GameError> {
    let mut report = builder("ner");
    for (g, h, n) in cases {
        report.case();
        let star = s.arena.nimber(n)?;
        let split = s.arena.split_sum(g, h)?;
        let left = s.arena.disjunctive_sum(split, star)?;
        let extended = s.arena.disjunctive_sum(g, star)?;
        let right = s.arena.split_sum(extended, h)?;
        let (lo, ro) = (s.outcome(left), s.outcome(right));
        if lo != ro {
            report.fail(
                vec![s.expr(g), s.expr(h), format!("star({n})")],
                format!("split(G,H)+star(n) is {lo}"),
                format!("split(sum(G,star(n)),H) is {ro}"),
            );
        }
    }
    Ok(report.finish())
}

/// For a Nim form `G` and any `H`: if `G ∘ H` has winning moves `a -> a'`
/// and `b -> b'` in two different piles, then `a ^ a' == b ^ b'`.
pub fn check_sum_rule(
    s: &mut Session,
    cases: impl IntoIterator<Item = (Vec<u32>, GameId)>,
) -> Result<VerificationReport, GameError> {
    let mut report = builder("sum-rule");
    for (piles, h) in cases {
        report.case();
        let mut wins: Vec<(usize, u32, u32)> = Vec::new();
        for (i, &from) in piles.iter().enumerate() {
            for to in 0..from {
                let mut next = piles.clone();
                next[i] = to;
                let g = s.arena.nim_position(&next)?;
                let after = s.arena.split_sum(g, h)?;
                if s.grundy(after) == 0 {
                    wins.push((i, from, to));
                }
            }
        }
        let clash = wins.iter().enumerate().find_map(|(x, a)| {
            wins[x + 1..].iter().find(|b| a.0 != b.0 && a.1 ^ a.2 != b.1 ^ b.2).map(|b| (*a, *b))
        });
        if let Some((a, b)) = clash {
            let g = s.arena.nim_position(&piles)?;
            report.fail(
                vec![s.expr(g), s.expr(h)],
                "equal xor for winning moves in different piles",
                format!("{}->{} (xor {}) vs {}->{} (xor {})", a.1, a.2, a.1 ^ a.2, b.1, b.2, b.1 ^ b.2),
            );
        }
    }
    Ok(report.finish())
}

/// A nimber-like form is a nimber.
pub fn check_nimber_characterization(
    s: &mut Session,
    forms: impl IntoIterator<Item = GameId>,
) -> Result<VerificationReport, GameError> {
    let mut report = builder("nimber-characterization");
    for g in forms {
        report.case();
        if !s.is_nimber_like(g) {
            continue;
        }
        // A nimber's birthday is its size.
        let candidate = s.arena.nimber(s.arena.birthday(g))?;
        if candidate != g {
            report.fail(vec![s.expr(g)], "a nimber", "not a nimber");
        }
    }
    Ok(report.finish())
}

/// `(G*)*` has the same value as `G`.
pub fn check_double_pass(
    s: &mut Session,
    forms: impl IntoIterator<Item = GameId>,
) -> Result<VerificationReport, GameError> {
    let mut report = builder("double-pass");
    for g in forms {
        report.case();
        let once = s.arena.pass_op(g)?;
        let twice = s.arena.pass_op(once)?;
        let (gv, tv) = (s.grundy(g), s.grundy(twice));
        if gv != tv {
            report.fail(vec![s.expr(g)], format!("*{gv}"), format!("*{tv}"));
        }
    }
    Ok(report.finish())
}

/// `G*` and `G ∘ *1` are the same form.
pub fn check_pass_split(
    s: &mut Session,
    forms: impl IntoIterator<Item = GameId>,
) -> Result<VerificationReport, GameError> {
    let mut report = builder("pass-split");
    let star1 = s.arena.nimber(1)?;
    for g in forms {
        report.case();
        let passed = s.arena.pass_op(g)?;
        let split = s.arena.split_sum(g, star1)?;
        if passed != split {
            report.fail(vec![s.expr(g)], s.expr(passed), s.expr(split));
        }
    }
    Ok(report.finish())
}

/// `(a, b, c)*` is a P-position exactly when `c` is the value of `(a, b)*`.
pub fn check_three_pile_random(cases: impl IntoIterator<Item = [u32; 3]>) -> VerificationReport {
    let mut report = builder("three-pile");
    let mut solver = NimPassSolver::new();
    for [a, b, c] in cases {
        report.case();
        let is_p = solver.grundy(&NimPassState::new(&[a, b, c], true)) == 0;
        let predicted = solver.grundy(&NimPassState::new(&[a, b], true)) == c;
        if is_p != predicted {
            let show = |p: bool| if p { "P" } else { "N" };
            report.fail(vec![format!("pass(nim({a},{b},{c}))")], show(predicted), show(is_p));
        }
    }
    report.finish()
}
