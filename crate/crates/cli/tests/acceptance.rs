//! Acceptance gate. Each criterion runs under its own time limit and prints
//! one PASS/FAIL line; the process exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use passnim_core::expr::parse_expr;
use passnim_core::nim_pass::{cross_check_three_pile, NimPassSolver, NimPassState};
use passnim_core::report::VerificationReport;
use passnim_core::verify::{
    check_double_pass, check_nimber_characterization, check_sum_rule, enumerate_by_birthday, nim_triples, run_suite,
    Check, Session, SuiteConfig,
};
use passnim_core::{Arena, Solver};

type Verdict = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Verdict,
}

fn grundy_of(arena: &mut Arena, solver: &mut Solver, text: &str) -> Result<u32, String> {
    let g = parse_expr(text).map_err(|e| e.to_string())?.eval(arena).map_err(|e| e.to_string())?;
    Ok(solver.grundy(arena, g))
}

fn golden_values() -> Verdict {
    let mut arena = Arena::new();
    let mut solver = Solver::new();
    let e = arena.empty();
    let star1 = arena.nimber(1).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();

    if arena.pass_op(e).map_err(|e| e.to_string())? != e {
        bad.push("pass(empty) is not empty".to_string());
    }
    for (text, want) in [
        ("pass(empty)", 0),
        ("pass(nim(1,1))", 1),
        ("split(split(star(1),empty),star(1))", 2),
        ("split(star(1),split(empty,star(1)))", 1),
    ] {
        let got = grundy_of(&mut arena, &mut solver, text)?;
        if got != want {
            bad.push(format!("{text} = {got}, want {want}"));
        }
    }
    if arena.split_sum(e, star1).map_err(|e| e.to_string())? != e {
        bad.push("split(empty,star(1)) is not empty".to_string());
    }
    if arena.split_sum(star1, e).map_err(|e| e.to_string())? != star1 {
        bad.push("split(star(1),empty) is not star(1)".to_string());
    }
    if bad.is_empty() {
        Ok("6 values exact".to_string())
    } else {
        Err(bad.join("; "))
    }
}

fn single_pile_rule() -> Verdict {
    let mut np = NimPassSolver::new();
    for n in 1..=200u32 {
        let want = if n % 2 == 1 { n + 1 } else { n - 1 };
        let got = np.grundy(&NimPassState::new(&[n], true));
        if got != want {
            return Err(format!("pile {n}: got {got}, want {want}"));
        }
    }
    Ok("n = 1..200".to_string())
}

fn two_pile_ppos() -> Verdict {
    let mut np = NimPassSolver::new();
    let table = np.two_pile_table(50);
    let found: Vec<(u32, u32)> = table.entries().filter(|&(_, _, g)| g == 0).map(|(a, b, _)| (a, b)).collect();
    let mut want = vec![(0, 0)];
    want.extend((1..50).step_by(2).map(|a| (a, a + 1)));
    if found == want {
        Ok(format!("{} P-positions", found.len()))
    } else {
        Err(format!("got {found:?}"))
    }
}

fn summarize(reports: &[VerificationReport]) -> Verdict {
    let lines: Vec<String> = reports
        .iter()
        .map(|r| format!("{} {:?} cases={} failures={} excluded={}", r.theorem, r.mode, r.cases, r.failures.len(), r.excluded.len()))
        .collect();
    if reports.iter().all(|r| r.passed()) {
        Ok(lines.join(", "))
    } else {
        let first = reports.iter().find(|r| !r.passed()).and_then(|r| r.failures.first());
        Err(format!("{} first failure {:?}", lines.join(", "), first))
    }
}

fn suite(selection: &[Check]) -> Result<Vec<VerificationReport>, String> {
    run_suite(selection, &SuiteConfig::default()).map_err(|e| e.to_string())
}

fn extension_rule() -> Verdict {
    let reports = suite(&[Check::Ner])?;
    if reports[0].cases != 1024 || reports[1].cases != 500 {
        return Err(format!("case counts {} and {}", reports[0].cases, reports[1].cases));
    }
    summarize(&reports)
}

fn split_algebra() -> Verdict {
    let reports = suite(&[Check::PClosure, Check::MixedN, Check::SplitAssoc, Check::RightCongruence])?;
    let assoc = reports.iter().find(|r| r.theorem == "split-assoc").map(|r| r.cases);
    if assoc != Some(4096) {
        return Err(format!("associativity covered {assoc:?} triples"));
    }
    for r in &reports {
        if r.cases + r.excluded.len() as u64 == 0 {
            return Err(format!("{} {:?} tested nothing", r.theorem, r.mode));
        }
    }
    summarize(&reports)
}

fn nimber_characterization() -> Verdict {
    let mut s = Session::new();
    let forms = enumerate_by_birthday(&mut s.arena, 4).map_err(|e| e.to_string())?;
    if forms.len() != 65536 {
        return Err(format!("{} day-4 forms", forms.len()));
    }
    let mut like: Vec<_> = forms.iter().copied().filter(|&g| s.is_nimber_like(g)).collect();
    like.sort();
    let nimbers: Result<Vec<_>, _> = (0..=4).map(|n| s.arena.nimber(n)).collect();
    let nimbers = nimbers.map_err(|e| e.to_string())?;
    if like != nimbers {
        return Err(format!("nimber-like forms: {:?}", like.iter().map(|&g| s.expr(g)).collect::<Vec<_>>()));
    }
    summarize(&[check_nimber_characterization(&mut s, forms).map_err(|e| e.to_string())?])
}

fn three_pile_cross_check() -> Verdict {
    summarize(&[cross_check_three_pile(12)])
}

fn double_pass() -> Verdict {
    let mut s = Session::new();
    let mut forms = enumerate_by_birthday(&mut s.arena, 4).map_err(|e| e.to_string())?;
    for piles in nim_triples(6) {
        forms.push(s.arena.nim_position(&piles).map_err(|e| e.to_string())?);
    }
    summarize(&[check_double_pass(&mut s, forms).map_err(|e| e.to_string())?])
}

fn sum_rule() -> Verdict {
    let mut s = Session::new();
    let hs = enumerate_by_birthday(&mut s.arena, 3).map_err(|e| e.to_string())?;
    let cases: Vec<_> = nim_triples(6).into_iter().flat_map(|p| hs.iter().map(move |&h| (p.clone(), h))).collect();
    let report = check_sum_rule(&mut s, cases).map_err(|e| e.to_string())?;
    if report.passed() {
        return Ok(format!("cases={}", report.cases));
    }
    let first = &report.failures[0];
    Err(format!(
        "cases={} failures={} first: {} with H={} gives {}",
        report.cases,
        report.failures.len(),
        first.inputs[0],
        first.inputs[1],
        first.actual
    ))
}

fn table_reproducible() -> Verdict {
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_passnim"))
            .args(["table", "two-pass", "--max", "100"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
        }
        Ok(out.stdout)
    };
    let a = run()?;
    let b = run()?;
    if a != b {
        return Err("outputs differ between runs".to_string());
    }
    let rows = a.iter().filter(|&&c| c == b'\n').count();
    if rows != 1 + 101 * 102 / 2 {
        return Err(format!("{rows} lines"));
    }
    Ok(format!("{} bytes, {rows} lines, identical", a.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "golden values", limit: Duration::from_secs(1), run: golden_values },
        Criterion { id: 2, name: "single-pile rule", limit: Duration::from_secs(1), run: single_pile_rule },
        Criterion { id: 3, name: "two-pile P-positions", limit: Duration::from_secs(5), run: two_pile_ppos },
        Criterion { id: 4, name: "nimber extension rule", limit: Duration::from_secs(60), run: extension_rule },
        Criterion { id: 5, name: "split-sum algebra", limit: Duration::from_secs(120), run: split_algebra },
        Criterion { id: 6, name: "nimber characterization", limit: Duration::from_secs(60), run: nimber_characterization },
        Criterion { id: 7, name: "three-pile cross-check", limit: Duration::from_secs(60), run: three_pile_cross_check },
        Criterion { id: 8, name: "double pass", limit: Duration::from_secs(60), run: double_pass },
        Criterion { id: 9, name: "sum rule", limit: Duration::from_secs(120), run: sum_rule },
        Criterion { id: 10, name: "two-pile table reproducible", limit: Duration::from_secs(60), run: table_reproducible },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= c.limit => Ok(detail),
            Ok(detail) => Err(format!("{detail}; took {elapsed:.2?}, limit {:?}", c.limit)),
            Err(detail) => Err(detail),
        };
        match verdict {
            Ok(detail) => println!("PASS {:>2} {} ({elapsed:.2?}): {detail}", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {} ({elapsed:.2?}): {detail}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
