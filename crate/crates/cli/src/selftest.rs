use serde::Serialize;

use hyperhom::dichotomy::{classify, Classification, WitnessKind};
use hyperhom::evaluator::{eval_bruteforce, eval_tractable, Method};
use hyperhom::fixtures;
use hyperhom::{CspInstance, Hypergraph, Instance, SymFunc};

use crate::report::{Failure, Outcome};

#[derive(Serialize)]
struct CheckLine {
    fixture: &'static str,
    check: String,
    ok: bool,
    detail: String,
}

enum Expect {
    Tractable(&'static [u64]),
    Hard(WitnessKind),
}

fn instances() -> Vec<(&'static str, Box<dyn Instance>)> {
    let hg = |n, e: Vec<Vec<usize>>| Box::new(Hypergraph::new(n, e).unwrap()) as Box<dyn Instance>;
    vec![
        ("edge", hg(3, vec![vec![0, 1, 2]])),
        ("two edges", hg(5, vec![vec![0, 1, 2], vec![2, 3, 4]])),
        ("K4^(3)", hg(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])),
        ("isolated vertex", hg(5, vec![vec![0, 1, 2], vec![1, 2, 3]])),
        (
            "csp with equality",
            Box::new(CspInstance::new(4, vec![vec![0, 0, 1], vec![1, 2, 3]], vec![(0, 3)]).unwrap()),
        ),
    ]
}

fn check_fixture(name: &'static str, g: &SymFunc, expect: Expect, lines: &mut Vec<CheckLine>) -> hyperhom::Result<()> {
    let mut push = |check: String, ok: bool, detail: String| {
        lines.push(CheckLine {
            fixture: name,
            check,
            ok,
            detail,
        })
    };
    match (classify(g)?, expect) {
        (Classification::Tractable(ts), Expect::Tractable(factors)) => {
            let got: Vec<&[u64]> = ts.components.iter().map(|c| c.group.invariant_factors()).collect();
            push("classification".into(), got == [factors], format!("groups {got:?}"));
            for (label, inst) in instances() {
                let brute = eval_bruteforce(g, inst.as_ref(), u64::MAX)?;
                for method in [Method::Structured, Method::StructuredDp] {
                    let fast = eval_tractable(&ts, inst.as_ref(), method)?.value;
                    push(format!("{method:?} = brute on {label}"), fast == brute, format!("{fast} vs {brute}"));
                }
            }
        }
        (Classification::Hard(w), Expect::Hard(kind)) => {
            push("classification".into(), w.kind == kind, w.to_string());
            let replay = w.replay(g);
            push("witness replays".into(), replay.is_ok(), format!("{replay:?}"));
        }
        (c, _) => push("classification".into(), false, format!("unexpected tractable = {}", c.is_tractable())),
    }
    Ok(())
}

pub fn run_selftest() -> Result<Outcome, Failure> {
    let fixtures: Vec<(&'static str, SymFunc, Expect)> = vec![
        ("parity", fixtures::parity(), Expect::Tractable(&[2])),
        ("geometric", fixtures::geometric(), Expect::Tractable(&[])),
        ("mixed", fixtures::mixed(), Expect::Tractable(&[2])),
        ("z4", fixtures::sum_mod(4, 3, 1), Expect::Tractable(&[4])),
        ("not-all-zero", fixtures::not_all_zero(), Expect::Hard(WitnessKind::NotLatin)),
        ("sts7", fixtures::sts7(), Expect::Hard(WitnessKind::NotAssociative)),
    ];
    let mut lines = Vec::new();
    for (name, g, expect) in fixtures {
        check_fixture(name, &g, expect, &mut lines)?;
    }
    let failed: Vec<String> = lines
        .iter()
        .filter(|l| !l.ok)
        .map(|l| format!("{}: {} ({})", l.fixture, l.check, l.detail))
        .collect();
    if !failed.is_empty() {
        return Err(Failure::Internal(format!("selftest mismatches: {}", failed.join("; "))));
    }
    Ok(Outcome {
        status: "value",
        summary: format!("selftest: {} checks passed", lines.len()),
        payload: serde_json::json!({ "checks": serde_json::to_value(&lines)?, "passed": lines.len() }),
    })
}
