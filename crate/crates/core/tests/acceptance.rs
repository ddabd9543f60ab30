//! One line per acceptance criterion. Runs the full default suite twice:
//! the first run supplies criteria 1 to 11, the pair decides criterion 12.
//!
//! Exits nonzero when a criterion outside `KNOWN_FAILING` fails, or when a
//! known failure starts passing.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Duration;

use encat::suite::{run_all, run_all_timed, Exec, LawReport, SuiteConfig, SuiteReport};

/// Wall-time budgets, in seconds.
const STRUCTURE_BUDGET: f64 = 60.0;
const QUIVER_BUDGET: f64 = 90.0;

/// Criteria whose literal statement fails on the exhaustive enumeration.
const KNOWN_FAILING: &[usize] = &[1];

struct Criterion {
    id: usize,
    name: &'static str,
    /// `(law prefix, exact number of passing cases, or 0 for any)`.
    laws: &'static [(&'static str, usize)],
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "shape structure", laws: &[("shapes.structure.", 0)] },
    Criterion { id: 2, name: "figure goldens", laws: &[("shapes.figures.golden", 6)] },
    Criterion {
        id: 3,
        name: "involution and folding",
        laws: &[("shapes.involution.ass_op", 0), ("shapes.involution.piass", 0), ("shapes.involution.fold", 0)],
    },
    Criterion { id: 4, name: "fibrousness", laws: &[("shapes.fibrous.segal_fibrous", 5)] },
    Criterion {
        id: 5,
        name: "flatness",
        laws: &[("shapes.flat.compose", 0), ("shapes.flat.over_2", 0), ("shapes.flat.agree", 0)],
    },
    Criterion {
        id: 6,
        name: "quiver monoid",
        laws: &[
            ("quiv.monoidal.left_unitor", 200),
            ("quiv.monoidal.right_unitor", 200),
            ("quiv.monoidal.associator", 200),
            ("quiv.monoidal.triangle", 200),
            ("quiv.monoidal.pentagon", 200),
            ("quiv.monoidal.nondiscrete_bases", 0),
            ("quiv.slice.model", 100),
            ("quiv.slice.monoidal", 100),
            ("quiv.slice.natural", 100),
        ],
    },
    Criterion {
        id: 7,
        name: "segal equivalence",
        laws: &[("quiv.segal.precategory_laws", 100), ("quiv.segal.round_trip", 100)],
    },
    Criterion {
        id: 8,
        name: "enriched yoneda",
        laws: &[
            ("yoneda.lemma.bijective_natural", 100),
            ("yoneda.lemma.fully_faithful", 100),
            ("yoneda.lemma.representable_free", 100),
            ("yoneda.lemma.free_adjunction", 100),
        ],
    },
    Criterion {
        id: 9,
        name: "completion",
        laws: &[
            ("yoneda.completion.jay", 1),
            ("yoneda.completion.fully_faithful", 50),
            ("yoneda.completion.idempotent", 50),
            ("yoneda.completion.complete", 50),
            ("yoneda.completion.planted", 50),
        ],
    },
    // Three monoids of order ≤ 2, ordered pairs, carriers of size 1 and 2.
    Criterion { id: 10, name: "folding of algebras", laws: &[("fold.algebra.fold", 18)] },
    Criterion {
        id: 11,
        name: "correspondences",
        laws: &[
            ("corr.roundtrip.valid", 100),
            ("corr.roundtrip.correspondence", 100),
            ("corr.roundtrip.over_segment", 100),
            ("corr.represent.planted", 20),
        ],
    },
];

fn matching<'a>(report: &'a SuiteReport, prefix: &str) -> Vec<&'a LawReport> {
    report.laws.iter().filter(|l| l.law.starts_with(prefix)).collect()
}

fn judge(c: &Criterion, report: &SuiteReport) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for &(prefix, want) in c.laws {
        let laws = matching(report, prefix);
        if laws.is_empty() {
            ok = false;
            notes.push(format!("{prefix}: missing"));
        }
        for l in laws {
            let counted = want == 0 || l.passed + l.failed == want;
            if !l.ok() || !counted {
                ok = false;
                let first = l.counterexamples.first().map(|x| x.payload.to_string()).unwrap_or_default();
                notes.push(format!("{}: {} passed, {} failed {first}", l.law, l.passed, l.failed));
            } else if want == 0 {
                notes.push(format!("{}: {} passed", l.law, l.passed));
            }
        }
    }
    if notes.is_empty() {
        let cases: Vec<String> = c.laws.iter().map(|&(_, n)| n.to_string()).collect();
        notes.push(format!("{} laws over {} cases", c.laws.len(), cases.join("/")));
    }
    (ok, notes.join("; "))
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut times: BTreeMap<String, Duration> = BTreeMap::new();
    let first = run_all_timed(&cfg, Exec::Parallel, &mut |s, g, t| {
        times.insert(format!("{s}.{g}"), t);
    });
    let second = run_all(&cfg, Exec::Sequential);
    let secs = |k: &str| times.get(k).map_or(0.0, Duration::as_secs_f64);

    let mut unexpected = 0;
    for c in CRITERIA {
        let (mut ok, mut detail) = judge(c, &first);
        let budget = match c.id {
            1 => Some((secs("shapes.structure"), STRUCTURE_BUDGET)),
            6 => Some((secs("quiv.monoidal") + secs("quiv.slice"), QUIVER_BUDGET)),
            _ => None,
        };
        if let Some((t, max)) = budget {
            ok &= t <= max;
            detail.push_str(&format!("; {t:.1}s of {max:.0}s"));
        }
        let known = KNOWN_FAILING.contains(&c.id);
        println!("criterion {:>2} {} {}: {detail}{}", c.id, if ok { "PASS" } else { "FAIL" }, c.name, if known && !ok { " (known)" } else { "" });
        if ok == known {
            unexpected += 1;
        }
    }
    let (a, b) = (first.to_json(), second.to_json());
    let same = a == b;
    println!(
        "criterion 12 {} determinism: {} bytes, parallel and sequential runs {}",
        if same { "PASS" } else { "FAIL" },
        a.len(),
        if same { "identical" } else { "differ" }
    );
    unexpected += (!same) as usize;
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria departed from their expected outcome");
        ExitCode::FAILURE
    }
}
