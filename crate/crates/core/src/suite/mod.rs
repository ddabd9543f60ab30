//! Law suites: bounded exhaustive and seeded randomized checks with
//! deterministic reports.

mod corr;
mod figures;
mod fold;
pub mod par;
mod quiv;
mod shapes;
mod yoneda;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use figures::{figure_goldens, FigureGolden};
pub use par::Exec;

use crate::quiv::random::{rng, SuiteRng};

/// Counterexamples kept per law, smallest case ids first.
pub const MAX_COUNTEREXAMPLES: usize = 10;

pub const SUITES: [&str; 5] = ["shapes", "quiv", "yoneda", "corr", "fold"];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    /// Largest number of bits of a word.
    pub max_word: usize,
    pub max_dim: usize,
    /// Largest number of objects of a random base.
    pub max_size: usize,
    pub max_fiber: usize,
    pub seed: u64,
    /// Seeded cases per randomized law.
    pub cases: usize,
    pub format: Format,
    /// Largest set enumerated in one step.
    pub cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_word: 4, max_dim: 3, max_size: 3, max_fiber: 3, seed: 0, cases: 100, format: Format::Json, cap: 2_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: String,
    pub payload: Value,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub laws: Vec<LawReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawReport::ok)
    }

    pub fn law(&self, name: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == name)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Pass/fail tallies per law, with the smallest failing case ids.
#[derive(Debug, Clone, Default)]
pub struct Recorder {
    laws: BTreeMap<String, LawReport>,
}

impl Recorder {
    pub fn pass(&mut self, law: &str) {
        self.entry(law).passed += 1;
    }

    pub fn fail(&mut self, law: &str, case: String, payload: Value) {
        let r = self.entry(law);
        r.failed += 1;
        r.counterexamples.push(Counterexample { case, payload });
        trim(&mut r.counterexamples);
    }

    pub fn check(&mut self, law: &str, ok: bool, case: impl FnOnce() -> String, payload: impl FnOnce() -> Value) {
        if ok {
            self.pass(law);
        } else {
            self.fail(law, case(), payload());
        }
    }

    /// Records an error as a failure with its message.
    pub fn outcome<E: std::fmt::Display>(&mut self, law: &str, case: &str, r: Result<bool, E>, payload: impl FnOnce() -> Value) {
        match r {
            Ok(ok) => self.check(law, ok, || case.to_string(), payload),
            Err(e) => {
                let mut p = payload();
                if let Value::Object(m) = &mut p {
                    m.insert("error".into(), Value::String(e.to_string()));
                }
                self.fail(law, case.to_string(), p);
            }
        }
    }

    fn entry(&mut self, law: &str) -> &mut LawReport {
        self.laws.entry(law.to_string()).or_insert_with(|| LawReport { law: law.to_string(), ..LawReport::default() })
    }

    pub fn merge(&mut self, other: Recorder) {
        for (name, l) in other.laws {
            let r = self.entry(&name);
            r.passed += l.passed;
            r.failed += l.failed;
            r.counterexamples.extend(l.counterexamples);
            trim(&mut r.counterexamples);
        }
    }

    pub fn merge_all(parts: impl IntoIterator<Item = Recorder>) -> Recorder {
        let mut all = Recorder::default();
        for p in parts {
            all.merge(p);
        }
        all
    }

    pub fn into_laws(self) -> Vec<LawReport> {
        self.laws.into_values().collect()
    }
}

fn trim(v: &mut Vec<Counterexample>) {
    v.sort_by(|a, b| a.case.cmp(&b.case));
    v.truncate(MAX_COUNTEREXAMPLES);
}

/// The seed of case `i` of a seeded law, independent of execution order.
pub fn case_seed(seed: u64, law: &str, i: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in law.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    splitmix(seed ^ splitmix(h ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Case id padded so that lexical order is numeric order.
pub fn case_id(i: usize) -> String {
    format!("{i:06}")
}

/// Runs `f` on every case index and merges the tallies in index order.
pub(crate) fn run_cases(exec: Exec, n: usize, f: impl Fn(usize, &mut Recorder) + Sync + Send) -> Recorder {
    let idx: Vec<usize> = (0..n).collect();
    Recorder::merge_all(exec.map(&idx, |_, &i| {
        let mut r = Recorder::default();
        f(i, &mut r);
        r
    }))
}

/// Runs `n` seeded cases of `law`; each gets its own generator and a case
/// id, and its payloads carry the seed that replays it.
pub(crate) fn run_seeded(
    cfg: &SuiteConfig,
    exec: Exec,
    law: &str,
    n: usize,
    f: impl Fn(&mut SuiteRng, &Case, &mut Recorder) + Sync + Send,
) -> Recorder {
    run_cases(exec, n, |i, rec| {
        let seed = case_seed(cfg.seed, law, i);
        let case = Case { id: case_id(i), seed };
        f(&mut rng(seed), &case, rec)
    })
}

/// A seeded case: its id and the seed of its generator.
pub(crate) struct Case {
    pub id: String,
    pub seed: u64,
}

impl Case {
    pub fn payload(&self) -> Value {
        serde_json::json!({ "seed": self.seed })
    }

    pub fn check(&self, rec: &mut Recorder, law: &str, ok: bool) {
        rec.check(law, ok, || self.id.clone(), || self.payload());
    }

    pub fn outcome<E: std::fmt::Display>(&self, rec: &mut Recorder, law: &str, r: Result<bool, E>) {
        rec.outcome(law, &self.id, r, || self.payload());
    }
}

/// Redraws until the result has at most `max` objects.
pub(crate) fn bounded<T>(rng: &mut SuiteRng, max: usize, size: impl Fn(&T) -> usize, mut draw: impl FnMut(&mut SuiteRng) -> T) -> T {
    loop {
        let t = draw(rng);
        if size(&t) <= max.max(1) {
            return t;
        }
    }
}

/// Law groups of a suite, in run order.
pub fn groups(suite: &str) -> Option<&'static [&'static str]> {
    Some(match suite {
        "shapes" => shapes::GROUPS,
        "quiv" => quiv::GROUPS,
        "yoneda" => yoneda::GROUPS,
        "corr" => corr::GROUPS,
        "fold" => fold::GROUPS,
        _ => return None,
    })
}

fn run_group(suite: &str, group: &str, cfg: &SuiteConfig, exec: Exec) -> Recorder {
    match suite {
        "shapes" => shapes::group(group, cfg, exec),
        "quiv" => quiv::group(group, cfg, exec),
        "yoneda" => yoneda::group(group, cfg, exec),
        "corr" => corr::group(group, cfg, exec),
        _ => fold::group(group, cfg, exec),
    }
}

/// Runs the named groups of one suite, or all of them when `only` is empty.
pub fn run_groups(suite: &str, only: &[&str], cfg: &SuiteConfig, exec: Exec) -> Option<SuiteReport> {
    run_groups_timed(suite, only, cfg, exec, &mut |_, _, _| {})
}

/// As `run_groups`, reporting the wall time of each group to `timed`.
pub fn run_groups_timed(
    suite: &str,
    only: &[&str],
    cfg: &SuiteConfig,
    exec: Exec,
    timed: &mut dyn FnMut(&str, &str, Duration),
) -> Option<SuiteReport> {
    let all = groups(suite)?;
    if only.iter().any(|g| !all.contains(g)) {
        return None;
    }
    let mut rec = Recorder::default();
    for g in all.iter().filter(|g| only.is_empty() || only.contains(g)) {
        let start = Instant::now();
        rec.merge(run_group(suite, g, cfg, exec));
        timed(suite, g, start.elapsed());
    }
    Some(SuiteReport { suite: suite.to_string(), config: cfg.clone(), laws: rec.into_laws() })
}

/// Runs one named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig, exec: Exec) -> Option<SuiteReport> {
    run_groups(name, &[], cfg, exec)
}

/// Every suite in turn, as one report.
pub fn run_all(cfg: &SuiteConfig, exec: Exec) -> SuiteReport {
    run_all_timed(cfg, exec, &mut |_, _, _| {})
}

pub fn run_all_timed(cfg: &SuiteConfig, exec: Exec, timed: &mut dyn FnMut(&str, &str, Duration)) -> SuiteReport {
    let mut laws = Vec::new();
    for s in SUITES {
        laws.extend(run_groups_timed(s, &[], cfg, exec, timed).expect("known suite").laws);
    }
    SuiteReport { suite: "all".into(), config: cfg.clone(), laws }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn recorder_keeps_smallest_cases() {
        let mut parts = Vec::new();
        for i in (0..30).rev() {
            let mut r = Recorder::default();
            r.fail("law", case_id(i), json!({ "i": i }));
            r.pass("law");
            parts.push(r);
        }
        let laws = Recorder::merge_all(parts).into_laws();
        assert_eq!((laws[0].passed, laws[0].failed), (30, 30));
        let ids: Vec<&str> = laws[0].counterexamples.iter().map(|c| c.case.as_str()).collect();
        assert_eq!(ids, (0..MAX_COUNTEREXAMPLES).map(case_id).collect::<Vec<_>>());
    }

    #[test]
    fn case_seeds_differ_by_law_and_index() {
        assert_ne!(case_seed(0, "a", 0), case_seed(0, "b", 0));
        assert_ne!(case_seed(0, "a", 0), case_seed(0, "a", 1));
        assert_ne!(case_seed(0, "a", 0), case_seed(1, "a", 0));
        assert_eq!(case_seed(5, "a", 3), case_seed(5, "a", 3));
    }

    #[test]
    fn config_round_trips() {
        let c = SuiteConfig { seed: 9, format: Format::Dot, ..SuiteConfig::default() };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<SuiteConfig>(&s).unwrap(), c);
        assert_eq!(serde_json::from_str::<SuiteConfig>("{}").unwrap(), SuiteConfig::default());
    }
}
