//! Correspondences: the over-segment encoding, representability and the
//! restriction equivalence of segment categories.

use serde_json::json;

use super::{case_id, run_cases, run_seeded, Exec, Recorder, SuiteConfig};
use crate::corr::random::{random_correspondence, random_functor, random_over_segment};
use crate::corr::{
    build_e_phi, cartesian_functors, correspondence_iso, e_phi_restriction_check, from_over_segment, graph_correspondence,
    over_segment_iso, right_representable, to_over_segment, CorrError,
};
use crate::shapes::BmWord;

pub(super) const GROUPS: &[&str] = &["roundtrip", "represent", "ephi"];

pub(super) fn group(name: &str, cfg: &SuiteConfig, exec: Exec) -> Recorder {
    match name {
        "roundtrip" => round_trips(cfg, exec),
        "represent" => represent(cfg, exec),
        _ => ephi(cfg, exec),
    }
}

fn round_trips(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    run_seeded(cfg, exec, "corr.roundtrip", cfg.cases, |r, case, rec| {
        let k = random_correspondence(r);
        case.outcome(rec, "corr.roundtrip.valid", k.validate().map(|()| true));
        let back = to_over_segment(&k).and_then(|o| from_over_segment(&o)).and_then(|b| correspondence_iso(&k, &b, cfg.cap));
        case.outcome(rec, "corr.roundtrip.correspondence", back);
        let o = random_over_segment(r);
        let again = from_over_segment(&o).and_then(|k| to_over_segment(&k)).and_then(|a| over_segment_iso(&o, &a, cfg.cap));
        case.outcome(rec, "corr.roundtrip.over_segment", again.map(|w| w.is_some()));
    })
}

fn represent(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    run_seeded(cfg, exec, "corr.represent", cfg.cases / 5, |r, case, rec| {
        let f = random_functor(r);
        let got = graph_correspondence(&f).and_then(|k| right_representable(&k));
        case.outcome(rec, "corr.represent.planted", got.map(|g| g.map(|rep| rep.matches(&f)).unwrap_or(false)));
    })
}

/// Words with at most two bits in `LM`.
const WORDS: [&str; 3] = ["0", "00", "01"];

fn ephi(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    run_cases(exec, WORDS.len(), |i, rec| {
        let w = WORDS[i];
        let check = || -> Result<bool, CorrError> {
            let e = build_e_phi(BmWord::parse(w)?)?;
            let fs = cartesian_functors(&e, 2, 1, cfg.cap)?;
            Ok(e_phi_restriction_check(&e, &fs, 12, cfg.cap)?.passed())
        };
        rec.outcome("corr.ephi.restriction", &format!("{}:{w}", case_id(i)), check(), || json!({ "word": w }));
    })
}
