//! The Yoneda lemma, the embedding and completion.

use std::sync::Arc;

use rand::Rng;
use serde_json::json;

use super::{bounded, run_seeded, Exec, Recorder, SuiteConfig};
use crate::fincat::FinCat;
use crate::quiv::random::{random_inflated, random_objects, random_precategory, random_set_functor, SuiteRng};
use crate::quiv::{Ambient, Precategory};
use crate::yoneda::random::random_presheaf;
use crate::yoneda::{
    completeness_check, completion, free_adjunction_counts, fully_faithful_check, jay, representable_is_free, yoneda_lemma_check,
    yoneda_map, yoneda_presheaf, Presheaves,
};

pub(super) const GROUPS: &[&str] = &["lemma", "completion"];

pub(super) fn group(name: &str, cfg: &SuiteConfig, exec: Exec) -> Recorder {
    match name {
        "lemma" => lemma(cfg, exec),
        _ => complete(cfg, exec),
    }
}

/// Even draws: a category over its discrete set of objects; odd draws:
/// the unit precategory over `[1]`, `[2]` or a discrete set.
fn random_base(r: &mut SuiteRng, max_size: usize) -> Precategory {
    if r.gen_bool(0.5) {
        bounded(r, max_size, |p: &Precategory| p.n(), random_precategory)
    } else {
        let x = bounded(r, max_size, FinCat::num_objects, random_objects);
        Precategory::unit_precategory(&Ambient::new(Arc::new(x)))
    }
}

fn lemma(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    run_seeded(cfg, exec, "yoneda.lemma", cfg.cases, |r, case, rec| {
        let ps = Presheaves::new(random_base(r, cfg.max_size));
        let n = ps.n();
        let f = random_presheaf(&ps, r, cfg.max_fiber);
        let lemma = (0..n).try_fold(true, |ok, x| yoneda_lemma_check(&ps, x, &f, cfg.cap).map(|y| ok && y.passed()));
        case.outcome(rec, "yoneda.lemma.bijective_natural", lemma);
        let ys: Vec<_> = (0..n).map(|y| yoneda_presheaf(&ps, y)).collect();
        let ff = fully_faithful_check(&ps.base, &ys, |a, b, e| yoneda_map(&ps, a, b, e), cfg.cap);
        case.outcome(rec, "yoneda.lemma.fully_faithful", ff);
        let free = (0..n).try_fold(true, |ok, x| representable_is_free(&ps, x, cfg.cap).map(|b| ok && b));
        case.outcome(rec, "yoneda.lemma.representable_free", free);
        let g = random_set_functor(&ps.op.amb().x, r, 2, 2);
        case.outcome(rec, "yoneda.lemma.free_adjunction", free_adjunction_counts(&ps, &g, &f, cfg.cap).map(|(a, b)| a == b));
    })
}

fn complete(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    let mut rec = Recorder::default();
    match completion(&jay(), cfg.cap) {
        Ok(c) => rec.check("yoneda.completion.jay", c.precat.n() == 1, || "jay".into(), || json!({ "objects": c.precat.n() })),
        Err(e) => rec.fail("yoneda.completion.jay", "jay".into(), json!({ "error": e.to_string() })),
    }
    rec.merge(run_seeded(cfg, exec, "yoneda.completion", cfg.cases / 2, |r, case, rec| {
        let (c, pi) = random_inflated(r);
        let p = Precategory::from_category(&c).expect("categories give precategories");
        let done = match completion(&p, cfg.cap) {
            Ok(d) => d,
            Err(e) => return case.outcome(rec, "yoneda.completion.fully_faithful", Err(e)),
        };
        case.check(rec, "yoneda.completion.fully_faithful", done.unit_fully_faithful(&p));
        case.outcome(rec, "yoneda.completion.complete", completeness_check(&done.precat));
        let planted = (0..pi.len()).all(|o| done.classes[o] == done.classes[pi[o]]);
        case.check(rec, "yoneda.completion.planted", planted);
        case.outcome(rec, "yoneda.completion.idempotent", completion(&done.precat, cfg.cap).map(|again| again.is_isomorphism(&done.precat)));
    }));
    rec
}
