//! Monoidal coherence of quivers, the slice model and Segal round trips.

use std::sync::Arc;

use super::{bounded, run_seeded, Exec, Recorder, SuiteConfig};
use crate::fincat::FinCat;
use crate::quiv::random::{random_cell_map, random_objects, random_precategory, random_quiver};
use crate::quiv::{
    associator, check_precategory, check_slice_monoidal, compare_slice_model, left_unitor, pentagon_holds, right_unitor,
    segal_round_trip, slice_naturality, triangle_holds, Ambient, RoundTrip,
};

pub(super) const GROUPS: &[&str] = &["monoidal", "slice", "segal"];

pub(super) fn group(name: &str, cfg: &SuiteConfig, exec: Exec) -> Recorder {
    match name {
        "monoidal" => monoidal(cfg, exec),
        "slice" => slice(cfg, exec),
        _ => segal(cfg, exec),
    }
}

fn monoidal(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    run_seeded(cfg, exec, "quiv.monoidal", 2 * cfg.cases, |r, case, rec| {
        let x = bounded(r, cfg.max_size, FinCat::num_objects, random_objects);
        if !x.is_discrete() {
            rec.pass("quiv.monoidal.nondiscrete_bases");
        }
        let amb = Ambient::new(Arc::new(x));
        let q: Vec<_> = (0..4).map(|_| random_quiver(&amb, r, cfg.max_fiber)).collect();
        case.outcome(rec, "quiv.monoidal.left_unitor", left_unitor(&q[0]).map(|_| true));
        case.outcome(rec, "quiv.monoidal.right_unitor", right_unitor(&q[0]).map(|_| true));
        case.outcome(rec, "quiv.monoidal.associator", associator(&q[0], &q[1], &q[2]).map(|_| true));
        case.outcome(rec, "quiv.monoidal.triangle", triangle_holds(&q[0], &q[1]));
        case.outcome(rec, "quiv.monoidal.pentagon", pentagon_holds(&q[0], &q[1], &q[2], &q[3]));
    })
}

fn slice(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    run_seeded(cfg, exec, "quiv.slice", cfg.cases, |r, case, rec| {
        use rand::Rng;
        let n = r.gen_range(1..=cfg.max_size.max(1));
        let amb = Ambient::new(Arc::new(FinCat::discrete(n)));
        let q: Vec<_> = (0..3).map(|_| random_quiver(&amb, r, cfg.max_fiber)).collect();
        case.outcome(rec, "quiv.slice.model", compare_slice_model(&q[0], &q[1]).map(|_| true));
        case.outcome(rec, "quiv.slice.monoidal", check_slice_monoidal(&q[0], &q[1], &q[2]));
        let (a2, f) = random_cell_map(&q[0], r, cfg.max_fiber);
        let (b2, g) = random_cell_map(&q[1], r, cfg.max_fiber);
        case.outcome(rec, "quiv.slice.natural", slice_naturality((&q[0], &a2, &f), (&q[1], &b2, &g)));
    })
}

fn segal(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    run_seeded(cfg, exec, "quiv.segal", cfg.cases, |r, case, rec| {
        let p = bounded(r, cfg.max_size, |p: &crate::quiv::Precategory| p.n(), random_precategory);
        case.outcome(rec, "quiv.segal.precategory_laws", check_precategory(&p).map(|rep| rep.passed()));
        let rt = segal_round_trip(&p, 4);
        case.outcome(rec, "quiv.segal.round_trip", rt.map(|t| t == RoundTrip { precategory: true, segal: true }));
    })
}
