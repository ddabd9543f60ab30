//! Shape structure, figures, involutions, fibrousness and flatness.

use std::sync::Arc;

use serde_json::json;

use super::{case_id, figures, Exec, Recorder, SuiteConfig};
use crate::fincat::FinCat;
use crate::shapes::{
    ass_op_compare, check_cap_cup, check_dual_segal, check_inner_faces, flat_compose_check, fold_shape, for_each_extension,
    piass_compare, segal_fibrous_check, shape, shape_glues_over_2, simplices, BmSimplex, FibrousBounds,
};

pub(super) const GROUPS: &[&str] = &["structure", "figures", "involution", "fibrous", "flat"];

pub(super) fn group(name: &str, cfg: &SuiteConfig, exec: Exec) -> Recorder {
    match name {
        "structure" => structure(cfg, exec),
        "figures" => {
            let mut rec = Recorder::default();
            figures::run(&mut rec);
            rec
        }
        "involution" => involution(cfg, exec),
        "fibrous" => fibrous(cfg, exec),
        _ => flat(cfg, exec),
    }
}

/// Work items: every simplex of dimension ≤ 1, and for higher dimensions
/// the 1-simplices whose extensions are enumerated in place.
fn items(bits: usize, max_dim: usize) -> Vec<(usize, BmSimplex)> {
    let mut out = Vec::new();
    for d in 0..=max_dim {
        let base = simplices(bits, d.min(1));
        out.extend(base.into_iter().map(|s| (d, s)));
    }
    out
}

fn for_each(bits: usize, max_dim: usize, exec: Exec, f: impl Fn(&BmSimplex, String, &mut Recorder) + Sync + Send) -> Recorder {
    let work = items(bits, max_dim);
    Recorder::merge_all(exec.map(&work, |i, (d, prefix)| {
        let mut rec = Recorder::default();
        let mut k = 0;
        for_each_extension(prefix, *d, bits, &mut |s| {
            f(s, format!("d{d}.{i:05}.{k:07}"), &mut rec);
            k += 1;
        });
        rec
    }))
}

fn structure(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    for_each(cfg.max_word, cfg.max_dim, exec, |s, case, rec| {
        let payload = |extra: serde_json::Value| json!({ "simplex": s.to_string(), "detail": extra });
        let p = match shape(s) {
            Ok(p) => {
                rec.pass("shapes.structure.acyclic_degree");
                p
            }
            Err(e) => {
                rec.fail("shapes.structure.acyclic_degree", case, payload(json!(e.to_string())));
                return;
            }
        };
        match check_cap_cup(&p) {
            Ok(revisiting) => {
                rec.pass("shapes.structure.cap_cup_local");
                rec.check("shapes.structure.cap_cup", revisiting == 0, || case.clone(), || {
                    payload(json!({ "revisiting_turns": revisiting }))
                });
            }
            Err(e) => rec.fail("shapes.structure.cap_cup_local", case.clone(), payload(json!(e.to_string()))),
        }
        let mut edges = 0;
        for i in 1..=s.dim() {
            edges += s.arrow(i).edge_count();
        }
        let (first, last) = (s.words()[0], s.words()[s.dim()]);
        let ends = p.floor_range(0).len() == first.num_vertices() && p.floor_range(s.dim()).len() == last.num_vertices();
        rec.check("shapes.structure.edges_and_ends", edges == p.edges().len() && ends, || case.clone(), || {
            payload(json!({ "edges": [p.edges().len(), edges] }))
        });
        match check_inner_faces(s) {
            Ok(lossy) => {
                rec.pass("shapes.structure.inner_face_monotone");
                rec.check("shapes.structure.inner_face_embedding", lossy == 0, || case.clone(), || {
                    payload(json!({ "non_reflecting_faces": lossy }))
                });
            }
            Err(e) => rec.fail("shapes.structure.inner_face_monotone", case.clone(), payload(json!(e.to_string()))),
        }
        rec.outcome("shapes.structure.dual_segal", &case, check_dual_segal(s, &p).map(|()| true), || payload(json!(null)));
    })
}

fn involution(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    for_each(cfg.max_word.min(3), cfg.max_dim.min(2), exec, |s, case, rec| {
        let payload = || json!({ "simplex": s.to_string() });
        if s.is_ass() {
            rec.outcome("shapes.involution.ass_op", &case, ass_op_compare(s).map(|_| true), payload);
        }
        rec.outcome("shapes.involution.piass", &case, piass_compare(s).map(|_| true), payload);
        if s.is_lm() {
            rec.outcome("shapes.involution.fold", &case, fold_shape(s).map(|_| true), payload);
        }
    })
}

/// The bases of the fibrousness check.
pub fn fibrous_bases() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![
        ("point", FinCat::point()),
        ("disc2", FinCat::discrete(2)),
        ("disc3", FinCat::discrete(3)),
        ("poset1", FinCat::chain(1)),
        ("poset2", FinCat::chain(2)),
    ]
    .into_iter()
    .map(|(n, c)| (n, Arc::new(c)))
    .collect()
}

fn fibrous(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    let bounds = FibrousBounds { max_bits: cfg.max_word.min(3), max_dim: cfg.max_dim.min(2), cap: cfg.cap };
    let bases = fibrous_bases();
    Recorder::merge_all(exec.map(&bases, |i, (name, x)| {
        let mut rec = Recorder::default();
        let case = format!("{}:{name}", case_id(i));
        match segal_fibrous_check(x, bounds) {
            Ok(r) => rec.check("shapes.fibrous.segal_fibrous", r.passed(), || case.clone(), || {
                json!({ "base": name, "failures": r.failures })
            }),
            Err(e) => rec.fail("shapes.fibrous.segal_fibrous", case, json!({ "base": name, "error": e.to_string() })),
        }
        rec
    }))
}

fn flat(cfg: &SuiteConfig, exec: Exec) -> Recorder {
    if cfg.max_dim < 2 {
        return Recorder::default();
    }
    let work = simplices(cfg.max_word, 1);
    let bits = cfg.max_word;
    let recs = exec.map(&work, |i, prefix| {
        let mut rec = Recorder::default();
        let mut k = 0;
        for_each_extension(prefix, 2, bits, &mut |s| {
            let case = format!("d2.{i:05}.{k:07}");
            k += 1;
            if !s.is_active_at(2) {
                return;
            }
            let payload = || json!({ "simplex": s.to_string() });
            let direct = flat_compose_check(s);
            let glued = shape_glues_over_2(s);
            let agree = matches!((&direct, &glued), (Ok(a), Ok(b)) if a == b);
            rec.outcome("shapes.flat.compose", &case, direct, payload);
            rec.outcome("shapes.flat.over_2", &case, glued, payload);
            rec.check("shapes.flat.agree", agree, || case.clone(), payload);
        });
        rec
    });
    Recorder::merge_all(recs)
}
