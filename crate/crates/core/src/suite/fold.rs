//! Folding bimodules into left modules over small monoids.

use serde_json::json;

use super::{case_id, run_cases, Exec, Recorder, SuiteConfig};
use crate::fincat::FinCat;
use crate::quiv::random::small_monoids;
use crate::quiv::Precategory;
use crate::yoneda::fold_algebra_check;

pub(super) const GROUPS: &[&str] = &["algebra"];

pub(super) fn group(_: &str, cfg: &SuiteConfig, exec: Exec) -> Recorder {
    let monoids = small_monoids(2);
    let mut cases = Vec::new();
    for a in &monoids {
        for b in &monoids {
            for m in 1..=2 {
                cases.push((a.clone(), b.clone(), m));
            }
        }
    }
    run_cases(exec, cases.len(), |i, rec| {
        let (a, b, m) = &cases[i];
        let pa = Precategory::from_category(&FinCat::monoid(a, 0).expect("monoid")).expect("precategory");
        let pb = Precategory::from_category(&FinCat::monoid(b, 0).expect("monoid")).expect("precategory");
        let payload = || json!({ "left": a, "right": b, "carrier": m });
        let r = fold_algebra_check(&pa, &pb, *m, cfg.cap);
        rec.outcome("fold.algebra.fold", &case_id(i), r.map(|f| f.passed()), payload);
    })
}
