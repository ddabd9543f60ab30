use proptest::prelude::*;

use encat::shapes::{
    check_structure, inner_face, shape, shape_arrow, BmArrow, BmSimplex, BmWord, ComponentKind, classify_components,
};

fn word() -> impl Strategy<Value = BmWord> {
    (0usize..5).prop_flat_map(|n| (Just(n), 0..=n + 1)).prop_map(|(n, z)| BmWord::new(n, z).unwrap())
}

fn monotone(np: usize, n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..=n, np + 1).prop_map(|mut v| {
        v.sort_unstable();
        v
    })
}

fn simplex(max_dim: usize) -> impl Strategy<Value = BmSimplex> {
    (word(), proptest::collection::vec((0usize..4, any::<u64>()), 0..=max_dim)).prop_map(|(w, steps)| {
        let mut s = BmSimplex::vertex(w);
        for (np, seed) in steps {
            let n = s.words().last().unwrap().len();
            // A deterministic monotone map from the seed.
            let mut phi: Vec<usize> = (0..=np).map(|t| ((seed >> (8 * t)) as usize) % (n + 1)).collect();
            phi.sort_unstable();
            s = s.push(phi).unwrap();
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn shapes_are_disjoint_chains(s in simplex(3)) {
        let counts = check_structure(&s).unwrap();
        let p = shape(&s).unwrap();
        let total: usize = p.components().iter().map(Vec::len).sum();
        prop_assert_eq!(total, p.len());
        prop_assert!(counts.lossy_faces <= s.dim().saturating_sub(1));
    }

    #[test]
    fn arrow_edge_count(w in word(), np in 0usize..4, seed in any::<u64>()) {
        let n = w.len();
        let mut phi: Vec<usize> = (0..=np).map(|t| ((seed >> (8 * t)) as usize) % (n + 1)).collect();
        phi.sort_unstable();
        let f = BmArrow::new(w, phi.clone()).unwrap();
        let v = f.tgt();
        let expect = if v.alpha() == 1 { v.k() + w.k() + 1 - phi[0] } else { v.k() + phi[v.k()] - phi[0] };
        prop_assert_eq!(shape_arrow(&f).edges().len(), expect);
    }

    #[test]
    fn inner_faces_are_monotone_and_injective(s in simplex(3)) {
        for i in 1..s.dim() {
            let face = inner_face(&s, i).unwrap();
            let mut seen = face.map.clone();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), face.map.len());
        }
    }

    #[test]
    fn degeneracies_duplicate_floors(w in word()) {
        let id = BmArrow::identity(w);
        let report = classify_components(&id);
        for c in &report.components {
            prop_assert!(matches!(c.kind, ComponentKind::Upward | ComponentKind::Downward));
        }
        prop_assert_eq!(report.components.len(), w.num_vertices());
    }

    #[test]
    fn op_is_an_involution(s in simplex(3)) {
        prop_assert_eq!(s.op().op(), s.clone());
        let ops: Vec<BmWord> = s.words().iter().map(BmWord::op).collect();
        prop_assert_eq!(s.op().words().to_vec(), ops);
    }
}
