use proptest::prelude::*;

use encat::corr::random::random_correspondence;
use encat::corr::{correspondence_iso, from_over_segment, to_over_segment};
use encat::quiv::random::{random_precategory, rng};
use encat::suite::{run_groups, Exec, SuiteConfig};
use encat::yoneda::random::random_presheaf;
use encat::yoneda::{yoneda_lemma_check, Presheaves};

fn small(seed: u64) -> SuiteConfig {
    SuiteConfig { seed, cases: 6, max_word: 2, max_dim: 2, ..SuiteConfig::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reports_do_not_depend_on_execution(seed in any::<u64>()) {
        let cfg = small(seed);
        for (suite, group) in [("quiv", "segal"), ("yoneda", "lemma"), ("corr", "roundtrip"), ("shapes", "structure")] {
            let a = run_groups(suite, &[group], &cfg, Exec::Sequential).unwrap();
            let b = run_groups(suite, &[group], &cfg, Exec::Parallel).unwrap();
            prop_assert_eq!(a.to_json(), b.to_json());
            prop_assert!(a.laws.iter().all(|l| l.counterexamples.windows(2).all(|w| w[0].case < w[1].case)));
        }
    }

    #[test]
    fn yoneda_lemma_on_seeded_presheaves(seed in any::<u64>(), fiber in 1usize..=3) {
        let mut r = rng(seed);
        let ps = Presheaves::new(random_precategory(&mut r));
        let f = random_presheaf(&ps, &mut r, fiber);
        for x in 0..ps.n() {
            prop_assert!(yoneda_lemma_check(&ps, x, &f, 1_000_000).unwrap().passed());
        }
    }

    #[test]
    fn over_segment_round_trip(seed in any::<u64>()) {
        let k = random_correspondence(&mut rng(seed));
        let back = from_over_segment(&to_over_segment(&k).unwrap()).unwrap();
        prop_assert!(correspondence_iso(&k, &back, 1_000_000).unwrap());
    }
}
