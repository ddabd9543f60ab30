use std::sync::Arc;

use encat::fincat::FinCat;
use encat::quiv::random::{random_cell_map, random_objects, random_precategory, random_quiver, rng};
use encat::quiv::{
    associator, check_precategory, check_slice_monoidal, compare_slice_model, left_unitor, pentagon_holds, right_unitor,
    segal_round_trip, slice_naturality, tensor, triangle_holds, Ambient, RoundTrip,
};

#[test]
fn coherence_on_seeded_quivers() {
    let mut r = rng(11);
    for _ in 0..40 {
        let amb = Ambient::new(Arc::new(random_objects(&mut r)));
        let (a, b, c) = (random_quiver(&amb, &mut r, 3), random_quiver(&amb, &mut r, 3), random_quiver(&amb, &mut r, 3));
        left_unitor(&a).unwrap();
        right_unitor(&b).unwrap();
        associator(&a, &b, &c).unwrap();
        assert!(triangle_holds(&a, &b).unwrap());
    }
}

#[test]
fn pentagon_on_seeded_quivers() {
    let mut r = rng(12);
    for _ in 0..15 {
        let amb = Ambient::new(Arc::new(random_objects(&mut r)));
        let q: Vec<_> = (0..4).map(|_| random_quiver(&amb, &mut r, 2)).collect();
        assert!(pentagon_holds(&q[0], &q[1], &q[2], &q[3]).unwrap());
    }
}

#[test]
fn interval_objects_are_covered() {
    let amb = Ambient::new(Arc::new(FinCat::chain(1)));
    let mut r = rng(13);
    let mut nonempty = 0;
    for _ in 0..20 {
        let (a, b) = (random_quiver(&amb, &mut r, 3), random_quiver(&amb, &mut r, 3));
        nonempty += (tensor(&a, &b).unwrap().quiver.total() > 0) as usize;
        associator(&a, &b, &a).unwrap();
    }
    assert!(nonempty > 0);
}

#[test]
fn slice_model_on_seeded_discrete_quivers() {
    let mut r = rng(14);
    for i in 0..40 {
        let amb = Ambient::new(Arc::new(FinCat::discrete(1 + i % 3)));
        let (a, b, c) = (random_quiver(&amb, &mut r, 3), random_quiver(&amb, &mut r, 3), random_quiver(&amb, &mut r, 3));
        compare_slice_model(&a, &b).unwrap();
        assert!(check_slice_monoidal(&a, &b, &c).unwrap());
        let (a2, f) = random_cell_map(&a, &mut r, 3);
        let (b2, g) = random_cell_map(&b, &mut r, 3);
        assert!(slice_naturality((&a, &a2, &f), (&b, &b2, &g)).unwrap());
    }
}

#[test]
fn segal_round_trips_on_seeded_precategories() {
    let mut r = rng(15);
    for _ in 0..30 {
        let p = random_precategory(&mut r);
        assert!(check_precategory(&p).unwrap().passed());
        assert_eq!(segal_round_trip(&p, 4).unwrap(), RoundTrip { precategory: true, segal: true });
    }
}
