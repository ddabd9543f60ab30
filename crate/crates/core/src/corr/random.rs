//! Seeded correspondences: graphs of functors, free kernels on a few
//! generators, and cuts of random categories along an up-closed set.

use std::ops::ControlFlow;
use std::sync::Arc;

use rand::Rng;

use super::{from_over_segment, graph_correspondence, Correspondence, OverSegment};
use crate::fincat::{for_each_functor, FinCat, FinFunctor};
use crate::quiv::random::{random_category, SuiteRng};
use crate::quiv::Precategory;
use crate::yoneda::Presheaves;

/// A random functor between two random categories.
pub fn random_functor(rng: &mut SuiteRng) -> FinFunctor {
    let d = Arc::new(random_category(rng));
    let c = Arc::new(random_category(rng));
    let mut all = Vec::new();
    for_each_functor(&d, &c, 5_000, |o, a| {
        all.push((o.to_vec(), a.to_vec()));
        ControlFlow::Continue(())
    })
    .expect("small categories have few functors");
    let (o, a) = all.swap_remove(rng.gen_range(0..all.len()));
    FinFunctor::new(d, c, o, a).expect("enumerated functors are valid")
}

/// `K(c, d) = ⊔_g 𝓒(c, c_g) × 𝓓(d_g, d)` for random generators `(c_g, d_g)`.
pub fn free_correspondence(c: &FinCat, d: &FinCat, gens: &[(usize, usize)]) -> Correspondence {
    let (nc, nd) = (c.num_objects(), d.num_objects());
    // Offsets of each generator's block in K(x, y).
    let offsets = |x: usize, y: usize| -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(gens.len() + 1);
        for &(cg, dg) in gens {
            out.push(acc);
            acc += c.hom(x, cg).len() * d.hom(dg, y).len();
        }
        out.push(acc);
        out
    };
    let decode = |x: usize, y: usize, e: usize| -> (usize, usize, usize) {
        let off = offsets(x, y);
        let g = (0..gens.len()).find(|&g| off[g] <= e && e < off[g + 1]).expect("element in a block");
        let w = d.hom(gens[g].1, y).len();
        (g, (e - off[g]) / w, (e - off[g]) % w)
    };
    let encode = |x: usize, y: usize, g: usize, al: usize, be: usize| offsets(x, y)[g] + al * d.hom(gens[g].1, y).len() + be;
    let sizes: Vec<Vec<usize>> = (0..nc).map(|x| (0..nd).map(|y| offsets(x, y)[gens.len()]).collect()).collect();
    let source = Presheaves::new(Precategory::from_category(c).expect("categories give precategories"));
    let target = Arc::new(Precategory::from_category(d).expect("categories give precategories"));
    Correspondence::from_pointwise(
        source,
        target,
        &sizes,
        |x2, x, y, a, e| {
            let (g, al, be) = decode(x, y, e);
            let cg = gens[g].0;
            encode(x2, y, g, c.hom_index(c.comp(c.hom(x, cg)[al], c.hom(x2, x)[a])), be)
        },
        |x, y, y2, b, e| {
            let (g, al, be) = decode(x, y, e);
            let dg = gens[g].1;
            encode(x, y2, g, al, d.hom_index(d.comp(d.hom(y, y2)[b], d.hom(dg, y)[be])))
        },
    )
    .expect("free kernels are correspondences")
}

/// A random category cut along the objects reachable from one of them,
/// in its own object order. `None` when the cut leaves a side empty.
pub fn random_cut(rng: &mut SuiteRng) -> Option<OverSegment> {
    let c = random_category(rng);
    let x = rng.gen_range(0..c.num_objects());
    let side: Vec<u8> = (0..c.num_objects()).map(|y| !c.hom(x, y).is_empty() as u8).collect();
    if side.iter().all(|&s| s == 1) {
        return None;
    }
    Some(OverSegment::from_category(c, side).expect("up-closed sets have no arrows back"))
}

/// A category over `[1]`, drawn as a cut or as the total category of a
/// random correspondence.
pub fn random_over_segment(rng: &mut SuiteRng) -> OverSegment {
    for _ in 0..4 {
        if let Some(o) = random_cut(rng) {
            return o;
        }
    }
    super::to_over_segment(&random_correspondence(rng)).expect("correspondences have total categories")
}

pub fn random_correspondence(rng: &mut SuiteRng) -> Correspondence {
    match rng.gen_range(0..3) {
        0 => graph_correspondence(&random_functor(rng)).expect("graphs of functors are correspondences"),
        1 => {
            let (c, d) = (random_category(rng), random_category(rng));
            let gens: Vec<(usize, usize)> =
                (0..rng.gen_range(0..=2)).map(|_| (rng.gen_range(0..c.num_objects()), rng.gen_range(0..d.num_objects()))).collect();
            free_correspondence(&c, &d, &gens)
        }
        _ => match random_cut(rng) {
            Some(o) => from_over_segment(&o).expect("cuts of complete categories are correspondences"),
            None => random_correspondence(rng),
        },
    }
}
