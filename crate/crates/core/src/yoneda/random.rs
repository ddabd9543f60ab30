//! Seeded presheaf instances: free presheaves on random generators,
//! quotiented at random until every fiber is small.

use rand::seq::SliceRandom;
use rand::Rng;

use super::module::Module;
use super::presheaf::{free_module, Presheaves};
use crate::quiv::random::{random_set_functor, SuiteRng};

/// A presheaf on `ps.base` with fibers of at most `max_fiber` elements.
pub fn random_presheaf(ps: &Presheaves, rng: &mut SuiteRng, max_fiber: usize) -> Module {
    let xo = ps.op.amb().x.clone();
    let g = random_set_functor(&xo, rng, 2, 2);
    let mut f = free_module(ps, &g).expect("free presheaves exist");
    let extra = rng.gen_range(0..=1);
    for round in 0.. {
        let big: Vec<usize> = (0..f.n()).filter(|&x| f.size(x) > max_fiber).collect();
        let pool: Vec<usize> = if big.is_empty() {
            if round >= extra {
                break;
            }
            (0..f.n()).filter(|&x| f.size(x) >= 2).collect()
        } else {
            big
        };
        let Some(&x) = pool.choose(rng) else { break };
        let e1 = rng.gen_range(0..f.size(x));
        let e2 = (e1 + rng.gen_range(1..f.size(x))) % f.size(x);
        f = f.quotient(x, e1, e2);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiv::random::{random_precategory, rng};

    #[test]
    fn fibers_are_bounded_and_modules_are_valid() {
        let mut r = rng(21);
        for _ in 0..30 {
            let ps = Presheaves::new(random_precategory(&mut r));
            let f = random_presheaf(&ps, &mut r, 2);
            assert!((0..f.n()).all(|x| f.size(x) <= 2));
            assert!(f.check().is_empty());
        }
    }

    #[test]
    fn same_seed_same_presheaf() {
        let ps = Presheaves::new(random_precategory(&mut rng(2)));
        let a = random_presheaf(&ps, &mut rng(9), 3);
        let b = random_presheaf(&ps, &mut rng(9), 3);
        assert_eq!(a.carrier, b.carrier);
    }
}
