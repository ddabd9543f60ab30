//! Seeded generators for the randomized suites. Every function draws only
//! from the supplied generator, so a seed fixes the output.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Ambient, Precategory, Quiver, QuiverMap};
use crate::fincat::{Arrow, FinCat, SetValuedFunctor, UnionFind};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// One of: discrete on 1 to 3 objects, `[1]`, `[2]`.
pub fn random_objects(rng: &mut SuiteRng) -> FinCat {
    match rng.gen_range(0..5) {
        0 => FinCat::discrete(1),
        1 => FinCat::discrete(2),
        2 => FinCat::discrete(3),
        3 => FinCat::chain(1),
        _ => FinCat::chain(2),
    }
}

/// The quotient of `f` by the smallest congruence identifying `e₁, e₂`
/// at object `x`.
pub fn quotient(f: &SetValuedFunctor, x: usize, e1: usize, e2: usize) -> SetValuedFunctor {
    let c = &f.dom;
    let off = f.offsets();
    let mut uf = UnionFind::new(f.total());
    uf.union(off[x] + e1, off[x] + e2);
    loop {
        let mut changed = false;
        for a in 0..c.num_arrows() {
            let (s, t) = (c.src(a), c.tgt(a));
            for e in 0..f.sizes[s] {
                let r = uf.find(off[s] + e) - off[s];
                changed |= uf.union(off[t] + f.maps[a][e], off[t] + f.maps[a][r]);
            }
        }
        if !changed {
            break;
        }
    }
    // Classes never cross objects, so each object's classes are contiguous.
    let (_, cls) = uf.classes();
    let first: Vec<usize> = (0..c.num_objects()).map(|o| if f.sizes[o] > 0 { cls[off[o]] } else { 0 }).collect();
    let sizes: Vec<usize> = (0..c.num_objects())
        .map(|o| cls[off[o]..off[o + 1]].iter().max().map_or(0, |&m| m - first[o] + 1))
        .collect();
    let maps = (0..c.num_arrows())
        .map(|a| {
            let (s, t) = (c.src(a), c.tgt(a));
            (0..sizes[s])
                .map(|k| {
                    let e = (0..f.sizes[s]).find(|&e| cls[off[s] + e] - first[s] == k).expect("class has a member");
                    cls[off[t] + f.maps[a][e]] - first[t]
                })
                .collect()
        })
        .collect();
    SetValuedFunctor::new(c.clone(), sizes, maps).expect("quotients of functors are functors")
}

/// Coproduct of two set-valued functors on the same category.
pub fn coproduct(f: &SetValuedFunctor, g: &SetValuedFunctor) -> SetValuedFunctor {
    let c = &f.dom;
    let sizes = f.sizes.iter().zip(&g.sizes).map(|(a, b)| a + b).collect();
    let maps = (0..c.num_arrows())
        .map(|a| {
            let shift = f.sizes[c.tgt(a)];
            f.maps[a].iter().copied().chain(g.maps[a].iter().map(|&e| e + shift)).collect()
        })
        .collect();
    SetValuedFunctor::new(c.clone(), sizes, maps).expect("coproducts of functors are functors")
}

/// A sum of up to `gens` corepresentables, quotiented at random and then
/// until every fiber has at most `max_fiber` elements.
pub fn random_set_functor(c: &Arc<FinCat>, rng: &mut SuiteRng, gens: usize, max_fiber: usize) -> SetValuedFunctor {
    let mut f = SetValuedFunctor::empty(c.clone());
    for _ in 0..rng.gen_range(0..=gens) {
        let x = rng.gen_range(0..c.num_objects());
        f = coproduct(&f, &SetValuedFunctor::corepresentable(c.clone(), x));
    }
    let extra = rng.gen_range(0..=1);
    for round in 0.. {
        let big: Vec<usize> = (0..c.num_objects()).filter(|&o| f.sizes[o] > max_fiber).collect();
        let pool: Vec<usize> = if big.is_empty() {
            if round >= extra {
                break;
            }
            (0..c.num_objects()).filter(|&o| f.sizes[o] >= 2).collect()
        } else {
            big
        };
        let Some(&x) = pool.choose(rng) else { break };
        let e1 = rng.gen_range(0..f.sizes[x]);
        let e2 = (e1 + rng.gen_range(1..f.sizes[x])) % f.sizes[x];
        f = quotient(&f, x, e1, e2);
    }
    f
}

pub fn random_quiver(amb: &Arc<Ambient>, rng: &mut SuiteRng, max_fiber: usize) -> Quiver {
    let gens = 2 * amb.n();
    Quiver::new(amb.clone(), random_set_functor(&amb.xx, rng, gens, max_fiber)).expect("functor on X^op × X")
}

/// Over a discrete `X`: a quiver `A′` with nonempty cells wherever `A` is
/// nonempty, and a random cellwise map `A → A′`.
pub fn random_cell_map(a: &Quiver, rng: &mut SuiteRng, max_fiber: usize) -> (Quiver, QuiverMap) {
    let n = a.amb.n();
    let sizes: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| if a.size(x, y) > 0 { rng.gen_range(1..=max_fiber) } else { rng.gen_range(0..=1) })
                .collect()
        })
        .collect();
    let b = Quiver::discrete(a.amb.clone(), &sizes).expect("discrete objects");
    let comps = (0..n * n).map(|c| (0..a.body.sizes[c]).map(|_| rng.gen_range(0..b.body.sizes[c])).collect()).collect();
    (b, QuiverMap { comps })
}

/// All monoids with at most `max` elements, unit first, as tables.
pub fn small_monoids(max: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for n in 1..=max {
        let free = (n - 1) * (n - 1);
        for code in 0..n.pow(free as u32) {
            let mut t = vec![vec![0; n]; n];
            for i in 0..n {
                t[0][i] = i;
                t[i][0] = i;
            }
            let mut c = code;
            for i in 1..n {
                for j in 1..n {
                    t[i][j] = c % n;
                    c /= n;
                }
            }
            let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|d| t[t[a][b]][d] == t[a][t[b][d]])));
            if assoc {
                out.push(t);
            }
        }
    }
    out
}

/// A random poset on up to 3 objects, free category on an acyclic graph
/// with up to 3 edges, or monoid of order up to 3.
pub fn random_category(rng: &mut SuiteRng) -> FinCat {
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(1..=3);
            // A random relation along the order 0 < 1 < 2, closed transitively.
            let mut rel = vec![false; n * n];
            for i in 0..n {
                rel[i * n + i] = true;
                for j in i + 1..n {
                    rel[i * n + j] = rng.gen_bool(0.5);
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if rel[i * n + k] && rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
            FinCat::poset(n, |i, j| rel[i * n + j]).expect("closed relation is a partial order")
        }
        1 => {
            let n = rng.gen_range(1..=3);
            let edges: Vec<_> = (0..rng.gen_range(0..=3))
                .filter_map(|e| {
                    let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
                    (s < t).then(|| (s, t, format!("e{e}")))
                })
                .collect();
            FinCat::free(n, &edges).expect("edges go up, so the graph is acyclic")
        }
        _ => {
            let monoids = small_monoids(3);
            FinCat::monoid(monoids.choose(rng).expect("nonempty"), 0).expect("enumerated monoids are valid")
        }
    }
}

/// Adds `copies[x]` clones of each object `x`, each isomorphic to `x`:
/// `Hom(a, b) = Hom(π a, π b)` where `π` sends a clone to its original.
/// Returns the category and `π`.
pub fn inflate(c: &FinCat, copies: &[usize]) -> (FinCat, Vec<usize>) {
    let mut pi: Vec<usize> = (0..c.num_objects()).collect();
    for (x, &k) in copies.iter().enumerate() {
        pi.extend(std::iter::repeat(x).take(k));
    }
    let names: Vec<String> = pi
        .iter()
        .enumerate()
        .map(|(o, &x)| if o < c.num_objects() { c.object_names()[x].clone() } else { format!("{}'{o}", c.object_names()[x]) })
        .collect();
    let mut arrows = Vec::new();
    let mut triples = Vec::new();
    let mut index = std::collections::HashMap::new();
    for a in 0..pi.len() {
        for b in 0..pi.len() {
            for &f in c.hom(pi[a], pi[b]) {
                index.insert((a, b, f), arrows.len());
                triples.push((a, b, f));
                arrows.push(Arrow { name: format!("{}:{a}>{b}", c.arrows()[f].name), src: a, tgt: b });
            }
        }
    }
    let identity = (0..pi.len()).map(|a| index[&(a, a, c.id(pi[a]))]).collect();
    let d = FinCat::from_parts(names, arrows, identity, |g, f| {
        let (a, _, f1) = triples[f];
        let (_, b, g1) = triples[g];
        index.get(&(a, b, c.comp(g1, f1))).copied()
    })
    .expect("inflation of a category is a category");
    (d, pi)
}

/// A random category with planted isomorphic copies of some objects.
pub fn random_inflated(rng: &mut SuiteRng) -> (FinCat, Vec<usize>) {
    let c = random_category(rng);
    let copies: Vec<usize> = (0..c.num_objects()).map(|_| rng.gen_range(0..=1)).collect();
    let copies = if copies.iter().all(|&k| k == 0) {
        let mut k = copies;
        let i = rng.gen_range(0..k.len());
        k[i] = 1;
        k
    } else {
        copies
    };
    inflate(&c, &copies)
}

pub fn random_precategory(rng: &mut SuiteRng) -> Precategory {
    Precategory::from_category(&random_category(rng)).expect("categories give precategories")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::find_isomorphism;

    #[test]
    fn monoid_counts() {
        // Monoids of order 1, 2, 3 up to relabeling-with-fixed-unit: 1, 2, 12 tables.
        let by_size = |n| small_monoids(3).into_iter().filter(|t| t.len() == n).count();
        assert_eq!((by_size(1), by_size(2)), (1, 2));
        // Oracle: brute-force associativity over all 81 tables of order 3.
        let mut brute = 0;
        for code in 0..81usize {
            let e = [code % 3, code / 3 % 3, code / 9 % 3, code / 27];
            let t = |a: usize, b: usize| match (a, b) {
                (0, x) | (x, 0) => x,
                (a, b) => e[(a - 1) * 2 + (b - 1)],
            };
            brute += (0..27).all(|k| t(t(k % 3, k / 3 % 3), k / 9) == t(k % 3, t(k / 3 % 3, k / 9))) as usize;
        }
        assert_eq!(by_size(3), brute);
    }

    #[test]
    fn same_seed_same_output() {
        let (mut r1, mut r2) = (rng(7), rng(7));
        for _ in 0..20 {
            let (a, b) = (random_category(&mut r1), random_category(&mut r2));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn random_functors_are_valid_and_bounded() {
        let mut r = rng(1);
        for _ in 0..100 {
            let amb = Ambient::new(Arc::new(random_objects(&mut r)));
            let q = random_quiver(&amb, &mut r, 3);
            q.body.validate().unwrap();
            assert!(q.body.sizes.iter().all(|&s| s <= 3));
        }
    }

    #[test]
    fn quotient_is_the_least_congruence() {
        let c = Arc::new(FinCat::chain(1));
        let f = coproduct(&SetValuedFunctor::corepresentable(c.clone(), 0), &SetValuedFunctor::corepresentable(c.clone(), 0));
        assert_eq!(f.sizes, vec![2, 2]);
        let g = quotient(&f, 0, 0, 1);
        assert_eq!(g.sizes, vec![1, 1]);
        let h = quotient(&f, 1, 0, 1);
        assert_eq!(h.sizes, vec![2, 1]);
    }

    #[test]
    fn inflation_plants_isomorphisms() {
        let c = FinCat::chain(1);
        let (d, pi) = inflate(&c, &[1, 0]);
        assert_eq!(pi, vec![0, 1, 0]);
        assert_eq!(d.hom(0, 2).len(), 1);
        assert_eq!(d.hom(2, 0).len(), 1);
        let (sub, _) = d.full_subcategory(&[0, 1]);
        assert!(find_isomorphism(&Arc::new(sub), &Arc::new(c)).is_some());
    }
}
