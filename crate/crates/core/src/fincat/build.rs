use std::sync::Arc;

use super::{Arr, Arrow, FinCat, FinFunctor, NONE};

/// Same objects and arrow ids, endpoints swapped, composition transposed.
pub fn opposite(c: &FinCat) -> FinCat {
    let n = c.num_arrows();
    let arrows = c
        .arrows()
        .iter()
        .map(|a| Arrow { name: a.name.clone(), src: a.tgt, tgt: a.src })
        .collect();
    let mut comp = vec![NONE; n * n];
    for g in 0..n {
        for f in 0..n {
            if let Some(h) = c.compose(f, g) {
                comp[g * n + f] = h as u32;
            }
        }
    }
    FinCat::from_table_unchecked(c.object_names().to_vec(), arrows, c.identities().to_vec(), comp)
}

/// Objects `(c, d)` at index `c * |D| + d`; arrows `(f, g)` at `f * |D₁| + g`.
pub fn product(c: &FinCat, d: &FinCat) -> FinCat {
    let (om, an) = (d.num_objects(), d.num_arrows());
    let mut objects = Vec::with_capacity(c.num_objects() * om);
    for x in c.object_names() {
        for y in d.object_names() {
            objects.push(format!("({x},{y})"));
        }
    }
    let mut arrows = Vec::with_capacity(c.num_arrows() * an);
    for f in c.arrows() {
        for g in d.arrows() {
            arrows.push(Arrow {
                name: format!("({},{})", f.name, g.name),
                src: f.src * om + g.src,
                tgt: f.tgt * om + g.tgt,
            });
        }
    }
    let identity = (0..c.num_objects())
        .flat_map(|x| (0..om).map(move |y| (x, y)))
        .map(|(x, y)| c.id(x) * an + d.id(y))
        .collect();
    let m = arrows.len();
    let mut comp = vec![NONE; m * m];
    for f1 in 0..c.num_arrows() {
        for g1 in c.out_arrows(c.tgt(f1)) {
            let h1 = c.comp(g1, f1);
            for f2 in 0..an {
                for g2 in d.out_arrows(d.tgt(f2)) {
                    let h2 = d.comp(g2, f2);
                    comp[(g1 * an + g2) * m + f1 * an + f2] = (h1 * an + h2) as u32;
                }
            }
        }
    }
    FinCat::from_table_unchecked(objects, arrows, identity, comp)
}

/// Twisted arrow category with its projection to `C^op × C`.
#[derive(Debug, Clone)]
pub struct Twisted {
    pub cat: Arc<FinCat>,
    pub projection: FinFunctor,
    /// For each arrow of Tw(C): the pair `(p, q)` of arrows of C.
    pub pairs: Vec<(Arr, Arr)>,
}

/// Objects are the arrows of C. A morphism `f → g` (f: x→y, g: x′→y′) is a
/// pair `(p: x′→x, q: y→y′)` with `g = q∘f∘p`.
pub fn twisted_arrows(c: &Arc<FinCat>) -> Twisted {
    let n = c.num_arrows();
    let objects: Vec<String> = c.arrows().iter().map(|a| a.name.clone()).collect();
    let mut arrows = Vec::new();
    let mut pairs = Vec::new();
    let mut index = std::collections::HashMap::new();
    for f in 0..n {
        let (x, y) = (c.src(f), c.tgt(f));
        for g in 0..n {
            let (x2, y2) = (c.src(g), c.tgt(g));
            for &p in c.hom(x2, x) {
                let fp = c.comp(f, p);
                for &q in c.hom(y, y2) {
                    if c.comp(q, fp) == g {
                        index.insert((f, g, p, q), arrows.len());
                        pairs.push((p, q));
                        let a = &c.arrows();
                        arrows.push(Arrow { name: format!("({},{})", a[p].name, a[q].name), src: f, tgt: g });
                    }
                }
            }
        }
    }
    let identity: Vec<Arr> = (0..n).map(|f| index[&(f, f, c.id(c.src(f)), c.id(c.tgt(f)))]).collect();
    let m = arrows.len();
    let mut comp = vec![NONE; m * m];
    for a in 0..m {
        for b in 0..m {
            if arrows[a].tgt != arrows[b].src {
                continue;
            }
            let (p1, q1) = pairs[a];
            let (p2, q2) = pairs[b];
            let key = (arrows[a].src, arrows[b].tgt, c.comp(p1, p2), c.comp(q2, q1));
            comp[b * m + a] = index[&key] as u32;
        }
    }
    let tw = Arc::new(FinCat::from_table_unchecked(objects, arrows, identity, comp));
    let op = opposite(c);
    let base = Arc::new(product(&op, c));
    let nobj = c.num_objects();
    let omap = (0..n).map(|f| c.src(f) * nobj + c.tgt(f)).collect();
    let amap = pairs.iter().map(|&(p, q)| p * n + q).collect();
    let projection = FinFunctor::new(tw.clone(), base, omap, amap).expect("projection is a functor");
    Twisted { cat: tw, projection, pairs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_arrow_free() -> FinCat {
        FinCat::free(3, &[(0, 1, "f".into()), (1, 2, "g".into())]).unwrap()
    }

    #[test]
    fn opposite_is_an_involution_on_tables() {
        let c = two_arrow_free();
        assert_eq!(opposite(&opposite(&c)), c);
        opposite(&c).validate().unwrap();
    }

    #[test]
    fn opposite_of_chain_reverses_the_arrow() {
        let op = opposite(&FinCat::chain(1));
        assert_eq!(op.hom(1, 0).len(), 1);
        assert!(op.hom(0, 1).is_empty());
    }

    #[test]
    fn product_counts() {
        let c = two_arrow_free();
        let d = FinCat::chain(1);
        let p = product(&c, &d);
        p.validate().unwrap();
        assert_eq!(p.num_objects(), 6);
        assert_eq!(p.num_arrows(), c.num_arrows() * d.num_arrows());
        let disc = product(&FinCat::discrete(2), &FinCat::discrete(3));
        assert!(disc.is_discrete() && disc.num_objects() == 6);
    }

    #[test]
    fn twisted_arrows_of_chain_by_brute_force() {
        let c = Arc::new(FinCat::chain(1));
        let tw = twisted_arrows(&c);
        tw.cat.validate().unwrap();
        tw.projection.validate().unwrap();
        assert_eq!(tw.cat.num_objects(), 3);
        // Oracle: count (f, g, p, q) with g = q∘f∘p by direct search.
        let mut expect = 0;
        for f in 0..3 {
            for g in 0..3 {
                for p in 0..3 {
                    for q in 0..3 {
                        let ok = c.tgt(p) == c.src(f)
                            && c.src(p) == c.src(g)
                            && c.src(q) == c.tgt(f)
                            && c.tgt(q) == c.tgt(g)
                            && c.comp(q, c.comp(f, p)) == g;
                        expect += ok as usize;
                    }
                }
            }
        }
        assert_eq!(tw.cat.num_arrows(), expect);
        assert_eq!(tw.cat.num_arrows() - tw.cat.num_objects(), 2);
    }

    #[test]
    fn twisted_projection_is_conservative_on_examples() {
        for c in [two_arrow_free(), FinCat::chain(2), FinCat::monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap()] {
            let c = Arc::new(c);
            let tw = twisted_arrows(&c);
            tw.cat.validate().unwrap();
            for a in 0..tw.cat.num_arrows() {
                let (p, q) = tw.pairs[a];
                if c.is_identity(p) && c.is_identity(q) {
                    assert!(tw.cat.is_identity(a));
                }
            }
        }
    }
}
