use super::colim::cocone_from;
use super::{Arr, Cocone, FinFunctor, Obj, SetValuedFunctor, UnionFind};

/// A pointwise left Kan extension together with its colimit data.
///
/// `comma[d]` lists the objects `(c, g: q c → d)` of the comma category,
/// ordered by `c` and then by the position of `g` in its hom-set.
/// `cocones[d]` has one leg per comma object. `unit[c][e]` is the image of
/// `e ∈ F(c)` in `Lan(q c)`.
#[derive(Debug, Clone)]
pub struct LeftKan {
    pub functor: SetValuedFunctor,
    pub comma: Vec<Vec<(Obj, Arr)>>,
    pub cocones: Vec<Cocone>,
    pub unit: Vec<Vec<usize>>,
    starts: Vec<Vec<usize>>,
}

impl LeftKan {
    /// Index of the comma object `(c, g)` over `d = tgt g`.
    pub fn comma_index(&self, c: Obj, g: Arr) -> usize {
        let d = self.functor.dom.tgt(g);
        self.starts[d][c] + self.functor.dom.hom_index(g)
    }

    /// The class of `e ∈ F(c)` placed over `d` along `g: q c → d`.
    pub fn class_of(&self, c: Obj, g: Arr, e: usize) -> usize {
        let d = self.functor.dom.tgt(g);
        self.cocones[d].legs[self.comma_index(c, g)][e]
    }

    /// Representative `(c, g, e)` of class `k` at `d`.
    pub fn representative(&self, d: Obj, k: usize) -> (Obj, Arr, usize) {
        let (i, e) = self.cocones[d].reps[k];
        let (c, g) = self.comma[d][i];
        (c, g, e)
    }
}

/// Left Kan extension of `f` along `q`, computed as a colimit over each
/// comma category `(q ↓ d)`.
pub fn left_kan(f: &SetValuedFunctor, q: &FinFunctor) -> LeftKan {
    let c = &q.dom;
    let d = &q.cod;
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let mut comma = Vec::with_capacity(nd);
    let mut starts = Vec::with_capacity(nd);
    let mut cocones = Vec::with_capacity(nd);
    for t in 0..nd {
        let mut objs = Vec::new();
        let mut start = Vec::with_capacity(nc);
        for x in 0..nc {
            start.push(objs.len());
            objs.extend(d.hom(q.omap[x], t).iter().map(|&g| (x, g)));
        }
        let mut off = Vec::with_capacity(objs.len() + 1);
        let mut acc = 0;
        for &(x, _) in &objs {
            off.push(acc);
            acc += f.sizes[x];
        }
        off.push(acc);
        let mut uf = UnionFind::new(acc);
        for a in 0..c.num_arrows() {
            if c.is_identity(a) {
                continue;
            }
            let (x, y) = (c.src(a), c.tgt(a));
            let qa = q.amap[a];
            for &g2 in d.hom(q.omap[y], t) {
                let i = start[x] + d.hom_index(d.comp(g2, qa));
                let j = start[y] + d.hom_index(g2);
                for e in 0..f.sizes[x] {
                    uf.union(off[i] + e, off[j] + f.maps[a][e]);
                }
            }
        }
        cocones.push(cocone_from(&mut uf, &off));
        comma.push(objs);
        starts.push(start);
    }
    let sizes: Vec<usize> = cocones.iter().map(|k| k.apex).collect();
    let maps = (0..d.num_arrows())
        .map(|h| {
            let (s, t) = (d.src(h), d.tgt(h));
            cocones[s]
                .reps
                .iter()
                .map(|&(i, e)| {
                    let (x, g) = comma[s][i];
                    cocones[t].legs[starts[t][x] + d.hom_index(d.comp(h, g))][e]
                })
                .collect()
        })
        .collect();
    let functor = SetValuedFunctor::new_unchecked(d.clone(), sizes, maps);
    let unit = (0..nc)
        .map(|x| {
            let qx = q.omap[x];
            let i = starts[qx][x] + d.hom_index(d.id(qx));
            cocones[qx].legs[i].clone()
        })
        .collect();
    LeftKan { functor, comma, cocones, unit, starts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{count_nat, FinCat};
    use std::sync::Arc;

    #[test]
    fn identity_extension_is_isomorphic() {
        let c = Arc::new(FinCat::chain(2));
        let f = SetValuedFunctor::new(c.clone(), vec![1, 2, 2], vec![
            vec![0], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 1],
        ]);
        let f = f.unwrap();
        let k = left_kan(&f, &FinFunctor::identity(c));
        k.functor.validate().unwrap();
        assert_eq!(k.functor.sizes, f.sizes);
        // Classes are renumbered by least member, so compare through the unit.
        assert!(f.is_natural(&k.functor, &k.unit));
        assert!(k.unit.iter().zip(&f.sizes).all(|(u, &n)| crate::fincat::functor::bijective(u, n)));
    }

    #[test]
    fn collapse_to_point_is_disjoint_union() {
        let c = Arc::new(FinCat::discrete(2));
        let p = Arc::new(FinCat::point());
        let q = FinFunctor::new(c.clone(), p, vec![0, 0], vec![0, 0]).unwrap();
        let f = SetValuedFunctor::new(c, vec![2, 3], vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(left_kan(&f, &q).functor.sizes, vec![5]);
    }

    #[test]
    fn inclusion_of_endpoints_into_interval() {
        let c = Arc::new(FinCat::discrete(2));
        let d = Arc::new(FinCat::chain(1));
        let (id0, id1) = (d.id(0), d.id(1));
        let q = FinFunctor::new(c.clone(), d, vec![0, 1], vec![id0, id1]).unwrap();
        let f = SetValuedFunctor::new(c, vec![1, 1], vec![vec![0], vec![0]]).unwrap();
        let k = left_kan(&f, &q);
        k.functor.validate().unwrap();
        assert_eq!(k.functor.sizes, vec![1, 2]);
        // a at 0 is sent to its copy over 1, distinct from b.
        let u = k.functor.dom.hom(0, 1)[0];
        assert_eq!(k.functor.maps[u], vec![0]);
        assert_eq!(k.unit[1], vec![1]);
    }

    #[test]
    fn adjunction_counts_on_small_instances() {
        let c = Arc::new(FinCat::free(3, &[(0, 1, "f".into()), (0, 2, "g".into())]).unwrap());
        let d = Arc::new(FinCat::chain(1));
        let up = d.hom(0, 1)[0];
        let q = FinFunctor::new(c.clone(), d.clone(), vec![0, 1, 1], vec![d.id(0), d.id(1), d.id(1), up, up]).unwrap();
        let f = SetValuedFunctor::new(c, vec![2, 1, 2], vec![vec![0, 1], vec![0], vec![0, 1], vec![0, 0], vec![1, 0]]);
        let f = f.unwrap();
        let lan = left_kan(&f, &q);
        lan.functor.validate().unwrap();
        for sizes in [[1usize, 2], [2, 2], [2, 3]] {
            for m in 0..sizes[1].pow(sizes[0] as u32) {
                let map: Vec<usize> = (0..sizes[0]).map(|i| (m / sizes[1].pow(i as u32)) % sizes[1]).collect();
                let id0: Vec<usize> = (0..sizes[0]).collect();
                let id1: Vec<usize> = (0..sizes[1]).collect();
                let g = SetValuedFunctor::new(d.clone(), sizes.to_vec(), vec![id0, map, id1]).unwrap();
                let lhs = count_nat(&lan.functor, &g, 100_000).unwrap();
                let rhs = count_nat(&f, &g.restrict(&q), 100_000).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
