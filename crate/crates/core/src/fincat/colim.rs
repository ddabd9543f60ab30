use super::{Obj, SetValuedFunctor, UnionFind};

/// A cocone under a set-valued diagram: `legs[x][e]` is the class of
/// element `e` at `x`. `reps[k]` is the least `(object, element)` of class `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone {
    pub apex: usize,
    pub legs: Vec<Vec<usize>>,
    pub reps: Vec<(Obj, usize)>,
}

impl Cocone {
    /// Legs commute with every arrow and jointly cover the apex.
    pub fn is_cocone_of(&self, f: &SetValuedFunctor) -> bool {
        let c = &f.dom;
        let commutes = (0..c.num_arrows()).all(|a| {
            let (x, y) = (c.src(a), c.tgt(a));
            (0..f.sizes[x]).all(|e| self.legs[y][f.maps[a][e]] == self.legs[x][e])
        });
        let mut hit = vec![false; self.apex];
        for leg in &self.legs {
            for &k in leg {
                hit[k] = true;
            }
        }
        commutes && hit.into_iter().all(|h| h)
    }

    /// The unique map from the apex to another cocone's apex, if the other
    /// legs commute with the diagram.
    pub fn mediating(&self, f: &SetValuedFunctor, other: &[Vec<usize>]) -> Option<Vec<usize>> {
        let mut out = vec![usize::MAX; self.apex];
        for (x, leg) in self.legs.iter().enumerate() {
            for (e, &k) in leg.iter().enumerate() {
                let v = other[x][e];
                if out[k] == usize::MAX {
                    out[k] = v;
                } else if out[k] != v {
                    return None;
                }
            }
        }
        let c = &f.dom;
        let commutes = (0..c.num_arrows()).all(|a| {
            let (x, y) = (c.src(a), c.tgt(a));
            (0..f.sizes[x]).all(|e| other[y][f.maps[a][e]] == other[x][e])
        });
        commutes.then_some(out)
    }
}

/// Colimit of a set-valued functor: the disjoint union modulo `e ~ F(f)(e)`.
pub fn colim_set(f: &SetValuedFunctor) -> Cocone {
    let c = &f.dom;
    let off = f.offsets();
    let mut uf = UnionFind::new(f.total());
    for a in 0..c.num_arrows() {
        if c.is_identity(a) {
            continue;
        }
        let (x, y) = (c.src(a), c.tgt(a));
        for e in 0..f.sizes[x] {
            uf.union(off[x] + e, off[y] + f.maps[a][e]);
        }
    }
    cocone_from(&mut uf, &off)
}

pub(crate) fn cocone_from(uf: &mut UnionFind, off: &[usize]) -> Cocone {
    let (apex, cls) = uf.classes();
    let blocks = off.len() - 1;
    let mut reps = vec![(usize::MAX, 0); apex];
    let mut legs = Vec::with_capacity(blocks);
    for x in 0..blocks {
        let leg: Vec<usize> = cls[off[x]..off[x + 1]].to_vec();
        for (e, &k) in leg.iter().enumerate() {
            if reps[k].0 == usize::MAX {
                reps[k] = (x, e);
            }
        }
        legs.push(leg);
    }
    Cocone { apex, legs, reps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;
    use std::sync::Arc;

    fn parallel_pair() -> Arc<FinCat> {
        Arc::new(FinCat::free(2, &[(0, 1, "s".into()), (0, 1, "t".into())]).unwrap())
    }

    #[test]
    fn constant_on_connected_collapses() {
        let c = Arc::new(FinCat::chain(2));
        let k = colim_set(&SetValuedFunctor::constant(c, 3));
        assert_eq!(k.apex, 3);
    }

    #[test]
    fn discrete_gives_disjoint_union() {
        let c = Arc::new(FinCat::discrete(2));
        let f = SetValuedFunctor::new(c, vec![1, 2], vec![vec![0], vec![0, 1]]).unwrap();
        let k = colim_set(&f);
        assert_eq!(k.apex, 3);
        assert_eq!(k.reps, vec![(0, 0), (1, 0), (1, 1)]);
    }

    /// Oracle: closure of the relation by repeated relaxation over labels.
    fn closure_classes(f: &SetValuedFunctor) -> usize {
        let off = f.offsets();
        let mut label: Vec<usize> = (0..f.total()).collect();
        loop {
            let mut changed = false;
            for a in 0..f.dom.num_arrows() {
                let (x, y) = (f.dom.src(a), f.dom.tgt(a));
                for e in 0..f.sizes[x] {
                    let (i, j) = (off[x] + e, off[y] + f.maps[a][e]);
                    let m = label[i].min(label[j]);
                    if label[i] != m || label[j] != m {
                        label[i] = m;
                        label[j] = m;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut l = label;
        l.sort();
        l.dedup();
        l.len()
    }

    #[test]
    fn coequalizer_instance() {
        // s ≡ const p, t = swap on {1,2} → {p,q}.
        let f = SetValuedFunctor::new(parallel_pair(), vec![2, 2], vec![vec![0, 1], vec![0, 1], vec![0, 0], vec![1, 0]]);
        let f = f.unwrap();
        let k = colim_set(&f);
        assert_eq!(k.apex, closure_classes(&f));
        assert!(k.is_cocone_of(&f));
    }

    #[test]
    fn universal_property_by_enumeration() {
        let f = SetValuedFunctor::new(parallel_pair(), vec![2, 3], vec![vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![1, 2]]);
        let f = f.unwrap();
        let k = colim_set(&f);
        let target = 2usize;
        let total = f.total();
        let mut checked = 0;
        for code in 0..target.pow(total as u32) {
            let mut flat = Vec::new();
            let mut c = code;
            for _ in 0..total {
                flat.push(c % target);
                c /= target;
            }
            let legs = vec![flat[..2].to_vec(), flat[2..].to_vec()];
            let is_cocone = (0..f.dom.num_arrows()).all(|a| {
                let (x, y) = (f.dom.src(a), f.dom.tgt(a));
                (0..f.sizes[x]).all(|e| legs[y][f.maps[a][e]] == legs[x][e])
            });
            if !is_cocone {
                continue;
            }
            checked += 1;
            let mut mediators = 0;
            for m in 0..target.pow(k.apex as u32) {
                let map: Vec<usize> = (0..k.apex).map(|i| (m / target.pow(i as u32)) % target).collect();
                let ok = (0..2).all(|x| (0..f.sizes[x]).all(|e| map[k.legs[x][e]] == legs[x][e]));
                mediators += ok as usize;
            }
            assert_eq!(mediators, 1);
            assert!(k.mediating(&f, &legs).is_some());
        }
        assert!(checked > 0);
    }
}
