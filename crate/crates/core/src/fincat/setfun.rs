use std::sync::Arc;

use super::{Arr, CatError, EquivariantSearch, FinCat, FinFunctor, Obj};

/// A functor into finite sets. `sizes[x]` is the cardinality at `x`,
/// `maps[f][e]` the image of element `e` under arrow `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetValuedFunctor {
    pub dom: Arc<FinCat>,
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

impl SetValuedFunctor {
    pub fn new(dom: Arc<FinCat>, sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self, CatError> {
        let f = SetValuedFunctor { dom, sizes, maps };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(dom: Arc<FinCat>, sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> Self {
        SetValuedFunctor { dom, sizes, maps }
    }

    pub fn validate(&self) -> Result<(), CatError> {
        let c = &self.dom;
        let bad = |m: String| Err(CatError::BadSetFunctor(m));
        if self.sizes.len() != c.num_objects() || self.maps.len() != c.num_arrows() {
            return bad("table sizes".into());
        }
        for f in 0..c.num_arrows() {
            let (x, y) = (c.src(f), c.tgt(f));
            if self.maps[f].len() != self.sizes[x] || self.maps[f].iter().any(|&e| e >= self.sizes[y]) {
                return bad(format!("arrow {f} is not a function"));
            }
        }
        for x in 0..c.num_objects() {
            if self.maps[c.id(x)].iter().enumerate().any(|(i, &e)| i != e) {
                return bad(format!("identity at {x}"));
            }
        }
        for f in 0..c.num_arrows() {
            for g in c.out_arrows(c.tgt(f)) {
                let h = c.comp(g, f);
                for e in 0..self.sizes[c.src(f)] {
                    if self.maps[h][e] != self.maps[g][self.maps[f][e]] {
                        return bad(format!("composite {g}∘{f}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, f: Arr, e: usize) -> usize {
        self.maps[f][e]
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Start of each object's block in the flattened element list.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.sizes.len() + 1);
        let mut acc = 0;
        for &s in &self.sizes {
            out.push(acc);
            acc += s;
        }
        out.push(acc);
        out
    }

    pub fn constant(dom: Arc<FinCat>, n: usize) -> Self {
        let sizes = vec![n; dom.num_objects()];
        let maps = vec![(0..n).collect(); dom.num_arrows()];
        SetValuedFunctor { dom, sizes, maps }
    }

    pub fn empty(dom: Arc<FinCat>) -> Self {
        Self::constant(dom, 0)
    }

    /// `Hom(c, −)`; the element at `x` with index `i` is `hom(c, x)[i]`.
    pub fn corepresentable(dom: Arc<FinCat>, c: Obj) -> Self {
        let sizes = (0..dom.num_objects()).map(|x| dom.hom(c, x).len()).collect();
        let maps = (0..dom.num_arrows())
            .map(|f| dom.hom(c, dom.src(f)).iter().map(|&g| dom.hom_index(dom.comp(f, g))).collect())
            .collect();
        SetValuedFunctor { dom, sizes, maps }
    }

    /// Precomposition with `q`: the functor `self ∘ q` on `q.dom`.
    pub fn restrict(&self, q: &FinFunctor) -> SetValuedFunctor {
        SetValuedFunctor {
            dom: q.dom.clone(),
            sizes: q.omap.iter().map(|&y| self.sizes[y]).collect(),
            maps: q.amap.iter().map(|&g| self.maps[g].clone()).collect(),
        }
    }

    /// Checks that `comps[x]: F(x) → G(x)` is natural.
    pub fn is_natural(&self, other: &SetValuedFunctor, comps: &[Vec<usize>]) -> bool {
        let c = &self.dom;
        if comps.len() != c.num_objects() {
            return false;
        }
        for x in 0..c.num_objects() {
            if comps[x].len() != self.sizes[x] || comps[x].iter().any(|&e| e >= other.sizes[x]) {
                return false;
            }
        }
        (0..c.num_arrows()).all(|f| {
            let (x, y) = (c.src(f), c.tgt(f));
            (0..self.sizes[x]).all(|e| comps[y][self.maps[f][e]] == other.maps[f][comps[x][e]])
        })
    }

    fn nat_search(&self, other: &SetValuedFunctor) -> EquivariantSearch {
        let c = &self.dom;
        let off = self.offsets();
        let sorts = (0..c.num_objects()).flat_map(|x| std::iter::repeat(x).take(self.sizes[x])).collect();
        let mut s = EquivariantSearch::new(sorts, other.sizes.clone());
        for f in 0..c.num_arrows() {
            if c.is_identity(f) {
                continue;
            }
            let t = s.add_table(other.maps[f].clone());
            let (x, y) = (c.src(f), c.tgt(f));
            for e in 0..self.sizes[x] {
                s.constrain(off[x] + e, off[y] + self.maps[f][e], t);
            }
        }
        s
    }
}

fn split(f: &SetValuedFunctor, flat: Vec<usize>) -> Vec<Vec<usize>> {
    let off = f.offsets();
    (0..f.sizes.len()).map(|x| flat[off[x]..off[x + 1]].to_vec()).collect()
}

/// All natural transformations `F ⇒ G`, components per object.
pub fn nat_transformations(
    f: &SetValuedFunctor,
    g: &SetValuedFunctor,
    cap: usize,
) -> Result<Vec<Vec<Vec<usize>>>, CatError> {
    Ok(f.nat_search(g).solve(cap)?.into_iter().map(|flat| split(f, flat)).collect())
}

pub fn count_nat(f: &SetValuedFunctor, g: &SetValuedFunctor, cap: usize) -> Result<usize, CatError> {
    f.nat_search(g).count(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corepresentable_on_chain() {
        let c = Arc::new(FinCat::chain(2));
        let h1 = SetValuedFunctor::corepresentable(c, 1);
        h1.validate().unwrap();
        assert_eq!(h1.sizes, vec![0, 1, 1]);
    }

    #[test]
    fn nat_count_matches_yoneda_for_corepresentables() {
        // Nat(Hom(c,−), F) ≅ F(c).
        let c = Arc::new(FinCat::free(3, &[(0, 1, "f".into()), (0, 2, "g".into())]).unwrap());
        let f = SetValuedFunctor::new(c.clone(), vec![2, 1, 3], vec![vec![0, 1], vec![0], vec![0, 1, 2], vec![0, 0], vec![2, 1]]);
        let f = f.unwrap();
        for x in 0..3 {
            let h = SetValuedFunctor::corepresentable(c.clone(), x);
            assert_eq!(count_nat(&h, &f, 1000).unwrap(), f.sizes[x]);
        }
    }

    #[test]
    fn nat_enumeration_agrees_with_brute_force() {
        let c = Arc::new(FinCat::chain(1));
        let f = SetValuedFunctor::new(c.clone(), vec![2, 2], vec![vec![0, 1], vec![1, 1], vec![0, 1]]).unwrap();
        let g = SetValuedFunctor::new(c.clone(), vec![2, 1], vec![vec![0, 1], vec![0, 0], vec![0]]).unwrap();
        let found = nat_transformations(&f, &g, 1000).unwrap();
        let mut brute = 0;
        for a in 0..4usize {
            let comps = vec![vec![a & 1, a >> 1], vec![0, 0]];
            brute += f.is_natural(&g, &comps) as usize;
        }
        assert_eq!(found.len(), brute);
        assert!(found.iter().all(|t| f.is_natural(&g, t)));
    }
}
