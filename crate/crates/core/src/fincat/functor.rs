use std::sync::Arc;

use super::{Arr, CatError, FinCat, Obj};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    pub dom: Arc<FinCat>,
    pub cod: Arc<FinCat>,
    pub omap: Vec<Obj>,
    pub amap: Vec<Arr>,
}

impl FinFunctor {
    pub fn new(dom: Arc<FinCat>, cod: Arc<FinCat>, omap: Vec<Obj>, amap: Vec<Arr>) -> Result<Self, CatError> {
        let f = FinFunctor { dom, cod, omap, amap };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(dom: Arc<FinCat>, cod: Arc<FinCat>, omap: Vec<Obj>, amap: Vec<Arr>) -> Self {
        FinFunctor { dom, cod, omap, amap }
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        let omap = (0..c.num_objects()).collect();
        let amap = (0..c.num_arrows()).collect();
        FinFunctor { dom: c.clone(), cod: c, omap, amap }
    }

    /// Exhaustive check of typing, identities and composition.
    pub fn validate(&self) -> Result<(), CatError> {
        let (c, d) = (&self.dom, &self.cod);
        if self.omap.len() != c.num_objects() || self.amap.len() != c.num_arrows() {
            return Err(CatError::BadFunctor("table sizes".into()));
        }
        if self.omap.iter().any(|&y| y >= d.num_objects()) || self.amap.iter().any(|&g| g >= d.num_arrows()) {
            return Err(CatError::BadFunctor("index out of range".into()));
        }
        for f in 0..c.num_arrows() {
            let g = self.amap[f];
            if d.src(g) != self.omap[c.src(f)] || d.tgt(g) != self.omap[c.tgt(f)] {
                return Err(CatError::BadFunctor(format!("arrow {f} mistyped")));
            }
        }
        for x in 0..c.num_objects() {
            if self.amap[c.id(x)] != d.id(self.omap[x]) {
                return Err(CatError::BadFunctor(format!("identity of {x}")));
            }
        }
        for f in 0..c.num_arrows() {
            for g in c.out_arrows(c.tgt(f)) {
                if self.amap[c.comp(g, f)] != d.comp(self.amap[g], self.amap[f]) {
                    return Err(CatError::BadFunctor(format!("composite {g}∘{f}")));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> FinFunctor {
        assert!(Arc::ptr_eq(&self.cod, &other.dom) || *self.cod == *other.dom);
        FinFunctor {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            omap: self.omap.iter().map(|&x| other.omap[x]).collect(),
            amap: self.amap.iter().map(|&f| other.amap[f]).collect(),
        }
    }

    /// Bijective on objects and arrows.
    pub fn is_isomorphism(&self) -> bool {
        bijective(&self.omap, self.cod.num_objects()) && bijective(&self.amap, self.cod.num_arrows())
    }

    pub fn inverse(&self) -> Option<FinFunctor> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut omap = vec![0; self.omap.len()];
        for (x, &y) in self.omap.iter().enumerate() {
            omap[y] = x;
        }
        let mut amap = vec![0; self.amap.len()];
        for (f, &g) in self.amap.iter().enumerate() {
            amap[g] = f;
        }
        Some(FinFunctor { dom: self.cod.clone(), cod: self.dom.clone(), omap, amap })
    }
}

pub(crate) fn bijective(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_functor_is_valid_and_invertible() {
        let c = Arc::new(FinCat::chain(2));
        let id = FinFunctor::identity(c);
        id.validate().unwrap();
        assert!(id.is_isomorphism());
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn collapsing_chain_to_point() {
        let c = Arc::new(FinCat::chain(1));
        let p = Arc::new(FinCat::point());
        let f = FinFunctor::new(c, p, vec![0, 0], vec![0, 0, 0]).unwrap();
        assert!(!f.is_isomorphism());
    }

    #[test]
    fn mistyped_functor_rejected() {
        let c = Arc::new(FinCat::chain(1));
        let d = Arc::new(FinCat::discrete(2));
        assert!(FinFunctor::new(c, d, vec![0, 1], vec![0, 0, 1]).is_err());
    }
}
