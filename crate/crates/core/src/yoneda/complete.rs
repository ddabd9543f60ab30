use std::collections::HashMap;
use std::sync::Arc;

use super::module::{module_iso, module_maps, Module, ModuleMap};
use super::presheaf::{yoneda_map, yoneda_presheaf, Presheaves};
use super::YonedaError;
use crate::fincat::{FinCat, Obj};
use crate::quiv::random::inflate;
use crate::quiv::{Ambient, Precategory, Quiver, QuiverMap};

/// The precategory `(i, j) ↦ hom(F_i, F_j)` over the discrete set of
/// indices, with the maps that realize each element.
#[derive(Debug, Clone)]
pub struct Endomorphisms {
    pub precat: Precategory,
    /// `maps[i·k + j]` lists `hom(F_i, F_j)` in element order.
    pub maps: Vec<Vec<ModuleMap>>,
}

impl Endomorphisms {
    /// The element of `hom(F_i, F_j)` given by a map.
    pub fn index_of(&self, i: Obj, j: Obj, m: &ModuleMap) -> Option<usize> {
        self.maps[i * self.precat.n() + j].iter().position(|x| x == m)
    }
}

pub fn endomorphism_precat(objs: &[Module], cap: usize) -> Result<Endomorphisms, YonedaError> {
    let k = objs.len();
    let mut maps = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            maps.push(module_maps(&objs[i], &objs[j], cap)?);
        }
    }
    let index: Vec<HashMap<&ModuleMap, usize>> = maps.iter().map(|l| l.iter().enumerate().map(|(e, m)| (m, e)).collect()).collect();
    let amb = Ambient::new(Arc::new(FinCat::discrete(k)));
    let sizes: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| maps[i * k + j].len()).collect()).collect();
    let quiver = Quiver::discrete(amb, &sizes)?;
    let mut unit = QuiverMap { comps: vec![Vec::new(); k * k] };
    for i in 0..k {
        let id = ModuleMap::identity(&objs[i]);
        let e = index[i * k + i].get(&id).ok_or_else(|| YonedaError::NotAModule("identity missing from hom".into()))?;
        unit.comps[i * k + i] = vec![*e];
    }
    let precat = Precategory::from_pointwise(quiver, unit, |x, y, z, a, b| {
        let composite = maps[x * k + y][b].then(&maps[y * k + z][a]);
        index[x * k + z][&composite]
    })?;
    Ok(Endomorphisms { precat, maps })
}

/// The contractible groupoid on two objects.
pub fn jay() -> Precategory {
    let (c, _) = inflate(&FinCat::point(), &[1]);
    Precategory::from_category(&c).expect("groupoids are categories")
}

/// No two distinct objects are joined by an isomorphism.
pub fn completeness_check(p: &Precategory) -> Result<bool, YonedaError> {
    if !p.amb().is_discrete() {
        return Err(YonedaError::NotDiscrete("completeness".into()));
    }
    let n = p.n();
    let iso = |x: Obj, y: Obj| {
        (0..p.size(x, y)).any(|a| {
            (0..p.size(y, x)).any(|b| p.compose(x, y, x, b, a) == p.identity(x) && p.compose(y, x, y, a, b) == p.identity(y))
        })
    };
    Ok((0..n).all(|x| (x + 1..n).all(|y| !iso(x, y))))
}

/// The precategory on isomorphism classes of representable presheaves.
#[derive(Debug, Clone)]
pub struct Completion {
    pub precat: Precategory,
    /// Class of each original object; classes are numbered by least member.
    pub classes: Vec<Obj>,
    /// `unit[x·n + y][a]`: the image of `a ∈ 𝓐(x, y)`.
    pub unit: Vec<Vec<usize>>,
}

impl Completion {
    /// The unit is bijective on every hom-set and preserves identities
    /// and composition.
    pub fn unit_fully_faithful(&self, p: &Precategory) -> bool {
        let n = p.n();
        let q = &self.precat;
        let c = &self.classes;
        let bij = (0..n * n).all(|cell| {
            let (x, y) = (cell / n, cell % n);
            let mut seen = vec![false; q.size(c[x], c[y])];
            self.unit[cell].len() == seen.len() && self.unit[cell].iter().all(|&e| !std::mem::replace(&mut seen[e], true))
        });
        bij && (0..n).all(|x| self.unit[x * n + x][p.identity(x)] == q.identity(c[x]))
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        (0..p.size(y, z)).all(|a| {
                            (0..p.size(x, y)).all(|b| {
                                let lhs = self.unit[x * n + z][p.compose(x, y, z, a, b)];
                                lhs == q.compose(c[x], c[y], c[z], self.unit[y * n + z][a], self.unit[x * n + y][b])
                            })
                        })
                    })
                })
            })
    }

    /// The unit is an isomorphism of precategories.
    pub fn is_isomorphism(&self, p: &Precategory) -> bool {
        let mut c = self.classes.clone();
        c.dedup();
        c.len() == p.n() && self.precat.n() == p.n() && self.unit_fully_faithful(p)
    }
}

pub fn completion(p: &Precategory, cap: usize) -> Result<Completion, YonedaError> {
    if !p.amb().is_discrete() {
        return Err(YonedaError::NotDiscrete("completion".into()));
    }
    let ps = Presheaves::new(p.clone());
    let n = p.n();
    let ys: Vec<Module> = (0..n).map(|x| yoneda_presheaf(&ps, x)).collect();
    let mut reps: Vec<Obj> = Vec::new();
    let mut classes = Vec::with_capacity(n);
    // For each x: Y(x) → Y(rep) and back.
    let mut isos = Vec::with_capacity(n);
    for x in 0..n {
        let mut found = None;
        for (k, &r) in reps.iter().enumerate() {
            if let Some(pair) = module_iso(&ys[x], &ys[r], cap)? {
                found = Some((k, pair));
                break;
            }
        }
        let (k, pair) = match found {
            Some(f) => f,
            None => {
                reps.push(x);
                let id = ModuleMap::identity(&ys[x]);
                (reps.len() - 1, (id.clone(), id))
            }
        };
        classes.push(k);
        isos.push(pair);
    }
    let objs: Vec<Module> = reps.iter().map(|&r| ys[r].clone()).collect();
    let endo = endomorphism_precat(&objs, cap)?;
    let unit = (0..n * n)
        .map(|cell| {
            let (x, y) = (cell / n, cell % n);
            (0..p.size(x, y))
                .map(|a| {
                    let m = isos[x].1.then(&yoneda_map(&ps, x, y, a)).then(&isos[y].0);
                    endo.index_of(classes[x], classes[y], &m).expect("transported maps are module maps")
                })
                .collect()
        })
        .collect();
    Ok(Completion { precat: endo.precat, classes, unit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiv::check_precategory;
    use crate::quiv::random::{random_category, rng};

    #[test]
    fn jay_is_not_complete_and_collapses() {
        let j = jay();
        assert!(!completeness_check(&j).unwrap());
        let c = completion(&j, 1000).unwrap();
        assert_eq!(c.precat.n(), 1);
        assert_eq!(c.precat.size(0, 0), 1);
        assert_eq!(c.classes, vec![0, 0]);
        assert!(c.unit_fully_faithful(&j));
        assert!(completeness_check(&c.precat).unwrap());
    }

    #[test]
    fn posets_and_monoids_are_complete() {
        let t = vec![vec![0, 1], vec![1, 0]];
        for c in [FinCat::chain(2), FinCat::monoid(&t, 0).unwrap()] {
            let p = Precategory::from_category(&c).unwrap();
            assert!(completeness_check(&p).unwrap());
            assert!(completion(&p, 1000).unwrap().is_isomorphism(&p));
        }
    }

    #[test]
    fn single_module_gives_its_endomorphism_monoid() {
        let t = vec![vec![0, 1], vec![1, 1]];
        let p = Precategory::from_category(&FinCat::monoid(&t, 0).unwrap()).unwrap();
        let ps = Presheaves::new(p);
        let y = yoneda_presheaf(&ps, 0);
        let e = endomorphism_precat(&[y.clone(), y], 100).unwrap();
        assert!(check_precategory(&e.precat).unwrap().passed());
        assert!((0..2).all(|i| (0..2).all(|j| e.precat.size(i, j) == 2)));
    }

    #[test]
    fn completion_is_idempotent_on_seeded_inflations() {
        let mut r = rng(5);
        for _ in 0..10 {
            let c = random_category(&mut r);
            let copies: Vec<usize> = (0..c.num_objects()).map(|x| (x == 0) as usize).collect();
            let (d, pi) = inflate(&c, &copies);
            let p = Precategory::from_category(&d).unwrap();
            let done = completion(&p, 100_000).unwrap();
            assert!(done.unit_fully_faithful(&p));
            assert!(completeness_check(&done.precat).unwrap());
            assert!(done.precat.n() <= c.num_objects());
            assert_eq!(done.classes[pi.len() - 1], done.classes[0]);
            let again = completion(&done.precat, 100_000).unwrap();
            assert!(again.is_isomorphism(&done.precat));
        }
    }
}
