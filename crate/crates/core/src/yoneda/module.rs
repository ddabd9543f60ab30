use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::YonedaError;
use crate::fincat::{opposite, EquivariantSearch, Obj, SetValuedFunctor};
use crate::quiv::{Ambient, Precategory, Quiver, QuiverMap};

/// A left module over a precategory `𝓐` on `X`: a functor `F: X → Set`
/// with an action `𝓐(x, y) × F(x) → F(y)`.
///
/// `action[cell(x, y)][a·|F(x)| + e]` is `a·e ∈ F(y)`.
#[derive(Debug, Clone)]
pub struct Module {
    pub precat: Arc<Precategory>,
    pub carrier: SetValuedFunctor,
    pub action: Vec<Vec<usize>>,
}

impl Module {
    /// Builds and checks every module law.
    pub fn new(precat: Arc<Precategory>, carrier: SetValuedFunctor, action: Vec<Vec<usize>>) -> Result<Self, YonedaError> {
        let m = Module { precat, carrier, action };
        let failures = m.check();
        if let Some(f) = failures.first() {
            return Err(YonedaError::NotAModule(f.clone()));
        }
        Ok(m)
    }

    pub fn from_pointwise(
        precat: Arc<Precategory>,
        carrier: SetValuedFunctor,
        f: impl Fn(Obj, Obj, usize, usize) -> usize,
    ) -> Result<Self, YonedaError> {
        let n = precat.n();
        let action = (0..n * n)
            .map(|c| {
                let (x, y) = (c / n, c % n);
                (0..precat.size(x, y))
                    .flat_map(|a| (0..carrier.sizes[x]).map(move |e| (a, e)))
                    .map(|(a, e)| f(x, y, a, e))
                    .collect()
            })
            .collect();
        Module::new(precat, carrier, action)
    }

    pub fn apply(&self, x: Obj, y: Obj, a: usize, e: usize) -> usize {
        self.action[self.precat.amb().cell(x, y)][a * self.carrier.sizes[x] + e]
    }

    pub fn n(&self) -> usize {
        self.precat.n()
    }

    pub fn size(&self, x: Obj) -> usize {
        self.carrier.sizes[x]
    }

    /// Every violated law, described. Empty for a module.
    ///
    /// A map `𝓐 ⊗ F → F` is the same as an action dinatural in `x` and
    /// natural in `y`, so the laws are checked on identity representatives.
    pub fn check(&self) -> Vec<String> {
        let p = &self.precat;
        let amb = p.amb();
        let x = &amb.x;
        let n = p.n();
        let f = &self.carrier;
        let mut out = Vec::new();
        if *f.dom != **x || self.action.len() != n * n {
            out.push("carrier lives on another category".into());
            return out;
        }
        for c in 0..n * n {
            let (s, t) = (c / n, c % n);
            if self.action[c].len() != p.size(s, t) * f.sizes[s] || self.action[c].iter().any(|&e| e >= f.sizes[t]) {
                out.push(format!("action table ({s}, {t}) has the wrong shape"));
                return out;
            }
        }
        for pa in 0..x.num_arrows() {
            let (s2, s) = (x.src(pa), x.tgt(pa));
            for t in 0..n {
                for a in 0..p.size(s, t) {
                    let a2 = p.quiver.act(pa, x.id(t), a);
                    if (0..f.sizes[s2]).any(|e| self.apply(s2, t, a2, e) != self.apply(s, t, a, f.maps[pa][e])) {
                        out.push(format!("action not dinatural along arrow {pa} at ({s}, {t})"));
                    }
                }
            }
        }
        for q in 0..x.num_arrows() {
            let (t, t2) = (x.src(q), x.tgt(q));
            for s in 0..n {
                for a in 0..p.size(s, t) {
                    let a2 = p.quiver.act(x.id(s), q, a);
                    if (0..f.sizes[s]).any(|e| self.apply(s, t2, a2, e) != f.maps[q][self.apply(s, t, a, e)]) {
                        out.push(format!("action not natural along arrow {q} at ({s}, {t})"));
                    }
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                for (i, &g) in x.hom(s, t).iter().enumerate() {
                    let u = p.unit.comps[amb.cell(s, t)][i];
                    if (0..f.sizes[s]).any(|e| self.apply(s, t, u, e) != f.maps[g][e]) {
                        out.push(format!("unit acts wrongly at ({s}, {t})"));
                    }
                }
            }
        }
        for s in 0..n {
            for m in 0..n {
                for t in 0..n {
                    for a in 0..p.size(m, t) {
                        for b in 0..p.size(s, m) {
                            let ab = p.compose(s, m, t, a, b);
                            if (0..f.sizes[s]).any(|e| self.apply(s, t, ab, e) != self.apply(m, t, a, self.apply(s, m, b, e))) {
                                out.push(format!("action not associative at ({s}, {m}, {t})"));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The quotient by the least congruence identifying `e₁, e₂ ∈ F(x)`.
    pub fn quotient(&self, x: Obj, e1: usize, e2: usize) -> Module {
        let f = &self.carrier;
        let c = &f.dom;
        let n = self.n();
        let off = f.offsets();
        let mut uf = crate::fincat::UnionFind::new(f.total());
        uf.union(off[x] + e1, off[x] + e2);
        // Every unary operation: carrier arrows and action by single elements.
        let mut ops: Vec<(Obj, Obj, Vec<usize>)> = (0..c.num_arrows()).map(|a| (c.src(a), c.tgt(a), f.maps[a].clone())).collect();
        for s in 0..n {
            for t in 0..n {
                for a in 0..self.precat.size(s, t) {
                    ops.push((s, t, (0..f.sizes[s]).map(|e| self.apply(s, t, a, e)).collect()));
                }
            }
        }
        loop {
            let mut changed = false;
            for (s, t, table) in &ops {
                for e in 0..f.sizes[*s] {
                    let r = uf.find(off[*s] + e) - off[*s];
                    changed |= uf.union(off[*t] + table[e], off[*t] + table[r]);
                }
            }
            if !changed {
                break;
            }
        }
        let (_, cls) = uf.classes();
        let first: Vec<usize> = (0..n).map(|o| if f.sizes[o] > 0 { cls[off[o]] } else { 0 }).collect();
        let sizes: Vec<usize> = (0..n).map(|o| cls[off[o]..off[o + 1]].iter().max().map_or(0, |&m| m - first[o] + 1)).collect();
        let rep = |o: Obj, k: usize| (0..f.sizes[o]).find(|&e| cls[off[o] + e] - first[o] == k).expect("class has a member");
        let down = |o: Obj, e: usize| cls[off[o] + e] - first[o];
        let maps = (0..c.num_arrows())
            .map(|a| (0..sizes[c.src(a)]).map(|k| down(c.tgt(a), f.maps[a][rep(c.src(a), k)])).collect())
            .collect();
        let carrier = SetValuedFunctor::new(c.clone(), sizes.clone(), maps).expect("quotient of a functor");
        let action = (0..n * n)
            .map(|cell| {
                let (s, t) = (cell / n, cell % n);
                (0..self.precat.size(s, t))
                    .flat_map(|a| (0..sizes[s]).map(move |k| (a, k)))
                    .map(|(a, k)| down(t, self.apply(s, t, a, rep(s, k))))
                    .collect()
            })
            .collect();
        Module { precat: self.precat.clone(), carrier, action }
    }
}

/// Components `F(x) → G(x)` of a map of modules.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ModuleMap {
    pub comps: Vec<Vec<usize>>,
}

impl ModuleMap {
    pub fn identity(f: &Module) -> Self {
        ModuleMap { comps: f.carrier.sizes.iter().map(|&k| (0..k).collect()).collect() }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { comps: self.comps.iter().zip(&other.comps).map(|(f, g)| f.iter().map(|&e| g[e]).collect()).collect() }
    }

    pub fn is_module_map(&self, f: &Module, g: &Module) -> bool {
        let n = f.n();
        f.carrier.is_natural(&g.carrier, &self.comps)
            && (0..n).all(|s| {
                (0..n).all(|t| {
                    (0..f.precat.size(s, t)).all(|a| {
                        (0..f.size(s)).all(|e| self.comps[t][f.apply(s, t, a, e)] == g.apply(s, t, a, self.comps[s][e]))
                    })
                })
            })
    }

    pub fn is_bijective(&self) -> bool {
        self.comps.iter().all(|c| {
            let mut seen = vec![false; c.len()];
            c.iter().all(|&e| e < c.len() && !std::mem::replace(&mut seen[e], true))
        })
    }
}

fn same_precat(a: &Arc<Precategory>, b: &Arc<Precategory>) -> bool {
    Arc::ptr_eq(a, b) || (a.quiver == b.quiver && a.unit == b.unit && a.comp == b.comp)
}

/// Every module map `F → G`, in lexicographic order of components.
pub fn module_maps(f: &Module, g: &Module, cap: usize) -> Result<Vec<ModuleMap>, YonedaError> {
    if !same_precat(&f.precat, &g.precat) {
        return Err(YonedaError::Mismatch);
    }
    let n = f.n();
    let c = &f.carrier.dom;
    let off = f.carrier.offsets();
    let sorts = (0..n).flat_map(|x| std::iter::repeat(x).take(f.size(x))).collect();
    let mut s = EquivariantSearch::new(sorts, g.carrier.sizes.clone());
    for a in 0..c.num_arrows() {
        if c.is_identity(a) {
            continue;
        }
        let t = s.add_table(g.carrier.maps[a].clone());
        let (x, y) = (c.src(a), c.tgt(a));
        for e in 0..f.size(x) {
            s.constrain(off[x] + e, off[y] + f.carrier.maps[a][e], t);
        }
    }
    for x in 0..n {
        for y in 0..n {
            for a in 0..f.precat.size(x, y) {
                if f.size(x) == 0 {
                    continue;
                }
                let t = s.add_table((0..g.size(x)).map(|e| g.apply(x, y, a, e)).collect());
                for e in 0..f.size(x) {
                    s.constrain(off[x] + e, off[y] + f.apply(x, y, a, e), t);
                }
            }
        }
    }
    Ok(s
        .solve(cap)?
        .into_iter()
        .map(|flat| ModuleMap { comps: (0..n).map(|x| flat[off[x]..off[x + 1]].to_vec()).collect() })
        .collect())
}

/// A module isomorphism `F → G` with its inverse, if one exists.
pub fn module_iso(f: &Module, g: &Module, cap: usize) -> Result<Option<(ModuleMap, ModuleMap)>, YonedaError> {
    if f.carrier.sizes != g.carrier.sizes {
        return Ok(None);
    }
    Ok(module_maps(f, g, cap)?.into_iter().find(ModuleMap::is_bijective).map(|m| {
        let inv = ModuleMap {
            comps: m
                .comps
                .iter()
                .map(|c| {
                    let mut inv = vec![0; c.len()];
                    for (e, &t) in c.iter().enumerate() {
                        inv[t] = e;
                    }
                    inv
                })
                .collect(),
        };
        (m, inv)
    }))
}

/// `𝓐^op` over `X^op`: `𝓐^op(x, y) = 𝓐(y, x)`, composition reversed.
pub fn opposite_precat(p: &Precategory) -> Precategory {
    let amb = p.amb();
    let xo = Arc::new(opposite(&amb.x));
    let ao = Ambient::new(xo);
    let n = amb.n();
    let m = amb.x.num_arrows();
    let sizes = (0..n * n).map(|c| p.quiver.body.sizes[amb.cell(c % n, c / n)]).collect();
    // In X^op, `(p, q)` acting on `𝓐^op(x, y) = 𝓐(y, x)` is `(q, p)` on `𝓐`.
    let maps = (0..m * m).map(|k| p.quiver.body.maps[amb.arrow(k % m, k / m)].clone()).collect();
    let body = SetValuedFunctor::new(ao.xx.clone(), sizes, maps).expect("transposed quiver is a functor");
    let quiver = Quiver::new(ao, body).expect("same category");
    let unit = QuiverMap { comps: (0..n * n).map(|c| p.unit.comps[amb.cell(c % n, c / n)].clone()).collect() };
    Precategory::from_pointwise(quiver, unit, |x, y, z, a, b| p.compose(z, y, x, b, a)).expect("opposite composition is well defined")
}

/// Serialized form: the carrier table and the action table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
    pub action: Vec<Vec<usize>>,
}

impl From<&Module> for ModuleJson {
    fn from(m: &Module) -> Self {
        ModuleJson { sizes: m.carrier.sizes.clone(), maps: m.carrier.maps.clone(), action: m.action.clone() }
    }
}

impl ModuleJson {
    pub fn into_module(self, precat: Arc<Precategory>) -> Result<Module, YonedaError> {
        let carrier = SetValuedFunctor::new(precat.amb().x.clone(), self.sizes, self.maps)?;
        Module::new(precat, carrier, self.action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;

    fn monoid(table: &[Vec<usize>]) -> Arc<Precategory> {
        Arc::new(Precategory::from_category(&FinCat::monoid(table, 0).unwrap()).unwrap())
    }

    /// The monoid acting on itself on the left.
    fn regular(p: &Arc<Precategory>) -> Module {
        let k = p.size(0, 0);
        let carrier = SetValuedFunctor::new(p.amb().x.clone(), vec![k], vec![(0..k).collect()]).unwrap();
        Module::from_pointwise(p.clone(), carrier, |_, _, a, e| p.compose(0, 0, 0, a, e)).unwrap()
    }

    #[test]
    fn opposite_monoid() {
        // Left-zero semigroup with unit: a·b = a for a, b ≠ 1.
        let t = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        let p = monoid(&t);
        let o = opposite_precat(&p);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(o.compose(0, 0, 0, a, b), p.compose(0, 0, 0, b, a));
            }
        }
        let oo = opposite_precat(&o);
        assert_eq!(oo.quiver.body, p.quiver.body);
        assert_eq!((oo.unit.clone(), oo.comp.clone()), (p.unit.clone(), p.comp.clone()));
    }

    #[test]
    fn opposite_of_interval_unit() {
        let amb = Ambient::new(Arc::new(FinCat::chain(1)));
        let o = opposite_precat(&Precategory::unit_precategory(&amb));
        assert_eq!((o.size(1, 0), o.size(0, 1)), (1, 0));
        assert!(crate::quiv::check_precategory(&o).unwrap().passed());
    }

    #[test]
    fn regular_module_maps_are_right_multiplications() {
        let p = monoid(&[vec![0, 1], vec![1, 1]]);
        let f = regular(&p);
        let maps = module_maps(&f, &f, 100).unwrap();
        // Oracle: brute force over all functions on 2 elements.
        let brute = (0..4usize)
            .map(|c| ModuleMap { comps: vec![vec![c & 1, c >> 1]] })
            .filter(|m| m.is_module_map(&f, &f))
            .count();
        assert_eq!(maps.len(), brute);
        assert_eq!(maps.len(), 2);
    }

    #[test]
    fn empty_source_has_one_map() {
        let p = monoid(&[vec![0, 1], vec![1, 0]]);
        let empty = Module::new(p.clone(), SetValuedFunctor::empty(p.amb().x.clone()), vec![vec![]]).unwrap();
        assert_eq!(module_maps(&empty, &regular(&p), 10).unwrap().len(), 1);
    }

    #[test]
    fn bad_action_is_rejected() {
        let p = monoid(&[vec![0, 1], vec![1, 0]]);
        let carrier = SetValuedFunctor::new(p.amb().x.clone(), vec![2], vec![vec![0, 1]]).unwrap();
        // The swap acting trivially is fine; the unit acting as a swap is not.
        assert!(Module::new(p.clone(), carrier.clone(), vec![vec![0, 1, 0, 1]]).is_ok());
        assert!(Module::new(p, carrier, vec![vec![1, 0, 0, 1]]).is_err());
    }

    #[test]
    fn quotient_is_a_module() {
        let p = monoid(&[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]);
        let f = regular(&p);
        let q = f.quotient(0, 1, 2);
        assert!(q.check().is_empty());
        assert_eq!(q.size(0), 2);
    }
}
