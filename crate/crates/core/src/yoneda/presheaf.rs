use std::sync::Arc;

use serde::Serialize;

use super::module::{module_iso, module_maps, opposite_precat, Module, ModuleMap};
use super::YonedaError;
use crate::fincat::{count_nat, Obj, SetValuedFunctor};
use crate::quiv::{act, Precategory};

/// A precategory `𝓐` with its opposite. Presheaves on `𝓐` are left
/// modules over `𝓐^op`, with carriers on `X^op`.
#[derive(Debug, Clone)]
pub struct Presheaves {
    pub base: Arc<Precategory>,
    pub op: Arc<Precategory>,
}

impl Presheaves {
    pub fn new(p: Precategory) -> Self {
        let op = Arc::new(opposite_precat(&p));
        Presheaves { base: Arc::new(p), op }
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }
}

/// `𝓞(x, −)` as a left module over `𝓞` by composition.
pub fn representable(o: &Arc<Precategory>, x: Obj) -> Module {
    let c = o.amb().x.clone();
    let n = o.n();
    let sizes = (0..n).map(|z| o.size(x, z)).collect();
    let maps = (0..c.num_arrows()).map(|q| (0..o.size(x, c.src(q))).map(|e| o.quiver.act(c.id(x), q, e)).collect()).collect();
    let carrier = SetValuedFunctor::new(c, sizes, maps).expect("representables are functors");
    Module::from_pointwise(o.clone(), carrier, |z, t, a, e| o.compose(x, z, t, a, e)).expect("composition is an action")
}

/// `Y(x) = 𝓐(−, x)` with `𝓐` acting by precomposition.
pub fn yoneda_presheaf(ps: &Presheaves, x: Obj) -> Module {
    representable(&ps.op, x)
}

/// `a ∈ 𝓐(x, y)` as the map `Y(x) → Y(y)`, `e ↦ a ∘ e`.
pub fn yoneda_map(ps: &Presheaves, x: Obj, y: Obj, a: usize) -> ModuleMap {
    ModuleMap { comps: (0..ps.n()).map(|z| (0..ps.base.size(z, x)).map(|e| ps.base.compose(z, x, y, a, e)).collect()).collect() }
}

/// The free presheaf `𝓐^op ⊗ G` on a functor `G: X^op → Set`, with
/// `a · [φ, a′, g] = [φ, a ∘ a′, g]`.
pub fn free_module(ps: &Presheaves, g: &SetValuedFunctor) -> Result<Module, YonedaError> {
    let o = &ps.op;
    let n = o.n();
    if *g.dom != *o.amb().x {
        return Err(YonedaError::Mismatch);
    }
    let t = act(&o.quiver, g)?;
    let x = &o.amb().x;
    let mut action = Vec::with_capacity(n * n);
    for s in 0..n {
        for u in 0..n {
            let ks = t.functor.sizes[s];
            let mut table = vec![usize::MAX; o.size(s, u) * ks];
            for a in 0..o.size(s, u) {
                for (phi, a2, e, k) in t.tensor.elements(0, s) {
                    let y = x.tgt(phi);
                    let img = t.tensor.class(0, u, phi, o.compose(y, s, u, a, a2), e);
                    let slot = &mut table[a * ks + k];
                    if *slot != usize::MAX && *slot != img {
                        return Err(YonedaError::NotAModule(format!("free action not well defined at ({s}, {u})")));
                    }
                    *slot = img;
                }
            }
            action.push(table);
        }
    }
    Module::new(o.clone(), t.functor, action)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct YonedaReport {
    /// Number of maps `Y(x) → F`.
    pub maps: usize,
    pub fiber: usize,
    /// Evaluation at the identity is a bijection onto `F(x)`.
    pub bijective: bool,
    /// Evaluation commutes with precomposition by every `a ∈ 𝓐(x′, x)`.
    pub natural_in_object: bool,
    /// Evaluation commutes with every endomorphism of `F`.
    pub natural_in_module: bool,
}

impl YonedaReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.natural_in_object && self.natural_in_module
    }
}

/// Checks `hom(Y(x), F) ≅ F(x)` by evaluation at `id_x`, with naturality.
pub fn yoneda_lemma_check(ps: &Presheaves, x: Obj, f: &Module, cap: usize) -> Result<YonedaReport, YonedaError> {
    let o = &ps.op;
    let y = yoneda_presheaf(ps, x);
    let maps = module_maps(&y, f, cap)?;
    let id = o.identity(x);
    let eval = |m: &ModuleMap| m.comps[x][id];
    let mut seen = vec![false; f.size(x)];
    let injective = maps.iter().all(|m| !std::mem::replace(&mut seen[eval(m)], true));
    let bijective = injective && maps.len() == f.size(x);
    let n = ps.n();
    // In 𝓞 = 𝓐^op, `a ∈ 𝓞(x, x′)` gives `Y(x′) → Y(x)`, `e ↦ e ∘ a`.
    let natural_in_object = (0..n).all(|x2| {
        (0..o.size(x, x2)).all(|a| {
            maps.iter().all(|m| {
                let back = m.comps[x2][o.compose(x, x2, x2, o.identity(x2), a)];
                back == f.apply(x, x2, a, eval(m))
            })
        })
    });
    let ends = module_maps(f, f, cap)?;
    let natural_in_module = ends.iter().all(|h| maps.iter().all(|m| eval(&m.then(h)) == h.comps[x][eval(m)]));
    Ok(YonedaReport { maps: maps.len(), fiber: f.size(x), bijective, natural_in_object, natural_in_module })
}

/// Whether `a ↦ hom(x, y, a)` is a functor from `src` into modules that is
/// bijective on every hom-set `𝓐(x, y) → hom(F x, F y)`.
pub fn fully_faithful_check(
    src: &Precategory,
    images: &[Module],
    hom: impl Fn(Obj, Obj, usize) -> ModuleMap,
    cap: usize,
) -> Result<bool, YonedaError> {
    let n = src.n();
    if images.len() != n {
        return Err(YonedaError::Mismatch);
    }
    for x in 0..n {
        for y in 0..n {
            let maps: Vec<ModuleMap> = (0..src.size(x, y)).map(|a| hom(x, y, a)).collect();
            if maps.iter().any(|m| !m.is_module_map(&images[x], &images[y])) {
                return Ok(false);
            }
            let mut distinct = maps.clone();
            distinct.sort_by(|a, b| a.comps.cmp(&b.comps));
            distinct.dedup();
            if distinct.len() != maps.len() || module_maps(&images[x], &images[y], cap)?.len() != maps.len() {
                return Ok(false);
            }
        }
    }
    let functor = (0..n).all(|x| hom(x, x, src.identity(x)) == ModuleMap::identity(&images[x]))
        && (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    (0..src.size(y, z)).all(|a| {
                        (0..src.size(x, y)).all(|b| hom(x, z, src.compose(x, y, z, a, b)) == hom(x, y, b).then(&hom(y, z, a)))
                    })
                })
            })
        });
    Ok(functor)
}

/// `Y(x) ≅ 𝓐^op ⊗ h_x` for `h_x = Hom_X(−, x)`, with a witness.
pub fn representable_is_free(ps: &Presheaves, x: Obj, cap: usize) -> Result<bool, YonedaError> {
    let h = SetValuedFunctor::corepresentable(ps.op.amb().x.clone(), x);
    let free = free_module(ps, &h)?;
    Ok(module_iso(&free, &yoneda_presheaf(ps, x), cap)?.is_some())
}

/// `|hom(𝓐^op ⊗ G, F)| = |Nat(G, F)|`.
pub fn free_adjunction_counts(ps: &Presheaves, g: &SetValuedFunctor, f: &Module, cap: usize) -> Result<(usize, usize), YonedaError> {
    let free = free_module(ps, g)?;
    Ok((module_maps(&free, f, cap)?.len(), count_nat(g, &f.carrier, cap)?))
}
