use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::CorrError;
use crate::fincat::json::{FinCatJson, SchemaError};
use crate::fincat::{Arr, Arrow, FinCat, FinFunctor, FunctorSearch, Obj, SetValuedFunctor};
use crate::quiv::Precategory;
use crate::yoneda::{completeness_check, Module, ModuleJson, ModuleMap, Presheaves};

/// A correspondence `𝓓 ⇸ 𝓒`: for each object `d` of the target a presheaf
/// `K(−, d)` on the source, and for each `b ∈ 𝓓(d, d′)` a presheaf map
/// `K(−, d) → K(−, d′)`.
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub source: Presheaves,
    pub target: Arc<Precategory>,
    pub kernel: Vec<Module>,
    /// `action[cell(d, d′)][b]`.
    pub action: Vec<Vec<ModuleMap>>,
}

impl Correspondence {
    /// Builds from the two actions on `K(c, d)` (`sizes[c][d]` elements):
    /// `pre(c′, c, d, a, e) = e ∘ a` for `a ∈ 𝓒(c′, c)` and
    /// `post(c, d, d′, b, e) = b ∘ e` for `b ∈ 𝓓(d, d′)`.
    pub fn from_pointwise(
        source: Presheaves,
        target: Arc<Precategory>,
        sizes: &[Vec<usize>],
        pre: impl Fn(Obj, Obj, Obj, usize, usize) -> usize,
        post: impl Fn(Obj, Obj, Obj, usize, usize) -> usize,
    ) -> Result<Self, CorrError> {
        let (nc, nd) = (source.n(), target.n());
        if sizes.len() != nc || sizes.iter().any(|r| r.len() != nd) {
            return Err(CorrError::Invalid("kernel size table".into()));
        }
        let op = source.op.clone();
        let x = op.amb().x.clone();
        let mut kernel = Vec::with_capacity(nd);
        for d in 0..nd {
            let ks: Vec<usize> = (0..nc).map(|c| sizes[c][d]).collect();
            let maps = (0..x.num_arrows()).map(|a| (0..ks[x.src(a)]).collect()).collect();
            let carrier = SetValuedFunctor::new(x.clone(), ks, maps)?;
            // In the opposite, `a ∈ 𝓒^op(c, c′) = 𝓒(c′, c)` sends `K(c, d)` to `K(c′, d)`.
            kernel.push(Module::from_pointwise(op.clone(), carrier, |c, c2, a, e| pre(c2, c, d, a, e))?);
        }
        let action = (0..nd * nd)
            .map(|cell| {
                let (d, d2) = (cell / nd, cell % nd);
                (0..target.size(d, d2))
                    .map(|b| ModuleMap { comps: (0..nc).map(|c| (0..sizes[c][d]).map(|e| post(c, d, d2, b, e)).collect()).collect() })
                    .collect()
            })
            .collect();
        let k = Correspondence { source, target, kernel, action };
        k.validate()?;
        Ok(k)
    }

    pub fn source_size(&self) -> usize {
        self.source.n()
    }

    pub fn target_size(&self) -> usize {
        self.target.n()
    }

    /// `|K(c, d)|`.
    pub fn size(&self, c: Obj, d: Obj) -> usize {
        self.kernel[d].size(c)
    }

    /// `e ∘ a` for `e ∈ K(c, d)`, `a ∈ 𝓒(c′, c)`.
    pub fn pre(&self, c2: Obj, c: Obj, d: Obj, a: usize, e: usize) -> usize {
        self.kernel[d].apply(c, c2, a, e)
    }

    /// `b ∘ e` for `e ∈ K(c, d)`, `b ∈ 𝓓(d, d′)`.
    pub fn post(&self, c: Obj, d: Obj, d2: Obj, b: usize, e: usize) -> usize {
        self.action[d * self.target_size() + d2][b].comps[c][e]
    }

    /// Both categories are complete over discrete objects, every kernel
    /// column is a presheaf, and `𝓓` acts functorially by presheaf maps.
    pub fn validate(&self) -> Result<(), CorrError> {
        for (name, p) in [("source", &self.source.base), ("target", &self.target)] {
            if !p.amb().is_discrete() {
                return Err(CorrError::Invalid(format!("{name} objects are not discrete")));
            }
            if !completeness_check(p)? {
                return Err(CorrError::NotComplete(name.into()));
            }
        }
        let nd = self.target_size();
        if self.kernel.len() != nd || self.action.len() != nd * nd {
            return Err(CorrError::Invalid("kernel columns".into()));
        }
        for (d, k) in self.kernel.iter().enumerate() {
            if !Arc::ptr_eq(&k.precat, &self.source.op) {
                return Err(CorrError::Invalid(format!("column {d} is not a presheaf on the source")));
            }
            if let Some(f) = k.check().first() {
                return Err(CorrError::Invalid(format!("column {d}: {f}")));
            }
        }
        let t = &self.target;
        for d in 0..nd {
            for d2 in 0..nd {
                let maps = &self.action[d * nd + d2];
                if maps.len() != t.size(d, d2) {
                    return Err(CorrError::Invalid(format!("action table at ({d}, {d2})")));
                }
                for (b, m) in maps.iter().enumerate() {
                    if !m.is_module_map(&self.kernel[d], &self.kernel[d2]) {
                        return Err(CorrError::Invalid(format!("arrow {b} of ({d}, {d2}) does not act by a presheaf map")));
                    }
                }
            }
            if self.action[d * nd + d][t.identity(d)] != ModuleMap::identity(&self.kernel[d]) {
                return Err(CorrError::Invalid(format!("identity of {d} acts nontrivially")));
            }
        }
        for d in 0..nd {
            for d2 in 0..nd {
                for d3 in 0..nd {
                    for b in 0..t.size(d, d2) {
                        for b2 in 0..t.size(d2, d3) {
                            let lhs = &self.action[d * nd + d3][t.compose(d, d2, d3, b2, b)];
                            let rhs = self.action[d * nd + d2][b].then(&self.action[d2 * nd + d3][b2]);
                            if *lhs != rhs {
                                return Err(CorrError::Invalid(format!("action is not associative at ({d}, {d2}, {d3})")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A category with a functor to `[1]`: `side[x]` is the fiber of `x`, and
/// nothing runs from side 1 back to side 0.
#[derive(Debug, Clone)]
pub struct OverSegment {
    pub precat: Arc<Precategory>,
    pub cat: Arc<FinCat>,
    pub side: Vec<u8>,
}

impl OverSegment {
    pub fn new(precat: Precategory, side: Vec<u8>) -> Result<Self, CorrError> {
        let cat = precat.underlying_category()?;
        Self::from_parts(Arc::new(precat), Arc::new(cat), side)
    }

    pub fn from_category(cat: FinCat, side: Vec<u8>) -> Result<Self, CorrError> {
        let precat = Precategory::from_category(&cat)?;
        Self::from_parts(Arc::new(precat), Arc::new(cat), side)
    }

    fn from_parts(precat: Arc<Precategory>, cat: Arc<FinCat>, side: Vec<u8>) -> Result<Self, CorrError> {
        let n = cat.num_objects();
        if side.len() != n || side.iter().any(|&s| s > 1) {
            return Err(CorrError::Invalid("side labels".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if side[x] == 1 && side[y] == 0 && !cat.hom(x, y).is_empty() {
                    let names = cat.object_names();
                    return Err(CorrError::BackwardArrow(format!("{} → {}", names[x], names[y])));
                }
            }
        }
        Ok(OverSegment { precat, cat, side })
    }

    /// Objects over `0` and over `1`, in order.
    pub fn fibers(&self) -> (Vec<Obj>, Vec<Obj>) {
        let n = self.side.len();
        ((0..n).filter(|&x| self.side[x] == 0).collect(), (0..n).filter(|&x| self.side[x] == 1).collect())
    }
}

#[derive(Debug, Clone, Copy)]
enum Part {
    Source(Arr),
    Target(Arr),
    Cross(Obj, Obj, usize),
}

/// The total category: objects of `𝓒` then of `𝓓`, with `K(c, d)` as the
/// arrows `c → d` and nothing from `𝓓` to `𝓒`.
pub fn to_over_segment(k: &Correspondence) -> Result<OverSegment, CorrError> {
    let cc = k.source.base.underlying_category()?;
    let dc = k.target.underlying_category()?;
    let (nc, nd) = (cc.num_objects(), dc.num_objects());
    let mut objects: Vec<String> = cc.object_names().to_vec();
    objects.extend(dc.object_names().iter().cloned());
    let mut arrows = Vec::new();
    let mut parts = Vec::new();
    for (a, arr) in cc.arrows().iter().enumerate() {
        arrows.push(arr.clone());
        parts.push(Part::Source(a));
    }
    let target_start = arrows.len();
    for (b, arr) in dc.arrows().iter().enumerate() {
        arrows.push(Arrow { name: arr.name.clone(), src: arr.src + nc, tgt: arr.tgt + nc });
        parts.push(Part::Target(b));
    }
    let mut cross = vec![0; nc * nd + 1];
    for c in 0..nc {
        for d in 0..nd {
            cross[c * nd + d] = arrows.len();
            for e in 0..k.size(c, d) {
                arrows.push(Arrow { name: format!("k{c}_{d}_{e}"), src: c, tgt: nc + d });
                parts.push(Part::Cross(c, d, e));
            }
        }
    }
    let identity = (0..nc).map(|c| cc.id(c)).chain((0..nd).map(|d| target_start + dc.id(d))).collect();
    let cat = FinCat::from_parts(objects, arrows, identity, |g, f| match (parts[g], parts[f]) {
        (Part::Source(g), Part::Source(f)) => Some(cc.comp(g, f)),
        (Part::Target(g), Part::Target(f)) => Some(target_start + dc.comp(g, f)),
        (Part::Cross(c, d, e), Part::Source(a)) => {
            let c2 = cc.src(a);
            Some(cross[c2 * nd + d] + k.pre(c2, c, d, cc.hom_index(a), e))
        }
        (Part::Target(b), Part::Cross(c, d, e)) => Some(cross[c * nd + dc.tgt(b)] + k.post(c, d, dc.tgt(b), dc.hom_index(b), e)),
        _ => None,
    })?;
    let side = (0..nc).map(|_| 0).chain((0..nd).map(|_| 1)).collect();
    OverSegment::from_category(cat, side)
}

/// The fibers over `0` and `1` with the cross arrows as kernel.
pub fn from_over_segment(k: &OverSegment) -> Result<Correspondence, CorrError> {
    let cat = &k.cat;
    let (x0, x1) = k.fibers();
    let source = Presheaves::new(Precategory::from_category(&cat.full_subcategory(&x0).0)?);
    let target = Arc::new(Precategory::from_category(&cat.full_subcategory(&x1).0)?);
    let sizes: Vec<Vec<usize>> = x0.iter().map(|&c| x1.iter().map(|&d| cat.hom(c, d).len()).collect()).collect();
    Correspondence::from_pointwise(
        source,
        target,
        &sizes,
        |c2, c, d, a, e| cat.hom_index(cat.comp(cat.hom(x0[c], x1[d])[e], cat.hom(x0[c2], x0[c])[a])),
        |c, d, d2, b, e| cat.hom_index(cat.comp(cat.hom(x1[d], x1[d2])[b], cat.hom(x0[c], x1[d])[e])),
    )
}

/// An isomorphism of categories over `[1]` sending the `i`-th object of
/// each fiber of `a` to the `i`-th object of the same fiber of `b`.
pub fn over_segment_iso(a: &OverSegment, b: &OverSegment, cap: usize) -> Result<Option<FinFunctor>, CorrError> {
    let ((a0, a1), (b0, b1)) = (a.fibers(), b.fibers());
    if a0.len() != b0.len() || a1.len() != b1.len() || a.cat.num_arrows() != b.cat.num_arrows() {
        return Ok(None);
    }
    let mut search = FunctorSearch::new(&a.cat, &b.cat).injective(true).cap(cap);
    for (x, y) in a0.iter().zip(&b0).chain(a1.iter().zip(&b1)) {
        search = search.fix(*x, *y);
    }
    let mut found = None;
    search.run(|o, m| {
        found = Some(FinFunctor::new(a.cat.clone(), b.cat.clone(), o.to_vec(), m.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(found.transpose()?)
}

/// Correspondences are isomorphic when their total categories are.
pub fn correspondence_iso(a: &Correspondence, b: &Correspondence, cap: usize) -> Result<bool, CorrError> {
    Ok(over_segment_iso(&to_over_segment(a)?, &to_over_segment(b)?, cap)?.is_some())
}

/// Serialized correspondence: both categories, one presheaf table per
/// target object, and `target_action[d·|𝓓| + d′][b][c][e]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceJson {
    pub source: FinCatJson,
    pub target: FinCatJson,
    pub kernel: Vec<ModuleJson>,
    pub target_action: Vec<Vec<Vec<Vec<usize>>>>,
}

impl CorrespondenceJson {
    pub fn from_correspondence(k: &Correspondence) -> Result<Self, CorrError> {
        Ok(CorrespondenceJson {
            source: FinCatJson::from_cat(&k.source.base.underlying_category()?),
            target: FinCatJson::from_cat(&k.target.underlying_category()?),
            kernel: k.kernel.iter().map(ModuleJson::from).collect(),
            target_action: k.action.iter().map(|ms| ms.iter().map(|m| m.comps.clone()).collect()).collect(),
        })
    }

    pub fn to_correspondence(&self) -> Result<Correspondence, SchemaError> {
        let cc = self.source.to_cat().map_err(|e| e.nest("/source"))?;
        let dc = self.target.to_cat().map_err(|e| e.nest("/target"))?;
        let invalid = |p: &str, e: String| SchemaError::at(p, e);
        let source = Presheaves::new(Precategory::from_category(&cc).map_err(|e| invalid("/source", e.to_string()))?);
        let target = Arc::new(Precategory::from_category(&dc).map_err(|e| invalid("/target", e.to_string()))?);
        let kernel = self
            .kernel
            .iter()
            .enumerate()
            .map(|(d, m)| m.clone().into_module(source.op.clone()).map_err(|e| invalid(&format!("/kernel/{d}"), e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let action = self.target_action.iter().map(|ms| ms.iter().map(|m| ModuleMap { comps: m.clone() }).collect()).collect();
        let k = Correspondence { source, target, kernel, action };
        k.validate().map_err(|e| invalid("", e.to_string()))?;
        Ok(k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverSegmentJson {
    pub category: FinCatJson,
    pub side: Vec<u8>,
}

impl OverSegmentJson {
    pub fn from_over_segment(k: &OverSegment) -> Self {
        OverSegmentJson { category: FinCatJson::from_cat(&k.cat), side: k.side.clone() }
    }

    pub fn to_over_segment(&self) -> Result<OverSegment, SchemaError> {
        let cat = self.category.to_cat().map_err(|e| e.nest("/category"))?;
        OverSegment::from_category(cat, self.side.clone()).map_err(|e| SchemaError::at("/side", e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point() -> Presheaves {
        Presheaves::new(Precategory::from_category(&FinCat::point()).unwrap())
    }

    fn constant(s: usize) -> Correspondence {
        let t = Arc::new(Precategory::from_category(&FinCat::point()).unwrap());
        Correspondence::from_pointwise(point(), t, &[vec![s]], |_, _, _, _, e| e, |_, _, _, _, e| e).unwrap()
    }

    #[test]
    fn points_with_a_set_of_cross_arrows() {
        for s in 0..4 {
            let o = to_over_segment(&constant(s)).unwrap();
            assert_eq!(o.cat.num_objects(), 2);
            assert_eq!(o.cat.hom(0, 1).len(), s);
            assert!(o.cat.hom(1, 0).is_empty());
            assert_eq!(o.side, vec![0, 1]);
        }
    }

    #[test]
    fn empty_kernel_is_a_disjoint_union() {
        let c = FinCat::chain(1);
        let d = FinCat::monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap();
        let source = Presheaves::new(Precategory::from_category(&c).unwrap());
        let target = Arc::new(Precategory::from_category(&d).unwrap());
        let k = Correspondence::from_pointwise(source, target, &[vec![0], vec![0]], |_, _, _, _, e| e, |_, _, _, _, e| e).unwrap();
        let o = to_over_segment(&k).unwrap();
        assert_eq!(o.cat.num_arrows(), c.num_arrows() + d.num_arrows());
        let back = from_over_segment(&o).unwrap();
        assert!(back.kernel.iter().all(|m| m.carrier.sizes.iter().all(|&s| s == 0)));
    }

    #[test]
    fn single_cross_arrow_gives_a_singleton_kernel() {
        let o = OverSegment::from_category(FinCat::chain(1), vec![0, 1]).unwrap();
        let k = from_over_segment(&o).unwrap();
        assert_eq!(k.size(0, 0), 1);
        let again = to_over_segment(&k).unwrap();
        assert!(over_segment_iso(&o, &again, 1000).unwrap().is_some());
    }

    #[test]
    fn backward_arrows_are_rejected() {
        let err = OverSegment::from_category(FinCat::chain(1), vec![1, 0]).unwrap_err();
        assert!(matches!(err, CorrError::BackwardArrow(_)));
    }

    #[test]
    fn incomplete_sides_are_rejected() {
        // Two isomorphic objects on one side.
        let iso = crate::quiv::random::inflate(&FinCat::point(), &[2]).0;
        let n = iso.num_objects();
        let o = OverSegment::from_category(iso, vec![0; n]).unwrap();
        assert!(matches!(from_over_segment(&o), Err(CorrError::NotComplete(_))));
    }

    #[test]
    fn over_segment_iso_respects_sides() {
        let a = OverSegment::from_category(FinCat::discrete(2), vec![0, 1]).unwrap();
        let b = OverSegment::from_category(FinCat::discrete(2), vec![1, 0]).unwrap();
        assert!(over_segment_iso(&a, &a, 100).unwrap().is_some());
        // Fibers line up by position, so these match as well.
        assert!(over_segment_iso(&a, &b, 100).unwrap().is_some());
        let c = OverSegment::from_category(FinCat::discrete(2), vec![0, 0]).unwrap();
        assert!(over_segment_iso(&a, &c, 100).unwrap().is_none());
    }

    #[test]
    fn json_round_trip() {
        let k = constant(2);
        let j = CorrespondenceJson::from_correspondence(&k).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back: CorrespondenceJson = serde_json::from_str(&text).unwrap();
        let k2 = back.to_correspondence().unwrap();
        assert!(correspondence_iso(&k, &k2, 1000).unwrap());
        let o = to_over_segment(&k).unwrap();
        let oj = OverSegmentJson::from_over_segment(&o);
        assert!(over_segment_iso(&o, &oj.to_over_segment().unwrap(), 1000).unwrap().is_some());
    }

    #[test]
    fn bad_action_is_rejected() {
        // The swap acting on one side only breaks associativity with identities.
        let t = Arc::new(Precategory::from_category(&FinCat::point()).unwrap());
        let err = Correspondence::from_pointwise(point(), t, &[vec![2]], |_, _, _, _, e| e, |_, _, _, _, e| 1 - e);
        assert!(err.is_err());
    }
}
