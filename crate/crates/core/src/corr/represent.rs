use std::sync::Arc;

use serde::Serialize;

use super::{Correspondence, CorrError};
use crate::fincat::{FinCat, FinFunctor, Obj};
use crate::quiv::Precategory;
use crate::yoneda::Presheaves;

/// A functor `G: 𝓓 → 𝓒` extracted from a right representable kernel,
/// with `ξ_d ∈ K(G d, d)` exhibiting `K(−, d) ≅ 𝓒(−, G d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Represented {
    pub omap: Vec<Obj>,
    /// `amap[d·|𝓓| + d′][b] ∈ 𝓒(G d, G d′)`.
    pub amap: Vec<Vec<usize>>,
    pub universal: Vec<usize>,
}

/// The map `𝓒(−, c) → K(−, d)`, `a ↦ ξ ∘ a`, is a bijection.
fn is_universal(k: &Correspondence, c: Obj, d: Obj, xi: usize) -> bool {
    let base = &k.source.base;
    (0..k.source_size()).all(|z| {
        if base.size(z, c) != k.size(z, d) {
            return false;
        }
        let mut seen = vec![false; k.size(z, d)];
        (0..base.size(z, c)).all(|a| !std::mem::replace(&mut seen[k.pre(z, c, d, a, xi)], true))
    })
}

/// Decides whether every `K(−, d)` is representable. On success returns the
/// induced functor; otherwise the first `d` that is not.
pub fn right_representable(k: &Correspondence) -> Result<Result<Represented, Obj>, CorrError> {
    let (nc, nd) = (k.source_size(), k.target_size());
    let mut omap = Vec::with_capacity(nd);
    let mut universal = Vec::with_capacity(nd);
    for d in 0..nd {
        let found = (0..nc).find_map(|c| (0..k.size(c, d)).find(|&xi| is_universal(k, c, d, xi)).map(|xi| (c, xi)));
        match found {
            Some((c, xi)) => {
                omap.push(c);
                universal.push(xi);
            }
            None => return Ok(Err(d)),
        }
    }
    let base = &k.source.base;
    let t = &k.target;
    let mut amap = Vec::with_capacity(nd * nd);
    for d in 0..nd {
        for d2 in 0..nd {
            let (c, c2) = (omap[d], omap[d2]);
            let row = (0..t.size(d, d2))
                .map(|b| {
                    let want = k.post(c, d, d2, b, universal[d]);
                    (0..base.size(c, c2))
                        .find(|&a| k.pre(c, c2, d2, a, universal[d2]) == want)
                        .ok_or_else(|| CorrError::Invalid(format!("no preimage for arrow {b} of ({d}, {d2})")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            amap.push(row);
        }
    }
    let r = Represented { omap, amap, universal };
    for d in 0..nd {
        if r.amap[d * nd + d][t.identity(d)] != base.identity(r.omap[d]) {
            return Err(CorrError::Invalid(format!("extracted map is not unital at {d}")));
        }
        for d2 in 0..nd {
            for d3 in 0..nd {
                for b in 0..t.size(d, d2) {
                    for b2 in 0..t.size(d2, d3) {
                        let lhs = r.amap[d * nd + d3][t.compose(d, d2, d3, b2, b)];
                        let (x, y, z) = (r.omap[d], r.omap[d2], r.omap[d3]);
                        if lhs != base.compose(x, y, z, r.amap[d2 * nd + d3][b2], r.amap[d * nd + d2][b]) {
                            return Err(CorrError::Invalid(format!("extracted map is not functorial at ({d}, {d2}, {d3})")));
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(r))
}

/// The kernel `K(c, d) = 𝓒(c, F d)` of a functor `F: 𝓓 → 𝓒`.
pub fn graph_correspondence(f: &FinFunctor) -> Result<Correspondence, CorrError> {
    let (c, d) = (&f.cod, &f.dom);
    let source = Presheaves::new(Precategory::from_category(c)?);
    let target = Arc::new(Precategory::from_category(d)?);
    let sizes: Vec<Vec<usize>> = (0..c.num_objects()).map(|x| (0..d.num_objects()).map(|y| c.hom(x, f.omap[y]).len()).collect()).collect();
    Correspondence::from_pointwise(
        source,
        target,
        &sizes,
        |x2, x, y, a, e| c.hom_index(c.comp(c.hom(x, f.omap[y])[e], c.hom(x2, x)[a])),
        |x, y, y2, b, e| c.hom_index(c.comp(f.amap[d.hom(y, y2)[b]], c.hom(x, f.omap[y])[e])),
    )
}

impl Represented {
    /// `F` agrees with the extracted functor up to the natural isomorphism
    /// given by the universal elements: same objects and
    /// `F(b) ∘ ξ_d = ξ_{d′} ∘ G(b)`.
    pub fn matches(&self, f: &FinFunctor) -> bool {
        let (c, d): (&Arc<FinCat>, &Arc<FinCat>) = (&f.cod, &f.dom);
        let nd = d.num_objects();
        if self.omap != f.omap {
            return false;
        }
        (0..nd).all(|y| {
            (0..nd).all(|y2| {
                let (x, x2) = (self.omap[y], self.omap[y2]);
                let xi = c.hom(x, x)[self.universal[y]];
                let xi2 = c.hom(x2, x2)[self.universal[y2]];
                d.hom(y, y2).iter().enumerate().all(|(i, &b)| {
                    let g = c.hom(x, x2)[self.amap[y * nd + y2][i]];
                    c.comp(f.amap[b], xi) == c.comp(xi2, g)
                })
            })
        })
    }

    /// The extracted functor `𝓓 → 𝓒` between the underlying categories.
    pub fn to_functor(&self, k: &Correspondence) -> Result<FinFunctor, CorrError> {
        let c = Arc::new(k.source.base.underlying_category()?);
        let d = Arc::new(k.target.underlying_category()?);
        let nd = d.num_objects();
        let amap = (0..d.num_arrows())
            .map(|b| {
                let (y, y2) = (d.src(b), d.tgt(b));
                c.hom(self.omap[y], self.omap[y2])[self.amap[y * nd + y2][d.hom_index(b)]]
            })
            .collect();
        Ok(FinFunctor::new(d, c, self.omap.clone(), amap)?)
    }

    /// The universal elements are all identities.
    pub fn is_exact(&self, f: &FinFunctor) -> bool {
        let c = &f.cod;
        self.omap.iter().zip(&self.universal).all(|(&x, &xi)| c.hom(x, x)[xi] == c.id(x))
    }
}
