use std::sync::Arc;

use serde::Serialize;

use super::monoidal::{associator, left_unitor, right_unitor, tensor_map};
use super::tensor::{tensor, unit_quiver, Tensor};
use super::{Ambient, QuivError, Quiver, QuiverMap};
use crate::fincat::{Arrow, FinCat, Obj};

/// A quiver with a unit `η: 𝟙 → A` and a composition `μ: A ⊗ A → A`.
#[derive(Debug, Clone)]
pub struct Precategory {
    pub quiver: Quiver,
    /// `unit[(x, y)][i]` is the image of the `i`-th arrow of `Hom_X(x, y)`.
    pub unit: QuiverMap,
    /// `A ⊗ A`, the domain of the composition.
    pub square: Tensor,
    pub comp: QuiverMap,
}

impl Precategory {
    pub fn new(quiver: Quiver, unit: QuiverMap, comp: QuiverMap) -> Result<Self, QuivError> {
        let square = tensor(&quiver, &quiver)?;
        let one = unit_quiver(&quiver.amb);
        let sized = |m: &QuiverMap, dom: &Quiver| {
            m.comps.len() == dom.body.sizes.len()
                && m.comps.iter().zip(&dom.body.sizes).all(|(c, &n)| c.len() == n)
                && m.comps.iter().enumerate().all(|(cell, c)| c.iter().all(|&e| e < quiver.body.sizes[cell]))
        };
        if !sized(&unit, &one) || !sized(&comp, &square.quiver) {
            return Err(QuivError::Invalid("unit or composition table has the wrong shape".into()));
        }
        Ok(Precategory { quiver, unit, square, comp })
    }

    /// Composition from a pointwise rule `f(x, y, z, a ∈ A(y, z), b ∈ A(x, y)) ∈ A(x, z)`,
    /// checked to be constant on colimit classes.
    pub fn from_pointwise(
        quiver: Quiver,
        unit: QuiverMap,
        f: impl Fn(Obj, Obj, Obj, usize, usize) -> usize,
    ) -> Result<Self, QuivError> {
        let square = tensor(&quiver, &quiver)?;
        let amb = quiver.amb.clone();
        let (x, n) = (&amb.x, amb.n());
        let mut comps = Vec::with_capacity(n * n);
        for cell in 0..n * n {
            let (u, v) = (cell / n, cell % n);
            let mut comp = vec![usize::MAX; square.quiver.body.sizes[cell]];
            for (phi, a, b, k) in square.elements(u, v) {
                let b = quiver.act(x.id(u), phi, b);
                let img = f(u, x.tgt(phi), v, a, b);
                if comp[k] == usize::MAX {
                    comp[k] = img;
                } else if comp[k] != img {
                    return Err(QuivError::NotWellDefined(format!("composition at ({u}, {v})")));
                }
            }
            comps.push(comp);
        }
        Precategory::new(quiver, unit, QuiverMap { comps })
    }

    /// The precategory of a finite category `C` over the discrete set of
    /// its objects.
    pub fn from_category(c: &FinCat) -> Result<Self, QuivError> {
        let n = c.num_objects();
        let amb = Ambient::new(Arc::new(FinCat::discrete(n).with_object_names(c.object_names().to_vec())));
        let sizes: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| c.hom(x, y).len()).collect()).collect();
        let quiver = Quiver::discrete(amb.clone(), &sizes)?;
        let unit = QuiverMap {
            comps: (0..n * n).map(|cell| if cell / n == cell % n { vec![c.hom_index(c.id(cell / n))] } else { Vec::new() }).collect(),
        };
        Precategory::from_pointwise(quiver, unit, |x, y, z, a, b| c.hom_index(c.comp(c.hom(y, z)[a], c.hom(x, y)[b])))
    }

    /// The unit quiver with composition in `X`.
    pub fn unit_precategory(amb: &Arc<Ambient>) -> Self {
        let one = unit_quiver(amb);
        let x = amb.x.clone();
        let unit = QuiverMap::identity(&one);
        Precategory::from_pointwise(one, unit, |a, b, c, g, f| x.hom_index(x.comp(x.hom(b, c)[g], x.hom(a, b)[f])))
            .expect("composition in X is well defined")
    }

    pub fn amb(&self) -> &Arc<Ambient> {
        &self.quiver.amb
    }

    pub fn n(&self) -> usize {
        self.quiver.amb.n()
    }

    pub fn size(&self, x: Obj, y: Obj) -> usize {
        self.quiver.size(x, y)
    }

    /// `a ∘ b` for `b ∈ A(x, y)`, `a ∈ A(y, z)`.
    pub fn compose(&self, x: Obj, y: Obj, z: Obj, a: usize, b: usize) -> usize {
        let id = self.amb().x.id(y);
        self.comp.comps[self.amb().cell(x, z)][self.square.class(x, z, id, a, b)]
    }

    /// The identity element of `A(x, x)`.
    pub fn identity(&self, x: Obj) -> usize {
        let xc = &self.amb().x;
        self.unit.comps[self.amb().cell(x, x)][xc.hom_index(xc.id(x))]
    }

    /// Over a discrete `X`: the finite category with objects `X` and
    /// arrows the elements of `A`.
    pub fn underlying_category(&self) -> Result<FinCat, QuivError> {
        let amb = self.amb();
        if !amb.is_discrete() {
            return Err(QuivError::NotDiscrete("underlying category".into()));
        }
        let n = self.n();
        let mut arrows = Vec::new();
        let mut start = vec![0; n * n + 1];
        for cell in 0..n * n {
            start[cell] = arrows.len();
            for e in 0..self.quiver.body.sizes[cell] {
                arrows.push(Arrow { name: format!("a{}_{}_{e}", cell / n, cell % n), src: cell / n, tgt: cell % n });
            }
        }
        start[n * n] = arrows.len();
        let identity = (0..n).map(|x| start[x * n + x] + self.identity(x)).collect();
        let locate = |f: usize| {
            let cell = (0..n * n).find(|&c| start[c] <= f && f < start[c + 1]).expect("arrow in a cell");
            (cell / n, cell % n, f - start[cell])
        };
        let c = FinCat::from_parts(amb.x.object_names().to_vec(), arrows, identity, |g, f| {
            let (x, y, b) = locate(f);
            let (y2, z, a) = locate(g);
            (y == y2).then(|| start[x * n + z] + self.compose(x, y, z, a, b))
        })?;
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawFailure {
    pub law: String,
    pub cell: (usize, usize),
    pub element: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PrecatReport {
    pub failures: Vec<LawFailure>,
}

impl PrecatReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn whole(&mut self, law: &str) {
        self.failures.push(LawFailure { law: law.into(), cell: (0, 0), element: usize::MAX });
    }

    fn compare(&mut self, law: &str, n: usize, lhs: &QuiverMap, rhs: &QuiverMap) {
        for (cell, (l, r)) in lhs.comps.iter().zip(&rhs.comps).enumerate() {
            for (e, (a, b)) in l.iter().zip(r).enumerate() {
                if a != b {
                    self.failures.push(LawFailure { law: law.into(), cell: (cell / n, cell % n), element: e });
                }
            }
        }
    }
}

/// Checks naturality of `η` and `μ`, both unit laws and associativity,
/// each up to the canonical unitors and associator. Every failing element
/// is listed with its cell.
pub fn check_precategory(p: &Precategory) -> Result<PrecatReport, QuivError> {
    let mut report = PrecatReport::default();
    let a = &p.quiver;
    let n = p.n();
    let one = unit_quiver(p.amb());
    if !p.unit.is_natural(&one, a) {
        report.whole("unit naturality");
    }
    if !p.comp.is_natural(&p.square.quiver, a) {
        report.whole("composition naturality");
        return Ok(report);
    }
    let id = QuiverMap::identity(a);
    let (lt, lam) = left_unitor(a)?;
    let lhs = tensor_map(&p.unit, &id, &lt, &p.square)?.then(&p.comp);
    report.compare("left unit", n, &lhs, &lam);
    let (rt, rho) = right_unitor(a)?;
    let lhs = tensor_map(&id, &p.unit, &rt, &p.square)?.then(&p.comp);
    report.compare("right unit", n, &lhs, &rho);
    let al = associator(a, a, a)?;
    let lhs = tensor_map(&p.comp, &id, &al.lhs, &p.square)?.then(&p.comp);
    let rhs = al.map.then(&tensor_map(&id, &p.comp, &al.rhs, &p.square)?).then(&p.comp);
    report.compare("associativity", n, &lhs, &rhs);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_precategories_pass() {
        for c in [FinCat::discrete(2), FinCat::chain(1), FinCat::chain(2)] {
            let p = Precategory::unit_precategory(&Ambient::new(Arc::new(c)));
            assert!(check_precategory(&p).unwrap().passed());
        }
    }

    #[test]
    fn idempotent_monoid_passes() {
        // {1, a} with a·a = a.
        let m = FinCat::monoid(&[vec![0, 1], vec![1, 1]], 0).unwrap();
        let p = Precategory::from_category(&m).unwrap();
        assert_eq!(p.size(0, 0), 2);
        assert!(check_precategory(&p).unwrap().passed());
        assert_eq!(p.underlying_category().unwrap().num_arrows(), 2);
    }

    #[test]
    fn swapped_composition_is_located() {
        let m = FinCat::monoid(&[vec![0, 1], vec![1, 1]], 0).unwrap();
        let mut p = Precategory::from_category(&m).unwrap();
        // Swap the outputs of two classes of A ⊗ A at the only cell.
        let c = &mut p.comp.comps[0];
        let (i, j) = (0..c.len()).flat_map(|i| (0..c.len()).map(move |j| (i, j))).find(|&(i, j)| c[i] != c[j]).unwrap();
        c.swap(i, j);
        let r = check_precategory(&p).unwrap();
        assert!(!r.passed());
        assert!(r.failures.iter().all(|f| f.cell == (0, 0)));
        assert!(r.failures.iter().any(|f| f.law == "left unit" || f.law == "right unit"));
    }

    #[test]
    fn category_round_trip() {
        let c = FinCat::free(3, &[(0, 1, "f".into()), (1, 2, "g".into()), (0, 2, "h".into())]).unwrap();
        let p = Precategory::from_category(&c).unwrap();
        assert!(check_precategory(&p).unwrap().passed());
        let back = p.underlying_category().unwrap();
        assert_eq!(back.num_arrows(), c.num_arrows());
        assert!(crate::fincat::find_isomorphism(&Arc::new(back), &Arc::new(c)).is_some());
    }
}
