//! Unitors, associator and functoriality of the tensor, all induced on
//! colimit classes and checked to be well defined element by element.

use super::tensor::{tensor, unit_quiver, Tensor};
use super::{QuivError, Quiver, QuiverMap};
use crate::fincat::{Arr, Obj};

/// The map on `(A ⊗ B)` induced by `f(u, v, φ, a, b)`, checked to be
/// constant on every colimit class.
fn induced(t: &Tensor, what: &str, f: impl Fn(Obj, Obj, Arr, usize, usize) -> usize) -> Result<QuiverMap, QuivError> {
    let n = t.quiver.amb.n();
    let mut comps = Vec::with_capacity(n * n);
    for c in 0..n * n {
        let (u, v) = (c / n, c % n);
        let mut comp = vec![usize::MAX; t.quiver.body.sizes[c]];
        for (phi, a, b, k) in t.elements(u, v) {
            let img = f(u, v, phi, a, b);
            if comp[k] == usize::MAX {
                comp[k] = img;
            } else if comp[k] != img {
                return Err(QuivError::NotWellDefined(format!("{what} at ({u}, {v}), class {k}")));
            }
        }
        comps.push(comp);
    }
    Ok(QuiverMap { comps })
}

fn checked(t: &Tensor, target: &Quiver, map: QuiverMap, what: &str) -> Result<QuiverMap, QuivError> {
    if !map.is_natural(&t.quiver, target) {
        return Err(QuivError::Invalid(format!("{what} is not natural")));
    }
    if !map.is_bijective(target) {
        return Err(QuivError::NotBijective(what.into()));
    }
    Ok(map)
}

/// `λ: 𝟙 ⊗ A → A`, `(φ, g, a) ↦ A(id, g∘φ)(a)`.
pub fn left_unitor(a: &Quiver) -> Result<(Tensor, QuiverMap), QuivError> {
    let x = a.amb.x.clone();
    let t = tensor(&unit_quiver(&a.amb), a)?;
    let map = induced(&t, "left unitor", |u, v, phi, g, e| {
        let g = x.hom(x.tgt(phi), v)[g];
        a.act(x.id(u), x.comp(g, phi), e)
    })?;
    let map = checked(&t, a, map, "left unitor")?;
    Ok((t, map))
}

/// `ρ: A ⊗ 𝟙 → A`, `(φ, a, f) ↦ A(φ∘f, id)(a)`.
pub fn right_unitor(a: &Quiver) -> Result<(Tensor, QuiverMap), QuivError> {
    let x = a.amb.x.clone();
    let t = tensor(a, &unit_quiver(&a.amb))?;
    let map = induced(&t, "right unitor", |u, v, phi, e, f| {
        let f = x.hom(u, x.src(phi))[f];
        a.act(x.comp(phi, f), x.id(v), e)
    })?;
    let map = checked(&t, a, map, "right unitor")?;
    Ok((t, map))
}

/// The associator `(A ⊗ B) ⊗ C → A ⊗ (B ⊗ C)` with its four tensors.
#[derive(Debug, Clone)]
pub struct Associator {
    pub ab: Tensor,
    pub lhs: Tensor,
    pub bc: Tensor,
    pub rhs: Tensor,
    pub map: QuiverMap,
}

/// `(ψ, [φ, a, b], c) ↦ (φ, a, [ψ, b, c])`, checked against every
/// representative of the inner class.
pub fn associator(a: &Quiver, b: &Quiver, c: &Quiver) -> Result<Associator, QuivError> {
    let amb = a.amb.clone();
    let (x, n) = (&amb.x, amb.n());
    let ab = tensor(a, b)?;
    let lhs = tensor(&ab.quiver, c)?;
    let bc = tensor(b, c)?;
    let rhs = tensor(a, &bc.quiver)?;
    // Members of each class of A ⊗ B, per cell.
    let members: Vec<Vec<Vec<(Arr, usize, usize)>>> = (0..n * n)
        .map(|cell| {
            let (y, v) = (cell / n, cell % n);
            let mut m = vec![Vec::new(); ab.quiver.body.sizes[cell]];
            for (phi, ea, eb, k) in ab.elements(y, v) {
                m[k].push((phi, ea, eb));
            }
            m
        })
        .collect();
    let mut comps = Vec::with_capacity(n * n);
    for cell in 0..n * n {
        let (u, v) = (cell / n, cell % n);
        let mut comp = vec![usize::MAX; lhs.quiver.body.sizes[cell]];
        for (psi, k, ec, cls) in lhs.elements(u, v) {
            for &(phi, ea, eb) in &members[amb.cell(x.tgt(psi), v)][k] {
                let inner = bc.class(u, x.src(phi), psi, eb, ec);
                let img = rhs.class(u, v, phi, ea, inner);
                if comp[cls] == usize::MAX {
                    comp[cls] = img;
                } else if comp[cls] != img {
                    return Err(QuivError::NotWellDefined(format!("associator at ({u}, {v}), class {cls}")));
                }
            }
        }
        comps.push(comp);
    }
    let map = checked(&lhs, &rhs.quiver, QuiverMap { comps }, "associator")?;
    Ok(Associator { ab, lhs, bc, rhs, map })
}

/// `f ⊗ g: dom → cod` for maps `f: A → A'` and `g: B → B'`, where `dom`
/// and `cod` are the tensors `A ⊗ B` and `A' ⊗ B'`.
pub fn tensor_map(f: &QuiverMap, g: &QuiverMap, dom: &Tensor, cod: &Tensor) -> Result<QuiverMap, QuivError> {
    let amb = dom.quiver.amb.clone();
    let x = &amb.x;
    let map = induced(dom, "tensor of maps", |u, v, phi, a, b| {
        let fa = f.comps[amb.cell(x.tgt(phi), v)][a];
        let gb = g.comps[amb.cell(u, x.src(phi))][b];
        cod.class(u, v, phi, fa, gb)
    })?;
    if !map.is_natural(&dom.quiver, &cod.quiver) {
        return Err(QuivError::Invalid("tensor of maps is not natural".into()));
    }
    Ok(map)
}

/// The two associator paths `((AB)C)D → A(B(CD))` agree.
pub fn pentagon_holds(a: &Quiver, b: &Quiver, c: &Quiver, d: &Quiver) -> Result<bool, QuivError> {
    let a1 = associator(&tensor(a, b)?.quiver, c, d)?;
    let a2 = associator(a, b, &tensor(c, d)?.quiver)?;
    if a1.rhs.quiver != a2.lhs.quiver {
        return Err(QuivError::Invalid("pentagon corners disagree".into()));
    }
    let top = a1.map.then(&a2.map);
    let a3 = associator(a, b, c)?;
    let a4 = associator(a, &a3.bc.quiver, d)?;
    let left = tensor_map(&a3.map, &QuiverMap::identity(d), &a1.lhs, &a4.lhs)?;
    let a5 = associator(b, c, d)?;
    let right = tensor_map(&QuiverMap::identity(a), &a5.map, &a4.rhs, &a2.rhs)?;
    Ok(top == left.then(&a4.map).then(&right))
}

/// `(ρ ⊗ id) = (id ⊗ λ) ∘ α` on `(A ⊗ 𝟙) ⊗ B`.
pub fn triangle_holds(a: &Quiver, b: &Quiver) -> Result<bool, QuivError> {
    let one = unit_quiver(&a.amb);
    let alpha = associator(a, &one, b)?;
    let target = tensor(a, b)?;
    let (_, lam) = left_unitor(b)?;
    let (_, rho) = right_unitor(a)?;
    let via_alpha = alpha.map.then(&tensor_map(&QuiverMap::identity(a), &lam, &alpha.rhs, &target)?);
    let direct = tensor_map(&rho, &QuiverMap::identity(b), &alpha.lhs, &target)?;
    Ok(via_alpha == direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;
    use crate::quiv::{unit_quiver, Ambient};
    use std::sync::Arc;

    fn some_quivers(amb: &Arc<Ambient>) -> Vec<Quiver> {
        let one = unit_quiver(amb);
        let two = tensor(&one, &one).unwrap().quiver;
        vec![one, two]
    }

    #[test]
    fn unit_coherence_on_posets() {
        for c in [FinCat::chain(1), FinCat::chain(2), FinCat::discrete(2)] {
            let amb = Ambient::new(Arc::new(c));
            for a in some_quivers(&amb) {
                left_unitor(&a).unwrap();
                right_unitor(&a).unwrap();
                assert!(triangle_holds(&a, &a).unwrap());
            }
        }
    }

    #[test]
    fn discrete_associator_and_pentagon() {
        let amb = Ambient::new(Arc::new(FinCat::discrete(2)));
        let a = Quiver::discrete(amb.clone(), &[vec![1, 2], vec![0, 1]]).unwrap();
        let b = Quiver::discrete(amb.clone(), &[vec![2, 1], vec![1, 0]]).unwrap();
        let al = associator(&a, &b, &a).unwrap();
        assert_eq!(al.lhs.quiver.body.sizes, al.rhs.quiver.body.sizes);
        assert!(pentagon_holds(&a, &b, &a, &b).unwrap());
    }

    #[test]
    fn monoid_coherence() {
        // One object with a two-element monoid of arrows.
        let m = FinCat::monoid(&[vec![0, 1], vec![1, 1]], 0).unwrap();
        let amb = Ambient::new(Arc::new(m));
        let one = unit_quiver(&amb);
        assert_eq!(one.size(0, 0), 2);
        let (_, lam) = left_unitor(&one).unwrap();
        assert!(lam.is_bijective(&one));
        assert!(pentagon_holds(&one, &one, &one, &one).unwrap());
        assert!(triangle_holds(&one, &one).unwrap());
    }
}
