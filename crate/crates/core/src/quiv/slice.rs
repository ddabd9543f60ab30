use std::collections::HashMap;

use serde::Serialize;

use super::monoidal::{associator, left_unitor, right_unitor, tensor_map};
use super::tensor::{tensor, unit_quiver, Tensor};
use super::{QuivError, Quiver, QuiverMap};

/// A finite set over `X × X`: element `t` lies over `legs[t]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Span {
    pub n: usize,
    pub legs: Vec<(usize, usize)>,
}

impl Span {
    pub fn diagonal(n: usize) -> Span {
        Span { n, legs: (0..n).map(|x| (x, x)).collect() }
    }

    pub fn len(&self) -> usize {
        self.legs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.legs.is_empty()
    }
}

/// Composable pairs `(t₁, t₂)` with `t₁` over `(x, y)` and `t₂` over
/// `(y, z)`, lying over `(x, z)`. Returned with the pairs themselves, in
/// lexicographic order.
pub fn convolution(t1: &Span, t2: &Span) -> (Span, Vec<(usize, usize)>) {
    let mut legs = Vec::new();
    let mut pairs = Vec::new();
    for (i, &(x, y)) in t1.legs.iter().enumerate() {
        for (j, &(y2, z)) in t2.legs.iter().enumerate() {
            if y == y2 {
                legs.push((x, z));
                pairs.push((i, j));
            }
        }
    }
    (Span { n: t1.n, legs }, pairs)
}

/// `Σ_{x,y} A(x, y) → X × X`; element `(x, y, a)` in lexicographic order.
/// Also returns `offset[cell]`, the position of `(x, y, 0)`.
pub fn totalize(a: &Quiver) -> Result<(Span, Vec<usize>), QuivError> {
    if !a.amb.is_discrete() {
        return Err(QuivError::NotDiscrete("totalization".into()));
    }
    let n = a.amb.n();
    let mut legs = Vec::with_capacity(a.total());
    let mut offset = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            offset.push(legs.len());
            legs.extend(std::iter::repeat((x, y)).take(a.size(x, y)));
        }
    }
    Ok((Span { n, legs }, offset))
}

/// The bijection between `A ⊗ B` and the convolution of the totalizations
/// of `B` and `A`: the class of `(id_y, a, b)` goes to the pair `(b, a)`.
#[derive(Debug, Clone)]
pub struct SliceIso {
    pub tensor: Tensor,
    pub conv: Span,
    pub pairs: Vec<(usize, usize)>,
    /// `map[cell][k]` is the convolution element of class `k`.
    pub map: Vec<Vec<usize>>,
}

pub fn compare_slice_model(a: &Quiver, b: &Quiver) -> Result<SliceIso, QuivError> {
    let t = tensor(a, b)?;
    let (ta, oa) = totalize(a)?;
    let (tb, ob) = totalize(b)?;
    let (conv, pairs) = convolution(&tb, &ta);
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let amb = &a.amb;
    let n = amb.n();
    let mut map = Vec::with_capacity(n * n);
    let mut hit = vec![false; conv.len()];
    for u in 0..n {
        for v in 0..n {
            let mut comp = vec![usize::MAX; t.quiver.size(u, v)];
            for (phi, ea, eb, k) in t.elements(u, v) {
                let y = amb.x.src(phi);
                let i = index[&(ob[amb.cell(u, y)] + eb, oa[amb.cell(y, v)] + ea)];
                if comp[k] != usize::MAX && comp[k] != i {
                    return Err(QuivError::NotWellDefined(format!("slice comparison at ({u}, {v})")));
                }
                if comp[k] == usize::MAX && std::mem::replace(&mut hit[i], true) {
                    return Err(QuivError::NotBijective(format!("slice comparison at ({u}, {v})")));
                }
                comp[k] = i;
            }
            if comp.iter().any(|&i| i == usize::MAX || conv.legs[i] != (u, v)) {
                return Err(QuivError::NotBijective(format!("slice comparison at ({u}, {v})")));
            }
            map.push(comp);
        }
    }
    if hit.iter().any(|h| !h) {
        return Err(QuivError::NotBijective("slice comparison is not onto".into()));
    }
    Ok(SliceIso { tensor: t, conv, pairs, map })
}

/// The totalization of a quiver map: `(x, y, e) ↦ (x, y, f(e))`.
fn total_map(f: &QuiverMap, a: &Quiver, b: &Quiver) -> Result<Vec<usize>, QuivError> {
    let (_, ob) = totalize(b)?;
    Ok((0..f.comps.len()).flat_map(|cell| (0..a.body.sizes[cell]).map(|e| ob[cell] + f.comps[cell][e]).collect::<Vec<_>>()).collect())
}

/// Naturality of the slice comparison along `f: A → A'` and `g: B → B'`:
/// `f ⊗ g` followed by the comparison for `(A', B')` equals the comparison
/// for `(A, B)` followed by the convolution of the total maps.
pub fn slice_naturality(
    (a, a2, f): (&Quiver, &Quiver, &QuiverMap),
    (b, b2, g): (&Quiver, &Quiver, &QuiverMap),
) -> Result<bool, QuivError> {
    let s = compare_slice_model(a, b)?;
    let s2 = compare_slice_model(a2, b2)?;
    let fg = tensor_map(f, g, &s.tensor, &s2.tensor)?;
    let (tf, tg) = (total_map(f, a, a2)?, total_map(g, b, b2)?);
    let index: HashMap<(usize, usize), usize> = s2.pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    Ok(s.map.iter().enumerate().all(|(cell, comp)| {
        comp.iter().enumerate().all(|(k, &i)| {
            let (eb, ea) = s.pairs[i];
            index.get(&(tg[eb], tf[ea])) == Some(&s2.map[cell][fg.comps[cell][k]])
        })
    }))
}

/// The comparison is monoidal: it carries the unitors to the projections
/// off the diagonal, and the associator of `A, B, C` to the regrouping
/// `(c, (b, a)) ↦ ((c, b), a)` of triples.
pub fn check_slice_monoidal(a: &Quiver, b: &Quiver, c: &Quiver) -> Result<bool, QuivError> {
    let one = unit_quiver(&a.amb);
    let (_, oa) = totalize(a)?;
    let n = a.amb.n();
    // 𝟙 ⊗ A ≅ conv(tot A, Δ) ∋ (t, y) ↦ t.
    let (_, lam) = left_unitor(a)?;
    let sl = compare_slice_model(&one, a)?;
    let (_, rho) = right_unitor(a)?;
    let sr = compare_slice_model(a, &one)?;
    for cell in 0..n * n {
        for (k, &i) in sl.map[cell].iter().enumerate() {
            if sl.pairs[i].0 != oa[cell] + lam.comps[cell][k] {
                return Ok(false);
            }
        }
        for (k, &i) in sr.map[cell].iter().enumerate() {
            if sr.pairs[i].1 != oa[cell] + rho.comps[cell][k] {
                return Ok(false);
            }
        }
    }
    let al = associator(a, b, c)?;
    let s_ab = compare_slice_model(a, b)?;
    let s_lhs = compare_slice_model(&al.ab.quiver, c)?;
    let s_bc = compare_slice_model(b, c)?;
    let s_rhs = compare_slice_model(a, &al.bc.quiver)?;
    let (_, o_ab) = totalize(&al.ab.quiver)?;
    let (_, o_bc) = totalize(&al.bc.quiver)?;
    // Flatten an element of a total space of a two-fold tensor to a triple.
    let flat_left = |e: usize| -> Option<(usize, usize, usize)> {
        let (ec, eab) = s_lhs.pairs[e];
        let (cell, k) = cell_of_nonempty(&o_ab, &al.ab.quiver, eab)?;
        let (eb, ea) = s_ab.pairs[s_ab.map[cell][k]];
        Some((ec, eb, ea))
    };
    let flat_right = |e: usize| -> Option<(usize, usize, usize)> {
        let (ebc, ea) = s_rhs.pairs[e];
        let (cell, k) = cell_of_nonempty(&o_bc, &al.bc.quiver, ebc)?;
        let (ec, eb) = s_bc.pairs[s_bc.map[cell][k]];
        Some((ec, eb, ea))
    };
    for cell in 0..n * n {
        for (k, &i) in s_lhs.map[cell].iter().enumerate() {
            let j = s_rhs.map[cell][al.map.comps[cell][k]];
            match (flat_left(i), flat_right(j)) {
                (Some(l), Some(r)) if l == r => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// The `(cell, element)` of position `t` in a totalization.
fn cell_of_nonempty(offsets: &[usize], q: &Quiver, t: usize) -> Option<(usize, usize)> {
    (0..offsets.len()).find(|&c| offsets[c] <= t && t < offsets[c] + q.body.sizes[c]).map(|c| (c, t - offsets[c]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;
    use crate::quiv::Ambient;
    use std::sync::Arc;

    fn amb(n: usize) -> Arc<crate::quiv::Ambient> {
        Ambient::new(Arc::new(FinCat::discrete(n)))
    }

    #[test]
    fn diagonal_is_a_unit_for_convolution() {
        let t = Span { n: 2, legs: vec![(0, 1), (1, 1), (0, 1)] };
        let (c, pairs) = convolution(&t, &Span::diagonal(2));
        assert_eq!(c, t);
        assert_eq!(pairs, vec![(0, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn sizes_multiply_through_middles() {
        let t1 = Span { n: 3, legs: vec![(0, 1), (0, 1), (0, 2)] };
        let t2 = Span { n: 3, legs: vec![(1, 2), (2, 2), (2, 0)] };
        let (c, _) = convolution(&t1, &t2);
        // Middle 1: 2·1, middle 2: 1·2.
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn convolution_is_associative_by_regrouping() {
        let t1 = Span { n: 2, legs: vec![(0, 1), (0, 0), (1, 1)] };
        let t2 = Span { n: 2, legs: vec![(1, 0), (0, 1)] };
        let t3 = Span { n: 2, legs: vec![(0, 0), (1, 0), (1, 1)] };
        let (c12, p12) = convolution(&t1, &t2);
        let (l, pl) = convolution(&c12, &t3);
        let (c23, p23) = convolution(&t2, &t3);
        let (r, pr) = convolution(&t1, &c23);
        let mut left: Vec<_> = pl.iter().map(|&(i, k)| (p12[i].0, p12[i].1, k)).collect();
        let mut right: Vec<_> = pr.iter().map(|&(i, j)| (i, p23[j].0, p23[j].1)).collect();
        assert_eq!(l.len(), r.len());
        left.sort();
        right.sort();
        assert_eq!(left, right);
    }

    #[test]
    fn two_element_composition_example() {
        let am = amb(3);
        let a = Quiver::discrete(am.clone(), &[vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        let b = Quiver::discrete(am, &[vec![0, 2, 0], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        let s = compare_slice_model(&a, &b).unwrap();
        assert_eq!(s.tensor.quiver.size(0, 2), 2);
        assert_eq!(s.conv.legs.iter().filter(|&&l| l == (0, 2)).count(), 2);
    }

    #[test]
    fn unit_against_diagonal() {
        let one = unit_quiver(&amb(3));
        let s = compare_slice_model(&one, &one).unwrap();
        assert_eq!(s.conv, Span::diagonal(3));
        assert!(check_slice_monoidal(&one, &one, &one).unwrap());
    }

    #[test]
    fn monoidal_on_mixed_sizes() {
        let am = amb(2);
        let a = Quiver::discrete(am.clone(), &[vec![1, 2], vec![0, 1]]).unwrap();
        let b = Quiver::discrete(am.clone(), &[vec![2, 1], vec![1, 0]]).unwrap();
        let c = Quiver::discrete(am, &[vec![0, 1], vec![3, 1]]).unwrap();
        assert!(check_slice_monoidal(&a, &b, &c).unwrap());
        assert!(check_slice_monoidal(&c, &a, &b).unwrap());
    }

    #[test]
    fn natural_along_cell_maps() {
        let am = amb(2);
        let a = Quiver::discrete(am.clone(), &[vec![1, 2], vec![0, 1]]).unwrap();
        let a2 = Quiver::discrete(am.clone(), &[vec![2, 1], vec![1, 1]]).unwrap();
        let b = Quiver::discrete(am.clone(), &[vec![2, 1], vec![1, 0]]).unwrap();
        let f = QuiverMap { comps: vec![vec![1], vec![0, 0], vec![], vec![0]] };
        let g = QuiverMap::identity(&b);
        assert!(slice_naturality((&a, &a2, &f), (&b, &b, &g)).unwrap());
    }

    #[test]
    fn non_discrete_rejected() {
        let one = unit_quiver(&Ambient::new(Arc::new(FinCat::chain(1))));
        assert!(matches!(compare_slice_model(&one, &one), Err(QuivError::NotDiscrete(_))));
    }
}
