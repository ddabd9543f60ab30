//! Comparisons of shapes under order reversal.

use std::sync::Arc;

use super::{shape, BmSimplex, Kind, ShapeError, ShapePoset, Vertex};
use crate::fincat::{find_isomorphism, FinCat};

/// A vertex bijection verified to be an order isomorphism, together with
/// the outcome of an independent isomorphism search on the categories.
#[derive(Debug, Clone)]
pub struct OrderIso {
    pub left: Arc<FinCat>,
    pub right: Arc<FinCat>,
    pub map: Vec<usize>,
    pub search_found: bool,
}

/// Checks that `map` is a bijection with `x ≤ y ⇔ map x ≤ map y`.
pub(crate) fn verify_order_iso(
    n: usize,
    left: impl Fn(usize, usize) -> bool,
    m: usize,
    right: impl Fn(usize, usize) -> bool,
    map: &[usize],
) -> Result<(), String> {
    if n != m || map.len() != n {
        return Err(format!("sizes differ: {n} and {m}"));
    }
    let mut hit = vec![false; m];
    for &y in map {
        if y >= m || std::mem::replace(&mut hit[y], true) {
            return Err("vertex map is not a bijection".into());
        }
    }
    for x in 0..n {
        for y in 0..n {
            if left(x, y) != right(map[x], map[y]) {
                return Err(format!("order differs at ({x}, {y})"));
            }
        }
    }
    Ok(())
}

pub(crate) fn finish(
    left: FinCat,
    right: FinCat,
    map: Vec<usize>,
) -> Result<OrderIso, ShapeError> {
    verify_order_iso(left.num_objects(), |a, b| left.leq(a, b), right.num_objects(), |a, b| right.leq(a, b), &map)
        .map_err(ShapeError::Law)?;
    let (left, right) = (Arc::new(left), Arc::new(right));
    let search_found = find_isomorphism(&left, &right).is_some();
    Ok(OrderIso { left, right, map, search_found })
}

fn mirror(p: &ShapePoset, v: usize, letters: usize, target: &ShapePoset) -> usize {
    let l = p.label(v);
    let r = letters + 1 - l.r;
    let image = match l.kind {
        Kind::X => Vertex::y(l.floor, r),
        _ => Vertex::x(l.floor, r),
    };
    target.find(image).expect("mirrored vertex exists")
}

/// For `σ` over the all-`a` words: `shape(σ ∘ op) ≅ shape(σ)^op`, sending
/// `x_i ↦ y_{n+1−i}` and `y_i ↦ x_{n+1−i}` on each floor.
pub fn ass_op_compare(s: &BmSimplex) -> Result<OrderIso, ShapeError> {
    if !s.is_ass() {
        return Err(ShapeError::NotInAss(s.to_string()));
    }
    let p = shape(s)?;
    let q = shape(&s.op().pi())?;
    let map: Vec<usize> = (0..p.len()).map(|v| mirror(&p, v, s.words()[p.label(v).floor].len(), &q)).collect();
    let left = FinCat::poset(p.len(), |a, b| p.leq(b, a))?;
    finish(left, q.to_fincat(), map)
}

/// `shape(π σ) ≅ shape(σ) ⊔ shape(σ^op)^op`: letters `a` of each word go to
/// the first summand unchanged, letters `b` to the second with colours
/// swapped, and the two vertices of an `m` split between the summands.
pub fn piass_compare(s: &BmSimplex) -> Result<OrderIso, ShapeError> {
    let f = shape(s)?;
    let g = shape(&s.op())?;
    let pi = shape(&s.pi())?;
    let n1 = f.len();
    let mut map = Vec::with_capacity(n1 + g.len());
    for v in 0..n1 {
        let l = f.label(v);
        let image = match l.kind {
            Kind::M => Vertex::y(l.floor, s.words()[l.floor].k() + 1),
            _ => l,
        };
        map.push(pi.find(image).expect("a-letters embed"));
    }
    for v in 0..g.len() {
        let l = g.label(v);
        let w = s.words()[l.floor];
        let image = match l.kind {
            Kind::M => Vertex::x(l.floor, w.k() + 1),
            _ => {
                let r = w.len() + 1 - l.r;
                if l.kind == Kind::X {
                    Vertex::y(l.floor, r)
                } else {
                    Vertex::x(l.floor, r)
                }
            }
        };
        map.push(pi.find(image).expect("b-letters embed"));
    }
    let total = n1 + g.len();
    let left = FinCat::poset(total, |a, b| match (a < n1, b < n1) {
        (true, true) => f.leq(a, b),
        (false, false) => g.leq(b - n1, a - n1),
        _ => false,
    })?;
    finish(left, pi.to_fincat(), map)
}
