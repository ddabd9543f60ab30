//! Composition of shapes along an active arrow.

use std::sync::Arc;

use super::{inner_face, shape, BmSimplex, ShapeError};
use crate::fincat::{flat_over_2_check, FinCat, FinFunctor};

/// The correspondence of a 2-simplex as a poset over `[2]`: the fibers
/// are its floors; across floors `u ≤ v` when the vertices share a
/// component of `shape(σ)`, except that floors 0 and 2 are related by the
/// components of the composite's shape. `None` if that relation is not
/// transitive.
pub fn correspondence_poset(s: &BmSimplex) -> Result<Option<FinFunctor>, ShapeError> {
    if s.dim() != 2 {
        return Err(ShapeError::Precondition(format!("{s} is not 2-dimensional")));
    }
    let p = shape(s)?;
    let n = p.len();
    let floor: Vec<usize> = p.labels().iter().map(|l| l.floor).collect();
    let mut whole = vec![usize::MAX; n];
    for (c, chain) in p.components().iter().enumerate() {
        for &v in chain {
            whole[v] = c;
        }
    }
    let face = inner_face(s, 1)?;
    let mut outer = vec![usize::MAX; n];
    for (c, chain) in face.face.components().iter().enumerate() {
        for &v in chain {
            outer[face.map[v]] = c;
        }
    }
    let leq = |u: usize, v: usize| match (floor[u], floor[v]) {
        (a, b) if a == b => u == v,
        (0, 2) => outer[u] == outer[v],
        (a, b) => a < b && whole[u] == whole[v],
    };
    let c = match FinCat::poset(n, leq) {
        Ok(c) => Arc::new(c),
        Err(_) => return Ok(None),
    };
    let b = Arc::new(FinCat::chain(2));
    let amap = (0..c.num_arrows()).map(|f| b.hom(floor[c.src(f)], floor[c.tgt(f)])[0]).collect();
    Ok(Some(FinFunctor::new(c, b, floor, amap)?))
}

/// Components of `shape(σ)` with no vertex off the middle floor.
pub fn middle_only_components(s: &BmSimplex) -> Result<usize, ShapeError> {
    if s.dim() != 2 {
        return Err(ShapeError::Precondition(format!("{s} is not 2-dimensional")));
    }
    let p = shape(s)?;
    Ok(p.components().iter().filter(|c| c.iter().all(|&v| p.label(v).floor == 1)).count())
}

/// For a 2-simplex whose second arrow is active: no component lives only on
/// the middle floor, and the components of the composite's shape are the
/// traces of those of `shape(σ)` on the outer floors.
pub fn flat_compose_check(s: &BmSimplex) -> Result<bool, ShapeError> {
    if s.dim() != 2 {
        return Err(ShapeError::Precondition(format!("{s} is not 2-dimensional")));
    }
    if !s.is_active_at(2) {
        return Err(ShapeError::Precondition(format!("second arrow of {s} is not active")));
    }
    if middle_only_components(s)? > 0 {
        return Ok(false);
    }
    let p = shape(s)?;
    let face = inner_face(s, 1)?;
    let mut traces: Vec<Vec<usize>> = p
        .components()
        .into_iter()
        .map(|c| c.into_iter().filter(|&v| p.label(v).floor != 1).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    let mut composite: Vec<Vec<usize>> = face
        .face
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|v| face.map[v]).collect())
        .collect();
    for c in traces.iter_mut().chain(composite.iter_mut()) {
        c.sort_unstable();
    }
    traces.sort();
    composite.sort();
    Ok(traces == composite)
}

/// Whether the correspondence poset of `σ` is the gluing of its parts
/// over `{0,1}` and `{1,2}` along the middle floor. This criterion cannot
/// see components that live only on the middle floor.
pub fn shape_glues_over_2(s: &BmSimplex) -> Result<bool, ShapeError> {
    if s.dim() != 2 {
        return Err(ShapeError::Precondition(format!("{s} is not 2-dimensional")));
    }
    match correspondence_poset(s)? {
        Some(f) => Ok(flat_over_2_check(&f)?),
        None => Ok(false),
    }
}
