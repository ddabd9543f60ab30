//! Folding simplices over left-module words into pairs of simplices over
//! all words, and the corresponding gluing of shapes.

use super::involution::finish;
use super::simplex::op_map;
use super::{shape, BmSimplex, BmWord, OrderIso, ShapeError, ShapePoset};

/// The two halves of the folding of a simplex `v_0 → … → v_d` whose first
/// `m + 1` words contain `m` (so `m = −1` when none does).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Psi {
    pub m: isize,
    /// Starred words up to `m`, then the remaining words unchanged.
    pub minus: BmSimplex,
    /// Starred words up to `m`, then the reversed remaining words.
    pub plus: BmSimplex,
}

/// `φ*` on `[2n' − 1] → [2n − 1]` for `φ: [n'] → [n]` between words `a^k m`.
fn star_map(phi: &[usize], n: usize) -> Vec<usize> {
    let np = phi.len() - 1;
    (0..2 * np).map(|t| if t < np { phi[t] } else { 2 * n - 1 - phi[2 * np - 1 - t] }).collect()
}

/// The folding `ψ(σ) = (ψ₋σ, ψ₊σ)`.
pub fn psi(s: &BmSimplex) -> Result<Psi, ShapeError> {
    if !s.is_lm() {
        return Err(ShapeError::NotInLm(s.to_string()));
    }
    let words = s.words();
    let m = words.iter().take_while(|w| w.is_lm_minus()).count() as isize - 1;
    if words[(m + 1) as usize..].iter().any(|w| w.is_lm_minus()) {
        return Err(ShapeError::NotInLm(format!("{s}: a word with m follows one without")));
    }
    if m < 0 {
        return Ok(Psi { m, minus: s.clone(), plus: s.op() });
    }
    let mu = m as usize;
    let mut prefix: Vec<Vec<usize>> = Vec::new();
    for i in 1..=mu {
        prefix.push(star_map(&s.phis()[i - 1], words[i - 1].len()));
    }
    let mut minus = prefix.clone();
    let mut plus = prefix;
    if mu < s.dim() {
        let phi = &s.phis()[mu];
        let nm = words[mu].len();
        minus.push(phi.clone());
        plus.push(op_map(phi, nm).into_iter().map(|t| t + nm - 1).collect());
        for i in mu + 2..=s.dim() {
            minus.push(s.phis()[i - 1].clone());
            plus.push(op_map(&s.phis()[i - 1], words[i - 1].len()));
        }
    }
    let start = words[0].star()?;
    let minus = BmSimplex::new(start, minus)?;
    let plus = BmSimplex::new(start, plus)?;
    for (i, w) in words.iter().enumerate() {
        let (want_minus, want_plus) = if i <= mu { (w.star()?, w.star()?) } else { (*w, w.op()) };
        if minus.words()[i] != want_minus || plus.words()[i] != want_plus {
            return Err(ShapeError::Law(format!("folding of {s} has the wrong word on floor {i}")));
        }
    }
    Ok(Psi { m, minus, plus })
}

/// The glued shape with its verified isomorphism to the shape of `σ`.
#[derive(Debug, Clone)]
pub struct Folded {
    pub psi: Psi,
    pub glued: ShapePoset,
    pub iso: OrderIso,
}

/// Glues `shape(ψ₋σ)` and `shape(ψ₊σ)` along their common first `m + 1`
/// floors, then compares the result with `shape(σ)`.
pub fn fold_shape(s: &BmSimplex) -> Result<Folded, ShapeError> {
    let psi = psi(s)?;
    let a = shape(&psi.minus)?;
    let b = shape(&psi.plus)?;
    let shared = (psi.m + 1) as usize;
    let shared_len = if shared == 0 { 0 } else { a.floor_range(shared - 1).end };
    let same_prefix = b.floor_range(0).start == 0
        && (shared == 0 || b.floor_range(shared - 1).end == shared_len)
        && b.labels()[..shared_len] == a.labels()[..shared_len];
    if !same_prefix {
        return Err(ShapeError::Law("the two halves disagree on the shared floors".into()));
    }
    let shared_edges = |p: &ShapePoset| {
        let mut e: Vec<(usize, usize)> = p.edges().iter().copied().filter(|&(u, v)| u < shared_len && v < shared_len).collect();
        e.sort_unstable();
        e
    };
    if shared_edges(&a) != shared_edges(&b) {
        return Err(ShapeError::Law("the two halves disagree on the shared edges".into()));
    }
    let offset = a.len() - shared_len;
    let lift = |v: usize| if v < shared_len { v } else { v + offset };
    let mut edges = a.edges().to_vec();
    edges.extend(b.edges().iter().filter(|&&(u, v)| u >= shared_len || v >= shared_len).map(|&(u, v)| (lift(u), lift(v))));
    let mut floors: Vec<BmWord> = psi.minus.words().to_vec();
    floors.extend_from_slice(&psi.plus.words()[shared..]);
    let glued = ShapePoset::from_graph(floors, edges)?;

    let target = shape(s)?;
    let d = s.dim();
    let map: Vec<usize> = (0..glued.len())
        .map(|v| {
            let l = glued.label(v);
            if l.floor > d {
                usize::MAX
            } else {
                target.vertex_at(l.floor, glued.position(v))
            }
        })
        .collect();
    if map.contains(&usize::MAX) {
        return Err(ShapeError::Law(format!("{s}: the reversed half contributes vertices")));
    }
    let iso = finish(glued.to_fincat(), target.to_fincat(), map)?;
    Ok(Folded { psi, glued, iso })
}
