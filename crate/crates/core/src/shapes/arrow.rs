use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BmWord, ShapeError};

/// An arrow `src → src ∘ φ`, given by its source and a monotone
/// `φ: [n'] → [n]`. The target is always recomputed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BmArrow {
    src: BmWord,
    phi: Vec<usize>,
}

impl BmArrow {
    pub fn new(src: BmWord, phi: Vec<usize>) -> Result<Self, ShapeError> {
        check_map(&phi, src.len())?;
        Ok(BmArrow { src, phi })
    }

    pub fn identity(w: BmWord) -> Self {
        BmArrow { src: w, phi: (0..=w.len()).collect() }
    }

    pub fn src(&self) -> BmWord {
        self.src
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn tgt(&self) -> BmWord {
        target(self.src, &self.phi)
    }

    pub fn is_inert(&self) -> bool {
        is_inert(&self.phi)
    }

    pub fn is_active(&self) -> bool {
        is_active(&self.phi, self.src.len())
    }

    /// `self` followed by `g`: the map `φ_self ∘ φ_g`.
    pub fn then(&self, g: &BmArrow) -> Result<BmArrow, ShapeError> {
        if g.src != self.tgt() {
            return Err(ShapeError::BadMap(format!("cannot compose: {} is not {}", g.src, self.tgt())));
        }
        Ok(BmArrow { src: self.src, phi: g.phi.iter().map(|&t| self.phi[t]).collect() })
    }

    /// Number of edges of the arrow's shape.
    pub fn edge_count(&self) -> usize {
        let (w, t) = (self.src, self.tgt());
        let (kp, p) = (t.k(), &self.phi);
        if t.alpha() == 1 {
            kp + w.k() + 1 - p[0]
        } else {
            kp + p[kp] - p[0]
        }
    }
}

impl fmt::Display for BmArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w={}; phi={:?}", self.src, self.phi)
    }
}

pub(crate) fn check_map(phi: &[usize], n: usize) -> Result<(), ShapeError> {
    if phi.is_empty() {
        return Err(ShapeError::BadMap("a map needs at least one value".into()));
    }
    if let Some(&v) = phi.iter().find(|&&v| v > n) {
        return Err(ShapeError::BadMap(format!("value {v} is outside [{n}]")));
    }
    if phi.windows(2).any(|p| p[0] > p[1]) {
        return Err(ShapeError::BadMap(format!("{phi:?} is not monotone")));
    }
    Ok(())
}

pub(crate) fn target(src: BmWord, phi: &[usize]) -> BmWord {
    let zeros = phi.iter().filter(|&&v| v < src.zeros()).count();
    BmWord::new(phi.len() - 1, zeros).expect("monotone image of a word is a word")
}

pub(crate) fn is_inert(phi: &[usize]) -> bool {
    phi.iter().enumerate().all(|(i, &v)| v == phi[0] + i)
}

pub(crate) fn is_active(phi: &[usize], n: usize) -> bool {
    phi[0] == 0 && phi[phi.len() - 1] == n
}

/// Endpoint of an arrow's edge: floor `0` is the source, `1` the target,
/// followed by the planar position.
pub(crate) type End = (usize, usize);

/// The edges of the shape of `src → src ∘ φ`.
///
/// For each `i ≤ k'`: if `φ(i−1) = φ(i)` the target cap `x'_i → y'_i`;
/// otherwise `x'_i → x_φ(i)`, `y_{φ(i−1)+1} → y'_i` and the source chain
/// `y_j → x_{j−1}` for `φ(i−1)+1 < j ≤ φ(i)`. When the target ends in `m`,
/// the source chain runs on to `y_{k+1} = y` and `y_{φ(k')+1} → y'`.
pub(crate) fn arrow_edges(src: BmWord, phi: &[usize], mut push: impl FnMut(End, End)) {
    let tgt = target(src, phi);
    let kp = tgt.k();
    for i in 1..=kp {
        let (lo, hi) = (phi[i - 1], phi[i]);
        if lo == hi {
            push((1, tgt.x_pos(i)), (1, tgt.y_pos(i)));
        } else {
            push((1, tgt.x_pos(i)), (0, src.x_pos(hi)));
            push((0, src.y_pos(lo + 1)), (1, tgt.y_pos(i)));
            for j in lo + 2..=hi {
                push((0, src.y_pos(j)), (0, src.x_pos(j - 1)));
            }
        }
    }
    if tgt.alpha() == 1 {
        let last = phi[kp];
        for j in last + 2..=src.k() + 1 {
            push((0, src.y_ext_pos(j)), (0, src.x_pos(j - 1)));
        }
        push((0, src.y_ext_pos(last + 1)), (1, 0));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(w: &str, phi: &[usize]) -> BmArrow {
        BmArrow::new(BmWord::parse(w).unwrap(), phi.to_vec()).unwrap()
    }

    #[test]
    fn target_is_recomputed() {
        assert_eq!(arrow("00011", &[0, 2, 3]).tgt().to_string(), "001");
        assert_eq!(arrow("0000", &[0, 3]).tgt().letters(), "a");
    }

    #[test]
    fn rejects_bad_maps() {
        let w = BmWord::parse("000").unwrap();
        assert!(BmArrow::new(w, vec![1, 0]).is_err());
        assert!(BmArrow::new(w, vec![0, 3]).is_err());
        assert!(BmArrow::new(w, vec![]).is_err());
    }

    #[test]
    fn inert_and_active() {
        assert!(arrow("00000", &[1, 2, 3]).is_inert());
        assert!(!arrow("00000", &[1, 2, 3]).is_active());
        assert!(arrow("0000", &[0, 3]).is_active());
        assert!(BmArrow::identity(BmWord::parse("011").unwrap()).is_inert());
    }

    #[test]
    fn edge_count_matches_rules() {
        for n in 0..4 {
            for w in BmWord::all_with_len(n) {
                for phi in crate::shapes::simplex::monotone_maps(2, n) {
                    let f = BmArrow::new(w, phi.clone()).unwrap();
                    let mut c = 0;
                    arrow_edges(w, &phi, |_, _| c += 1);
                    assert_eq!(c, f.edge_count(), "{f}");
                }
            }
        }
    }

    #[test]
    fn composition_composes_maps() {
        let f = arrow("0000", &[0, 1, 3]);
        let g = BmArrow::new(f.tgt(), vec![0, 2]).unwrap();
        assert_eq!(f.then(&g).unwrap().phi(), &[0, 3]);
    }
}
