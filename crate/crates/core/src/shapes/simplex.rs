use std::fmt;

use serde::{Deserialize, Serialize};

use super::arrow::{check_map, is_active, target};
use super::{BmArrow, BmWord, ShapeError};

/// A chain `w_0 → w_1 → … → w_d`. `phis[i]` is the map `[n_{i+1}] → [n_i]`
/// of the `(i+1)`-th arrow; the words after `w_0` are derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SimplexRepr", into = "SimplexRepr")]
pub struct BmSimplex {
    words: Vec<BmWord>,
    phis: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct SimplexRepr {
    w: String,
    phis: Vec<Vec<usize>>,
}

impl TryFrom<SimplexRepr> for BmSimplex {
    type Error = ShapeError;
    fn try_from(r: SimplexRepr) -> Result<Self, ShapeError> {
        BmSimplex::new(BmWord::parse(&r.w)?, r.phis)
    }
}

impl From<BmSimplex> for SimplexRepr {
    fn from(s: BmSimplex) -> Self {
        SimplexRepr { w: s.words[0].to_string(), phis: s.phis }
    }
}

impl BmSimplex {
    pub fn new(w0: BmWord, phis: Vec<Vec<usize>>) -> Result<Self, ShapeError> {
        let mut words = vec![w0];
        for phi in &phis {
            let w = *words.last().unwrap();
            check_map(phi, w.len())?;
            words.push(target(w, phi));
        }
        Ok(BmSimplex { words, phis })
    }

    pub fn vertex(w: BmWord) -> Self {
        BmSimplex { words: vec![w], phis: Vec::new() }
    }

    pub fn from_arrow(f: &BmArrow) -> Self {
        BmSimplex { words: vec![f.src(), f.tgt()], phis: vec![f.phi().to_vec()] }
    }

    pub fn dim(&self) -> usize {
        self.phis.len()
    }

    pub fn words(&self) -> &[BmWord] {
        &self.words
    }

    pub fn phis(&self) -> &[Vec<usize>] {
        &self.phis
    }

    /// The `i`-th arrow `w_{i−1} → w_i`, `1 ≤ i ≤ dim`.
    pub fn arrow(&self, i: usize) -> BmArrow {
        BmArrow::new(self.words[i - 1], self.phis[i - 1].clone()).expect("validated on construction")
    }

    pub fn push(&self, phi: Vec<usize>) -> Result<Self, ShapeError> {
        let w = *self.words.last().unwrap();
        check_map(&phi, w.len())?;
        let mut s = self.clone();
        s.words.push(target(w, &phi));
        s.phis.push(phi);
        Ok(s)
    }

    /// The face erasing floor `i`. Inner faces compose the adjacent maps.
    pub fn face(&self, i: usize) -> Result<Self, ShapeError> {
        let d = self.dim();
        if d == 0 || i > d {
            return Err(ShapeError::Precondition(format!("no face {i} of a {d}-simplex")));
        }
        if i == 0 {
            return Ok(self.restrict(1, d));
        }
        if i == d {
            return Ok(self.restrict(0, d - 1));
        }
        let mut phis = self.phis.clone();
        let composed: Vec<usize> = self.phis[i].iter().map(|&t| self.phis[i - 1][t]).collect();
        phis.splice(i - 1..=i, [composed]);
        let mut words = self.words.clone();
        words.remove(i);
        Ok(BmSimplex { words, phis })
    }

    /// Floors `lo..=hi`.
    pub fn restrict(&self, lo: usize, hi: usize) -> Self {
        BmSimplex { words: self.words[lo..=hi].to_vec(), phis: self.phis[lo..hi].to_vec() }
    }

    /// Reverses every word and conjugates every map by the order reversal.
    pub fn op(&self) -> Self {
        let phis = self
            .phis
            .iter()
            .enumerate()
            .map(|(i, phi)| op_map(phi, self.words[i].len()))
            .collect();
        BmSimplex { words: self.words.iter().map(|w| w.op()).collect(), phis }
    }

    /// The same maps over the all-`a` words.
    pub fn pi(&self) -> Self {
        BmSimplex { words: self.words.iter().map(|w| BmWord::a_pow(w.len())).collect(), phis: self.phis.clone() }
    }

    pub fn is_ass(&self) -> bool {
        self.words.iter().all(|w| w.is_ass())
    }

    pub fn is_lm(&self) -> bool {
        self.words.iter().all(|w| w.is_lm())
    }

    /// Whether the `i`-th arrow is active.
    pub fn is_active_at(&self, i: usize) -> bool {
        is_active(&self.phis[i - 1], self.words[i - 1].len())
    }
}

impl fmt::Display for BmSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w={}", self.words[0])?;
        for phi in &self.phis {
            let vals: Vec<String> = phi.iter().map(|v| v.to_string()).collect();
            write!(f, "; phi=[{}]", vals.join(","))?;
        }
        Ok(())
    }
}

/// `φ^op(t) = n − φ(n' − t)` for `φ: [n'] → [n]`.
pub(crate) fn op_map(phi: &[usize], n: usize) -> Vec<usize> {
    let np = phi.len() - 1;
    (0..=np).map(|t| n - phi[np - t]).collect()
}

/// All monotone maps `[np] → [n]` in lexicographic order.
pub fn monotone_maps(np: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(np + 1);
    fn go(cur: &mut Vec<usize>, np: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == np + 1 {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=n {
            cur.push(v);
            go(cur, np, n, out);
            cur.pop();
        }
    }
    go(&mut cur, np, n, &mut out);
    out
}

/// Calls `visit` on every simplex of dimension exactly `dim` whose words
/// have at most `max_bits` bits, extending `prefix`.
pub fn for_each_extension(prefix: &BmSimplex, dim: usize, max_bits: usize, visit: &mut impl FnMut(&BmSimplex)) {
    if prefix.dim() == dim {
        visit(prefix);
        return;
    }
    let n = prefix.words.last().unwrap().len();
    for np in 0..max_bits {
        for phi in monotone_maps(np, n) {
            let next = prefix.push(phi).expect("enumerated maps are valid");
            for_each_extension(&next, dim, max_bits, visit);
        }
    }
}

/// Every word with at most `max_bits` bits.
pub fn words_up_to(max_bits: usize) -> Vec<BmWord> {
    (0..max_bits).flat_map(BmWord::all_with_len).collect()
}

/// Every simplex of dimension `dim` with words of at most `max_bits` bits.
pub fn simplices(max_bits: usize, dim: usize) -> Vec<BmSimplex> {
    let mut out = Vec::new();
    for w in words_up_to(max_bits) {
        for_each_extension(&BmSimplex::vertex(w), dim, max_bits, &mut |s| out.push(s.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn monotone_map_counts() {
        for np in 0..4 {
            for n in 0..4 {
                assert_eq!(monotone_maps(np, n).len(), binom(np + n + 1, np + 1));
            }
        }
    }

    #[test]
    fn simplex_counts_by_transfer_matrix() {
        // Words with n letters: n + 2; maps [a] → [b]: C(a+b+1, a+1).
        let m = |a: usize, b: usize| binom(a + b + 1, a + 1);
        let mut v: Vec<usize> = (0..3).map(|n| n + 2).collect();
        for d in 0..3 {
            assert_eq!(simplices(3, d).len(), v.iter().sum::<usize>());
            v = (0..3).map(|a| (0..3).map(|b| v[b] * m(a, b)).sum()).collect();
        }
    }

    #[test]
    fn faces_compose_maps() {
        let s = BmSimplex::new(BmWord::parse("0000").unwrap(), vec![vec![0, 1, 3], vec![0, 2]]).unwrap();
        let d1 = s.face(1).unwrap();
        assert_eq!(d1.phis(), &[vec![0, 3]]);
        assert_eq!(d1.words()[1], s.words()[2]);
        assert_eq!(s.face(0).unwrap().words()[0], s.words()[1]);
        assert_eq!(s.face(2).unwrap().dim(), 1);
        assert!(s.face(3).is_err());
    }

    #[test]
    fn op_is_an_involution_and_preserves_targets() {
        for s in simplices(3, 2) {
            let o = s.op();
            assert_eq!(o.op(), s);
            let rebuilt = BmSimplex::new(o.words()[0], o.phis().to_vec()).unwrap();
            assert_eq!(rebuilt, o);
        }
    }

    #[test]
    fn display_round_trips_through_json() {
        let s = BmSimplex::new(BmWord::parse("0011").unwrap(), vec![vec![0, 1, 3]]).unwrap();
        assert_eq!(s.to_string(), "w=0011; phi=[0,1,3]");
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<BmSimplex>(&j).unwrap(), s);
    }
}
