use std::fmt;

use serde::{Deserialize, Serialize};

use super::ShapeError;

/// A monotone word `w: [n] → [1]`, stored as its letter count `n` and the
/// number of leading zeros. Letters read `a` for `00`, `m` for `01`,
/// `b` for `11`, giving `a^k m^α b^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BmWord {
    n: usize,
    zeros: usize,
}

impl BmWord {
    /// `n` letters and `zeros ∈ 0..=n+1` leading zero bits.
    pub fn new(n: usize, zeros: usize) -> Result<Self, ShapeError> {
        if zeros > n + 1 {
            return Err(ShapeError::BadWord(format!("{zeros} zeros in a word of {} bits", n + 1)));
        }
        Ok(BmWord { n, zeros })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self, ShapeError> {
        if bits.is_empty() {
            return Err(ShapeError::BadWord("empty bit string".into()));
        }
        let zeros = bits.iter().take_while(|&&b| b == 0).count();
        if bits[zeros..].iter().any(|&b| b != 1) {
            return Err(ShapeError::BadWord("bits must be a monotone 0/1 sequence".into()));
        }
        BmWord::new(bits.len() - 1, zeros)
    }

    pub fn parse(s: &str) -> Result<Self, ShapeError> {
        let bits: Option<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect();
        Self::from_bits(&bits.ok_or_else(|| ShapeError::BadWord(format!("not a bit string: {s:?}")))?)
    }

    /// The all-`a` word with `n` letters.
    pub fn a_pow(n: usize) -> Self {
        BmWord { n, zeros: n + 1 }
    }

    /// `a^k m`.
    pub fn a_pow_m(k: usize) -> Self {
        BmWord { n: k + 1, zeros: k + 1 }
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn zeros(&self) -> usize {
        self.zeros
    }

    pub fn bit(&self, j: usize) -> u8 {
        debug_assert!(j <= self.n);
        (j >= self.zeros) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..=self.n).map(|j| self.bit(j)).collect()
    }

    pub fn k(&self) -> usize {
        self.zeros.saturating_sub(1)
    }

    pub fn alpha(&self) -> usize {
        (self.zeros >= 1 && self.zeros <= self.n) as usize
    }

    pub fn l(&self) -> usize {
        self.n - self.k() - self.alpha()
    }

    /// Number of vertices of the discrete shape: `2k + α`.
    pub fn num_vertices(&self) -> usize {
        2 * self.k() + self.alpha()
    }

    pub fn letters(&self) -> String {
        let mut s = "a".repeat(self.k());
        if self.alpha() == 1 {
            s.push('m');
        }
        s.push_str(&"b".repeat(self.l()));
        s
    }

    /// The order-reversed word `s^op(i) = 1 − s(n − i)`.
    pub fn op(&self) -> Self {
        BmWord { n: self.n, zeros: self.n + 1 - self.zeros }
    }

    pub fn is_ass(&self) -> bool {
        self.zeros == self.n + 1
    }

    /// Starts with 0 and has at most one 1.
    pub fn is_lm(&self) -> bool {
        self.zeros >= 1 && self.zeros + 1 >= self.n + 1
    }

    /// In LM but not in the associative part: `a^k m`.
    pub fn is_lm_minus(&self) -> bool {
        self.n >= 1 && self.zeros == self.n
    }

    /// For `v = a^k m` with `n = k + 1` letters, the op-invariant word
    /// `v* = a^k m b^k` on `[2n − 1]`.
    pub fn star(&self) -> Result<Self, ShapeError> {
        if !self.is_lm_minus() {
            return Err(ShapeError::NotInLm(format!("{self} has no starred form")));
        }
        Ok(BmWord { n: 2 * self.n - 1, zeros: self.n })
    }

    /// Planar position of `x_r` (1-based `r`).
    pub fn x_pos(&self, r: usize) -> usize {
        self.alpha() + 2 * (self.k() - r)
    }

    pub fn y_pos(&self, r: usize) -> usize {
        self.x_pos(r) + 1
    }

    /// Planar position of `y_r`, where `y_{k+1}` stands for the `m`-vertex.
    pub fn y_ext_pos(&self, r: usize) -> usize {
        if r == self.k() + 1 {
            debug_assert_eq!(self.alpha(), 1);
            0
        } else {
            self.y_pos(r)
        }
    }

    /// Every word with `n` letters, from `1…1` to `0…0`.
    pub fn all_with_len(n: usize) -> impl Iterator<Item = BmWord> {
        (0..=n + 1).map(move |zeros| BmWord { n, zeros })
    }
}

impl fmt::Display for BmWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_decoding() {
        assert_eq!(BmWord::parse("0011").unwrap().letters(), "amb");
        assert_eq!(BmWord::parse("00").unwrap().letters(), "a");
        assert_eq!(BmWord::parse("01").unwrap().letters(), "m");
        assert_eq!(BmWord::parse("0").unwrap().letters(), "");
        assert_eq!(BmWord::parse("1").unwrap().letters(), "");
        assert!(BmWord::parse("010").is_err());
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(BmWord::parse("00").unwrap().num_vertices(), 2);
        assert_eq!(BmWord::parse("01").unwrap().num_vertices(), 1);
        assert_eq!(BmWord::parse("0").unwrap().num_vertices(), 0);
        assert_eq!(BmWord::parse("00011").unwrap().num_vertices(), 5);
    }

    #[test]
    fn op_swaps_a_and_b() {
        let w = BmWord::parse("00011").unwrap();
        assert_eq!(w.letters(), "aamb");
        assert_eq!(w.op().letters(), "ambb");
        for n in 0..5 {
            for w in BmWord::all_with_len(n) {
                assert_eq!(w.op().op(), w);
            }
        }
    }

    #[test]
    fn star_of_lm_word() {
        let v = BmWord::parse("001").unwrap();
        assert_eq!(v.letters(), "am");
        let s = v.star().unwrap();
        assert_eq!(s.letters(), "amb");
        assert_eq!(s.op(), s);
        assert!(BmWord::parse("000").unwrap().star().is_err());
    }

    #[test]
    fn planar_positions() {
        let w = BmWord::parse("0001").unwrap(); // a a m
        assert_eq!((w.x_pos(2), w.y_pos(2), w.x_pos(1), w.y_pos(1)), (1, 2, 3, 4));
        assert_eq!(w.y_ext_pos(3), 0);
    }
}
