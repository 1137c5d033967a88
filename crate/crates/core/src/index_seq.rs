//! Finite 0/1 sequences over half-open index intervals `[d, ell)`.
//!
//! A sequence stores its bounds explicitly, so the empty sequence at `d = 2`
//! and the empty sequence at `d = 3` are different values. Bits are addressed
//! by absolute position: `s.get(i)` is defined for `d <= i < ell`.
//!
//! ```
//! use odpn::index_seq::IndexSeq;
//! let s: IndexSeq = "s[2,5):101".parse().unwrap();
//! let parts = s.unitary_decomp();
//! assert_eq!(parts.len(), 2);
//! assert_eq!(parts[1].to_string(), "s[3,5):01");
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{DiagramError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSeq {
    d: u32,
    ell: u32,
    bits: Vec<bool>,
}

impl IndexSeq {
    /// Builds a sequence from its bits, which occupy `[d, d + bits.len())`.
    pub fn new(d: u32, bits: Vec<bool>) -> Self {
        let ell = d + bits.len() as u32;
        IndexSeq { d, ell, bits }
    }

    pub fn from_bits(d: u32, bits: &[u8]) -> Self {
        Self::new(d, bits.iter().map(|&b| b != 0).collect())
    }

    /// The empty sequence at `d`.
    pub fn empty(d: u32) -> Self {
        IndexSeq { d, ell: d, bits: Vec::new() }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn in_domain(&self, i: u32) -> bool {
        self.d <= i && i < self.ell
    }

    /// `s(i)`, or `None` off the domain.
    pub fn get(&self, i: u32) -> Option<bool> {
        self.in_domain(i).then(|| self.bits[(i - self.d) as usize])
    }

    /// `#s`: the number of ones.
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_null(&self) -> bool {
        self.count() == 0
    }

    /// At most one `1`, and only in the last position.
    pub fn is_unitary(&self) -> bool {
        let n = self.bits.len();
        self.bits.iter().enumerate().all(|(k, &b)| !b || k + 1 == n)
    }

    pub fn is_initial(&self) -> bool {
        self.d == 2
    }

    /// `s|i`, with `ell(s|i) = min(max(i, d), ell)`.
    pub fn restrict(&self, i: u32) -> Self {
        let ell = i.max(self.d).min(self.ell);
        IndexSeq { d: self.d, ell, bits: self.bits[..(ell - self.d) as usize].to_vec() }
    }

    /// `s * t`; requires `ell(s) = d(t)`.
    pub fn concat(&self, t: &IndexSeq) -> Result<Self> {
        if self.ell != t.d {
            return Err(DiagramError::BoundsMismatch(format!("concat {self} * {t}")));
        }
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&t.bits);
        Ok(IndexSeq { d: self.d, ell: t.ell, bits })
    }

    /// `s ∩ t`: the longest common prefix; requires `d(s) = d(t)`.
    pub fn meet(&self, t: &IndexSeq) -> Result<Self> {
        if self.d != t.d {
            return Err(DiagramError::BoundsMismatch(format!("meet {self} ∩ {t}")));
        }
        let common = self.bits.iter().zip(&t.bits).take_while(|(a, b)| a == b).count();
        Ok(self.restrict(self.d + common as u32))
    }

    /// `self ⊆_e s`.
    pub fn is_initial_segment_of(&self, s: &IndexSeq) -> bool {
        self.d == s.d && self.ell <= s.ell && s.bits.starts_with(&self.bits)
    }

    /// `self ⊂_e s`.
    pub fn is_proper_initial_segment_of(&self, s: &IndexSeq) -> bool {
        self.ell < s.ell && self.is_initial_segment_of(s)
    }

    /// All `t ⊆_e s`, shortest first.
    pub fn prefixes(&self) -> impl Iterator<Item = IndexSeq> + '_ {
        (self.d..=self.ell).map(move |i| self.restrict(i))
    }

    /// `s <_lex t`: some shared index `i` with `s|i = t|i` and `s(i) = 0 < 1 = t(i)`.
    pub fn lex_less(&self, t: &IndexSeq) -> bool {
        if self.d != t.d {
            return false;
        }
        match self.bits.iter().zip(&t.bits).position(|(a, b)| a != b) {
            Some(k) => !self.bits[k] && t.bits[k],
            None => false,
        }
    }

    /// Split into maximal unitary components; the concatenation gives back `s`.
    pub fn unitary_decomp(&self) -> Vec<IndexSeq> {
        let mut cuts = vec![self.d];
        for (k, &b) in self.bits.iter().enumerate() {
            let i = self.d + k as u32;
            if b && i + 1 < self.ell {
                cuts.push(i + 1);
            }
        }
        cuts.push(self.ell);
        cuts.windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                IndexSeq::new(a, self.bits[(a - self.d) as usize..(b - self.d) as usize].to_vec())
            })
            .collect()
    }

    /// The weight `E(s)` for initial `s` with `ell(s) <= n - 2`.
    pub fn weight_e(&self, n: u32) -> u64 {
        let top = n as i64 - 3;
        let pow = |i: i64| 3u64.pow((top - i) as u32);
        let mut e = 0;
        for i in 2..self.ell as i64 {
            if !self.get(i as u32).unwrap_or(false) {
                e += pow(i);
            }
        }
        for i in self.ell as i64..=top {
            e += 2 * pow(i);
        }
        e
    }
}

/// Every sequence in `I` for `N`: `2 <= d <= ell <= N - 2`.
pub fn all_in(n: u32) -> Vec<IndexSeq> {
    let top = n.saturating_sub(2);
    let mut out = Vec::new();
    for d in 2..=top {
        for ell in d..=top {
            out.extend(all_with(d, ell));
        }
    }
    out
}

/// `I(2)`: the initial sequences.
pub fn initial(n: u32) -> Vec<IndexSeq> {
    all_in(n).into_iter().filter(IndexSeq::is_initial).collect()
}

/// `I(2, N-2)`: initial sequences of full length, in lexicographic order.
pub fn initial_full(n: u32) -> Vec<IndexSeq> {
    if n < 4 {
        return Vec::new();
    }
    all_with(2, n - 2)
}

/// Every sequence with domain `[d, ell)`, in lexicographic order.
pub fn all_with(d: u32, ell: u32) -> Vec<IndexSeq> {
    let len = (ell - d) as usize;
    (0u64..1 << len)
        .map(|m| IndexSeq::new(d, (0..len).map(|k| m >> (len - 1 - k) & 1 == 1).collect()))
        .collect()
}

impl fmt::Display for IndexSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s[{},{}):", self.d, self.ell)?;
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for IndexSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IndexSeq {
    type Err = DiagramError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: &str| DiagramError::Syntax { pos: 0, msg: format!("{msg} in `{text}`") };
        let rest = text.trim().strip_prefix("s[").ok_or_else(|| bad("expected `s[`"))?;
        let (bounds, bits) = rest.split_once("):").ok_or_else(|| bad("expected `):`"))?;
        let (d, ell) = bounds.split_once(',').ok_or_else(|| bad("expected `,`"))?;
        let d: u32 = d.trim().parse().map_err(|_| bad("bad lower bound"))?;
        let ell: u32 = ell.trim().parse().map_err(|_| bad("bad upper bound"))?;
        let bits = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad("bits must be 0 or 1")),
            })
            .collect::<Result<Vec<_>>>()?;
        if ell < d || (ell - d) as usize != bits.len() {
            return Err(DiagramError::BoundsMismatch(text.to_string()));
        }
        Ok(IndexSeq { d, ell, bits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> IndexSeq {
        text.parse().unwrap()
    }

    #[test]
    fn lex_examples() {
        assert!(s("s[2,4):01").lex_less(&s("s[2,4):10")));
        assert!(!s("s[2,4):01").lex_less(&s("s[2,4):01")));
        assert!(!IndexSeq::empty(2).lex_less(&IndexSeq::empty(3)));
        assert!(s("s[2,3):0").lex_less(&s("s[2,5):100")));
        assert!(!s("s[2,3):1").lex_less(&s("s[2,5):100")));
    }

    #[test]
    fn decomp_examples() {
        assert_eq!(IndexSeq::empty(2).unitary_decomp(), vec![IndexSeq::empty(2)]);
        assert_eq!(s("s[2,5):101").unitary_decomp(), vec![s("s[2,3):1"), s("s[3,5):01")]);
        assert_eq!(s("s[2,4):00").unitary_decomp(), vec![s("s[2,4):00")]);
        assert_eq!(s("s[2,4):11").unitary_decomp(), vec![s("s[2,3):1"), s("s[3,4):1")]);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(IndexSeq::empty(2).weight_e(6), 8);
        assert_eq!(s("s[2,4):11").weight_e(6), 0);
        assert_eq!(s("s[2,3):0").weight_e(6), 5);
        assert_eq!(s("s[2,4):00").weight_e(6), 4);
        assert_eq!(s("s[2,4):01").weight_e(6), 3);
        assert_eq!(IndexSeq::empty(2).weight_e(4), 0);
    }

    #[test]
    fn restrict_meet_segments() {
        assert_eq!(s("s[2,5):101").restrict(3), s("s[2,3):1"));
        assert_eq!(s("s[2,5):101").restrict(0), IndexSeq::empty(2));
        assert_eq!(s("s[2,5):101").restrict(9), s("s[2,5):101"));
        assert_eq!(s("s[2,4):10").meet(&s("s[2,4):11")).unwrap(), s("s[2,3):1"));
        assert!(s("s[2,4):10").meet(&s("s[3,4):1")).is_err());
        assert!(IndexSeq::empty(2).is_initial_segment_of(&s("s[2,4):10")));
        assert!(!s("s[2,4):10").is_proper_initial_segment_of(&s("s[2,4):10")));
        assert_eq!(s("s[2,3):1").concat(&s("s[3,5):01")).unwrap(), s("s[2,5):101"));
        assert!(s("s[2,3):1").concat(&s("s[4,5):1")).is_err());
    }

    #[test]
    fn small_index_sets() {
        assert_eq!(all_in(4), vec![IndexSeq::empty(2)]);
        assert_eq!(initial_full(4), vec![IndexSeq::empty(2)]);
        assert_eq!(initial_full(6).len(), 4);
        assert_eq!(all_in(6).len(), 1 + 2 + 4 + 1 + 2 + 1);
    }

    #[test]
    fn text_round_trip() {
        for t in ["s[2,2):", "s[3,6):010"] {
            assert_eq!(s(t).to_string(), t);
        }
        assert!("s[2,4):1".parse::<IndexSeq>().is_err());
        assert!("s[2,3):2".parse::<IndexSeq>().is_err());
    }
}
