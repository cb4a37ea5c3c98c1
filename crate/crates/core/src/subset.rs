//! Subsets of the ground set `[n]` as bitmasks.
//!
//! Element `i` (1-based in reports) is bit `i - 1`. The ground set is capped
//! at 63 elements so that `full(n)` never overflows.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const MAX_GROUND_SIZE: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroundSubset(pub u64);

impl GroundSubset {
    pub const EMPTY: GroundSubset = GroundSubset(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND_SIZE);
        GroundSubset((1u64 << n) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        GroundSubset(1 << i)
    }

    /// From 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        GroundSubset(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// From 1-based element labels.
    pub fn from_elements<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Self::from_indices(it.into_iter().map(|i| i - 1))
    }

    pub fn bits(self) -> u64 {
        self.0
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    pub fn with(self, i: usize) -> Self {
        GroundSubset(self.0 | 1 << i)
    }
    pub fn without(self, i: usize) -> Self {
        GroundSubset(self.0 & !(1 << i))
    }
    pub fn union(self, o: Self) -> Self {
        GroundSubset(self.0 | o.0)
    }
    pub fn intersection(self, o: Self) -> Self {
        GroundSubset(self.0 & o.0)
    }
    pub fn is_subset_of(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }
    pub fn complement(self, n: usize) -> Self {
        GroundSubset(!self.0 & Self::full(n).0)
    }

    /// 0-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// 1-based labels in increasing order.
    pub fn elements(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }

    /// Removes element `i` and shifts higher elements down, matching the
    /// ground set of a minor on `[n] \ i`.
    pub fn squeeze_out(self, i: usize) -> Self {
        let low = self.0 & ((1 << i) - 1);
        let high = (self.0 >> (i + 1)) << i;
        GroundSubset(low | high)
    }

    /// Inverse of [`squeeze_out`](Self::squeeze_out), leaving position `i` empty.
    pub fn expand_at(self, i: usize) -> Self {
        let low = self.0 & ((1 << i) - 1);
        let high = (self.0 >> i) << (i + 1);
        GroundSubset(low | high)
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for GroundSubset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroundSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(d)?;
        if elems.iter().any(|&e| e == 0 || e > MAX_GROUND_SIZE) {
            return Err(serde::de::Error::custom("ground set elements are 1-based and at most 63"));
        }
        Ok(GroundSubset::from_elements(elems))
    }
}

/// All `size`-element subsets of `[n]` in increasing bitmask order
/// (Gosper's hack).
pub fn combinations(n: usize, size: usize) -> impl Iterator<Item = GroundSubset> {
    assert!(n <= MAX_GROUND_SIZE);
    let limit = 1u64 << n;
    let mut next = if size > n {
        None
    } else if size == 0 {
        Some(0u64)
    } else {
        Some((1u64 << size) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(GroundSubset(cur))
    })
}

/// Every subset of `[n]` in increasing bitmask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = GroundSubset> {
    assert!(n <= MAX_GROUND_SIZE);
    (0..1u64 << n).map(GroundSubset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn combinations_enumerate_each_subset_once() {
        for n in 0..=10 {
            for s in 0..=n + 1 {
                let got: Vec<_> = combinations(n, s).collect();
                assert_eq!(got.len() as u64, if s > n { 0 } else { binom(n as u64, s as u64) });
                assert!(got.iter().all(|g| g.len() == s && g.bits() < 1 << n));
                assert!(got.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn squeeze_and_expand_are_inverse() {
        let s = GroundSubset::from_elements([1, 3, 4, 7]);
        let squeezed = s.without(2).squeeze_out(2);
        assert_eq!(squeezed, GroundSubset::from_elements([1, 3, 6]));
        assert_eq!(squeezed.expand_at(2), s.without(2));
    }

    #[test]
    fn serde_uses_one_based_labels() {
        let s = GroundSubset::from_elements([1, 2, 4, 5]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[1,2,4,5]");
        assert_eq!(serde_json::from_str::<GroundSubset>(&json).unwrap(), s);
        assert!(serde_json::from_str::<GroundSubset>("[0]").is_err());
    }
}
