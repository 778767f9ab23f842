//! Tuple codec and bitsets over `A^m`.
//!
//! The whole crate shares one encoding of tuples over `A = {0..k-1}`:
//! `encode(a_1,..,a_m) = sum a_i * k^(m-i)` -- lexicographic with the
//! first coordinate most significant. Relations are bitsets indexed by
//! this codec.

/// Hard limit on `k^m` for any relation or operation table.
pub const MAX_TUPLE_SPACE: usize = 1 << 20;

/// `k^m`, or `None` if it exceeds [`MAX_TUPLE_SPACE`].
pub fn tuple_space(k: usize, m: usize) -> Option<usize> {
    let mut n: usize = 1;
    for _ in 0..m {
        n = n.checked_mul(k)?;
        if n > MAX_TUPLE_SPACE {
            return None;
        }
    }
    Some(n)
}

pub fn encode(tuple: &[u8], k: usize) -> usize {
    let mut idx = 0usize;
    for &a in tuple {
        idx = idx * k + a as usize;
    }
    idx
}

pub fn decode(mut index: usize, k: usize, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for i in (0..len).rev() {
        out[i] = (index % k) as u8;
        index /= k;
    }
    out
}

/// Fixed-size bitset over the tuple space `A^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleSet {
    nbits: usize,
    words: Vec<u64>,
}

impl TupleSet {
    pub fn empty(nbits: usize) -> Self {
        TupleSet { nbits, words: vec![0; nbits.div_ceil(64)] }
    }

    pub fn full(nbits: usize) -> Self {
        let mut s = Self::empty(nbits);
        for w in &mut s.words {
            *w = !0;
        }
        s.clear_tail();
        s
    }

    fn clear_tail(&mut self) {
        let tail = self.nbits % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn nbits(&self) -> usize {
        self.nbits
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.words[i / 64] >> (i % 64) & 1 != 0
    }

    /// Returns true if the bit was newly set.
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        let w = &mut self.words[i / 64];
        let mask = 1u64 << (i % 64);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &TupleSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &TupleSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &TupleSet) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.words.len() * 8);
        for w in &self.words {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encode_is_lexicographic_first_most_significant() {
        // k=2, m=2: (0,0)=0 (0,1)=1 (1,0)=2 (1,1)=3
        assert_eq!(encode(&[0, 0], 2), 0);
        assert_eq!(encode(&[0, 1], 2), 1);
        assert_eq!(encode(&[1, 0], 2), 2);
        assert_eq!(encode(&[1, 1], 2), 3);
        assert_eq!(encode(&[2, 1, 0], 3), 2 * 9 + 3);
    }

    #[test]
    fn tuple_space_caps() {
        assert_eq!(tuple_space(2, 4), Some(16));
        assert_eq!(tuple_space(2, 20), Some(1 << 20));
        assert_eq!(tuple_space(2, 21), None);
    }

    #[test]
    fn set_basics() {
        let mut s = TupleSet::empty(70);
        assert!(s.insert(0));
        assert!(s.insert(69));
        assert!(!s.insert(69));
        assert_eq!(s.count(), 2);
        assert_eq!(s.iter_ones().collect::<Vec<_>>(), vec![0, 69]);
        assert!(s.is_subset(&TupleSet::full(70)));
        assert_eq!(TupleSet::full(70).count(), 70);
    }

    proptest! {
        #[test]
        fn encode_decode_roundtrip(k in 2usize..5, tuple in proptest::collection::vec(0u8..4, 1..6)) {
            let tuple: Vec<u8> = tuple.into_iter().map(|a| a % k as u8).collect();
            let idx = encode(&tuple, k);
            prop_assert_eq!(decode(idx, k, tuple.len()), tuple);
        }
    }
}
