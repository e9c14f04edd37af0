//! Fixed-width bit rows. A `BitSet` is a subset of {0, .., nbits-1} stored as
//! machine words; word-wise AND plus popcount is the kernel every clique and
//! joint computation bottoms out in.

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    nbits: usize,
    words: Vec<u64>,
}

impl BitSet {
    /// Empty set over a universe of `nbits` elements.
    pub fn new(nbits: usize) -> Self {
        BitSet {
            nbits,
            words: vec![0; nbits.div_ceil(WORD_BITS)],
        }
    }

    /// The full universe {0, .., nbits-1}.
    pub fn universe(nbits: usize) -> Self {
        let mut s = BitSet::new(nbits);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD_BITS;
            *w = if lo + WORD_BITS <= nbits {
                u64::MAX
            } else if lo < nbits {
                (1u64 << (nbits - lo)) - 1
            } else {
                0
            };
        }
        s
    }

    pub fn from_words(nbits: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), nbits.div_ceil(WORD_BITS));
        BitSet { nbits, words }
    }

    pub fn nbits(&self) -> usize {
        self.nbits
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.nbits && (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// Number of elements.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Removes every element of `other` from `self`.
    pub fn diff_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    /// Intersection with a raw word slice of the same width.
    pub fn and_words(&self, words: &[u64]) -> BitSet {
        debug_assert_eq!(self.words.len(), words.len());
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(words) {
            *a &= b;
        }
        out
    }

    /// |self ∩ words| without allocating.
    pub fn and_count(&self, words: &[u64]) -> usize {
        debug_assert_eq!(self.words.len(), words.len());
        self.words
            .iter()
            .zip(words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Iterates set elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = i * WORD_BITS;
            std::iter::successors(if w == 0 { None } else { Some(w) }, |&rest| {
                let next = rest & (rest - 1);
                if next == 0 {
                    None
                } else {
                    Some(next)
                }
            })
            .map(move |bits| base + bits.trailing_zeros() as usize)
        })
    }

    /// Smallest element, if any.
    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn from_slice(nbits: usize, members: &[usize]) -> Self {
        let mut s = BitSet::new(nbits);
        for &m in members {
            s.insert(m);
        }
        s
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// |a ∩ b| over raw rows.
pub fn and_popcount(a: &[u64], b: &[u64]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_roundtrip() {
        let mut s = BitSet::new(130);
        for i in [0, 1, 63, 64, 65, 128, 129] {
            s.insert(i);
        }
        assert_eq!(s.to_vec(), vec![0, 1, 63, 64, 65, 128, 129]);
        assert_eq!(s.count(), 7);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.count(), 6);
    }

    #[test]
    fn universe_has_exact_width() {
        for n in [0, 1, 63, 64, 65, 200] {
            let u = BitSet::universe(n);
            assert_eq!(u.count(), n);
            assert_eq!(u.to_vec(), (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn set_algebra() {
        let a = BitSet::from_slice(70, &[1, 2, 3, 68]);
        let b = BitSet::from_slice(70, &[2, 3, 5, 69]);
        assert_eq!(a.and(&b).to_vec(), vec![2, 3]);
        assert_eq!(and_popcount(a.words(), b.words()), 2);
        let mut d = a.clone();
        d.diff_assign(&b);
        assert_eq!(d.to_vec(), vec![1, 68]);
    }
}
