//! Fixed-width bit signatures: one bit per hyperplane.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    /// All-zero signature. Words are allocated lazily so equal signatures
    /// always have equal representations.
    pub fn zeros() -> Self {
        Bits::default()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        let w = i / 64;
        if w >= self.words.len() {
            if !value {
                return;
            }
            self.words.resize(w + 1, 0);
        }
        if value {
            self.words[w] |= 1 << (i % 64);
        } else {
            self.words[w] &= !(1 << (i % 64));
            while self.words.last() == Some(&0) {
                self.words.pop();
            }
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Hamming distance.
    pub fn distance(&self, other: &Bits) -> usize {
        let n = self.words.len().max(other.words.len());
        (0..n)
            .map(|i| (self.word(i) ^ other.word(i)).count_ones() as usize)
            .sum()
    }

    /// Bitwise majority of three signatures.
    pub fn majority(a: &Bits, b: &Bits, c: &Bits) -> Bits {
        let n = a.words.len().max(b.words.len()).max(c.words.len());
        let words = (0..n)
            .map(|i| {
                let (x, y, z) = (a.word(i), b.word(i), c.word(i));
                (x & y) | (y & z) | (x & z)
            })
            .collect();
        Bits { words }.trimmed()
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        let n = self.words.len().max(other.words.len());
        Bits {
            words: (0..n).map(|i| self.word(i) ^ other.word(i)).collect(),
        }
        .trimmed()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    #[inline]
    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }

    // Equality and hashing must not depend on trailing zero words.
    fn trimmed(mut self) -> Bits {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
        self
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ones: Vec<usize> = self.ones().collect();
        write!(f, "Bits{ones:?}")
    }
}
