//! Fixed-width color sets.
//!
//! Colors are dense integer ids in `0..MAX_COLORS`. A [`ColorSet`] is a
//! 256-bit bitset, so union, intersection and difference are a handful of
//! word operations. Every list, multicoloring and solver domain in the crate
//! uses this representation.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Number of distinct color ids a [`ColorSet`] can hold.
pub const MAX_COLORS: usize = 256;

const WORDS: usize = MAX_COLORS / 64;

/// A color id.
pub type Color = u32;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ColorSet {
    words: [u64; WORDS],
}

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet { words: [0; WORDS] };

    pub fn new() -> Self {
        Self::EMPTY
    }

    /// `{start, start+1, .., end-1}`.
    pub fn range(start: Color, end: Color) -> Self {
        (start..end).collect()
    }

    /// Builds a set from arbitrary ids, failing on the first id that does not fit.
    pub fn try_from_colors<I: IntoIterator<Item = Color>>(colors: I) -> Result<Self, Color> {
        let mut set = Self::EMPTY;
        for c in colors {
            if c as usize >= MAX_COLORS {
                return Err(c);
            }
            set.insert(c);
        }
        Ok(set)
    }

    #[inline]
    pub fn insert(&mut self, c: Color) -> bool {
        let (w, bit) = split(c);
        let fresh = self.words[w] & bit == 0;
        self.words[w] |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, c: Color) -> bool {
        let (w, bit) = split(c);
        let present = self.words[w] & bit != 0;
        self.words[w] &= !bit;
        present
    }

    #[inline]
    pub fn contains(&self, c: Color) -> bool {
        if c as usize >= MAX_COLORS {
            return false;
        }
        let (w, bit) = split(c);
        self.words[w] & bit != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &ColorSet) -> ColorSet {
        self.zip(other, |a, b| a | b)
    }

    #[inline]
    pub fn intersection(&self, other: &ColorSet) -> ColorSet {
        self.zip(other, |a, b| a & b)
    }

    #[inline]
    pub fn difference(&self, other: &ColorSet) -> ColorSet {
        self.zip(other, |a, b| a & !b)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &ColorSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &ColorSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<Color> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<Color> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some((i * 64 + 63 - w.leading_zeros() as usize) as Color);
            }
        }
        None
    }

    /// The `k` smallest colors of the set, or `None` if it has fewer than `k`.
    pub fn smallest(&self, k: usize) -> Option<ColorSet> {
        let mut out = ColorSet::EMPTY;
        let mut it = self.iter();
        for _ in 0..k {
            out.insert(it.next()?);
        }
        Some(out)
    }

    pub fn iter(&self) -> Iter {
        Iter { words: self.words, word: 0 }
    }

    pub fn to_vec(&self) -> Vec<Color> {
        self.iter().collect()
    }

    /// All `k`-element subsets, in lexicographic order of their sorted elements.
    pub fn subsets(&self, k: usize) -> Subsets {
        Subsets::new(self.to_vec(), k)
    }

    #[inline]
    fn zip(&self, other: &ColorSet, f: impl Fn(u64, u64) -> u64) -> ColorSet {
        let mut words = [0; WORDS];
        for (i, w) in words.iter_mut().enumerate() {
            *w = f(self.words[i], other.words[i]);
        }
        ColorSet { words }
    }
}

#[inline]
fn split(c: Color) -> (usize, u64) {
    let c = c as usize;
    debug_assert!(c < MAX_COLORS, "color {c} out of range");
    (c / 64, 1u64 << (c % 64))
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = Color;

    #[inline]
    fn next(&mut self) -> Option<Color> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] &= w - 1;
                return Some((self.word * 64 + bit) as Color);
            }
            self.word += 1;
        }
        None
    }
}

impl IntoIterator for &ColorSet {
    type Item = Color;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<Color> for ColorSet {
    /// Panics on ids `>= MAX_COLORS`; use [`ColorSet::try_from_colors`] for untrusted input.
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        Self::try_from_colors(iter).unwrap_or_else(|c| panic!("color {c} exceeds the {MAX_COLORS}-color universe"))
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColorSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ColorSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let colors = Vec::<Color>::deserialize(d)?;
        ColorSet::try_from_colors(colors)
            .map_err(|c| serde::de::Error::custom(format!("color {c} exceeds the {MAX_COLORS}-color universe")))
    }
}

/// Lexicographic `k`-subsets of a sorted color vector.
pub struct Subsets {
    pool: Vec<Color>,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(pool: Vec<Color>, k: usize) -> Self {
        let done = k > pool.len();
        Subsets { idx: (0..k).collect(), pool, done }
    }
}

impl Iterator for Subsets {
    type Item = ColorSet;

    fn next(&mut self) -> Option<ColorSet> {
        if self.done {
            return None;
        }
        let out: ColorSet = self.idx.iter().map(|&i| self.pool[i]).collect();
        // advance to the next combination
        let k = self.idx.len();
        let n = self.pool.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
