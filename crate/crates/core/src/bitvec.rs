//! Word-packed bit vectors and id sets built on them.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;
use std::ops::{BitXor, BitXorAssign};

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A fixed-length vector over GF(2), packed into `u64` words.
///
/// Bits beyond `len` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec { len, words: vec![u64::MAX; words_for(len)] };
        v.clear_tail();
        v
    }

    /// Builds a vector with the given positions set. Panics if a position is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = BitVec::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, most significant position first (index 0 leftmost).
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// True when the vector has length zero. See [`BitVec::is_zero`] for the all-zero test.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Lowest set position, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let tz = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * WORD_BITS + tz)
                }
            })
        })
    }

    fn assert_same_len(&self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        self.assert_same_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        self.assert_same_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        self.assert_same_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Complement within `0..len`.
    pub fn not(&self) -> BitVec {
        let mut v = BitVec { len: self.len, words: self.words.iter().map(|w| !w).collect() };
        v.clear_tail();
        v
    }

    /// `|self ∩ other|`.
    pub fn and_count(&self, other: &BitVec) -> usize {
        self.assert_same_len(other);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.and_count(other) % 2 == 1
    }

    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        self.assert_same_len(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bit_string())
    }
}

impl BitXor for &BitVec {
    type Output = BitVec;
    fn bitxor(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl BitXorAssign<&BitVec> for BitVec {
    fn bitxor_assign(&mut self, rhs: &BitVec) {
        self.xor_assign(rhs);
    }
}

/// Two id sets drawn from spaces of different sizes were combined.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("id space mismatch: {left} vs {right}")]
pub struct SpaceMismatch {
    pub left: usize,
    pub right: usize,
}

/// Marker for sets of edge ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeIds {}

/// Marker for sets of vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexIds {}

/// A subset of `0..universe` for one graph's edge or vertex id space.
pub struct IdSet<K> {
    bits: BitVec,
    _kind: PhantomData<fn() -> K>,
}

/// A subset of a graph's edge ids.
pub type EdgeSet = IdSet<EdgeIds>;
/// A subset of a graph's vertex ids.
pub type VertexSet = IdSet<VertexIds>;

impl<K> IdSet<K> {
    pub fn empty(universe: usize) -> Self {
        BitVec::zeros(universe).into()
    }

    pub fn full(universe: usize) -> Self {
        BitVec::ones(universe).into()
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Self {
        BitVec::from_indices(universe, ids).into()
    }

    /// Size of the id space this set lives in.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn contains(&self, id: usize) -> bool {
        id < self.bits.len() && self.bits.get(id)
    }

    pub fn insert(&mut self, id: usize) {
        self.bits.set(id, true);
    }

    pub fn remove(&mut self, id: usize) {
        self.bits.set(id, false);
    }

    pub fn toggle(&mut self, id: usize) {
        self.bits.toggle(id);
    }

    /// Ids in increasing order.
    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.ids().collect()
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn into_bits(self) -> BitVec {
        self.bits
    }

    fn check(&self, other: &Self) -> Result<(), SpaceMismatch> {
        if self.universe() == other.universe() {
            Ok(())
        } else {
            Err(SpaceMismatch { left: self.universe(), right: other.universe() })
        }
    }

    pub fn try_symmetric_difference(&self, other: &Self) -> Result<Self, SpaceMismatch> {
        self.check(other)?;
        Ok((&self.bits ^ &other.bits).into())
    }

    pub fn try_union(&self, other: &Self) -> Result<Self, SpaceMismatch> {
        self.check(other)?;
        let mut b = self.bits.clone();
        b.or_assign(&other.bits);
        Ok(b.into())
    }

    pub fn try_intersection(&self, other: &Self) -> Result<Self, SpaceMismatch> {
        self.check(other)?;
        let mut b = self.bits.clone();
        b.and_assign(&other.bits);
        Ok(b.into())
    }

    /// `self ⊕ other`; panics when the id spaces differ.
    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.try_symmetric_difference(other).expect("symmetric difference across id spaces")
    }

    pub fn union(&self, other: &Self) -> Self {
        self.try_union(other).expect("union across id spaces")
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.try_intersection(other).expect("intersection across id spaces")
    }

    pub fn complement(&self) -> Self {
        self.bits.not().into()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check(other).is_ok() && self.bits.is_subset_of(&other.bits)
    }

    /// `|self ∩ other|`.
    pub fn intersection_len(&self, other: &Self) -> usize {
        self.bits.and_count(&other.bits)
    }
}

impl<K> From<BitVec> for IdSet<K> {
    fn from(bits: BitVec) -> Self {
        IdSet { bits, _kind: PhantomData }
    }
}

impl<K> Clone for IdSet<K> {
    fn clone(&self) -> Self {
        self.bits.clone().into()
    }
}

impl<K> PartialEq for IdSet<K> {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl<K> Eq for IdSet<K> {}

impl<K> Hash for IdSet<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl<K> fmt::Debug for IdSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ids()).finish()
    }
}

impl<K> BitXor for &IdSet<K> {
    type Output = IdSet<K>;
    fn bitxor(self, rhs: &IdSet<K>) -> IdSet<K> {
        self.symmetric_difference(rhs)
    }
}
