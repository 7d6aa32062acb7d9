use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

/// A subset of a finite carrier `{0, .., universe-1}`, kept both as a sorted
/// index list and as a bitset.
///
/// Equality and hashing look at the elements only. Sets are ordered by
/// cardinality first and then lexicographically, which is the canonical
/// order used for ideals and submodules everywhere in the crate.
#[derive(Clone, Debug)]
pub struct ElemSet {
    elems: Vec<u32>,
    bits: FixedBitSet,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            elems: Vec::new(),
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self::from_bits(bits)
    }

    pub fn from_bits(bits: FixedBitSet) -> Self {
        let elems = bits.ones().map(|i| i as u32).collect();
        ElemSet { elems, bits }
    }

    pub fn from_elems<I: IntoIterator<Item = u32>>(universe: usize, it: I) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        for x in it {
            bits.insert(x as usize);
        }
        Self::from_bits(bits)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.elems.len() == self.bits.len()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.elems
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.elems.iter().copied()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self::from_bits(bits)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self::from_bits(bits)
    }
}

impl PartialEq for ElemSet {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for ElemSet {}

impl Hash for ElemSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems
            .len()
            .cmp(&other.elems.len())
            .then_with(|| self.elems.cmp(&other.elems))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
