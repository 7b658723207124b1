//! Finite sets of generator indices.

use std::fmt;

/// Hard ceiling on the number of generators a [`GenSet`] can hold.
pub const MAX_GENERATORS: usize = 16;

/// A subset of generator indices `0..m`, bit `i` standing for generator `i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(pub u32);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_GENERATORS);
        GenSet(((1u64 << m) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_GENERATORS);
        GenSet(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        indices.into_iter().fold(Self::EMPTY, |acc, i| acc.with(i))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GENERATORS && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        self | Self::singleton(i)
    }

    pub fn without(self, i: usize) -> Self {
        self - Self::singleton(i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
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

    /// Every subset, in the local order: the `j`-th subset takes the elements
    /// of `self` selected by the bits of `j`.
    pub fn subsets(self) -> Vec<GenSet> {
        let elems: Vec<usize> = self.iter().collect();
        (0u32..1 << elems.len())
            .map(|j| GenSet::from_indices(elems.iter().enumerate().filter(|(k, _)| j >> k & 1 == 1).map(|(_, e)| *e)))
            .collect()
    }

    /// Position of `sub` in [`GenSet::subsets`] of `self`.
    pub fn local_index(self, sub: GenSet) -> usize {
        debug_assert!(sub.is_subset(self));
        self.iter().enumerate().filter(|(_, e)| sub.contains(*e)).map(|(k, _)| 1usize << k).sum()
    }

    /// Subsets ordered by cardinality, ties broken lexicographically on the
    /// sorted element lists. This is the canonical search order.
    pub fn subsets_canonical(self) -> Vec<GenSet> {
        let mut subs = self.subsets();
        subs.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
        subs
    }

    /// Proper subsets in canonical order.
    pub fn proper_subsets_canonical(self) -> Vec<GenSet> {
        self.subsets_canonical().into_iter().filter(|s| *s != self).collect()
    }
}

impl std::ops::BitOr for GenSet {
    type Output = GenSet;
    fn bitor(self, rhs: Self) -> Self {
        GenSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for GenSet {
    type Output = GenSet;
    fn bitand(self, rhs: Self) -> Self {
        GenSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for GenSet {
    type Output = GenSet;
    fn sub(self, rhs: Self) -> Self {
        GenSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let s = GenSet::from_indices([0, 2, 3]);
        let order: Vec<Vec<usize>> = s.subsets_canonical().iter().map(|x| x.iter().collect()).collect();
        assert_eq!(order, vec![vec![], vec![0], vec![2], vec![3], vec![0, 2], vec![0, 3], vec![2, 3], vec![0, 2, 3]]);
    }

    #[test]
    fn local_indexing_round_trips() {
        let s = GenSet::from_indices([1, 4, 6]);
        for (j, sub) in s.subsets().into_iter().enumerate() {
            assert_eq!(s.local_index(sub), j);
        }
    }
}
