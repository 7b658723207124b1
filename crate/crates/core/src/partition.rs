//! Finite partitions of a generator set.

use crate::error::{Error, Result};
use crate::genset::GenSet;

/// A set of block indices of a [`Partition`].
pub type BlockSet = GenSet;

/// Disjoint nonempty blocks covering a ground set, ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    ground: GenSet,
    blocks: Vec<GenSet>,
}

impl Partition {
    pub fn new(ground: GenSet, mut blocks: Vec<GenSet>) -> Result<Self> {
        let mut seen = GenSet::EMPTY;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !b.is_disjoint(seen) {
                return Err(Error::InvalidPartition(format!("block {b:?} overlaps another block")));
            }
            seen = seen | *b;
        }
        if seen != ground {
            return Err(Error::InvalidPartition(format!("blocks cover {seen:?}, ground set is {ground:?}")));
        }
        blocks.sort_by_key(|b| b.bits().trailing_zeros());
        Ok(Self { ground, blocks })
    }

    /// Partition of generators `0..m`.
    pub fn of_gens(m: usize, blocks: Vec<GenSet>) -> Result<Self> {
        Self::new(GenSet::full(m), blocks)
    }

    pub fn singletons(ground: GenSet) -> Self {
        Self { ground, blocks: ground.iter().map(GenSet::singleton).collect() }
    }

    pub fn single_block(ground: GenSet) -> Self {
        let blocks = if ground.is_empty() { vec![] } else { vec![ground] };
        Self { ground, blocks }
    }

    pub fn ground(&self) -> GenSet {
        self.ground
    }

    pub fn blocks(&self) -> &[GenSet] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> GenSet {
        self.blocks[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn all_blocks(&self) -> BlockSet {
        GenSet::full(self.blocks.len())
    }

    /// `T_C`: the union of the blocks in `c`.
    pub fn union_of(&self, c: BlockSet) -> GenSet {
        c.iter().fold(GenSet::EMPTY, |acc, i| acc | self.blocks[i])
    }

    /// `C_r`: the blocks that meet `r`.
    pub fn blocks_meeting(&self, r: GenSet) -> BlockSet {
        GenSet::from_indices((0..self.blocks.len()).filter(|i| !self.blocks[*i].is_disjoint(r)))
    }

    /// `D(Z)`: the blocks contained in `z`.
    pub fn blocks_inside(&self, z: GenSet) -> BlockSet {
        GenSet::from_indices((0..self.blocks.len()).filter(|i| self.blocks[*i].is_subset(z)))
    }

    pub fn block_of(&self, g: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(g))
    }

    pub fn is_finer_than(&self, other: &Partition) -> bool {
        self.ground == other.ground && self.blocks.iter().all(|b| other.blocks.iter().any(|o| b.is_subset(*o)))
    }

    /// Finer than `{Z, ground \ Z}`.
    pub fn splits(&self, z: GenSet) -> bool {
        self.blocks.iter().all(|b| b.is_subset(z) || b.is_disjoint(z))
    }

    pub fn meets_at_most_once(&self, s: GenSet) -> bool {
        self.blocks.iter().all(|b| (*b & s).len() <= 1)
    }

    pub fn meets_exactly_once(&self, s: GenSet) -> bool {
        self.blocks.iter().all(|b| (*b & s).len() == 1)
    }
}

/// Every partition of `ground`, coarsest first (by block count), via
/// restricted growth strings.
pub fn all_partitions(ground: GenSet) -> Vec<Partition> {
    let elems: Vec<usize> = ground.iter().collect();
    let mut out = Vec::new();
    let mut labels = vec![0usize; elems.len()];
    fn rec(pos: usize, max: usize, labels: &mut [usize], elems: &[usize], ground: GenSet, out: &mut Vec<Partition>) {
        if pos == elems.len() {
            let count = if elems.is_empty() { 0 } else { max + 1 };
            let mut blocks = vec![GenSet::EMPTY; count];
            for (e, l) in elems.iter().zip(labels.iter()) {
                blocks[*l] = blocks[*l].with(*e);
            }
            out.push(Partition::new(ground, blocks).expect("growth strings give partitions"));
            return;
        }
        let limit = if pos == 0 { 0 } else { max + 1 };
        for l in 0..=limit {
            labels[pos] = l;
            rec(pos + 1, max.max(l), labels, elems, ground, out);
        }
    }
    rec(0, 0, &mut labels, &elems, ground, &mut out);
    out.sort_by_key(|p| p.len());
    out
}

/// Finite analogue of the refining sequence `D(1), D(2), ...`: generator
/// indices are coded in binary, `D(j)` groups them by the first `j` code bits
/// and splits every group along `Z`. Each partition refines the previous one
/// and `{Z, ∁Z}`; the last consists of singletons, so every `s` meets each of
/// its blocks at most once.
pub fn refinement_chain(m: usize, z: GenSet) -> Vec<Partition> {
    let ground = GenSet::full(m);
    let z = z & ground;
    let width = if m <= 1 { 0 } else { usize::BITS - (m - 1).leading_zeros() } as usize;
    (1..=width.max(1))
        .map(|j| {
            let shift = width.saturating_sub(j);
            let mut groups: Vec<(usize, bool, GenSet)> = Vec::new();
            for g in 0..m {
                let key = (g >> shift, z.contains(g));
                match groups.iter_mut().find(|(k, inside, _)| (*k, *inside) == key) {
                    Some(entry) => entry.2 = entry.2.with(g),
                    None => groups.push((key.0, key.1, GenSet::singleton(g))),
                }
            }
            Partition::new(ground, groups.into_iter().map(|(_, _, b)| b).collect()).expect("groups partition")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=5).map(|m| all_partitions(GenSet::full(m)).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
        let parts = all_partitions(GenSet::full(4));
        assert!(parts.windows(2).all(|w| w[0].len() <= w[1].len()));
    }

    #[test]
    fn rejects_non_partitions() {
        let g = GenSet::full(3);
        assert!(Partition::new(g, vec![GenSet(0b011), GenSet(0b110)]).is_err());
        assert!(Partition::new(g, vec![GenSet(0b011)]).is_err());
        assert!(Partition::new(g, vec![GenSet(0b011), GenSet(0b100), GenSet::EMPTY]).is_err());
    }

    #[test]
    fn block_queries() {
        let d = Partition::of_gens(4, vec![GenSet(0b0011), GenSet(0b0100), GenSet(0b1000)]).unwrap();
        assert_eq!(d.blocks_meeting(GenSet(0b0101)), GenSet(0b011));
        assert_eq!(d.union_of(GenSet(0b101)), GenSet(0b1011));
        assert_eq!(d.blocks_inside(GenSet(0b0111)), GenSet(0b011));
        assert!(d.splits(GenSet(0b0011)));
        assert!(!d.splits(GenSet(0b0001)));
        assert!(d.meets_at_most_once(GenSet(0b1101)));
        assert!(!d.meets_at_most_once(GenSet(0b0011)));
        assert!(d.is_finer_than(&Partition::single_block(GenSet::full(4))));
    }

    #[test]
    fn chain_refines_and_separates() {
        for m in 1..=8 {
            for zbits in [0u32, 0b1, 0b1010_1010, 0b1111_0000] {
                let z = GenSet(zbits) & GenSet::full(m);
                let chain = refinement_chain(m, z);
                assert!(chain.iter().all(|d| d.splits(z)));
                assert!(chain.windows(2).all(|w| w[1].is_finer_than(&w[0])));
                let last = chain.last().unwrap();
                assert!(last.meets_at_most_once(GenSet::full(m)));
            }
        }
    }
}
