use super::{FinitePoset, PosetId};
use crate::bits::bits;

/// A subset of the points of one specific poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PointSet {
    owner: PosetId,
    mask: u64,
}

impl PointSet {
    pub(crate) fn from_mask(p: &FinitePoset, mask: u64) -> Self {
        PointSet { owner: p.id(), mask }
    }

    pub fn owner(&self) -> PosetId {
        self.owner
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.mask & (1u64 << i) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        bits(self.mask)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.mask & !other.mask == 0
    }
}
