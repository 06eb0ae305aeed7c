//! Indexed ground sets and characteristic-vector subsets.
//!
//! A subset is stored as a bit mask over the ground set: element `i` is a
//! member iff bit `i` is set. Reading the mask as an integer gives the total
//! order used for every witness search in the crate.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set the enumeration core accepts.
pub const MAX_GROUND: usize = 16;

/// Raw characteristic vector. Only the low `n` bits are meaningful.
pub type Mask = u32;

#[inline]
pub fn full_mask(n: usize) -> Mask {
    if n >= 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Iterate the member indices of a mask in increasing order.
#[inline]
pub fn members(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Image of every subset of an `n`-element set under `f`, indexed by mask.
pub(crate) fn image_table(n: usize, f: &[usize]) -> Vec<Mask> {
    let mut out = vec![0 as Mask; 1usize << n];
    for mask in 1..out.len() {
        let low = mask.trailing_zeros() as usize;
        out[mask] = out[mask & (mask - 1)] | (1 << f[low]);
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyGround);
        }
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge {
                size: labels.len(),
                max: MAX_GROUND,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels, index })
    }

    /// Ground set labelled `0..n` as decimal strings.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn full(&self) -> Subset {
        Subset::from_mask(self.len(), full_mask(self.len()))
    }

    pub fn empty(&self) -> Subset {
        Subset::from_mask(self.len(), 0)
    }

    pub fn singleton(&self, i: usize) -> Subset {
        assert!(i < self.len(), "element index {i} out of range");
        Subset::from_mask(self.len(), 1 << i)
    }

    pub fn subset_of_indices(&self, idx: impl IntoIterator<Item = usize>) -> Result<Subset> {
        let mut mask = 0;
        for i in idx {
            if i >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: self.len(),
                });
            }
            mask |= 1 << i;
        }
        Ok(Subset::from_mask(self.len(), mask))
    }

    pub fn subset<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Subset> {
        let mut mask = 0;
        for l in labels {
            mask |= 1 << self.index_of(l.as_ref())?;
        }
        Ok(Subset::from_mask(self.len(), mask))
    }

    pub fn labels_of(&self, mask: Mask) -> Vec<String> {
        members(mask).map(|i| self.labels[i].clone()).collect()
    }

    /// All subsets in increasing mask order, the empty set first.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        let n = self.len();
        (0..=full_mask(n)).map(move |m| Subset::from_mask(n, m))
    }

    pub fn check(&self, s: &Subset) -> Result<()> {
        if s.universe() != self.len() {
            return Err(Error::GroundMismatch {
                expected: self.len(),
                found: s.universe(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

/// A subset of an `n`-element ground set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    universe: u8,
    mask: Mask,
}

impl Subset {
    pub fn from_mask(universe: usize, mask: Mask) -> Self {
        assert!(universe <= MAX_GROUND);
        debug_assert_eq!(mask & !full_mask(universe), 0, "mask escapes ground set");
        Subset {
            universe: universe as u8,
            mask: mask & full_mask(universe),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe() && self.mask >> i & 1 == 1
    }

    pub fn members(&self) -> impl Iterator<Item = usize> {
        members(self.mask)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.universe, other.universe);
        Subset {
            universe: self.universe,
            mask: self.mask | other.mask,
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.universe, other.universe);
        Subset {
            universe: self.universe,
            mask: self.mask & other.mask,
        }
    }

    pub fn complement(&self) -> Subset {
        Subset {
            universe: self.universe,
            mask: !self.mask & full_mask(self.universe()),
        }
    }

    /// Image under a total map into a `target`-element set.
    pub fn image(&self, f: &[usize], target: usize) -> Subset {
        let mut mask = 0;
        for i in self.members() {
            mask |= 1 << f[i];
        }
        Subset::from_mask(target, mask)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_in_order() {
        assert_eq!(members(0b1011_0010).collect::<Vec<_>>(), vec![1, 4, 5, 7]);
        assert_eq!(members(0).count(), 0);
    }

    #[test]
    fn image_table_matches_direct_image() {
        let f = [2, 0, 2, 1];
        let table = image_table(4, &f);
        for m in 0..16u32 {
            let s = Subset::from_mask(4, m);
            assert_eq!(table[m as usize], s.image(&f, 3).mask());
        }
    }

    #[test]
    fn ground_rejects_duplicates_and_oversize() {
        assert!(matches!(GroundSet::new(["a", "a"]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(GroundSet::numbered(17), Err(Error::GroundTooLarge { .. })));
        assert!(matches!(GroundSet::new(Vec::<String>::new()), Err(Error::EmptyGround)));
        assert_eq!(GroundSet::numbered(16).unwrap().len(), 16);
    }

    #[test]
    fn set_operations_stay_in_ground() {
        let g = GroundSet::numbered(5).unwrap();
        let a = g.subset(["0", "3"]).unwrap();
        assert_eq!(a.complement().mask(), 0b10110);
        assert_eq!(a.complement().complement(), a);
        assert!(g.subset(["9"]).is_err());
        assert_eq!(g.labels_of(a.mask()), vec!["0", "3"]);
    }
}
