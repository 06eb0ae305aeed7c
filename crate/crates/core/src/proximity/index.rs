use crate::ground::{full_mask, Mask};

use super::{ProximityRelation, Representation};

/// Largest ground set for which a dense pair table is materialised.
const DENSE_LIMIT: usize = 10;

/// Precompiled nearness oracle over raw masks, used by the hot loops.
pub(crate) enum NearIndex {
    Tolerance { nbr: Vec<Mask> },
    Dense { n: usize, bits: Vec<u64> },
    Direct(ProximityRelation),
}

impl NearIndex {
    pub fn new(rel: &ProximityRelation) -> Self {
        let n = rel.ground().len();
        match rel.representation() {
            Representation::PointTolerance(m) => NearIndex::Tolerance {
                nbr: m.neighbourhood_table(),
            },
            Representation::Containment => NearIndex::Direct(rel.clone()),
            _ if n <= DENSE_LIMIT => {
                let size = 1usize << n;
                let mut bits = vec![0u64; (size * size).div_ceil(64)];
                for a in 1..size {
                    for b in 1..size {
                        if rel.near_masks(a as Mask, b as Mask) {
                            let k = a << n | b;
                            bits[k >> 6] |= 1 << (k & 63);
                        }
                    }
                }
                NearIndex::Dense { n, bits }
            }
            _ => NearIndex::Direct(rel.clone()),
        }
    }

    #[inline]
    pub fn near(&self, a: Mask, b: Mask) -> bool {
        match self {
            NearIndex::Tolerance { nbr } => nbr[a as usize] & b != 0,
            NearIndex::Dense { n, bits } => {
                let k = (a as usize) << n | b as usize;
                bits[k >> 6] >> (k & 63) & 1 == 1
            }
            NearIndex::Direct(rel) => rel.near_masks(a, b),
        }
    }

    /// Every `b` near `a`, in increasing order.
    pub fn partners(&self, a: Mask, n: usize) -> Vec<Mask> {
        (1..=full_mask(n)).filter(|&b| self.near(a, b)).collect()
    }
}
