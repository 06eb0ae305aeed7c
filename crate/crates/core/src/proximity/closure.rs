use crate::error::Result;
use crate::ground::{full_mask, Mask, Subset};

use super::index::NearIndex;
use super::ProximityRelation;

/// Ground-set bound for enumerating the closed family.
pub const TOPOLOGY_CAP: usize = 12;

/// `{x : {x} ζ A}`.
pub fn closure(rel: &ProximityRelation, a: &Subset) -> Result<Subset> {
    rel.ground().check(a)?;
    let n = rel.ground().len();
    let mask = (0..n)
        .filter(|&x| rel.near_masks(1 << x, a.mask()))
        .fold(0, |acc, x| acc | 1 << x);
    Ok(Subset::from_mask(n, mask))
}

/// Closure of every subset, indexed by mask.
pub(crate) fn closure_table(idx: &NearIndex, n: usize) -> Vec<Mask> {
    (0..=full_mask(n))
        .map(|a| (0..n).filter(|&x| idx.near(1 << x, a)).fold(0, |acc, x| acc | 1 << x))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyReport {
    /// Fixed points of the closure, in increasing mask order.
    pub closed_family: Vec<Subset>,
    /// Complements of `closed_family`, position for position.
    pub open_family: Vec<Subset>,
    pub is_union_stable: bool,
    pub is_intersection_stable: bool,
}

impl TopologyReport {
    pub fn is_closed(&self, s: &Subset) -> bool {
        self.closed_family.binary_search(s).is_ok()
    }
}

/// Enumerate the closed sets of the induced closure. Stability under unions
/// and intersections is measured, not assumed: without Lodato the closure
/// need not be idempotent.
///
/// # Panics
///
/// If the ground set exceeds [`TOPOLOGY_CAP`].
pub fn closed_family(rel: &ProximityRelation) -> TopologyReport {
    let n = rel.ground().len();
    assert!(
        n <= TOPOLOGY_CAP,
        "closed family enumeration capped at {TOPOLOGY_CAP} elements"
    );
    let cl = closure_table(&NearIndex::new(rel), n);
    let closed: Vec<Mask> = (0..=full_mask(n)).filter(|&a| cl[a as usize] == a).collect();

    let mut is_closed = vec![false; cl.len()];
    for &a in &closed {
        is_closed[a as usize] = true;
    }
    let mut union_stable = true;
    let mut inter_stable = true;
    for (i, &a) in closed.iter().enumerate() {
        for &b in &closed[i + 1..] {
            union_stable &= is_closed[(a | b) as usize];
            inter_stable &= is_closed[(a & b) as usize];
        }
    }

    let top = full_mask(n);
    TopologyReport {
        closed_family: closed.iter().map(|&a| Subset::from_mask(n, a)).collect(),
        open_family: closed.iter().map(|&a| Subset::from_mask(n, top & !a)).collect(),
        is_union_stable: union_stable,
        is_intersection_stable: inter_stable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptive::{Feature, ProbeAssignment};
    use crate::ground::GroundSet;
    use crate::proximity::{build_relation, RelationSpec};

    fn table_12(x: &GroundSet) -> ProximityRelation {
        let pairs = vec![(x.subset(["1"]).unwrap(), x.subset(["2"]).unwrap())];
        build_relation(x, &RelationSpec::Table { pairs, complete: true }).unwrap()
    }

    #[test]
    fn overlap_closure_is_identity() {
        let x = GroundSet::numbered(3).unwrap();
        let rel = ProximityRelation::overlap(&x);
        let a = x.subset(["1", "2"]).unwrap();
        assert_eq!(closure(&rel, &a).unwrap(), a);
        assert_eq!(closure(&rel, &x.empty()).unwrap(), x.empty());

        let top = closed_family(&rel);
        assert_eq!(top.closed_family.len(), 8);
        assert!(top.is_union_stable && top.is_intersection_stable);
        for (c, o) in top.closed_family.iter().zip(&top.open_family) {
            assert_eq!(c.complement(), *o);
        }
    }

    #[test]
    fn completed_table_closure() {
        let x = GroundSet::numbered(3).unwrap();
        let rel = table_12(&x);
        let two = x.subset(["2"]).unwrap();
        // {0} ζ {2}? no. {1} ζ {2}? yes (declared). {2} ζ {2}? yes (reflexive).
        assert_eq!(closure(&rel, &two).unwrap(), x.subset(["1", "2"]).unwrap());
        let top = closed_family(&rel);
        assert!(!top.is_closed(&two));
        assert!(top.is_closed(&x.subset(["1", "2"]).unwrap()));
        assert!(top.is_closed(&x.subset(["0"]).unwrap()));
    }

    #[test]
    fn constant_probe_has_indiscrete_topology() {
        let x = GroundSet::numbered(4).unwrap();
        let probe = ProbeAssignment::uniform(4, vec![Feature::from_integer(7)]);
        let rel = ProximityRelation::from_probe(&x, &probe);
        let top = closed_family(&rel);
        assert_eq!(top.closed_family, vec![x.empty(), x.full()]);
    }

    #[test]
    fn closure_rejects_foreign_subsets() {
        let rel = ProximityRelation::overlap(&GroundSet::numbered(3).unwrap());
        assert!(closure(&rel, &GroundSet::numbered(2).unwrap().full()).is_err());
    }
}
