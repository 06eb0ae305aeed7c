//! Finite proximity relations.
//!
//! Every relation answers `near(A, B)` for subsets of its ground set. The
//! empty set is far from everything. Point-generated relations (a symmetric
//! reflexive tolerance on elements, lifted by "some pair of points is
//! related") are the canonical representation: they satisfy the Čech axioms
//! by construction and let the verification engine use pointwise shortcuts.
//! Everything else (explicit tables, containment, projection products,
//! restrictions of those) is evaluated on demand and audited rather than
//! trusted.

mod axioms;
mod closure;
pub(crate) mod index;
mod product;

pub use axioms::{audit_axioms, AxiomReport, AxiomVerdict, AxiomWitness};
pub(crate) use closure::closure_table;
pub use closure::{closed_family, closure, TopologyReport};
pub(crate) use product::product_ground;
pub use product::{product_relation, ProductRelation};

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::descriptive::{Feature, ProbeAssignment};
use crate::error::{Error, Result};
use crate::ground::{full_mask, members, GroundSet, Mask, Subset};

/// Symmetric reflexive relation on elements; `rows[a]` holds the mask of
/// everything tolerant to `a`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ToleranceMatrix {
    rows: Vec<Mask>,
}

impl ToleranceMatrix {
    /// Build from explicit rows, rejecting asymmetric or irreflexive input.
    pub fn new(rows: Vec<Mask>) -> Result<Self> {
        let n = rows.len();
        for (a, &row) in rows.iter().enumerate() {
            if row & !full_mask(n) != 0 {
                return Err(Error::BadTable {
                    table: "tolerance".into(),
                    detail: format!("row {a} references elements beyond {n}"),
                });
            }
            if row >> a & 1 == 0 {
                return Err(Error::BadTable {
                    table: "tolerance".into(),
                    detail: format!("not reflexive at {a}"),
                });
            }
            for b in members(row) {
                if rows[b] >> a & 1 == 0 {
                    return Err(Error::BadTable {
                        table: "tolerance".into(),
                        detail: format!("not symmetric at ({a}, {b})"),
                    });
                }
            }
        }
        Ok(ToleranceMatrix { rows })
    }

    /// Symmetric reflexive closure of an arbitrary predicate.
    pub fn generated_by(n: usize, related: impl Fn(usize, usize) -> bool) -> Self {
        let mut rows: Vec<Mask> = (0..n).map(|a| 1 << a).collect();
        for a in 0..n {
            for b in 0..n {
                if related(a, b) {
                    rows[a] |= 1 << b;
                    rows[b] |= 1 << a;
                }
            }
        }
        ToleranceMatrix { rows }
    }

    pub fn identity(n: usize) -> Self {
        Self::generated_by(n, |_, _| false)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    pub fn row(&self, a: usize) -> Mask {
        self.rows[a]
    }

    /// Everything tolerant to some member of `mask`.
    #[inline]
    pub fn neighbourhood(&self, mask: Mask) -> Mask {
        members(mask).fold(0, |acc, a| acc | self.rows[a])
    }

    /// Neighbourhood of every subset, indexed by mask.
    pub fn neighbourhood_table(&self) -> Vec<Mask> {
        let mut out = vec![0 as Mask; 1usize << self.len()];
        for mask in 1..out.len() {
            let low = mask.trailing_zeros() as usize;
            out[mask] = out[mask & (mask - 1)] | self.rows[low];
        }
        out
    }

    pub fn submatrix(&self, keep: &[usize]) -> Self {
        let rows = keep
            .iter()
            .map(|&a| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &b)| self.related(a, b))
                    .fold(0, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        ToleranceMatrix { rows }
    }

    /// `(a, b) ~ (c, d)` iff `a ~ c` and `b ~ d`; pair `(a, b)` has index
    /// `a * |right| + b`.
    pub fn product(&self, right: &ToleranceMatrix) -> Self {
        let (nx, ny) = (self.len(), right.len());
        let mut rows = vec![0 as Mask; nx * ny];
        for a in 0..nx {
            for b in 0..ny {
                let mut row = 0;
                for c in members(self.rows[a]) {
                    for d in members(right.rows[b]) {
                        row |= 1 << (c * ny + d);
                    }
                }
                rows[a * ny + b] = row;
            }
        }
        ToleranceMatrix { rows }
    }
}

impl fmt::Debug for ToleranceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.len();
        for a in 0..n {
            let line: String = (0..n).map(|b| if self.related(a, b) { '1' } else { '.' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// How a relation decides nearness.
#[derive(Clone, Debug, PartialEq)]
pub enum Representation {
    PointTolerance(ToleranceMatrix),
    /// Exactly the listed ordered pairs are near.
    Table(PairTable),
    /// `A` near `B` iff `A ⊆ B`.
    Containment,
    /// Projection product of two relations; element `(a, b)` has index
    /// `a * |right| + b`.
    Product(Box<ProximityRelation>, Box<ProximityRelation>),
    /// Nearness inherited from a parent relation through an embedding.
    Restricted {
        parent: Box<ProximityRelation>,
        embedding: Vec<usize>,
    },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PairTable {
    pairs: Vec<(Mask, Mask)>,
    lookup: HashSet<(Mask, Mask)>,
}

impl PairTable {
    fn new(pairs: impl IntoIterator<Item = (Mask, Mask)>) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        let lookup = pairs.iter().copied().collect();
        PairTable { pairs, lookup }
    }

    pub fn pairs(&self) -> &[(Mask, Mask)] {
        &self.pairs
    }

    #[inline]
    fn contains(&self, a: Mask, b: Mask) -> bool {
        self.lookup.contains(&(a, b))
    }
}

/// Which recipe produced a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Overlap,
    Containment,
    ProbeEquality,
    GapMetric,
    Table,
    Completion,
    Restriction,
    Product,
}

impl RelationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::Overlap => "overlap",
            RelationKind::Containment => "containment",
            RelationKind::ProbeEquality => "probe-equality",
            RelationKind::GapMetric => "gap-metric",
            RelationKind::Table => "table",
            RelationKind::Completion => "completion",
            RelationKind::Restriction => "restriction",
            RelationKind::Product => "product",
        }
    }
}

/// Generator description accepted by [`build_relation`].
#[derive(Clone, Debug)]
pub enum RelationSpec {
    Overlap,
    Containment,
    ProbeEquality(BTreeMap<String, Vec<Feature>>),
    GapMetric {
        coords: BTreeMap<String, Vec<f64>>,
        epsilon: f64,
    },
    Table {
        pairs: Vec<(Subset, Subset)>,
        complete: bool,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProximityRelation {
    ground: GroundSet,
    repr: Representation,
    kind: RelationKind,
    name: String,
}

/// Compile a generator description into an immutable relation.
pub fn build_relation(ground: &GroundSet, spec: &RelationSpec) -> Result<ProximityRelation> {
    let n = ground.len();
    match spec {
        RelationSpec::Overlap => Ok(ProximityRelation::overlap(ground)),
        RelationSpec::Containment => Ok(ProximityRelation {
            ground: ground.clone(),
            repr: Representation::Containment,
            kind: RelationKind::Containment,
            name: "containment".into(),
        }),
        RelationSpec::ProbeEquality(map) => {
            let probe = ProbeAssignment::from_labels(ground, map)?;
            Ok(ProximityRelation::from_probe(ground, &probe))
        }
        RelationSpec::GapMetric { coords, epsilon } => {
            if !(epsilon.is_finite() && *epsilon >= 0.0) {
                return Err(Error::InvalidEpsilon(*epsilon));
            }
            for label in coords.keys() {
                ground.index_of(label)?;
            }
            let mut points = Vec::with_capacity(n);
            for label in ground.labels() {
                let p = coords.get(label).ok_or_else(|| Error::MissingCoords(label.clone()))?;
                if let Some(first) = points.first().map(|q: &&Vec<f64>| q.len()) {
                    if p.len() != first {
                        return Err(Error::CoordDimension {
                            label: label.clone(),
                            expected: first,
                            found: p.len(),
                        });
                    }
                }
                points.push(p);
            }
            let eps = *epsilon;
            let m = ToleranceMatrix::generated_by(n, |a, b| {
                let d2: f64 = points[a].iter().zip(points[b]).map(|(x, y)| (x - y) * (x - y)).sum();
                d2.sqrt() <= eps
            });
            Ok(ProximityRelation::from_tolerance(
                ground,
                m,
                RelationKind::GapMetric,
                format!("gap-metric(eps={eps})"),
            ))
        }
        RelationSpec::Table { pairs, complete } => {
            for (a, b) in pairs {
                ground.check(a)?;
                ground.check(b)?;
            }
            if *complete {
                let mut rel = complete_to_cech(ground, pairs)?;
                rel.kind = RelationKind::Table;
                rel.name = "table(completed)".into();
                Ok(rel)
            } else {
                if let Some(i) = pairs.iter().position(|(a, b)| a.is_empty() || b.is_empty()) {
                    return Err(Error::EmptyBasisSubset(i));
                }
                Ok(ProximityRelation {
                    ground: ground.clone(),
                    repr: Representation::Table(PairTable::new(pairs.iter().map(|(a, b)| (a.mask(), b.mask())))),
                    kind: RelationKind::Table,
                    name: "table".into(),
                })
            }
        }
    }
}

/// Point-generated relation induced by a sparse list of near pairs: `a ~ b`
/// iff `a = b` or some basis pair straddles `a` and `b`.
pub fn complete_to_cech(ground: &GroundSet, basis: &[(Subset, Subset)]) -> Result<ProximityRelation> {
    for (i, (p, q)) in basis.iter().enumerate() {
        ground.check(p)?;
        ground.check(q)?;
        if p.is_empty() || q.is_empty() {
            return Err(Error::EmptyBasisSubset(i));
        }
    }
    let m = ToleranceMatrix::generated_by(ground.len(), |a, b| {
        basis.iter().any(|(p, q)| p.contains(a) && q.contains(b))
    });
    Ok(ProximityRelation::from_tolerance(
        ground,
        m,
        RelationKind::Completion,
        "completion".into(),
    ))
}

impl ProximityRelation {
    pub fn overlap(ground: &GroundSet) -> Self {
        Self::from_tolerance(
            ground,
            ToleranceMatrix::identity(ground.len()),
            RelationKind::Overlap,
            "overlap".into(),
        )
    }

    pub fn from_probe(ground: &GroundSet, probe: &ProbeAssignment) -> Self {
        let m = ToleranceMatrix::generated_by(ground.len(), |a, b| probe.features(a) == probe.features(b));
        Self::from_tolerance(ground, m, RelationKind::ProbeEquality, "probe-equality".into())
    }

    pub fn from_tolerance(ground: &GroundSet, m: ToleranceMatrix, kind: RelationKind, name: String) -> Self {
        assert_eq!(m.len(), ground.len(), "tolerance matrix size mismatch");
        ProximityRelation {
            ground: ground.clone(),
            repr: Representation::PointTolerance(m),
            kind,
            name,
        }
    }

    pub(crate) fn from_parts(ground: GroundSet, repr: Representation, kind: RelationKind, name: String) -> Self {
        ProximityRelation {
            ground,
            repr,
            kind,
            name,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tolerance(&self) -> Option<&ToleranceMatrix> {
        match &self.repr {
            Representation::PointTolerance(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_point_generated(&self) -> bool {
        self.tolerance().is_some()
    }

    pub fn near(&self, a: &Subset, b: &Subset) -> Result<bool> {
        self.ground.check(a)?;
        self.ground.check(b)?;
        Ok(self.near_masks(a.mask(), b.mask()))
    }

    /// Nearness on raw masks; callers guarantee both lie in the ground set.
    pub fn near_masks(&self, a: Mask, b: Mask) -> bool {
        if a == 0 || b == 0 {
            return false;
        }
        match &self.repr {
            Representation::PointTolerance(m) => m.neighbourhood(a) & b != 0,
            Representation::Table(t) => t.contains(a, b),
            Representation::Containment => a & !b == 0,
            Representation::Product(x, y) => {
                let ny = y.ground.len();
                let (ax, ay) = project(a, ny);
                let (bx, by) = project(b, ny);
                x.near_masks(ax, bx) && y.near_masks(ay, by)
            }
            Representation::Restricted { parent, embedding } => {
                parent.near_masks(embed(a, embedding), embed(b, embedding))
            }
        }
    }
}

pub(crate) fn project(mask: Mask, ny: usize) -> (Mask, Mask) {
    members(mask).fold((0, 0), |(x, y), i| (x | 1 << (i / ny), y | 1 << (i % ny)))
}

fn embed(mask: Mask, embedding: &[usize]) -> Mask {
    members(mask).fold(0, |acc, i| acc | 1 << embedding[i])
}

/// The subspace relation on `s`, with elements relabelled in increasing
/// index order.
pub fn restrict_subspace(rel: &ProximityRelation, s: &Subset) -> Result<ProximityRelation> {
    rel.ground.check(s)?;
    if s.is_empty() {
        return Err(Error::EmptySubspace);
    }
    let keep: Vec<usize> = s.members().collect();
    let ground = GroundSet::new(keep.iter().map(|&i| rel.ground.label(i).to_string()))?;
    let name = format!("{}|{}", rel.name, ground.labels().join(","));
    let repr = match &rel.repr {
        Representation::PointTolerance(m) => Representation::PointTolerance(m.submatrix(&keep)),
        Representation::Containment => Representation::Containment,
        _ => Representation::Restricted {
            parent: Box::new(rel.clone()),
            embedding: keep,
        },
    };
    let kind = match repr {
        Representation::Restricted { .. } => RelationKind::Restriction,
        _ => rel.kind,
    };
    Ok(ProximityRelation {
        ground,
        repr,
        kind,
        name,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::numbered(n).unwrap()
    }

    fn s(ground: &GroundSet, labels: &[&str]) -> Subset {
        ground.subset(labels.iter().copied()).unwrap()
    }

    #[test]
    fn overlap_examples() {
        let x = g(3);
        let rel = build_relation(&x, &RelationSpec::Overlap).unwrap();
        assert!(rel.near(&s(&x, &["0"]), &s(&x, &["0", "1"])).unwrap());
        assert!(!rel.near(&s(&x, &["0"]), &s(&x, &["1"])).unwrap());
        assert!(rel.near(&s(&x, &["1"]), &s(&x, &["1", "2"])).unwrap());
        assert!(!rel.near(&x.empty(), &s(&x, &["1"])).unwrap());
    }

    #[test]
    fn containment_examples() {
        let x = g(3);
        let rel = build_relation(&x, &RelationSpec::Containment).unwrap();
        assert!(rel.near(&s(&x, &["0"]), &s(&x, &["0", "1"])).unwrap());
        assert!(!rel.near(&s(&x, &["0", "1"]), &s(&x, &["0"])).unwrap());
        assert!(rel.near(&s(&x, &["0", "1"]), &x.full()).unwrap());
        assert!(!rel.near(&x.empty(), &x.full()).unwrap());
        assert!(!rel.is_point_generated());
    }

    #[test]
    fn probe_equality_ribbon() {
        let x = GroundSet::new(["0", "rbA", "rbB", "1"]).unwrap();
        let probe: BTreeMap<String, Vec<Feature>> = [("0", 0), ("rbA", 4), ("rbB", 5), ("1", 9)]
            .into_iter()
            .map(|(l, v)| (l.to_string(), vec![Feature::from_integer(v)]))
            .collect();
        let rel = build_relation(&x, &RelationSpec::ProbeEquality(probe.clone())).unwrap();
        assert!(!rel.near(&s(&x, &["rbA"]), &s(&x, &["rbB"])).unwrap());
        assert!(rel.is_point_generated());

        let mut missing = probe;
        missing.remove("rbB");
        assert!(matches!(
            build_relation(&x, &RelationSpec::ProbeEquality(missing)),
            Err(Error::MissingProbe(l)) if l == "rbB"
        ));
    }

    #[test]
    fn gap_metric_reads_zero_distance_as_equal_points() {
        let x = GroundSet::new(["a", "b", "c"]).unwrap();
        let coords: BTreeMap<String, Vec<f64>> = [("a", 0.0), ("b", 0.0), ("c", 1.0)]
            .into_iter()
            .map(|(l, v)| (l.to_string(), vec![v]))
            .collect();
        let rel = build_relation(
            &x,
            &RelationSpec::GapMetric {
                coords: coords.clone(),
                epsilon: 0.0,
            },
        )
        .unwrap();
        assert!(rel.near(&s(&x, &["a"]), &s(&x, &["b"])).unwrap());
        assert!(!rel.near(&s(&x, &["a"]), &s(&x, &["c"])).unwrap());
        let wide = build_relation(
            &x,
            &RelationSpec::GapMetric {
                coords: coords.clone(),
                epsilon: 1.0,
            },
        )
        .unwrap();
        assert!(wide.near(&s(&x, &["a"]), &s(&x, &["c"])).unwrap());
        assert!(matches!(
            build_relation(
                &x,
                &RelationSpec::GapMetric {
                    coords: coords.clone(),
                    epsilon: -0.5
                }
            ),
            Err(Error::InvalidEpsilon(_))
        ));
        let mut short = coords;
        short.remove("c");
        assert!(matches!(
            build_relation(
                &x,
                &RelationSpec::GapMetric {
                    coords: short,
                    epsilon: 0.0
                }
            ),
            Err(Error::MissingCoords(_))
        ));
    }

    #[test]
    fn uncompleted_table_is_literal() {
        let x = g(3);
        let pair = (s(&x, &["1"]), s(&x, &["2"]));
        let rel = build_relation(
            &x,
            &RelationSpec::Table {
                pairs: vec![pair],
                complete: false,
            },
        )
        .unwrap();
        assert!(rel.near(&pair.0, &pair.1).unwrap());
        assert!(!rel.near(&pair.1, &pair.0).unwrap());
        assert!(!rel.near(&pair.0, &pair.0).unwrap());
    }

    #[test]
    fn near_rejects_mismatched_ground() {
        let rel = ProximityRelation::overlap(&g(3));
        let other = g(4);
        assert!(matches!(
            rel.near(&other.full(), &other.full()),
            Err(Error::GroundMismatch { expected: 3, found: 4 })
        ));
    }

    #[test]
    fn completion_examples() {
        let x = g(3);
        let rel = complete_to_cech(&x, &[(s(&x, &["1"]), s(&x, &["2"]))]).unwrap();
        assert!(rel.tolerance().unwrap().related(1, 2));
        assert!(rel.near(&s(&x, &["1"]), &s(&x, &["2"])).unwrap());
        assert!(rel.near(&s(&x, &["2"]), &s(&x, &["1"])).unwrap());

        let plain = complete_to_cech(&x, &[]).unwrap();
        assert_eq!(plain.tolerance(), ProximityRelation::overlap(&x).tolerance());

        let wide = complete_to_cech(&x, &[(s(&x, &["0", "1"]), s(&x, &["2"]))]).unwrap();
        let m = wide.tolerance().unwrap();
        assert!(m.related(0, 2) && m.related(1, 2) && !m.related(0, 1));

        assert!(matches!(
            complete_to_cech(&x, &[(x.empty(), s(&x, &["2"]))]),
            Err(Error::EmptyBasisSubset(0))
        ));
    }

    #[test]
    fn restriction_examples() {
        let x = g(3);
        let over = ProximityRelation::overlap(&x);
        let sub = restrict_subspace(&over, &s(&x, &["1", "2"])).unwrap();
        assert_eq!(sub.ground().labels(), &["1", "2"]);
        assert_eq!(sub.tolerance(), ProximityRelation::overlap(sub.ground()).tolerance());

        let cont = build_relation(&x, &RelationSpec::Containment).unwrap();
        let point = restrict_subspace(&cont, &s(&x, &["0"])).unwrap();
        assert!(point.near(&point.ground().full(), &point.ground().full()).unwrap());

        assert!(matches!(
            restrict_subspace(&over, &x.empty()),
            Err(Error::EmptySubspace)
        ));
    }

    #[test]
    fn tolerance_validation() {
        assert!(ToleranceMatrix::new(vec![0b01, 0b10]).is_ok());
        assert!(ToleranceMatrix::new(vec![0b11, 0b10]).is_err());
        assert!(ToleranceMatrix::new(vec![0b00, 0b10]).is_err());
    }
}
