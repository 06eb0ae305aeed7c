//! Descriptive nearness: sets are near when their probe-feature images meet.
//!
//! Also hosts the four-element ribbon-complex ring `{0, rbA, rbB, 1}` under
//! symmetric difference and intersection, with its `β = 2k + n` probe.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;

use crate::algebra::{FiniteModule, FiniteRing, OpTable};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::proximal::{run_full_suite, verify_product, ProximalStructure, ScanOptions, StructureKind, SuiteReport};
use crate::proximity::ProximityRelation;

/// One exact feature value.
pub type Feature = Rational64;

/// Feature tuple for every element of a ground set, indexed by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeAssignment {
    features: Vec<Vec<Feature>>,
}

impl ProbeAssignment {
    /// Validate a label-keyed probe: total over the ground set, no foreign
    /// labels, uniform arity.
    pub fn from_labels(ground: &GroundSet, map: &BTreeMap<String, Vec<Feature>>) -> Result<Self> {
        for label in map.keys() {
            ground.index_of(label)?;
        }
        let mut features = Vec::with_capacity(ground.len());
        for label in ground.labels() {
            let f = map.get(label).ok_or_else(|| Error::MissingProbe(label.clone()))?;
            if let Some(first) = features.first().map(|v: &Vec<Feature>| v.len()) {
                if f.len() != first {
                    return Err(Error::ProbeArity {
                        label: label.clone(),
                        expected: first,
                        found: f.len(),
                    });
                }
            }
            features.push(f.clone());
        }
        Ok(ProbeAssignment { features })
    }

    /// Single integer feature per element, in element order.
    pub fn scalar(values: &[i64]) -> Self {
        ProbeAssignment {
            features: values.iter().map(|&v| vec![Feature::from_integer(v)]).collect(),
        }
    }

    pub fn uniform(n: usize, value: Vec<Feature>) -> Self {
        ProbeAssignment {
            features: vec![value; n],
        }
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn features(&self, i: usize) -> &[Feature] {
        &self.features[i]
    }

    pub fn is_injective(&self) -> bool {
        self.features.iter().collect::<BTreeSet<_>>().len() == self.features.len()
    }

    /// Replace the features of one element.
    pub fn with_value(mut self, i: usize, value: Vec<Feature>) -> Self {
        self.features[i] = value;
        self
    }

    pub fn to_labels(&self, ground: &GroundSet) -> BTreeMap<String, Vec<Feature>> {
        ground
            .labels()
            .iter()
            .cloned()
            .zip(self.features.iter().cloned())
            .collect()
    }
}

/// `a ~ b ⇔ Φ(a) = Φ(b)`, lifted to subsets by feature-image intersection.
pub fn descriptive_relation(ground: &GroundSet, probe: &ProbeAssignment) -> Result<ProximityRelation> {
    if probe.len() != ground.len() {
        let missing = ground.label(probe.len().min(ground.len() - 1)).to_string();
        return Err(Error::MissingProbe(missing));
    }
    Ok(ProximityRelation::from_probe(ground, probe).with_name("descriptive"))
}

/// `β = 2k + n` for `k` bridge edges and `n` common vertices.
pub fn ribbon_beta(bridges: u64, common_vertices: u64) -> u64 {
    2 * bridges + common_vertices
}

/// Bridge edges and common vertices of one ribbon in a complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ribbon {
    pub bridge_edges: BTreeSet<(String, String)>,
    pub common_vertices: BTreeSet<String>,
}

impl Ribbon {
    pub fn beta(&self) -> u64 {
        ribbon_beta(self.bridge_edges.len() as u64, self.common_vertices.len() as u64)
    }
}

/// A cell complex with two declared ribbons. Only the counts feed `β`; the
/// geometry is not modelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonComplex {
    vertices: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
    rb_a: Ribbon,
    rb_b: Ribbon,
}

impl RibbonComplex {
    pub fn new(
        vertices: impl IntoIterator<Item = String>,
        edges: impl IntoIterator<Item = (String, String)>,
        rb_a: Ribbon,
        rb_b: Ribbon,
    ) -> Result<Self> {
        let vertices: BTreeSet<String> = vertices.into_iter().collect();
        let edges: BTreeSet<(String, String)> = edges.into_iter().collect();
        for (u, v) in &edges {
            for w in [u, v] {
                if !vertices.contains(w) {
                    return Err(Error::UnknownLabel(w.clone()));
                }
            }
        }
        for rb in [&rb_a, &rb_b] {
            if let Some((u, v)) = rb.bridge_edges.iter().find(|e| !edges.contains(*e)) {
                return Err(Error::UnknownLabel(format!("{u}-{v}")));
            }
            if let Some(w) = rb.common_vertices.iter().find(|w| !vertices.contains(*w)) {
                return Err(Error::UnknownLabel(w.clone()));
            }
        }
        Ok(RibbonComplex {
            vertices,
            edges,
            rb_a,
            rb_b,
        })
    }

    pub fn rb_a(&self) -> &Ribbon {
        &self.rb_a
    }

    pub fn rb_b(&self) -> &Ribbon {
        &self.rb_b
    }

    /// Probe over `{0, rbA, rbB, 1}` with the given values for `0` and `1`.
    pub fn probe(&self, beta_zero: i64, beta_one: i64) -> ProbeAssignment {
        ProbeAssignment::scalar(&[beta_zero, self.rb_a.beta() as i64, self.rb_b.beta() as i64, beta_one])
    }
}

/// Default probe values for the ribbon ring: `β(rbA) = 4`, `β(rbB) = 5`, and
/// distinct placeholder values for `0` and `1`.
pub const RIBBON_PROBE: [i64; 4] = [0, 4, 5, 9];

const RIBBON_LABELS: [&str; 4] = ["0", "rbA", "rbB", "1"];

const RIBBON_ADD: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

const RIBBON_MUL: [[usize; 4]; 4] = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]];

/// The ribbon ring with its default probe.
pub fn ribbon_ring() -> (FiniteRing, ProbeAssignment) {
    let ground = GroundSet::new(RIBBON_LABELS).expect("static labels");
    let table = |t: &[[usize; 4]; 4]| OpTable::from_fn(4, 4, |a, b| t[a][b]);
    let ring = FiniteRing::from_tables(
        "ribbon".to_string(),
        ground,
        table(&RIBBON_ADD),
        table(&RIBBON_MUL),
        0,
        Some(3),
    );
    (ring, ProbeAssignment::scalar(&RIBBON_PROBE))
}

/// A fixture complex realising `β(rbA) = 4` with `(k, n) = (2, 0)` and
/// `β(rbB) = 5` with `(k, n) = (2, 1)`.
pub fn ribbon_fixture() -> RibbonComplex {
    let s = |x: &str| x.to_string();
    let e = |u: &str, v: &str| (s(u), s(v));
    let vertices = ["p", "q", "r", "s", "t", "u"].map(s);
    let edges = [e("p", "q"), e("q", "r"), e("r", "s"), e("s", "t"), e("t", "u")];
    let rb_a = Ribbon {
        bridge_edges: [e("p", "q"), e("q", "r")].into(),
        common_vertices: BTreeSet::new(),
    };
    let rb_b = Ribbon {
        bridge_edges: [e("s", "t"), e("t", "u")].into(),
        common_vertices: [s("r")].into(),
    };
    RibbonComplex::new(vertices, edges, rb_a, rb_b).expect("consistent fixture")
}

/// Algebra plus probes for a descriptive verification run.
#[derive(Clone, Debug)]
pub enum DescriptiveTarget {
    Ring(FiniteRing, ProbeAssignment),
    Field(FiniteRing, ProbeAssignment),
    /// Module with probes for the ring and for the carrier.
    Module(Box<FiniteModule>, ProbeAssignment, ProbeAssignment),
    /// Finite family of descriptive rings, verified through their direct
    /// product.
    Product(Vec<(FiniteRing, ProbeAssignment)>),
}

/// Build `ζ_Φ` from the probes and run the proximal engine against it. The
/// report is labelled descriptive.
pub fn verify_descriptive_structure(target: &DescriptiveTarget, options: &ScanOptions) -> Result<SuiteReport> {
    let ring_structure = |kind: StructureKind, ring: &FiniteRing, probe: &ProbeAssignment| {
        let rel = descriptive_relation(ring.ground(), probe)?;
        ProximalStructure::ring(kind, ring.clone(), rel, options.clone())
    };
    let mut report = match target {
        DescriptiveTarget::Ring(ring, probe) => run_full_suite(&ring_structure(StructureKind::Ring, ring, probe)?),
        DescriptiveTarget::Field(ring, probe) => {
            if !ring.is_field() {
                return Err(not_a_field(ring));
            }
            run_full_suite(&ring_structure(StructureKind::Field, ring, probe)?)
        }
        DescriptiveTarget::Module(module, ring_probe, carrier_probe) => {
            let ring_rel = descriptive_relation(module.ring().ground(), ring_probe)?;
            let carrier_rel = descriptive_relation(module.carrier(), carrier_probe)?;
            run_full_suite(&ProximalStructure::module(
                (**module).clone(),
                ring_rel,
                carrier_rel,
                options.clone(),
            )?)
        }
        DescriptiveTarget::Product(family) => {
            let structures = family
                .iter()
                .map(|(ring, probe)| ring_structure(StructureKind::Ring, ring, probe))
                .collect::<Result<Vec<_>>>()?;
            verify_product(&structures)?
        }
    };
    report.structure = format!("descriptive {}", report.structure);
    Ok(report)
}

fn not_a_field(ring: &FiniteRing) -> Error {
    let bad = (0..ring.len())
        .find(|&x| x != ring.zero() && ring.inverse(x).is_none())
        .unwrap_or(ring.zero());
    Error::NotAField(ring.ground().label(bad).to_string())
}
