#![allow(dead_code)]

use std::path::PathBuf;

use proxring::algebra::FiniteRing;
use proxring::ground::full_mask;
use proxring::proximal::{ProximalStructure, ScanOptions, StructureKind};
use proxring::proximity::{ProximityRelation, RelationKind, ToleranceMatrix};
use proxring::{GroundSet, Mask, Subset};
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn ring_ps(ring: FiniteRing, rel: ProximityRelation) -> ProximalStructure {
    ProximalStructure::ring(StructureKind::Ring, ring, rel, ScanOptions::default()).unwrap()
}

pub fn overlap_ps(ring: FiniteRing) -> ProximalStructure {
    let rel = ProximityRelation::overlap(ring.ground());
    ring_ps(ring, rel)
}

pub fn tolerance(ground: &GroundSet, related: impl Fn(usize, usize) -> bool) -> ProximityRelation {
    let m = ToleranceMatrix::generated_by(ground.len(), related);
    ProximityRelation::from_tolerance(ground, m, RelationKind::Table, "tolerance".into())
}

/// Symmetric reflexive relation with each off-diagonal pair present with
/// probability `p`.
pub fn random_tolerance(ground: &GroundSet, p: f64, rng: &mut impl Rng) -> ProximityRelation {
    let n = ground.len();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    tolerance(ground, |a, b| pairs.contains(&(a, b)))
}

pub fn sub(g: &GroundSet, mask: Mask) -> Subset {
    Subset::from_mask(g.len(), mask)
}

pub fn labels(g: &GroundSet, mask: Mask) -> Vec<String> {
    g.labels_of(mask)
}

pub fn near(rel: &ProximityRelation, a: Mask, b: Mask) -> bool {
    let g = rel.ground();
    rel.near(&sub(g, a), &sub(g, b)).unwrap()
}

pub fn image(f: &[usize], mask: Mask) -> Mask {
    proxring::ground::members(mask).fold(0, |acc, a| acc | 1 << f[a])
}

/// First `(W, K)` in lexicographic mask order with `W near K` but
/// `f(W) far f(K)`, by direct evaluation of the relations.
pub fn naive_pro_con(x: &ProximityRelation, y: &ProximityRelation, f: &[usize]) -> Option<(Mask, Mask)> {
    let full = full_mask(x.ground().len());
    (1..=full)
        .flat_map(|w| (1..=full).map(move |k| (w, k)))
        .find(|&(w, k)| near(x, w, k) && !near(y, image(f, w), image(f, k)))
}

/// First rectangle pair `(A1, B1, A2, B2)` in lexicographic order violating
/// continuity of `op`, evaluated on the relations directly.
pub fn naive_rectangles(
    x: &ProximityRelation,
    y: &ProximityRelation,
    z: &ProximityRelation,
    op: impl Fn(usize, usize) -> usize,
) -> Option<[Mask; 4]> {
    let (fx, fy) = (full_mask(x.ground().len()), full_mask(y.ground().len()));
    let img = |a: Mask, b: Mask| {
        let mut out = 0;
        for i in proxring::ground::members(a) {
            for j in proxring::ground::members(b) {
                out |= 1 << op(i, j);
            }
        }
        out
    };
    for a1 in 1..=fx {
        for b1 in 1..=fy {
            for a2 in 1..=fx {
                if !near(x, a1, a2) {
                    continue;
                }
                for b2 in 1..=fy {
                    if near(y, b1, b2) && !near(z, img(a1, b1), img(a2, b2)) {
                        return Some([a1, b1, a2, b2]);
                    }
                }
            }
        }
    }
    None
}

/// Naive closure: every `x` with `{x}` near `A`.
pub fn naive_closure(rel: &ProximityRelation, a: Mask) -> Mask {
    let n = rel.ground().len();
    (0..n)
        .filter(|&x| a != 0 && near(rel, 1 << x, a))
        .fold(0, |acc, x| acc | 1 << x)
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `{k : gcd(k, n) = 1}` as labels.
pub fn coprime_labels(n: usize) -> Vec<String> {
    (1..n).filter(|&k| gcd(k, n) == 1).map(|k| k.to_string()).collect()
}
