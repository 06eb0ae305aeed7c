//! Exhaustive audit of the Čech, Lodato and Efremovič axioms.
//!
//! Witnesses are lexicographically minimal: subsets compare by mask value,
//! pairs and triples compare component by component.

use std::fmt;

use crate::ground::{full_mask, GroundSet, Mask};

use super::index::NearIndex;
use super::ProximityRelation;

/// Ground-set bound for the pairwise (Čech) scans.
pub const CECH_CAP: usize = 12;
/// Ground-set bound for the triple and separator scans.
pub const EXTENSION_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomWitness {
    Pair(Mask, Mask),
    Triple(Mask, Mask, Mask),
    /// `A` far `B`, and no `E` separates them.
    NoSeparator(Mask, Mask),
}

impl AxiomWitness {
    pub fn render(&self, ground: &GroundSet) -> String {
        let f = |m: Mask| format!("{{{}}}", ground.labels_of(m).join(","));
        match *self {
            AxiomWitness::Pair(a, b) => format!("({}, {})", f(a), f(b)),
            AxiomWitness::Triple(a, b, c) => format!("({}, {}, {})", f(a), f(b), f(c)),
            AxiomWitness::NoSeparator(a, b) => {
                format!("({}, {}): no E with A far E and X\\E far B", f(a), f(b))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomVerdict {
    Pass,
    Fail(AxiomWitness),
    Skipped { size: usize, cap: usize },
}

impl AxiomVerdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, AxiomVerdict::Fail(_))
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, AxiomVerdict::Pass)
    }

    fn from_witness(w: Option<AxiomWitness>) -> Self {
        w.map_or(AxiomVerdict::Pass, AxiomVerdict::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub symmetry: AxiomVerdict,
    pub overlap_implies_near: AxiomVerdict,
    /// `A ζ (B ∪ C) ⇔ A ζ B ∨ A ζ C`
    pub additivity_right: AxiomVerdict,
    /// `(B ∪ C) ζ A ⇔ B ζ A ∨ C ζ A`
    pub additivity_left: AxiomVerdict,
    pub empty_far: AxiomVerdict,
    pub lodato: AxiomVerdict,
    pub efremovic: AxiomVerdict,
}

impl AxiomReport {
    pub fn entries(&self) -> [(&'static str, &AxiomVerdict); 7] {
        [
            ("symmetry", &self.symmetry),
            ("overlap-implies-near", &self.overlap_implies_near),
            ("additivity-right", &self.additivity_right),
            ("additivity-left", &self.additivity_left),
            ("empty-set-far", &self.empty_far),
            ("lodato", &self.lodato),
            ("efremovic", &self.efremovic),
        ]
    }

    /// Symmetry, overlap, additivity in both arguments, and the empty set.
    pub fn cech_passes(&self) -> bool {
        self.entries()[..5].iter().all(|(_, v)| v.is_pass())
    }

    pub fn any_fail(&self) -> bool {
        self.entries().iter().any(|(_, v)| v.is_fail())
    }

    pub fn render(&self, ground: &GroundSet) -> String {
        let mut out = String::new();
        for (name, v) in self.entries() {
            let line = match v {
                AxiomVerdict::Pass => format!("{name:<22} pass\n"),
                AxiomVerdict::Fail(w) => format!("{name:<22} FAIL  witness {}\n", w.render(ground)),
                AxiomVerdict::Skipped { size, cap } => {
                    format!("{name:<22} skipped (ground size {size} > {cap})\n")
                }
            };
            out.push_str(&line);
        }
        out
    }
}

impl fmt::Display for AxiomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomVerdict::Pass => f.write_str("pass"),
            AxiomVerdict::Fail(_) => f.write_str("fail"),
            AxiomVerdict::Skipped { .. } => f.write_str("skipped"),
        }
    }
}

pub fn audit_axioms(rel: &ProximityRelation) -> AxiomReport {
    let n = rel.ground().len();
    let skip = |cap: usize| AxiomVerdict::Skipped { size: n, cap };
    if n > CECH_CAP {
        return AxiomReport {
            symmetry: skip(CECH_CAP),
            overlap_implies_near: skip(CECH_CAP),
            additivity_right: skip(CECH_CAP),
            additivity_left: skip(CECH_CAP),
            empty_far: skip(CECH_CAP),
            lodato: skip(EXTENSION_CAP),
            efremovic: skip(EXTENSION_CAP),
        };
    }
    let idx = NearIndex::new(rel);
    let near = |a: Mask, b: Mask| idx.near(a, b);
    let top = full_mask(n);

    let symmetry = first_pair(top, |a, b| near(a, b) && !near(b, a));
    let overlap = first_pair(top, |a, b| a & b != 0 && !near(a, b));
    let additivity_right = additivity(top, n, &near);
    let additivity_left = additivity(top, n, &|a, b| near(b, a));
    let empty_far = (0..=top)
        .find(|&a| near(0, a) || near(a, 0))
        .map(|a| AxiomWitness::Pair(0, a));

    let (lodato, efremovic) = if n > EXTENSION_CAP {
        (skip(EXTENSION_CAP), skip(EXTENSION_CAP))
    } else {
        (
            AxiomVerdict::from_witness(lodato(top, n, &near)),
            AxiomVerdict::from_witness(efremovic(top, &near)),
        )
    };

    AxiomReport {
        symmetry: AxiomVerdict::from_witness(symmetry),
        overlap_implies_near: AxiomVerdict::from_witness(overlap),
        additivity_right: AxiomVerdict::from_witness(additivity_right),
        additivity_left: AxiomVerdict::from_witness(additivity_left),
        empty_far: AxiomVerdict::from_witness(empty_far),
        lodato,
        efremovic,
    }
}

fn first_pair(top: Mask, bad: impl Fn(Mask, Mask) -> bool) -> Option<AxiomWitness> {
    (1..=top)
        .flat_map(|a| (1..=top).map(move |b| (a, b)))
        .find(|&(a, b)| bad(a, b))
        .map(|(a, b)| AxiomWitness::Pair(a, b))
}

/// Finite additivity for a fixed first argument `a` holds for all splits
/// exactly when `a ζ X ⇔ ∃x ∈ X: a ζ {x}` for every `X`. That test is linear
/// in the subsets, so only the least failing `a` needs the quadratic search
/// for its minimal `(B, C)`.
fn additivity(top: Mask, n: usize, near: &dyn Fn(Mask, Mask) -> bool) -> Option<AxiomWitness> {
    for a in 1..=top {
        let singles: Mask = (0..n).filter(|&x| near(a, 1 << x)).fold(0, |acc, x| acc | 1 << x);
        let consistent = (1..=top).all(|x| near(a, x) == (singles & x != 0));
        if consistent {
            continue;
        }
        for b in 1..=top {
            for c in 1..=top {
                if near(a, b | c) != (near(a, b) || near(a, c)) {
                    return Some(AxiomWitness::Triple(a, b, c));
                }
            }
        }
        unreachable!("inconsistent singleton decomposition without a failing split");
    }
    None
}

fn lodato(top: Mask, n: usize, near: &dyn Fn(Mask, Mask) -> bool) -> Option<AxiomWitness> {
    // pointwise[c]: every b with {b} ζ C
    let pointwise: Vec<Mask> = (0..=top)
        .map(|c| (0..n).filter(|&b| near(1 << b, c)).fold(0, |acc, b| acc | 1 << b))
        .collect();
    for a in 1..=top {
        for b in (1..=top).filter(|&b| near(a, b)) {
            for c in 1..=top {
                if b & !pointwise[c as usize] == 0 && !near(a, c) {
                    return Some(AxiomWitness::Triple(a, b, c));
                }
            }
        }
    }
    None
}

fn efremovic(top: Mask, near: &dyn Fn(Mask, Mask) -> bool) -> Option<AxiomWitness> {
    for a in 1..=top {
        for b in (1..=top).filter(|&b| !near(a, b)) {
            let separated = (0..=top).any(|e| !near(a, e) && !near(top & !e, b));
            if !separated {
                return Some(AxiomWitness::NoSeparator(a, b));
            }
        }
    }
    None
}
