//! Finite rings as pairs of Cayley tables.
//!
//! Rings are built unaudited so that broken fixtures (near-rings, corrupted
//! tables) can be loaded and studied; [`audit_ring`] decides whether the
//! tables actually form a ring.

use std::fmt;

use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};
use crate::proximity::product_ground;

use super::table::OpTable;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    ground: GroundSet,
    add: OpTable,
    mul: OpTable,
    zero: usize,
    one: Option<usize>,
}

/// Construct a ring from index tables without auditing it.
pub fn build_ring(
    ground: &GroundSet,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: Option<usize>,
) -> Result<FiniteRing> {
    let n = ground.len();
    let add = OpTable::new("add", n, n, n, add)?;
    let mul = OpTable::new("mul", n, n, n, mul)?;
    for i in std::iter::once(zero).chain(one) {
        if i >= n {
            return Err(Error::BadDistinguished(i.to_string()));
        }
    }
    Ok(FiniteRing {
        name: format!("ring[{n}]"),
        ground: ground.clone(),
        add,
        mul,
        zero,
        one,
    })
}

impl FiniteRing {
    pub(crate) fn from_tables(
        name: String,
        ground: GroundSet,
        add: OpTable,
        mul: OpTable,
        zero: usize,
        one: Option<usize>,
    ) -> Self {
        FiniteRing {
            name,
            ground,
            add,
            mul,
            zero,
            one,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn add_table(&self) -> &OpTable {
        &self.add
    }

    pub fn mul_table(&self) -> &OpTable {
        &self.mul
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a, b)
    }

    /// Least `y` with `x ⊞ y = 0`.
    pub fn neg(&self, x: usize) -> Option<usize> {
        (0..self.len()).find(|&y| self.add(x, y) == self.zero)
    }

    /// Additive inverse map; fails when some element has none.
    pub fn negation(&self) -> Result<Vec<usize>> {
        (0..self.len())
            .map(|x| {
                self.neg(x)
                    .ok_or_else(|| Error::NotARing(format!("`{}` has no additive inverse", self.ground.label(x))))
            })
            .collect()
    }

    /// Two-sided multiplicative inverse of `x`, if any.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        let one = self.one?;
        (0..self.len()).find(|&y| self.mul(x, y) == one && self.mul(y, x) == one)
    }

    /// Units are exactly the nonzero elements (and `1 ≠ 0`).
    pub fn is_field(&self) -> bool {
        match self.one {
            Some(one) if one != self.zero => (0..self.len())
                .filter(|&x| x != self.zero)
                .all(|x| self.inverse(x).is_some()),
            _ => false,
        }
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.name)
            .field("elements", &self.ground)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish()
    }
}

/// Outcome of one algebraic law. Witnesses are element-index tuples, the
/// least failing one in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawVerdict {
    Pass,
    Fail(Vec<usize>),
    NotApplicable(&'static str),
}

impl LawVerdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, LawVerdict::Fail(_))
    }

    fn from_witness(w: Option<Vec<usize>>) -> Self {
        w.map_or(LawVerdict::Pass, LawVerdict::Fail)
    }

    pub fn render(&self, ground: &GroundSet) -> String {
        match self {
            LawVerdict::Pass => "pass".into(),
            LawVerdict::Fail(w) => {
                let labels: Vec<&str> = w.iter().map(|&i| ground.label(i)).collect();
                format!("FAIL  witness ({})", labels.join(", "))
            }
            LawVerdict::NotApplicable(why) => format!("n/a ({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingAuditReport {
    pub add_associativity: LawVerdict,
    pub add_commutativity: LawVerdict,
    pub add_identity: LawVerdict,
    pub add_inverses: LawVerdict,
    pub mul_associativity: LawVerdict,
    pub left_distributivity: LawVerdict,
    pub right_distributivity: LawVerdict,
    pub unity: LawVerdict,
    /// Informational: commutativity is not a ring axiom.
    pub mul_commutativity: LawVerdict,
}

impl RingAuditReport {
    pub fn entries(&self) -> [(&'static str, &LawVerdict); 9] {
        [
            ("add-associativity", &self.add_associativity),
            ("add-commutativity", &self.add_commutativity),
            ("add-identity", &self.add_identity),
            ("add-inverses", &self.add_inverses),
            ("mul-associativity", &self.mul_associativity),
            ("left-distributivity", &self.left_distributivity),
            ("right-distributivity", &self.right_distributivity),
            ("unity", &self.unity),
            ("mul-commutativity", &self.mul_commutativity),
        ]
    }

    /// Every ring axiom holds (commutativity of multiplication excluded).
    pub fn is_ring(&self) -> bool {
        self.entries()[..8].iter().all(|(_, v)| !v.is_fail())
    }

    pub fn first_failure(&self) -> Option<(&'static str, &LawVerdict)> {
        self.entries()[..8].iter().find(|(_, v)| v.is_fail()).copied()
    }

    pub fn render(&self, ground: &GroundSet) -> String {
        self.entries()
            .iter()
            .map(|(name, v)| format!("{name:<22} {}\n", v.render(ground)))
            .collect()
    }
}

fn first_triple(n: usize, bad: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn first_pair(n: usize, bad: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| bad(a, b))
        .map(|(a, b)| vec![a, b])
}

/// Exhaustive check of the ring axioms over all element triples.
pub fn audit_ring(ring: &FiniteRing) -> RingAuditReport {
    let n = ring.len();
    let (add, mul, zero) = (|a, b| ring.add(a, b), |a, b| ring.mul(a, b), ring.zero);
    RingAuditReport {
        add_associativity: LawVerdict::from_witness(first_triple(n, |a, b, c| add(add(a, b), c) != add(a, add(b, c)))),
        add_commutativity: LawVerdict::from_witness(first_pair(n, |a, b| add(a, b) != add(b, a))),
        add_identity: LawVerdict::from_witness(
            (0..n)
                .find(|&x| add(zero, x) != x || add(x, zero) != x)
                .map(|x| vec![x]),
        ),
        add_inverses: LawVerdict::from_witness(
            (0..n)
                .find(|&x| !(0..n).any(|y| add(x, y) == zero && add(y, x) == zero))
                .map(|x| vec![x]),
        ),
        mul_associativity: LawVerdict::from_witness(first_triple(n, |a, b, c| mul(mul(a, b), c) != mul(a, mul(b, c)))),
        left_distributivity: LawVerdict::from_witness(first_triple(n, |a, b, c| {
            mul(a, add(b, c)) != add(mul(a, b), mul(a, c))
        })),
        right_distributivity: LawVerdict::from_witness(first_triple(n, |a, b, c| {
            mul(add(a, b), c) != add(mul(a, c), mul(b, c))
        })),
        unity: match ring.one {
            None => LawVerdict::NotApplicable("no unity declared"),
            Some(one) => {
                LawVerdict::from_witness((0..n).find(|&x| mul(one, x) != x || mul(x, one) != x).map(|x| vec![x]))
            }
        },
        mul_commutativity: LawVerdict::from_witness(first_pair(n, |a, b| mul(a, b) != mul(b, a))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    /// `{w ⊞ k}`
    Add,
    /// `{w ⊠ k}`
    Mul,
    /// `{w ⊞ (−k)}`
    Sub,
    /// `{−w}`; the second operand is ignored.
    Neg,
}

/// Elementwise image of two subsets under a ring operation.
pub fn set_arithmetic(ring: &FiniteRing, w: &Subset, k: &Subset, op: SetOp) -> Result<Subset> {
    ring.ground.check(w)?;
    ring.ground.check(k)?;
    let n = ring.len();
    let pairwise = |f: &dyn Fn(usize, usize) -> usize| {
        let mut mask = 0;
        for a in w.members() {
            for b in k.members() {
                mask |= 1 << f(a, b);
            }
        }
        Subset::from_mask(n, mask)
    };
    Ok(match op {
        SetOp::Add => pairwise(&|a, b| ring.add(a, b)),
        SetOp::Mul => pairwise(&|a, b| ring.mul(a, b)),
        SetOp::Sub => {
            let neg = ring.negation()?;
            pairwise(&|a, b| ring.add(a, neg[b]))
        }
        SetOp::Neg => w.image(&ring.negation()?, n),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Units {
    pub units: Subset,
    pub right_invertible: Subset,
    pub left_invertible: Subset,
}

/// `right_invertible = {ε : ∃x, ε ⊠ x = 1}`, `left_invertible` likewise on
/// the other side; units are both.
pub fn units_and_inverses(ring: &FiniteRing) -> Result<Units> {
    let one = ring.one.ok_or(Error::NoUnity)?;
    let n = ring.len();
    let right = (0..n)
        .filter(|&e| (0..n).any(|x| ring.mul(e, x) == one))
        .fold(0, |acc, e| acc | 1 << e);
    let left = (0..n)
        .filter(|&e| (0..n).any(|x| ring.mul(x, e) == one))
        .fold(0, |acc, e| acc | 1 << e);
    Ok(Units {
        units: Subset::from_mask(n, right & left),
        right_invertible: Subset::from_mask(n, right),
        left_invertible: Subset::from_mask(n, left),
    })
}

/// Componentwise ring on `R₁ × R₂`; pair `(a, b)` has index `a * |R₂| + b`.
pub fn direct_product_ring(r1: &FiniteRing, r2: &FiniteRing) -> Result<FiniteRing> {
    let ground = product_ground(&r1.ground, &r2.ground)?;
    let m = r2.len();
    let n = ground.len();
    let split = |i: usize| (i / m, i % m);
    let lift = |f: &dyn Fn(usize, usize) -> usize, g: &dyn Fn(usize, usize) -> usize| {
        OpTable::from_fn(n, n, |i, j| {
            let ((a, b), (c, d)) = (split(i), split(j));
            f(a, c) * m + g(b, d)
        })
    };
    let add = lift(&|a, c| r1.add(a, c), &|b, d| r2.add(b, d));
    let mul = lift(&|a, c| r1.mul(a, c), &|b, d| r2.mul(b, d));
    let one = r1.one.zip(r2.one).map(|(a, b)| a * m + b);
    Ok(FiniteRing::from_tables(
        format!("{} x {}", r1.name, r2.name),
        ground,
        add,
        mul,
        r1.zero * m + r2.zero,
        one,
    ))
}

/// Whether `x ↦ f[x]` carries `a` isomorphically onto `b`.
pub fn is_isomorphism(a: &FiniteRing, b: &FiniteRing, f: &[usize]) -> bool {
    let n = a.len();
    if b.len() != n || f.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in f {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    (0..n).all(|x| (0..n).all(|y| f[a.add(x, y)] == b.add(f[x], f[y]) && f[a.mul(x, y)] == b.mul(f[x], f[y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::{field_gf, ring_zn};

    #[test]
    fn zn_audit_and_ops() {
        let z6 = ring_zn(6).unwrap();
        let r = audit_ring(&z6);
        assert!(r.is_ring());
        assert_eq!(r.mul_commutativity, LawVerdict::Pass);
        assert_eq!(r.unity, LawVerdict::Pass);

        let z4 = ring_zn(4).unwrap();
        let g = z4.ground();
        let sum = set_arithmetic(
            &z4,
            &g.subset(["1", "2"]).unwrap(),
            &g.subset(["2"]).unwrap(),
            SetOp::Add,
        )
        .unwrap();
        assert_eq!(sum, g.subset(["3", "0"]).unwrap());
        let neg = set_arithmetic(&z4, &g.subset(["1", "3"]).unwrap(), &g.empty(), SetOp::Neg).unwrap();
        assert_eq!(neg, g.subset(["3", "1"]).unwrap());
        let diff = set_arithmetic(&z4, &g.subset(["0"]).unwrap(), &g.subset(["1"]).unwrap(), SetOp::Sub).unwrap();
        assert_eq!(diff, g.subset(["3"]).unwrap());
    }

    #[test]
    fn corrupted_mul_entry_found_at_minimal_triple() {
        let z4 = ring_zn(4).unwrap();
        let mut mul = z4.mul_table().to_nested();
        mul[2][3] = 1; // 2·3 should be 2
        let broken = build_ring(z4.ground(), z4.add_table().to_nested(), mul, 0, Some(1)).unwrap();
        let report = audit_ring(&broken);
        assert!(!report.is_ring());

        // Independent scan: first (a, b, c) violating a·(b+c) = a·b + a·c.
        let (add, mul) = (
            |a: usize, b: usize| broken.add(a, b),
            |a: usize, b: usize| broken.mul(a, b),
        );
        let mut expected = None;
        'outer: for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) {
                        expected = Some(vec![a, b, c]);
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(report.left_distributivity, LawVerdict::Fail(expected.unwrap()));
        assert!(report.right_distributivity.is_fail());
    }

    #[test]
    fn build_rejects_bad_tables() {
        let g = GroundSet::numbered(2).unwrap();
        let ok = vec![vec![0, 1], vec![1, 0]];
        assert!(build_ring(&g, ok.clone(), vec![vec![0, 0], vec![0, 2]], 0, Some(1)).is_err());
        assert!(build_ring(&g, ok.clone(), vec![vec![0, 0]], 0, Some(1)).is_err());
        assert!(build_ring(&g, ok.clone(), vec![vec![0, 0], vec![0]], 0, Some(1)).is_err());
        assert!(build_ring(&g, ok.clone(), ok.clone(), 2, None).is_err());
        assert!(build_ring(&g, ok.clone(), vec![vec![0, 0], vec![0, 1]], 0, Some(1)).is_ok());
    }

    #[test]
    fn units_examples() {
        let z6 = ring_zn(6).unwrap();
        let u = units_and_inverses(&z6).unwrap();
        assert_eq!(u.units, z6.ground().subset(["1", "5"]).unwrap());
        assert_eq!(u.right_invertible, u.units);
        let gf5 = field_gf(5).unwrap();
        assert_eq!(
            units_and_inverses(&gf5).unwrap().units,
            gf5.ground().subset(["1", "2", "3", "4"]).unwrap()
        );
        assert!(gf5.is_field());
        assert!(!z6.is_field());
    }

    #[test]
    fn direct_product_crt() {
        let p = direct_product_ring(&ring_zn(2).unwrap(), &ring_zn(3).unwrap()).unwrap();
        assert!(audit_ring(&p).is_ring());
        let crt: Vec<usize> = (0..6).map(|k| (k % 2) * 3 + k % 3).collect();
        assert!(is_isomorphism(&ring_zn(6).unwrap(), &p, &crt));
        assert_eq!(p.one(), Some(4));

        let big = direct_product_ring(&ring_zn(4).unwrap(), &ring_zn(4).unwrap()).unwrap();
        assert_eq!(big.len(), 16);
        assert!(audit_ring(&big).is_ring());

        assert!(matches!(
            direct_product_ring(&ring_zn(4).unwrap(), &ring_zn(5).unwrap()),
            Err(Error::ProductTooLarge { size: 20, .. })
        ));
    }
}
