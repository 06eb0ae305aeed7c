use crate::error::{Error, Result};
use crate::ground::GroundSet;

use super::ring::FiniteRing;
use super::table::OpTable;

/// A finite group given by its Cayley table. Construction audits the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    ground: GroundSet,
    op: OpTable,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(ground: &GroundSet, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = ground.len();
        let op = OpTable::new("group", n, n, n, table)?;
        let label = |i: usize| ground.label(i).to_string();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if op.get(op.get(a, b), c) != op.get(a, op.get(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            label(a),
                            label(b),
                            label(c)
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| op.get(e, x) == x && op.get(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| op.get(x, y) == identity && op.get(y, x) == identity)
                    .ok_or_else(|| Error::NotAGroup(format!("`{}` has no inverse", label(x))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup {
            name: format!("group[{n}]"),
            ground: ground.clone(),
            op,
            identity,
            inverse,
        })
    }

    /// The additive group of a ring.
    pub fn additive(ring: &FiniteRing) -> Result<Self> {
        Ok(Self::new(ring.ground(), ring.add_table().to_nested())?.with_name(format!("({}, +)", ring.name())))
    }

    /// Klein four-group on `{e, a, b, c}`.
    pub fn klein_four() -> Self {
        let ground = GroundSet::new(["e", "a", "b", "c"]).expect("static labels");
        Self::new(&ground, (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect())
            .expect("klein four-group")
            .with_name("V4")
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

    pub fn table(&self) -> &OpTable {
        &self.op
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self) -> &[usize] {
        &self.inverse
    }
}
