use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::proximity::product_ground;

use super::ring::FiniteRing;
use super::table::OpTable;

/// A left module over a finite ring: `madd` on the carrier and the scalar
/// action `ring × carrier → carrier`. Always audited on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    name: String,
    ring: FiniteRing,
    carrier: GroundSet,
    madd: OpTable,
    action: OpTable,
    mzero: usize,
}

/// Build and audit a module. `madd` is `|carrier|²`, `action` is
/// `|ring| × |carrier|`, both as index tables.
pub fn build_module(
    ring: &FiniteRing,
    carrier: &GroundSet,
    madd: Vec<Vec<usize>>,
    action: Vec<Vec<usize>>,
) -> Result<FiniteModule> {
    let n = carrier.len();
    let madd = OpTable::new("madd", n, n, n, madd)?;
    let action = OpTable::new("action", ring.len(), n, n, action)?;
    let mzero = audit_module(ring, carrier, &madd, &action)?;
    Ok(FiniteModule {
        name: format!("{}-module[{n}]", ring.name()),
        ring: ring.clone(),
        carrier: carrier.clone(),
        madd,
        action,
        mzero,
    })
}

fn law(law: &str, ring: &FiniteRing, carrier: &GroundSet, scalars: &[usize], elems: &[usize]) -> Error {
    let mut parts: Vec<&str> = scalars.iter().map(|&r| ring.ground().label(r)).collect();
    parts.extend(elems.iter().map(|&e| carrier.label(e)));
    Error::ModuleLaw {
        law: law.to_string(),
        witness: format!("({})", parts.join(", ")),
    }
}

/// Returns the carrier zero on success.
fn audit_module(ring: &FiniteRing, carrier: &GroundSet, madd: &OpTable, action: &OpTable) -> Result<usize> {
    let n = carrier.len();
    let r = ring.len();
    let add = |a, b| madd.get(a, b);
    let act = |s, e| action.get(s, e);
    let fail = |name: &str, s: &[usize], e: &[usize]| Err(law(name, ring, carrier, s, e));

    for a in 0..n {
        for b in 0..n {
            if add(a, b) != add(b, a) {
                return fail("madd commutativity", &[], &[a, b]);
            }
            for c in 0..n {
                if add(add(a, b), c) != add(a, add(b, c)) {
                    return fail("madd associativity", &[], &[a, b, c]);
                }
            }
        }
    }
    let Some(zero) = (0..n).find(|&z| (0..n).all(|x| add(z, x) == x)) else {
        return Err(Error::ModuleLaw {
            law: "madd identity".into(),
            witness: "none".into(),
        });
    };
    if let Some(x) = (0..n).find(|&x| !(0..n).any(|y| add(x, y) == zero)) {
        return fail("madd inverses", &[], &[x]);
    }
    for s in 0..r {
        for t in 0..r {
            for e in 0..n {
                if act(ring.add(s, t), e) != add(act(s, e), act(t, e)) {
                    return fail("(r+s)e = re + se", &[s, t], &[e]);
                }
                if act(ring.mul(s, t), e) != act(s, act(t, e)) {
                    return fail("(rs)e = r(se)", &[s, t], &[e]);
                }
            }
        }
        for e in 0..n {
            for f in 0..n {
                if act(s, add(e, f)) != add(act(s, e), act(s, f)) {
                    return fail("r(e+f) = re + rf", &[s], &[e, f]);
                }
            }
        }
    }
    if let Some(one) = ring.one() {
        if let Some(e) = (0..n).find(|&e| act(one, e) != e) {
            return fail("1e = e", &[one], &[e]);
        }
    }
    Ok(zero)
}

impl FiniteModule {
    /// The ring acting on itself by left multiplication.
    pub fn regular(ring: &FiniteRing) -> Result<Self> {
        Ok(build_module(
            ring,
            ring.ground(),
            ring.add_table().to_nested(),
            ring.mul_table().to_nested(),
        )?
        .with_name(format!("{} over itself", ring.name())))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn carrier(&self) -> &GroundSet {
        &self.carrier
    }

    pub fn madd_table(&self) -> &OpTable {
        &self.madd
    }

    pub fn action_table(&self) -> &OpTable {
        &self.action
    }

    pub fn mzero(&self) -> usize {
        self.mzero
    }

    pub fn neg(&self, e: usize) -> usize {
        (0..self.carrier.len())
            .find(|&f| self.madd.get(e, f) == self.mzero)
            .expect("audited module has inverses")
    }
}

/// Componentwise module `E₁ × E₂` over a shared ring.
pub fn direct_product_module(m1: &FiniteModule, m2: &FiniteModule) -> Result<FiniteModule> {
    if m1.ring != m2.ring {
        return Err(Error::Document("module product requires a common ring".into()));
    }
    let carrier = product_ground(&m1.carrier, &m2.carrier)?;
    let k = m2.carrier.len();
    let n = carrier.len();
    let madd = OpTable::from_fn(n, n, |i, j| m1.madd.get(i / k, j / k) * k + m2.madd.get(i % k, j % k));
    let action = OpTable::from_fn(m1.ring.len(), n, |s, i| {
        m1.action.get(s, i / k) * k + m2.action.get(s, i % k)
    });
    Ok(build_module(&m1.ring, &carrier, madd.to_nested(), action.to_nested())?
        .with_name(format!("{} x {}", m1.name, m2.name)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::ring_zn;

    pub(crate) fn z2_on_z2_squared() -> FiniteModule {
        let z2 = ring_zn(2).unwrap();
        let z2m = FiniteModule::regular(&z2).unwrap();
        direct_product_module(&z2m, &z2m).unwrap()
    }

    #[test]
    fn regular_module() {
        let m = FiniteModule::regular(&ring_zn(4).unwrap()).unwrap();
        assert_eq!(m.mzero(), 0);
        assert_eq!(m.neg(1), 3);
    }

    #[test]
    fn componentwise_action_on_pairs() {
        let m = z2_on_z2_squared();
        assert_eq!(m.carrier().labels(), &["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        // 0·(1,1) = (0,0), 1·(1,0) = (1,0)
        assert_eq!(m.action_table().get(0, 3), 0);
        assert_eq!(m.action_table().get(1, 2), 2);
    }

    #[test]
    fn broken_action_reports_law() {
        let z4 = ring_zn(4).unwrap();
        let mut action = z4.mul_table().to_nested();
        // 2·1 := 0 breaks (1+1)·1 = 1·1 + 1·1 first.
        action[2][1] = 0;
        let err = build_module(&z4, z4.ground(), z4.add_table().to_nested(), action).unwrap_err();
        assert!(matches!(err, Error::ModuleLaw { .. }), "{err}");
    }

    #[test]
    fn non_associative_action_rejected() {
        use crate::algebra::builtin::boolean_ring;
        // Bool2 = {0, a, b, ab} on Z_2 with a and b acting as the identity and
        // ab as zero: additive in both arguments, but (a·b)·1 = 0 ≠ a·(b·1).
        let r = boolean_ring(2).unwrap();
        let z2 = ring_zn(2).unwrap();
        let action = vec![vec![0, 0], vec![0, 1], vec![0, 1], vec![0, 0]];
        let err = build_module(&r, z2.ground(), z2.add_table().to_nested(), action).unwrap_err();
        assert_eq!(
            err,
            Error::ModuleLaw {
                law: "(rs)e = r(se)".into(),
                witness: "(a, b, 1)".into()
            }
        );
    }

    #[test]
    fn unity_must_act_trivially() {
        // Z_2 acting on Z_2 with 1 acting as zero: 1e = e fails, and
        // (1·1)e = 1(1e) holds, so the distinguishing law is unity.
        let z2 = ring_zn(2).unwrap();
        let err = build_module(
            &z2,
            z2.ground(),
            z2.add_table().to_nested(),
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap_err();
        assert!(
            matches!(err, Error::ModuleLaw { ref law, .. } if law == "1e = e"),
            "{err}"
        );
    }
}
