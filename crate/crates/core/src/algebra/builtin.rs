//! Built-in ring families. Element `0` is the zero; for `Z_n` and `GF(p)`
//! element `1` is the unity.

use crate::error::{Error, Result};
use crate::ground::{GroundSet, MAX_GROUND};

use super::ring::FiniteRing;
use super::table::OpTable;

/// Integers modulo `n`, for `1 ≤ n ≤ 16`.
pub fn ring_zn(n: usize) -> Result<FiniteRing> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::GroundTooLarge {
            size: n,
            max: MAX_GROUND,
        });
    }
    let ground = GroundSet::numbered(n)?;
    Ok(FiniteRing::from_tables(
        format!("Z{n}"),
        ground,
        OpTable::from_fn(n, n, |a, b| (a + b) % n),
        OpTable::from_fn(n, n, |a, b| a * b % n),
        0,
        Some(1 % n),
    ))
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Prime fields only; prime powers are not built in.
pub fn field_gf(p: usize) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::Document(format!("GF({p}): only prime orders are built in")));
    }
    Ok(ring_zn(p)?.with_name(format!("GF{p}")))
}

/// Multiples of `step` modulo `modulus` under the inherited operations,
/// e.g. `2Z_8 = {0, 2, 4, 6}`. Unity is whatever element acts as one.
pub fn ring_multiples(step: usize, modulus: usize) -> Result<FiniteRing> {
    if step == 0 || modulus == 0 || !modulus.is_multiple_of(step) {
        return Err(Error::Document(format!(
            "{step}Z_{modulus}: step must divide the modulus"
        )));
    }
    let elems: Vec<usize> = (0..modulus).step_by(step).collect();
    let n = elems.len();
    let ground = GroundSet::new(elems.iter().map(|e| e.to_string()))?;
    let idx = |v: usize| elems.iter().position(|&e| e == v % modulus).expect("closed under ops");
    let mul = OpTable::from_fn(n, n, |a, b| idx(elems[a] * elems[b]));
    let one = (0..n).find(|&e| (0..n).all(|x| mul.get(e, x) == x && mul.get(x, e) == x));
    Ok(FiniteRing::from_tables(
        format!("{step}Z{modulus}"),
        ground,
        OpTable::from_fn(n, n, |a, b| idx(elems[a] + elems[b])),
        mul,
        0,
        one,
    ))
}

/// Power set of `m` atoms under symmetric difference and intersection. Each
/// element index is its atom mask, so the zero is `∅` (index 0) and the
/// unity is the full set (index `2^m − 1`).
pub fn boolean_ring(m: usize) -> Result<FiniteRing> {
    let n = 1usize << m;
    if m == 0 || n > MAX_GROUND {
        return Err(Error::GroundTooLarge {
            size: n,
            max: MAX_GROUND,
        });
    }
    let atoms = ['a', 'b', 'c', 'd'];
    let label = |mask: usize| {
        if mask == 0 {
            "0".to_string()
        } else {
            (0..m).filter(|i| mask >> i & 1 == 1).map(|i| atoms[i]).collect()
        }
    };
    let ground = GroundSet::new((0..n).map(label))?;
    Ok(FiniteRing::from_tables(
        format!("Bool{m}"),
        ground,
        OpTable::from_fn(n, n, |a, b| a ^ b),
        OpTable::from_fn(n, n, |a, b| a & b),
        0,
        Some(n - 1),
    ))
}
