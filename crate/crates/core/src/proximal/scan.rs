//! Witness-search kernels.
//!
//! Every kernel returns the first violation in a fixed enumeration order and
//! the rank of that violation in the order (or the size of the whole space on
//! a pass), so results do not depend on scheduling.

use std::sync::Arc;

use rayon::prelude::*;

use crate::ground::{full_mask, members, Mask};
use crate::proximity::index::NearIndex;
use crate::proximity::{ProximityRelation, ToleranceMatrix};

/// A relation compiled for scanning.
#[derive(Clone)]
pub(crate) struct Carrier {
    pub rel: ProximityRelation,
    pub idx: Arc<NearIndex>,
    pub n: usize,
}

impl Carrier {
    pub fn new(rel: ProximityRelation) -> Self {
        let n = rel.ground().len();
        Carrier {
            idx: Arc::new(NearIndex::new(&rel)),
            rel,
            n,
        }
    }

    pub fn tolerance(&self) -> Option<&ToleranceMatrix> {
        self.rel.tolerance()
    }

    pub fn labels(&self, mask: Mask) -> Vec<String> {
        self.rel.ground().labels_of(mask)
    }

    pub fn point_labels(&self, i: usize) -> Vec<String> {
        vec![self.rel.ground().label(i).to_string()]
    }
}

/// Pairs `(W, K)` of nonempty subsets of an `n`-set, `W` then `K` ascending;
/// `bad` is called on every pair.
pub(crate) fn subset_pairs<F>(n: usize, parallel: bool, bad: F) -> (Option<(Mask, Mask)>, u64)
where
    F: Fn(Mask, Mask) -> bool + Sync,
{
    let top = full_mask(n);
    let row = |w: Mask| (1..=top).find(|&k| bad(w, k)).map(|k| (w, k));
    let found = if parallel {
        (1..=top).into_par_iter().find_map_first(row)
    } else {
        (1..=top).find_map(row)
    };
    let m = top as u64;
    let examined = match found {
        Some((w, k)) => (w as u64 - 1) * m + k as u64,
        None => m * m,
    };
    (found, examined)
}

/// Nonempty subsets near `a`, for every mask `a`.
fn partner_lists(idx: &NearIndex, n: usize) -> Vec<Vec<Mask>> {
    (0..=full_mask(n))
        .map(|a| if a == 0 { Vec::new() } else { idx.partners(a, n) })
        .collect()
}

/// Pairs of rectangles `(A1×B1, A2×B2)` in lexicographic order of
/// `(A1, B1, A2, B2)`. `bad` is only consulted when the rectangles are near.
pub(crate) fn rectangle_pairs<F>(x: &Carrier, y: &Carrier, parallel: bool, bad: F) -> (Option<[Mask; 4]>, u64)
where
    F: Fn(Mask, Mask, Mask, Mask) -> bool + Sync,
{
    let (mx, my) = (full_mask(x.n) as u64, full_mask(y.n) as u64);
    let px = partner_lists(&x.idx, x.n);
    let py = partner_lists(&y.idx, y.n);
    let cell = |i: u64| {
        let a1 = (i / my + 1) as Mask;
        let b1 = (i % my + 1) as Mask;
        for &a2 in &px[a1 as usize] {
            for &b2 in &py[b1 as usize] {
                if bad(a1, b1, a2, b2) {
                    return Some([a1, b1, a2, b2]);
                }
            }
        }
        None
    };
    let cells = mx * my;
    let found = if parallel {
        (0..cells).into_par_iter().find_map_first(cell)
    } else {
        (0..cells).find_map(cell)
    };
    let examined = match found {
        Some([a1, b1, a2, b2]) => {
            let i1 = (a1 as u64 - 1) * my + (b1 as u64 - 1);
            let i2 = (a2 as u64 - 1) * my + (b2 as u64 - 1);
            i1 * cells + i2 + 1
        }
        None => cells * cells,
    };
    (found, examined)
}

/// Related point pairs `a ~ b` in lexicographic order.
pub(crate) fn point_pairs<F>(t: &ToleranceMatrix, bad: F) -> (Option<(usize, usize)>, u64)
where
    F: Fn(usize, usize) -> bool,
{
    let n = t.len();
    for a in 0..n {
        for b in members(t.row(a)) {
            if bad(a, b) {
                return (Some((a, b)), (a * n + b + 1) as u64);
            }
        }
    }
    (None, (n * n) as u64)
}

/// Related point rectangles `a1 ~ a2`, `b1 ~ b2` in lexicographic order of
/// `(a1, b1, a2, b2)`.
pub(crate) fn point_rectangles<F>(tx: &ToleranceMatrix, ty: &ToleranceMatrix, bad: F) -> (Option<[usize; 4]>, u64)
where
    F: Fn(usize, usize, usize, usize) -> bool,
{
    let (nx, ny) = (tx.len(), ty.len());
    for a1 in 0..nx {
        for b1 in 0..ny {
            for a2 in members(tx.row(a1)) {
                for b2 in members(ty.row(b1)) {
                    if bad(a1, b1, a2, b2) {
                        let rank = ((a1 * ny + b1) * nx + a2) * ny + b2 + 1;
                        return (Some([a1, b1, a2, b2]), rank as u64);
                    }
                }
            }
        }
    }
    (None, ((nx * ny) * (nx * ny)) as u64)
}

/// Image of every rectangle `A × B` under a binary table, indexed by
/// `(A - 1) * |B-space| + (B - 1)`.
pub(crate) fn rectangle_images(nx: usize, ny: usize, op: impl Fn(usize, usize) -> usize) -> Vec<Mask> {
    let (mx, my) = (full_mask(nx) as usize, full_mask(ny) as usize);
    let rows: Vec<Vec<Mask>> = (0..nx)
        .map(|a| {
            let f: Vec<usize> = (0..ny).map(|b| op(a, b)).collect();
            crate::ground::image_table(ny, &f)
        })
        .collect();
    let mut out = vec![0 as Mask; mx * my];
    for a in 1..=mx {
        let low = a.trailing_zeros() as usize;
        let rest = a & (a - 1);
        for b in 1..=my {
            let prev = if rest == 0 { 0 } else { out[(rest - 1) * my + b - 1] };
            out[(a - 1) * my + b - 1] = prev | rows[low][b];
        }
    }
    out
}
