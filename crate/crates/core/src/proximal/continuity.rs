use std::time::Instant;

use crate::error::{Error, Result};
use crate::ground::image_table;
use crate::proximity::{product_relation, ProximityRelation};

use super::options::{ProductMode, ScanOptions, Strategy, FULL_PRODUCT_CAP};
use super::report::{CheckResult, DetailValue, Witness, WitnessKind};
use super::scan::{point_pairs, point_rectangles, rectangle_images, rectangle_pairs, subset_pairs, Carrier};

/// Result of one map scan before it is folded into a [`CheckResult`].
#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub witness: Option<Witness>,
    pub examined: u64,
    pub strategy: &'static str,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Accumulates scans of several maps into one check.
pub(crate) struct Tally {
    result: CheckResult,
    strategies: Vec<&'static str>,
    start: Instant,
}

impl Tally {
    pub fn new(name: &str) -> Self {
        Tally {
            result: CheckResult::new(name),
            strategies: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Record an outcome; the first witness seen is kept.
    pub fn add(&mut self, o: Outcome) -> bool {
        self.result.pairs_examined += o.examined;
        if !self.strategies.contains(&o.strategy) {
            self.strategies.push(o.strategy);
        }
        match o.witness {
            Some(w) => {
                if self.result.witness.is_none() {
                    self.result.fail_with(w);
                }
                false
            }
            None => true,
        }
    }

    pub fn fail(&mut self, w: Witness) {
        if self.result.witness.is_none() {
            self.result.fail_with(w);
        }
    }

    pub fn failed(&self) -> bool {
        self.result.failed()
    }

    pub fn count(&mut self, n: u64) {
        self.result.pairs_examined += n;
    }

    pub fn note(&mut self, key: &str, value: DetailValue) {
        self.result.note(key, value);
    }

    pub fn finish(mut self) -> CheckResult {
        if !self.strategies.is_empty() {
            self.strategies.sort_unstable();
            self.result
                .note("strategy", DetailValue::Text(self.strategies.join("+")));
        }
        self.result.elapsed = self.start.elapsed();
        self.result
    }
}

fn cap_exceeded(check: &str, size: usize, cap: usize) -> Error {
    Error::CapExceeded {
        check: check.to_string(),
        size,
        cap,
    }
}

/// Decide between exhaustive and pointwise scanning.
fn use_pointwise(size: usize, cap: usize, point: bool, opts: &ScanOptions, check: &str) -> Result<bool> {
    match opts.strategy {
        Strategy::Pointwise if point => Ok(true),
        Strategy::Exhaustive if size > cap => Err(cap_exceeded(check, size, cap)),
        _ if size <= cap => Ok(false),
        _ if point => Ok(true),
        _ => Err(cap_exceeded(check, size, cap)),
    }
}

/// `W near K ⇒ f(W) near f(K)` for `f: X → Y`.
pub(crate) fn pro_con(x: &Carrier, y: &Carrier, f: &[usize], map: &str, opts: &ScanOptions) -> Result<Outcome> {
    let point = x.tolerance().is_some() && y.tolerance().is_some();
    if use_pointwise(x.n, opts.unary_cap, point, opts, map)? {
        let (tx, ty) = (x.tolerance().unwrap(), y.tolerance().unwrap());
        let (found, examined) = point_pairs(tx, |a, b| !ty.related(f[a], f[b]));
        let witness = found.map(|(a, b)| Witness {
            map: map.to_string(),
            kind: WitnessKind::SubsetPair,
            sets: vec![x.point_labels(a), x.point_labels(b)],
            images: vec![y.point_labels(f[a]), y.point_labels(f[b])],
        });
        return Ok(Outcome {
            witness,
            examined,
            strategy: "pointwise",
        });
    }
    let img = image_table(x.n, f);
    let (xi, yi) = (&*x.idx, &*y.idx);
    let (found, examined) = subset_pairs(x.n, opts.parallel, |w, k| {
        xi.near(w, k) && !yi.near(img[w as usize], img[k as usize])
    });
    let witness = found.map(|(w, k)| Witness {
        map: map.to_string(),
        kind: WitnessKind::SubsetPair,
        sets: vec![x.labels(w), x.labels(k)],
        images: vec![y.labels(img[w as usize]), y.labels(img[k as usize])],
    });
    Ok(Outcome {
        witness,
        examined,
        strategy: "exhaustive",
    })
}

/// Bijective, and continuous in both directions. The map name of a witness
/// records which leg failed (`f` or `f^-1`).
pub(crate) fn pro_homo(x: &Carrier, y: &Carrier, f: &[usize], map: &str, opts: &ScanOptions) -> Result<Outcome> {
    if let Some(w) = bijectivity_witness(x, y, f, map) {
        return Ok(Outcome {
            witness: Some(w),
            examined: 0,
            strategy: "exhaustive",
        });
    }
    let forward = pro_con(x, y, f, map, opts)?;
    if !forward.passed() {
        return Ok(forward);
    }
    let mut inv = vec![0; y.n];
    for (a, &b) in f.iter().enumerate() {
        inv[b] = a;
    }
    let mut back = pro_con(y, x, &inv, &format!("{map}^-1"), opts)?;
    back.examined += forward.examined;
    if back.strategy != forward.strategy {
        back.strategy = "exhaustive+pointwise";
    }
    Ok(back)
}

fn bijectivity_witness(x: &Carrier, y: &Carrier, f: &[usize], map: &str) -> Option<Witness> {
    let mut first = vec![None; y.n];
    for (a, &b) in f.iter().enumerate() {
        if let Some(prev) = first[b] {
            return Some(Witness {
                map: map.to_string(),
                kind: WitnessKind::NotInjective,
                sets: vec![x.point_labels(prev), x.point_labels(a)],
                images: vec![y.point_labels(b)],
            });
        }
        first[b] = Some(a);
    }
    first.iter().position(Option::is_none).map(|b| Witness {
        map: map.to_string(),
        kind: WitnessKind::NotSurjective,
        sets: vec![],
        images: vec![y.point_labels(b)],
    })
}

/// Continuity of `op: X × Y → Z` under the product nearness, per mode.
pub(crate) fn binary_con(
    x: &Carrier,
    y: &Carrier,
    z: &Carrier,
    op: impl Fn(usize, usize) -> usize + Sync,
    map: &str,
    opts: &ScanOptions,
) -> Result<Outcome> {
    if opts.mode == ProductMode::FullProduct {
        let largest = x.n.max(y.n);
        if largest > FULL_PRODUCT_CAP {
            return Err(Error::FullProductTooLarge(largest));
        }
        let product = Carrier::new(product_relation(&x.rel, &y.rel).to_relation()?);
        let f: Vec<usize> = (0..x.n * y.n).map(|i| op(i / y.n, i % y.n)).collect();
        let exhaustive = ScanOptions {
            strategy: Strategy::Exhaustive,
            ..opts.clone()
        };
        let mut out = pro_con(&product, z, &f, map, &exhaustive)?;
        out.strategy = "full-product";
        return Ok(out);
    }

    let point = x.tolerance().is_some() && y.tolerance().is_some() && z.tolerance().is_some();
    let size = x.n.max(y.n);
    if use_pointwise(size, opts.rectangle_cap, point, opts, map)? {
        let (tx, ty, tz) = (x.tolerance().unwrap(), y.tolerance().unwrap(), z.tolerance().unwrap());
        let (found, examined) = point_rectangles(tx, ty, |a1, b1, a2, b2| !tz.related(op(a1, b1), op(a2, b2)));
        let witness = found.map(|[a1, b1, a2, b2]| Witness {
            map: map.to_string(),
            kind: WitnessKind::RectanglePair,
            sets: vec![
                x.point_labels(a1),
                y.point_labels(b1),
                x.point_labels(a2),
                y.point_labels(b2),
            ],
            images: vec![z.point_labels(op(a1, b1)), z.point_labels(op(a2, b2))],
        });
        return Ok(Outcome {
            witness,
            examined,
            strategy: "pointwise",
        });
    }

    let img = rectangle_images(x.n, y.n, &op);
    let my = crate::ground::full_mask(y.n) as usize;
    let at = |a: u32, b: u32| img[(a as usize - 1) * my + b as usize - 1];
    let zi = &*z.idx;
    let (found, examined) = rectangle_pairs(x, y, opts.parallel, |a1, b1, a2, b2| !zi.near(at(a1, b1), at(a2, b2)));
    let witness = found.map(|[a1, b1, a2, b2]| Witness {
        map: map.to_string(),
        kind: WitnessKind::RectanglePair,
        sets: vec![x.labels(a1), y.labels(b1), x.labels(a2), y.labels(b2)],
        images: vec![z.labels(at(a1, b1)), z.labels(at(a2, b2))],
    });
    Ok(Outcome {
        witness,
        examined,
        strategy: "exhaustive",
    })
}

/// The swap `(x, y) ↦ (y, x)` on `X × Y`, tested on rectangles.
pub(crate) fn swap_con(x: &Carrier, y: &Carrier, opts: &ScanOptions) -> Result<Outcome> {
    const MAP: &str = "swap";
    let point = x.tolerance().is_some() && y.tolerance().is_some();
    let size = x.n.max(y.n);
    if use_pointwise(size, opts.rectangle_cap, point, opts, MAP)? {
        let (tx, ty) = (x.tolerance().unwrap(), y.tolerance().unwrap());
        let (found, examined) = point_rectangles(tx, ty, |a1, b1, a2, b2| !(ty.related(b1, b2) && tx.related(a1, a2)));
        let witness = found.map(|[a1, b1, a2, b2]| Witness {
            map: MAP.to_string(),
            kind: WitnessKind::RectanglePair,
            sets: vec![
                x.point_labels(a1),
                y.point_labels(b1),
                x.point_labels(a2),
                y.point_labels(b2),
            ],
            images: vec![],
        });
        return Ok(Outcome {
            witness,
            examined,
            strategy: "pointwise",
        });
    }
    let (xi, yi) = (&*x.idx, &*y.idx);
    let (found, examined) = rectangle_pairs(x, y, opts.parallel, |a1, b1, a2, b2| {
        !(yi.near(b1, b2) && xi.near(a1, a2))
    });
    let witness = found.map(|[a1, b1, a2, b2]| Witness {
        map: MAP.to_string(),
        kind: WitnessKind::RectanglePair,
        sets: vec![x.labels(a1), y.labels(b1), x.labels(a2), y.labels(b2)],
        images: vec![y.labels(b1), x.labels(a1), y.labels(b2), x.labels(a2)],
    });
    Ok(Outcome {
        witness,
        examined,
        strategy: "exhaustive",
    })
}

fn validate_map(x: &ProximityRelation, y: &ProximityRelation, f: &[usize]) -> Result<()> {
    let (nx, ny) = (x.ground().len(), y.ground().len());
    if f.len() != nx {
        return Err(Error::BadMap(format!("{} images given for {nx} elements", f.len())));
    }
    if let Some((a, &b)) = f.iter().enumerate().find(|(_, &b)| b >= ny) {
        return Err(Error::BadMap(format!(
            "`{}` maps to index {b}, target has {ny} elements",
            x.ground().label(a)
        )));
    }
    Ok(())
}

fn single(name: &str, scan: impl FnOnce() -> Result<Outcome>) -> Result<CheckResult> {
    let mut t = Tally::new(name);
    t.add(scan()?);
    Ok(t.finish())
}

/// Test `f: X → Y` for proximal continuity with default options.
pub fn check_pro_con(x: &ProximityRelation, y: &ProximityRelation, f: &[usize]) -> Result<CheckResult> {
    check_pro_con_with(x, y, f, &ScanOptions::default())
}

pub fn check_pro_con_with(
    x: &ProximityRelation,
    y: &ProximityRelation,
    f: &[usize],
    opts: &ScanOptions,
) -> Result<CheckResult> {
    validate_map(x, y, f)?;
    single("pro-con", || {
        pro_con(&Carrier::new(x.clone()), &Carrier::new(y.clone()), f, "f", opts)
    })
}

/// Test `f: X → Y` for being a proximal homeomorphism with default options.
pub fn check_pro_homo(x: &ProximityRelation, y: &ProximityRelation, f: &[usize]) -> Result<CheckResult> {
    check_pro_homo_with(x, y, f, &ScanOptions::default())
}

pub fn check_pro_homo_with(
    x: &ProximityRelation,
    y: &ProximityRelation,
    f: &[usize],
    opts: &ScanOptions,
) -> Result<CheckResult> {
    validate_map(x, y, f)?;
    single("pro-homo", || {
        pro_homo(&Carrier::new(x.clone()), &Carrier::new(y.clone()), f, "f", opts)
    })
}
