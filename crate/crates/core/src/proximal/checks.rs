use crate::algebra::{audit_ring, direct_product_module, direct_product_ring, units_and_inverses, FiniteRing};
use crate::error::{Error, Result};
use crate::ground::{full_mask, image_table, GroundSet, Mask, Subset};
use crate::proximity::{closure_table, product_relation, restrict_subspace};

use super::continuity::{binary_con, pro_con, pro_homo, swap_con, Outcome, Tally};
use super::report::{CheckResult, DetailValue, SuiteReport, Witness, WitnessKind};
use super::scan::Carrier;
use super::structure::{non_invertible, Algebra, ProximalStructure, StructureKind};

pub const ADD: &str = "add";
pub const MUL: &str = "mul";
pub const INV: &str = "inv";
pub const INVERSION: &str = "inversion";
pub const TRANSLATION_HOMOS: &str = "translation-homos";
pub const MULTIPLICATIVE_MAPS: &str = "multiplicative-maps";
pub const SANDWICH_SWAP: &str = "sandwich-swap";
pub const INVERTIBILITY: &str = "invertibility";
pub const CLOSED_SETS: &str = "closed-sets";
pub const MODULE_ADD: &str = "module-add";
pub const MODULE_MUL: &str = "module-mul";
pub const MODULE_INV: &str = "module-inv";
pub const MODULE_SCALAR_MAPS: &str = "module-scalar-maps";

/// Check names in report order for a kind of structure.
pub fn registry(kind: StructureKind) -> &'static [&'static str] {
    match kind {
        StructureKind::Group => &[ADD, INV, TRANSLATION_HOMOS],
        StructureKind::Ring => &[
            ADD,
            MUL,
            INV,
            TRANSLATION_HOMOS,
            MULTIPLICATIVE_MAPS,
            SANDWICH_SWAP,
            INVERTIBILITY,
            CLOSED_SETS,
        ],
        StructureKind::Field => &[
            ADD,
            MUL,
            INV,
            INVERSION,
            TRANSLATION_HOMOS,
            MULTIPLICATIVE_MAPS,
            SANDWICH_SWAP,
            INVERTIBILITY,
            CLOSED_SETS,
        ],
        StructureKind::Module => &[MODULE_ADD, MODULE_MUL, MODULE_INV, MODULE_SCALAR_MAPS],
    }
}

fn ring_of(ps: &ProximalStructure) -> Result<&FiniteRing> {
    match &ps.algebra {
        Algebra::Ring(r) => Ok(r),
        _ => Err(Error::Document(format!(
            "check requires a ring structure, found a {}",
            ps.kind.as_str()
        ))),
    }
}

/// Audit the ring laws; return the negation map.
fn audited(ring: &FiniteRing) -> Result<Vec<usize>> {
    let audit = audit_ring(ring);
    if let Some((law, verdict)) = audit.first_failure() {
        return Err(Error::NotARing(format!("{law} {}", verdict.render(ring.ground()))));
    }
    ring.negation()
}

fn report(ps: &ProximalStructure, checks: Vec<CheckResult>) -> SuiteReport {
    SuiteReport {
        structure: ps.name.clone(),
        mode: ps.options.mode.as_str().to_string(),
        checks,
    }
}

/// A check consisting of a single scan, timed.
fn one(name: &str, scan: impl FnOnce() -> Result<Outcome>) -> Result<CheckResult> {
    let mut t = Tally::new(name);
    t.add(scan()?);
    Ok(t.finish())
}

/// Binary operation and negation of the additive structure.
type BinOp<'a> = Box<dyn Fn(usize, usize) -> usize + Sync + 'a>;

fn additive(ps: &ProximalStructure) -> Result<(BinOp<'_>, Vec<usize>)> {
    match &ps.algebra {
        Algebra::Group(g) => Ok((Box::new(move |a, b| g.table().get(a, b)), g.inverse().to_vec())),
        Algebra::Ring(r) => {
            let neg = audited(r)?;
            Ok((Box::new(move |a, b| r.add(a, b)), neg))
        }
        Algebra::Module(_) => Err(Error::Document("use the module checks for module structures".into())),
    }
}

fn check_add(ps: &ProximalStructure) -> Result<CheckResult> {
    let (add, _) = additive(ps)?;
    let c = &ps.carriers[0];
    one(ADD, || binary_con(c, c, c, add, "add", &ps.options))
}

fn check_inv(ps: &ProximalStructure) -> Result<CheckResult> {
    let (_, neg) = additive(ps)?;
    let c = &ps.carriers[0];
    one(INV, || pro_con(c, c, &neg, "inv", &ps.options))
}

fn check_mul(ps: &ProximalStructure) -> Result<CheckResult> {
    let r = ring_of(ps)?;
    audited(r)?;
    let c = &ps.carriers[0];
    one(MUL, || binary_con(c, c, c, |a, b| r.mul(a, b), "mul", &ps.options))
}

/// `add` and `inv` for a group structure.
pub fn verify_proximal_group(ps: &ProximalStructure) -> Result<SuiteReport> {
    if ps.kind != StructureKind::Group {
        return Err(Error::Document(
            "verify_proximal_group expects a group structure".into(),
        ));
    }
    Ok(report(ps, vec![check_add(ps)?, check_inv(ps)?]))
}

/// `add`, `mul` and `inv`; the structure is a proximal ring iff all pass.
pub fn verify_proximal_ring(ps: &ProximalStructure) -> Result<SuiteReport> {
    ring_of(ps)?;
    Ok(report(ps, vec![check_add(ps)?, check_mul(ps)?, check_inv(ps)?]))
}

/// Every translation `w ↦ w ⊞ c` and `w ↦ c ⊞ w` is a proximal homeomorphism.
pub fn check_translation_homos(ps: &ProximalStructure) -> Result<CheckResult> {
    let (add, _) = additive(ps)?;
    let c = &ps.carriers[0];
    let labels = c.rel.ground();
    let mut t = Tally::new(TRANSLATION_HOMOS);
    for k in 0..c.n {
        let right: Vec<usize> = (0..c.n).map(|w| add(w, k)).collect();
        if !t.add(pro_homo(
            c,
            c,
            &right,
            &format!("phi[{}]", labels.label(k)),
            &ps.options,
        )?) {
            break;
        }
        let left: Vec<usize> = (0..c.n).map(|w| add(k, w)).collect();
        if !t.add(pro_homo(
            c,
            c,
            &left,
            &format!("beta[{}]", labels.label(k)),
            &ps.options,
        )?) {
            break;
        }
    }
    Ok(t.finish())
}

fn left_mul(r: &FiniteRing, a: usize) -> Vec<usize> {
    (0..r.len()).map(|w| r.mul(a, w)).collect()
}

fn right_mul(r: &FiniteRing, a: usize) -> Vec<usize> {
    (0..r.len()).map(|w| r.mul(w, a)).collect()
}

fn labels_of(ground: &GroundSet, elems: impl IntoIterator<Item = usize>) -> DetailValue {
    DetailValue::Labels(elems.into_iter().map(|i| ground.label(i).to_string()).collect())
}

/// `σ_a(w) = a ⊠ w` and `γ_a(w) = w ⊠ a` are continuous for every `a`, and
/// homeomorphisms for every unit. Detail `pro-homo` lists the elements whose
/// two maps are both homeomorphisms.
pub fn check_multiplicative_maps(ps: &ProximalStructure) -> Result<CheckResult> {
    let r = ring_of(ps)?;
    audited(r)?;
    let c = &ps.carriers[0];
    let g = r.ground();
    let opts = &ps.options;
    let mut t = Tally::new(MULTIPLICATIVE_MAPS);
    let mut homo = Vec::new();
    let mut homo_failures = Vec::new();
    for a in 0..r.len() {
        let (sigma, gamma) = (left_mul(r, a), right_mul(r, a));
        let (sn, gn) = (format!("sigma[{}]", g.label(a)), format!("gamma[{}]", g.label(a)));
        let con = t.add(pro_con(c, c, &sigma, &sn, opts)?) & t.add(pro_con(c, c, &gamma, &gn, opts)?);
        if !con {
            continue;
        }
        let hs = pro_homo(c, c, &sigma, &sn, opts)?;
        let hg = pro_homo(c, c, &gamma, &gn, opts)?;
        t.count(hs.examined + hg.examined);
        match hs.witness.or(hg.witness) {
            None => homo.push(a),
            Some(w) => homo_failures.push((a, w)),
        }
    }
    t.note("pro-homo", labels_of(g, homo.iter().copied()));
    match units_and_inverses(r) {
        Ok(u) => {
            t.note("units", labels_of(g, u.units.members()));
            if let Some((_, w)) = homo_failures.into_iter().find(|(a, _)| u.units.contains(*a)) {
                t.fail(w);
            }
        }
        Err(_) => t.note("corollary", DetailValue::Text("skipped: ring has no unity".into())),
    }
    Ok(t.finish())
}

/// Every nonzero `ε` with `w ↦ ε ⊠ w` a homeomorphism is right invertible
/// (set `H`), and every nonzero `λ` with `w ↦ w ⊠ λ` a homeomorphism is left
/// invertible (set `H-prime`). The converse is reported, not enforced.
pub fn audit_invertibility(ps: &ProximalStructure) -> Result<CheckResult> {
    let r = ring_of(ps)?;
    audited(r)?;
    let units = units_and_inverses(r)?;
    let one = r.one().ok_or(Error::NoUnity)?;
    let c = &ps.carriers[0];
    let g = r.ground();
    let mut t = Tally::new(INVERTIBILITY);
    let (mut h, mut h_prime, mut one_to_zero) = (Vec::new(), Vec::new(), Vec::new());
    for e in (0..r.len()).filter(|&e| e != r.zero()) {
        let rho = left_mul(r, e);
        let o = pro_homo(c, c, &rho, &format!("rho[{}]", g.label(e)), &ps.options)?;
        t.count(o.examined);
        if o.passed() {
            h.push(e);
            if rho.iter().position(|&v| v == one) == Some(r.zero()) {
                one_to_zero.push(e);
            }
        }
        let psi = right_mul(r, e);
        let o = pro_homo(c, c, &psi, &format!("psi[{}]", g.label(e)), &ps.options)?;
        t.count(o.examined);
        if o.passed() {
            h_prime.push(e);
        }
    }
    let not_invertible = |map: &str, e: usize| Witness {
        map: format!("{map}[{}]", g.label(e)),
        kind: WitnessKind::NotInvertible,
        sets: vec![vec![g.label(e).to_string()]],
        images: vec![],
    };
    if let Some(&e) = h.iter().find(|&&e| !units.right_invertible.contains(e)) {
        t.fail(not_invertible("rho", e));
    }
    if let Some(&e) = h_prime.iter().find(|&&e| !units.left_invertible.contains(e)) {
        t.fail(not_invertible("psi", e));
    }
    let nonzero_units: Vec<usize> = units.units.members().filter(|&u| u != r.zero()).collect();
    let converse = nonzero_units.iter().all(|u| h.contains(u) && h_prime.contains(u));
    t.note("H", labels_of(g, h.iter().copied()));
    t.note("H-prime", labels_of(g, h_prime.iter().copied()));
    t.note("right-invertible", labels_of(g, units.right_invertible.members()));
    t.note("left-invertible", labels_of(g, units.left_invertible.members()));
    t.note("units-are-homeomorphic", DetailValue::Flag(converse));
    t.note("inverse-sends-one-to-zero", labels_of(g, one_to_zero));
    Ok(t.finish())
}

/// `μ(r) = w ⊠ r ⊠ k` for every `(w, k)`, the swap on `R × R`, and
/// `G(x, y) = y ⊠ x`.
pub fn check_sandwich_and_swap(ps: &ProximalStructure) -> Result<CheckResult> {
    let r = ring_of(ps)?;
    audited(r)?;
    let c = &ps.carriers[0];
    let g = r.ground();
    let mut t = Tally::new(SANDWICH_SWAP);
    'maps: for w in 0..r.len() {
        for k in 0..r.len() {
            let mu: Vec<usize> = (0..r.len()).map(|x| r.mul(r.mul(w, x), k)).collect();
            let name = format!("mu[{},{}]", g.label(w), g.label(k));
            if !t.add(pro_con(c, c, &mu, &name, &ps.options)?) {
                break 'maps;
            }
        }
    }
    if !t.failed() && t.add(swap_con(c, c, &ps.options)?) {
        t.add(binary_con(c, c, c, |x, y| r.mul(y, x), "G", &ps.options)?);
    }
    Ok(t.finish())
}

/// Closed sets are preserved by translations, reflections and unit scalings,
/// and every translation and unit scaling `h` satisfies
/// `h(cl A) ⊆ cl(h A)`. Skipped unless `add`, `mul` and `inv` pass.
pub fn check_closed_set_props(ps: &ProximalStructure) -> Result<CheckResult> {
    let verified = verify_proximal_ring(ps)?.all_pass();
    closed_set_props(ps, verified)
}

fn closed_set_props(ps: &ProximalStructure, verified: bool) -> Result<CheckResult> {
    if !verified {
        return Ok(CheckResult::skipped(
            CLOSED_SETS,
            "structure is not a verified proximal ring",
        ));
    }
    let r = ring_of(ps)?;
    let neg = audited(r)?;
    let c = &ps.carriers[0];
    let n = c.n;
    if n > ps.options.closed_set_cap {
        return Err(Error::CapExceeded {
            check: CLOSED_SETS.into(),
            size: n,
            cap: ps.options.closed_set_cap,
        });
    }
    let g = r.ground();
    let mut t = Tally::new(CLOSED_SETS);
    let cl = closure_table(&c.idx, n);
    let closed: Vec<Mask> = (0..=full_mask(n)).filter(|&a| cl[a as usize] == a).collect();
    t.note("closed-sets", DetailValue::Text(closed.len().to_string()));

    // Per element: translates and reflection; per unit: both scalings.
    let mut maps: Vec<(String, Option<String>, Vec<usize>)> = Vec::new();
    for e in 0..n {
        let l = g.label(e);
        maps.push((
            format!("{l}+F"),
            Some(format!("beta[{l}]")),
            (0..n).map(|x| r.add(e, x)).collect(),
        ));
        maps.push((
            format!("F+{l}"),
            Some(format!("phi[{l}]")),
            (0..n).map(|x| r.add(x, e)).collect(),
        ));
        maps.push((format!("{l}-F"), None, (0..n).map(|x| r.add(e, neg[x])).collect()));
    }
    if let Ok(u) = units_and_inverses(r) {
        for e in u.units.members() {
            let l = g.label(e);
            maps.push((format!("{l}*V"), Some(format!("sigma[{l}]")), left_mul(r, e)));
            maps.push((format!("V*{l}"), Some(format!("gamma[{l}]")), right_mul(r, e)));
        }
    }

    for (name, _, f) in &maps {
        let img = image_table(n, f);
        t.count(closed.len() as u64);
        if let Some(&fc) = closed
            .iter()
            .find(|&&fc| cl[img[fc as usize] as usize] != img[fc as usize])
        {
            let image = img[fc as usize];
            t.fail(Witness {
                map: name.clone(),
                kind: WitnessKind::NotClosed,
                sets: vec![c.labels(fc)],
                images: vec![c.labels(image), c.labels(cl[image as usize])],
            });
            return Ok(t.finish());
        }
    }
    for (name, f) in maps.iter().filter_map(|(_, h, f)| h.as_ref().map(|h| (h, f))) {
        let img = image_table(n, f);
        t.count(1 << n);
        let bad = (0..=full_mask(n)).find(|&a| img[cl[a as usize] as usize] & !cl[img[a as usize] as usize] != 0);
        if let Some(a) = bad {
            t.fail(Witness {
                map: name.clone(),
                kind: WitnessKind::Functoriality,
                sets: vec![c.labels(a)],
                images: vec![
                    c.labels(img[cl[a as usize] as usize]),
                    c.labels(cl[img[a as usize] as usize]),
                ],
            });
            break;
        }
    }
    Ok(t.finish())
}

/// Continuity of `w ↦ w⁻¹` on the nonzero elements.
fn check_inversion(ps: &ProximalStructure) -> Result<CheckResult> {
    let r = ring_of(ps)?;
    if let Some(bad) = non_invertible(r).or((!r.is_field()).then(|| r.zero())) {
        return Err(Error::NotAField(r.ground().label(bad).to_string()));
    }
    let c = &ps.carriers[0];
    let nonzero = Subset::from_mask(c.n, full_mask(c.n) & !(1 << r.zero()));
    let sub = Carrier::new(restrict_subspace(&c.rel, &nonzero)?);
    let elems: Vec<usize> = nonzero.members().collect();
    let pos = |x: usize| elems.iter().position(|&e| e == x).expect("inverse is nonzero");
    let inv: Vec<usize> = elems
        .iter()
        .map(|&e| pos(r.inverse(e).expect("field element is invertible")))
        .collect();
    one(INVERSION, || pro_con(&sub, &sub, &inv, "inversion", &ps.options))
}

/// The ring checks plus continuity of inversion on the nonzero elements.
pub fn verify_proximal_field(ps: &ProximalStructure) -> Result<SuiteReport> {
    let r = ring_of(ps)?;
    if let Some(bad) = non_invertible(r).or((!r.is_field()).then(|| r.zero())) {
        return Err(Error::NotAField(r.ground().label(bad).to_string()));
    }
    let mut rep = verify_proximal_ring(ps)?;
    rep.checks.push(check_inversion(ps)?);
    Ok(rep)
}

/// Restrict to the subring `s` and re-run the ring checks.
pub fn verify_subring_restriction(ps: &ProximalStructure, s: &Subset) -> Result<SuiteReport> {
    let r = ring_of(ps)?;
    let neg = audited(r)?;
    r.ground().check(s)?;
    if s.is_empty() {
        return Err(Error::NotASubring("the empty set".into()));
    }
    let g = r.ground();
    let elems: Vec<usize> = s.members().collect();
    for (sym, op) in [("+", 0), ("*", 1)] {
        for &a in &elems {
            for &b in &elems {
                let v = if op == 0 { r.add(a, b) } else { r.mul(a, b) };
                if !s.contains(v) {
                    return Err(Error::NotASubring(format!(
                        "not closed under {sym}: {} {sym} {} = {} is outside the set",
                        g.label(a),
                        g.label(b),
                        g.label(v)
                    )));
                }
            }
        }
    }
    if let Some(&a) = elems.iter().find(|&&a| !s.contains(neg[a])) {
        return Err(Error::NotASubring(format!(
            "not closed under negation: -{} = {} is outside the set",
            g.label(a),
            g.label(neg[a])
        )));
    }
    let pos = |x: usize| elems.iter().position(|&e| e == x).expect("closed");
    let k = elems.len();
    let add = crate::algebra::OpTable::from_fn(k, k, |i, j| pos(r.add(elems[i], elems[j])));
    let mul = crate::algebra::OpTable::from_fn(k, k, |i, j| pos(r.mul(elems[i], elems[j])));
    let one = (0..k).find(|&e| (0..k).all(|x| mul.get(e, x) == x && mul.get(x, e) == x));
    let rel = restrict_subspace(ps.relation(), s)?;
    let name = format!("{}|{{{}}}", r.name(), g.labels_of(s.mask()).join(","));
    let sub = FiniteRing::from_tables(name, rel.ground().clone(), add, mul, pos(r.zero()), one);
    let sub_ps = ProximalStructure::ring(StructureKind::Ring, sub, rel, ps.options.clone())?;
    verify_proximal_ring(&sub_ps)
}

/// `add`, `mul`, `inv` of the module and the scalar-map lemma: `w ↦ w·e`
/// continuous for every `e`, `e ↦ r·e` continuous for every `r` and a
/// homeomorphism for every unit `r`.
pub fn verify_proximal_module(ps: &ProximalStructure) -> Result<SuiteReport> {
    let checks = MODULE_CHECKS
        .iter()
        .map(|name| module_check(ps, name))
        .collect::<Result<Vec<_>>>()?;
    Ok(report(ps, checks))
}

const MODULE_CHECKS: [&str; 4] = [MODULE_ADD, MODULE_MUL, MODULE_INV, MODULE_SCALAR_MAPS];

fn module_check(ps: &ProximalStructure, name: &str) -> Result<CheckResult> {
    let Algebra::Module(m) = &ps.algebra else {
        return Err(Error::Document("module checks require a module structure".into()));
    };
    let (rc, ec) = (&ps.carriers[0], &ps.carriers[1]);
    let opts = &ps.options;
    let madd = m.madd_table();
    let act = m.action_table();
    Ok(match name {
        MODULE_ADD => one(name, || binary_con(ec, ec, ec, |a, b| madd.get(a, b), "add^E", opts))?,
        MODULE_MUL => one(name, || binary_con(rc, ec, ec, |s, e| act.get(s, e), "mul^E", opts))?,
        MODULE_INV => {
            let neg: Vec<usize> = (0..ec.n).map(|e| m.neg(e)).collect();
            one(name, || pro_con(ec, ec, &neg, "inv^E", opts))?
        }
        _ => {
            let (rg, eg) = (m.ring().ground(), m.carrier());
            let mut t = Tally::new(MODULE_SCALAR_MAPS);
            for e in 0..ec.n {
                let alpha: Vec<usize> = (0..rc.n).map(|s| act.get(s, e)).collect();
                if !t.add(pro_con(rc, ec, &alpha, &format!("alpha[{}]", eg.label(e)), opts)?) {
                    return Ok(t.finish());
                }
            }
            let mut homo = Vec::new();
            let mut homo_failures = Vec::new();
            for s in 0..rc.n {
                let beta: Vec<usize> = (0..ec.n).map(|e| act.get(s, e)).collect();
                let bn = format!("beta[{}]", rg.label(s));
                if !t.add(pro_con(ec, ec, &beta, &bn, opts)?) {
                    return Ok(t.finish());
                }
                let o = pro_homo(ec, ec, &beta, &bn, opts)?;
                t.count(o.examined);
                match o.witness {
                    None => homo.push(s),
                    Some(w) => homo_failures.push((s, w)),
                }
            }
            t.note("beta-pro-homo", labels_of(rg, homo));
            if let Ok(u) = units_and_inverses(m.ring()) {
                t.note("units", labels_of(rg, u.units.members()));
                if let Some((_, w)) = homo_failures.into_iter().find(|(s, _)| u.units.contains(*s)) {
                    t.fail(w);
                }
            }
            t.finish()
        }
    })
}

/// The product structure of a nonempty family of ring structures, or of
/// module structures over one ring, folded left to right.
pub fn product_structure(structures: &[ProximalStructure]) -> Result<ProximalStructure> {
    let (first, rest) = structures
        .split_first()
        .ok_or_else(|| Error::Document("product of an empty family".into()))?;
    let options = first.options.clone();
    match &first.algebra {
        Algebra::Ring(r0) => {
            let mut ring = r0.clone();
            let mut rel = first.relation().clone();
            for ps in rest {
                let r = ring_of(ps)?;
                ring = direct_product_ring(&ring, r)?;
                rel = product_relation(&rel, ps.relation()).to_relation()?;
            }
            ProximalStructure::ring(StructureKind::Ring, ring, rel, options)
        }
        Algebra::Module(m0) => {
            let mut module = m0.clone();
            let mut rel = first.carriers[1].rel.clone();
            for ps in rest {
                let Algebra::Module(m) = &ps.algebra else {
                    return Err(Error::Document(
                        "cannot mix modules with other structures in a product".into(),
                    ));
                };
                module = direct_product_module(&module, m)?;
                rel = product_relation(&rel, &ps.carriers[1].rel).to_relation()?;
            }
            ProximalStructure::module(module, first.relation().clone(), rel, options)
        }
        Algebra::Group(_) => Err(Error::Document("products are supported for rings and modules".into())),
    }
}

/// Build the product structure and verify it: ring checks for rings, module
/// checks for modules.
pub fn verify_product(structures: &[ProximalStructure]) -> Result<SuiteReport> {
    let ps = product_structure(structures)?;
    match ps.kind {
        StructureKind::Module => verify_proximal_module(&ps),
        _ => verify_proximal_ring(&ps),
    }
}

fn run_one(ps: &ProximalStructure, name: &str, verified: Option<bool>) -> Result<CheckResult> {
    match name {
        ADD => check_add(ps),
        MUL => check_mul(ps),
        INV => check_inv(ps),
        INVERSION => check_inversion(ps),
        TRANSLATION_HOMOS => check_translation_homos(ps),
        MULTIPLICATIVE_MAPS => check_multiplicative_maps(ps),
        SANDWICH_SWAP => check_sandwich_and_swap(ps),
        INVERTIBILITY => audit_invertibility(ps),
        CLOSED_SETS => {
            let ok = match verified {
                Some(ok) => ok,
                None => verify_proximal_ring(ps).map(|r| r.all_pass()).unwrap_or(false),
            };
            closed_set_props(ps, ok)
        }
        _ => module_check(ps, name),
    }
}

/// Run the named checks (all when `only` is `None`) in registry order. Checks
/// that cannot run are reported as skipped with the reason.
pub fn run_checks(ps: &ProximalStructure, only: Option<&str>) -> Result<SuiteReport> {
    let names = registry(ps.kind);
    if let Some(name) = only {
        if !names.contains(&name) {
            return Err(Error::Document(format!(
                "unknown check `{name}` for a {}; expected one of: {}",
                ps.kind.as_str(),
                names.join(", ")
            )));
        }
    }
    let precondition = match &ps.algebra {
        Algebra::Ring(r) => audited(r).err().map(|e| format!("ring audit failed: {e}")),
        _ => None,
    };
    let mut verified = None;
    let mut checks = Vec::new();
    for &name in names {
        let selected = only.is_none_or(|o| o == name);
        if !selected {
            continue;
        }
        let result = match &precondition {
            Some(reason) => CheckResult::skipped(name, reason.clone()),
            None => run_one(ps, name, verified).unwrap_or_else(|e| CheckResult::skipped(name, e.to_string())),
        };
        checks.push(result);
        if matches!(ps.kind, StructureKind::Ring | StructureKind::Field) && name == INV {
            let pr = [ADD, MUL, INV]
                .iter()
                .all(|n| checks.iter().any(|c| c.name == *n && c.passed()));
            verified = Some(pr);
        }
    }
    Ok(report(ps, checks))
}

/// Every applicable check in registry order.
pub fn run_full_suite(ps: &ProximalStructure) -> SuiteReport {
    run_checks(ps, None).expect("no filter")
}
