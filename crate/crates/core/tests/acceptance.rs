//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the output.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use proxring::algebra::{field_gf, is_isomorphism, ring_zn, FiniteRing};
use proxring::descriptive::{descriptive_relation, ribbon_ring};
use proxring::document::{load_algebra, load_space};
use proxring::ground::full_mask;
use proxring::proximal::*;
use proxring::proximity::{audit_axioms, build_relation, closure, AxiomVerdict, AxiomWitness, RelationSpec};
use proxring::{GroundSet, Mask};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure!(e < limit, "{what} took {e:?}, limit {limit:?}");
    Ok(e)
}

/// Parse a `render_table` block headed by `symbol` out of CLI output.
fn table_after(out: &str, symbol: &str) -> Option<Vec<Vec<String>>> {
    let mut lines = out
        .lines()
        .skip_while(|l| !(l.trim_start().starts_with(symbol) && l.contains('|')));
    lines.next()?;
    lines.next()?; // rule
    let rows: Vec<Vec<String>> = lines
        .take_while(|l| l.contains('|'))
        .map(|l| {
            l.split_once('|')
                .unwrap()
                .1
                .split_whitespace()
                .map(String::from)
                .collect()
        })
        .collect();
    Some(rows)
}

fn strings(rows: &[[&str; 4]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

fn ribbon_fidelity() -> Outcome {
    const PLUS: [[&str; 4]; 4] = [
        ["0", "rbA", "rbB", "1"],
        ["rbA", "0", "1", "rbB"],
        ["rbB", "1", "0", "rbA"],
        ["1", "rbB", "rbA", "0"],
    ];
    const TIMES: [[&str; 4]; 4] = [
        ["0", "0", "0", "0"],
        ["0", "rbA", "0", "rbA"],
        ["0", "0", "rbB", "rbB"],
        ["0", "rbA", "rbB", "1"],
    ];
    let t = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_proxring"))
        .args(["demo", "ribbon"])
        .env_remove("PROX_MAX_GROUND")
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = within(t, Duration::from_secs(1), "demo ribbon")?;
    let out = String::from_utf8_lossy(&o.stdout);
    ensure!(o.status.code() == Some(0), "exit {:?}", o.status.code());
    ensure!(
        table_after(&out, "⊕") == Some(strings(&PLUS)),
        "⊕ table differs:\n{out}"
    );
    ensure!(
        table_after(&out, "⊙") == Some(strings(&TIMES)),
        "⊙ table differs:\n{out}"
    );
    ensure!(out.contains("ring audit: pass"), "ring audit line missing");
    ensure!(out.contains("near({rbA}, {rbB}) = false"), "rbA and rbB should be far");

    // Library side: the same structure, checked directly.
    let (ring, probe) = ribbon_ring();
    let rel = descriptive_relation(ring.ground(), &probe).map_err(|e| e.to_string())?;
    let g = ring.ground().clone();
    let (a, b) = (g.index_of("rbA").unwrap(), g.index_of("rbB").unwrap());
    ensure!(
        !rel.near(&g.singleton(a), &g.singleton(b)).unwrap(),
        "library nearness disagrees"
    );
    let suite = run_full_suite(&ring_ps(ring, rel));
    ensure!(suite.all_pass(), "suite: {:?}", suite.verdicts());
    Ok(format!(
        "32 table entries match, {} checks pass, {elapsed:.0?}",
        suite.checks.len()
    ))
}

fn zn_family() -> Outcome {
    let t = Instant::now();
    for n in 2..=6 {
        let ps = overlap_ps(ring_zn(n).unwrap());
        let err = |e: proxring::Error| format!("Z{n}: {e}");
        let ring = verify_proximal_ring(&ps).map_err(err)?;
        ensure!(ring.all_pass(), "Z{n} ring checks: {:?}", ring.verdicts());
        for c in [
            check_translation_homos(&ps).map_err(err)?,
            check_sandwich_and_swap(&ps).map_err(err)?,
            check_closed_set_props(&ps).map_err(err)?,
        ] {
            ensure!(c.passed(), "Z{n} {} failed: {:?}", c.name, c.witness);
        }
        let m = check_multiplicative_maps(&ps).map_err(err)?;
        ensure!(m.passed(), "Z{n} multiplicative maps failed");
        let homo = m.labels("pro-homo").unwrap_or_default().to_vec();
        ensure!(
            homo == coprime_labels(n),
            "Z{n}: pro-homo {homo:?}, expected {:?}",
            coprime_labels(n)
        );
    }
    let e = within(t, Duration::from_secs(30), "Z_n family")?;
    Ok(format!("Z2..Z6 pass, pro-homo = coprime residues, {e:.0?}"))
}

fn invertibility() -> Outcome {
    let r = audit_invertibility(&overlap_ps(ring_zn(6).unwrap())).map_err(|e| e.to_string())?;
    ensure!(r.passed(), "Z6 invertibility verdict {:?}", r.verdict);
    let (h, h2) = (
        r.labels("H").unwrap_or_default(),
        r.labels("H-prime").unwrap_or_default(),
    );
    ensure!(h == ["1", "5"] && h2 == ["1", "5"], "Z6: H = {h:?}, H' = {h2:?}");

    let (ring, probe) = ribbon_ring();
    let rel = descriptive_relation(ring.ground(), &probe).unwrap();
    let r = audit_invertibility(&ring_ps(ring, rel)).map_err(|e| e.to_string())?;
    let h = r.labels("H").unwrap_or_default();
    ensure!(r.passed() && h == ["1"], "ribbon: H = {h:?}, verdict {:?}", r.verdict);
    Ok("Z6: H = H' = {1,5}; ribbon: H = {1}".into())
}

/// Lexicographically least `(A, B)` over nonempty masks satisfying `bad`.
fn least_pair(n: usize, bad: impl Fn(Mask, Mask) -> bool) -> Option<(Mask, Mask)> {
    let full = full_mask(n);
    (1..=full)
        .flat_map(|a| (1..=full).map(move |b| (a, b)))
        .find(|&(a, b)| bad(a, b))
}

fn axiom_honesty() -> Outcome {
    let g = GroundSet::new(["a", "b"]).unwrap();
    let rel = build_relation(&g, &RelationSpec::Containment).unwrap();
    let report = audit_axioms(&rel);
    let sym = least_pair(2, |a, b| near(&rel, a, b) && !near(&rel, b, a)).unwrap();
    let ovl = least_pair(2, |a, b| a & b != 0 && !near(&rel, a, b)).unwrap();
    ensure!(
        report.symmetry == AxiomVerdict::Fail(AxiomWitness::Pair(sym.0, sym.1)),
        "symmetry: {:?}, expected {sym:?}",
        report.symmetry
    );
    ensure!(
        report.overlap_implies_near == AxiomVerdict::Fail(AxiomWitness::Pair(ovl.0, ovl.1)),
        "overlap-implies-near: {:?}, expected {ovl:?}",
        report.overlap_implies_near
    );

    let z4 = ring_zn(4).unwrap();
    let cont = build_relation(z4.ground(), &RelationSpec::Containment).unwrap();
    let ps = ring_ps(z4, cont);
    let r = verify_proximal_ring(&ps).map_err(|e| e.to_string())?;
    ensure!(
        r.all_pass() && ps.options().mode == ProductMode::Rectangle,
        "Z4 containment: {:?}",
        r.verdicts()
    );
    Ok(format!(
        "symmetry witness ({{{}}}, {{{}}}), overlap witness ({{{}}}, {{{}}}); Z4 add/mul/inv pass",
        labels(&g, sym.0).join(","),
        labels(&g, sym.1).join(","),
        labels(&g, ovl.0).join(","),
        labels(&g, ovl.1).join(",")
    ))
}

/// `a ~ b` iff `b - a ∈ D`, with `D` a random union of orbits of nonzero
/// residues under multiplication by units. Translations and unit scalings
/// are then automorphisms of the relation.
fn invariant_relation(n: usize, rng: &mut impl Rng) -> proxring::proximity::ProximityRelation {
    let units: Vec<usize> = (1..n).filter(|&u| gcd(u, n) == 1).collect();
    let mut diff = vec![false; n];
    diff[0] = true;
    for d in 1..n {
        if rng.gen_bool(0.4) {
            for &u in &units {
                diff[d * u % n] = true;
            }
        }
    }
    tolerance(&GroundSet::numbered(n).unwrap(), |a, b| diff[(b + n - a) % n])
}

fn closure_functoriality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut maps, mut subsets, mut violations) = (0usize, 0usize, 0usize);
    for _ in 0..100 {
        let n = rng.gen_range(2..=5);
        let rel = invariant_relation(n, &mut rng);
        let g = rel.ground().clone();
        let cl = |m: Mask| closure(&rel, &sub(&g, m)).unwrap().mask();
        let mut family: Vec<Vec<usize>> = (0..n).map(|c| (0..n).map(|x| (x + c) % n).collect()).collect();
        family.extend(
            (1..n)
                .filter(|&u| gcd(u, n) == 1)
                .map(|u| (0..n).map(|x| x * u % n).collect()),
        );
        for h in &family {
            ensure!(
                check_pro_con(&rel, &rel, h).unwrap().passed(),
                "generated map is not continuous"
            );
            maps += 1;
            for a in 0..=full_mask(n) {
                subsets += 1;
                ensure!(
                    cl(a) == naive_closure(&rel, a),
                    "closure disagrees with the direct oracle"
                );
                if image(h, cl(a)) & !cl(image(h, a)) != 0 {
                    violations += 1;
                }
            }
        }
    }
    // Arbitrary relations too, for maps that are continuous on them.
    for _ in 0..100 {
        let n = rng.gen_range(2..=5);
        let rel = random_tolerance(&GroundSet::numbered(n).unwrap(), 0.3, &mut rng);
        let g = rel.ground().clone();
        let cl = |m: Mask| closure(&rel, &sub(&g, m)).unwrap().mask();
        for c in 0..n {
            let h: Vec<usize> = (0..n).map(|x| (x + c) % n).collect();
            if !check_pro_con(&rel, &rel, &h).unwrap().passed() {
                continue;
            }
            maps += 1;
            for a in 0..=full_mask(n) {
                subsets += 1;
                if image(&h, cl(a)) & !cl(image(&h, a)) != 0 {
                    violations += 1;
                }
            }
        }
    }
    ensure!(violations == 0, "{violations} violations");
    Ok(format!("{maps} maps, {subsets} subset checks, 0 violations"))
}

fn product_coherence() -> Outcome {
    let z2 = overlap_ps(ring_zn(2).unwrap());
    let z3 = overlap_ps(ring_zn(3).unwrap());
    let product = verify_product(&[z2.clone(), z3.clone()]).map_err(|e| e.to_string())?;
    ensure!(product.all_pass(), "product: {:?}", product.verdicts());

    let z6 = overlap_ps(ring_zn(6).unwrap());
    let direct = verify_proximal_ring(&z6).unwrap();
    ensure!(
        product.verdicts() == direct.verdicts(),
        "{:?} vs {:?}",
        product.verdicts(),
        direct.verdicts()
    );

    // CRT: k ↦ (k mod 2, k mod 3), product index a·3 + b.
    let crt: Vec<usize> = (0..6).map(|k| (k % 2) * 3 + k % 3).collect();
    let ps = product_structure(&[z2, z3]).unwrap();
    let pr = ps.ring_algebra().unwrap();
    ensure!(
        is_isomorphism(z6.ring_algebra().unwrap(), pr, &crt),
        "CRT map is not a ring isomorphism"
    );
    for w in 1..=full_mask(6) {
        for k in 1..=full_mask(6) {
            ensure!(
                near(z6.relation(), w, k) == near(ps.relation(), image(&crt, w), image(&crt, k)),
                "relations differ under CRT"
            );
        }
    }
    let full_p = run_full_suite(&ps).verdicts();
    let full_d = run_full_suite(&z6).verdicts();
    ensure!(full_p == full_d, "full suites differ: {full_p:?} vs {full_d:?}");
    Ok(format!(
        "{} product checks and {} suite checks agree with Z6",
        product.checks.len(),
        full_p.len()
    ))
}

fn field_inversion() -> Outcome {
    for p in [5, 7] {
        let gf = field_gf(p).unwrap();
        let rel = proxring::proximity::ProximityRelation::overlap(gf.ground());
        let ps = ProximalStructure::ring(StructureKind::Field, gf, rel, ScanOptions::default()).unwrap();
        let r = verify_proximal_field(&ps).map_err(|e| format!("GF({p}): {e}"))?;
        ensure!(r.get(INVERSION).is_some_and(|c| c.passed()), "GF({p}) inversion");
        ensure!(r.all_pass(), "GF({p}): {:?}", r.verdicts());
    }
    Ok("GF(5), GF(7) pass including inversion on the nonzero elements".into())
}

fn determinism() -> Outcome {
    let rel = load_space(&fixture("broken-rel.json"), 12).unwrap().relation().unwrap();
    let z4 = ring_zn(4).unwrap();
    let oracle = naive_rectangles(&rel, &rel, &rel, |a, b| z4.mul(a, b)).ok_or("oracle found no violation")?;
    let run = |opts: ScanOptions| {
        let ps = ProximalStructure::ring(StructureKind::Ring, z4.clone(), rel.clone(), opts).unwrap();
        run_checks(&ps, Some(MUL)).unwrap().to_json()
    };
    let first = run(ScanOptions::default());
    let report = SuiteReport::from_json(&first).unwrap();
    let mul = &report.checks[0];
    ensure!(mul.failed(), "mul did not fail");
    let w = mul.witness.as_ref().unwrap();
    let expected: Vec<Vec<String>> = oracle.iter().map(|&m| labels(z4.ground(), m)).collect();
    ensure!(w.sets == expected, "witness {:?}, oracle {expected:?}", w.sets);

    let mut runs: Vec<String> = (0..5)
        .map(|i| {
            run(if i % 2 == 0 {
                ScanOptions::default()
            } else {
                ScanOptions::default().sequential()
            })
        })
        .collect();
    runs.extend(std::thread::scope(|s| {
        let handles: Vec<_> = (0..5).map(|_| s.spawn(|| run(ScanOptions::default()))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect::<Vec<_>>()
    }));
    ensure!(runs.iter().all(|r| *r == first), "reports differ between runs");
    Ok(format!("witness {} identical over 10 runs", w.render()))
}

fn cross_validation() -> Outcome {
    let mut structures = Vec::new();
    for n in 2..=3 {
        let ring = ring_zn(n).unwrap();
        let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for pick in 0..1u32 << off.len() {
            let rel = tolerance(ring.ground(), |a, b| {
                off.iter().enumerate().any(|(i, &p)| pick >> i & 1 == 1 && p == (a, b))
            });
            structures.push((format!("Z{n} tolerance #{pick}"), ring.clone(), rel));
        }
    }
    for (ring, space) in [("zn2", "overlap2"), ("zn3", "overlap3"), ("zn3", "gap3")] {
        let ring = ring_fixture(ring);
        let rel = load_space(&fixture(&format!("{space}.json")), 12)
            .unwrap()
            .relation()
            .unwrap();
        structures.push((space.to_string(), ring, rel));
    }
    let mut failing = 0;
    for (name, ring, rel) in &structures {
        let verdicts = |mode: ProductMode| -> Result<Vec<Verdict>, String> {
            let opts = ScanOptions::default().with_mode(mode);
            let ps = ProximalStructure::ring(StructureKind::Ring, ring.clone(), rel.clone(), opts)
                .map_err(|e| e.to_string())?;
            [ADD, MUL]
                .iter()
                .map(|c| Ok(run_checks(&ps, Some(c)).map_err(|e| e.to_string())?.checks[0].verdict))
                .collect()
        };
        let (rect, full) = (verdicts(ProductMode::Rectangle)?, verdicts(ProductMode::FullProduct)?);
        ensure!(rect == full, "{name}: rectangle {rect:?}, full {full:?}");
        if rect.contains(&Verdict::Fail) {
            failing += 1;
        }
    }
    Ok(format!(
        "{} structures agree ({failing} with failures)",
        structures.len()
    ))
}

fn ring_fixture(name: &str) -> FiniteRing {
    load_algebra(&fixture(&format!("{name}.json")), 12)
        .unwrap()
        .ring()
        .clone()
}

fn performance() -> Outcome {
    let g = GroundSet::numbered(10).unwrap();
    let ov = proxring::proximity::ProximityRelation::overlap(&g);
    let shift: Vec<usize> = (0..10).map(|x| (x + 1) % 10).collect();
    let t = Instant::now();
    let r = check_pro_con(&ov, &ov, &shift).map_err(|e| e.to_string())?;
    let unary = within(t, Duration::from_secs(5), "unary scan at size 10")?;
    ensure!(
        r.passed() && r.pairs_examined == 1023 * 1023,
        "unary: {} pairs",
        r.pairs_examined
    );

    let ps = overlap_ps(ring_zn(6).unwrap());
    let t = Instant::now();
    let r = run_checks(&ps, Some(MUL)).map_err(|e| e.to_string())?;
    let rect = within(t, Duration::from_secs(60), "rectangle mul at size 6")?;
    let mul = &r.checks[0];
    ensure!(
        mul.passed() && mul.pairs_examined == 63u64.pow(4),
        "mul: {} pairs",
        mul.pairs_examined
    );
    ensure!(
        mul.detail.get("strategy") == Some(&DetailValue::Text("exhaustive".into())),
        "mul did not use the exhaustive scan"
    );
    Ok(format!(
        "unary 1.05e6 pairs in {unary:.0?}; rectangle 1.58e7 pairs in {rect:.0?}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("ribbon fidelity", ribbon_fidelity),
        ("Z_n family", zn_family),
        ("invertibility theorems", invertibility),
        ("axiom audit honesty", axiom_honesty),
        ("closure functoriality", closure_functoriality),
        ("product coherence", product_coherence),
        ("field inversion", field_inversion),
        ("counterexample determinism", determinism),
        ("rectangle/full cross-validation", cross_validation),
        ("performance", performance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
