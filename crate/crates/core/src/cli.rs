//! Command-line driver. Exit codes: 0 when nothing failed, 1 when a check or
//! audited law failed, 2 when the input never reached the engine.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{audit_ring, boolean_ring, field_gf, render_table, ring_zn, FiniteRing};
use crate::descriptive::{descriptive_relation, ribbon_fixture, ribbon_ring, Feature, ProbeAssignment};
use crate::document::{load_algebra, load_space, parse_probe_overrides, AlgebraDocument, SpaceDocument};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::proximal::{
    product_structure, registry, run_checks, ProductMode, ProximalStructure, ScanOptions, StructureKind, SuiteReport,
};
use crate::proximity::{audit_axioms, closure, ProximityRelation};

/// Default bound on accepted ground sets.
pub const DEFAULT_MAX_GROUND: usize = 12;
/// Ceiling for `PROX_MAX_GROUND` with `--unsafe-caps`.
pub const UNSAFE_MAX_GROUND: usize = 16;
pub const MAX_GROUND_ENV: &str = "PROX_MAX_GROUND";

#[derive(Parser, Debug)]
#[command(
    name = "proxring",
    version,
    about = "Exhaustive checks for finite proximity spaces and proximal rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Allow PROX_MAX_GROUND above 12 and rectangle scans on 7 elements.
    #[arg(long, global = true)]
    unsafe_caps: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Audit the proximity axioms of a space document.
    AuditSpace { space: PathBuf },
    /// Audit the ring laws of a ring or module document.
    AuditRing { ring: PathBuf },
    /// Run the proximal checks for a ring (or module) against a space.
    Verify {
        algebra: PathBuf,
        space: PathBuf,
        /// Space on the module carrier, for module documents.
        carrier_space: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        /// Override probe values: label=value,... (value: n, p/q, or a:b tuple).
        #[arg(long)]
        probe: Option<String>,
    },
    /// Run the suite on a built-in structure: ribbon, zn:<n>, gf:<p>, boolean:<m>.
    Demo {
        name: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        probe: Option<String>,
    },
    /// Print the closure of a set and whether it is closed.
    Closure {
        space: PathBuf,
        /// Comma-separated element labels; omitted means the empty set.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        probe: Option<String>,
    },
    /// Verify a direct product. Factors are built-in names or `ring.json,space.json`.
    Product {
        #[arg(required = true, num_args = 2..)]
        factors: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Rectangle)]
    mode: ModeArg,
    /// A single check name, or `all`.
    #[arg(long, default_value = "all")]
    check: String,
    /// Emit the report as JSON (no timings).
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Rectangle,
    Full,
}

enum Failure {
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parse `args` (including the program name) and run. Output goes to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn max_ground(unsafe_caps: bool) -> Result<usize> {
    let Ok(raw) = std::env::var(MAX_GROUND_ENV) else {
        return Ok(DEFAULT_MAX_GROUND);
    };
    let value: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::Document(format!("{MAX_GROUND_ENV}=`{raw}` is not a positive integer")))?;
    if value == 0 || value > UNSAFE_MAX_GROUND {
        return Err(Error::Document(format!(
            "{MAX_GROUND_ENV}={value} must lie in 1..={UNSAFE_MAX_GROUND}"
        )));
    }
    if value > DEFAULT_MAX_GROUND && !unsafe_caps {
        return Err(Error::Document(format!(
            "{MAX_GROUND_ENV}={value} exceeds {DEFAULT_MAX_GROUND}; pass --unsafe-caps to allow it"
        )));
    }
    Ok(value)
}

fn scan_options(run: &RunArgs, unsafe_caps: bool) -> ScanOptions {
    let mode = match run.mode {
        ModeArg::Rectangle => ProductMode::Rectangle,
        ModeArg::Full => ProductMode::FullProduct,
    };
    let opts = ScanOptions::default().with_mode(mode);
    if unsafe_caps {
        opts.unsafe_caps()
    } else {
        opts
    }
}

/// Reject unknown check names before touching any file.
fn check_filter(run: &RunArgs) -> Result<Option<&str>> {
    if run.check == "all" {
        return Ok(None);
    }
    let known = [StructureKind::Group, StructureKind::Field, StructureKind::Module]
        .iter()
        .any(|&k| registry(k).contains(&run.check.as_str()));
    if !known {
        return Err(Error::Document(format!("--check: unknown check `{}`", run.check)));
    }
    Ok(Some(&run.check))
}

fn probe_overrides(probe: &Option<String>) -> Result<Vec<(String, Vec<Feature>)>> {
    probe
        .as_deref()
        .map(parse_probe_overrides)
        .transpose()
        .map(Option::unwrap_or_default)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    let unsafe_caps = cli.unsafe_caps;
    match &cli.command {
        Command::AuditSpace { space } => {
            let max = max_ground(unsafe_caps)?;
            cmd_audit_space(space, max, out)
        }
        Command::AuditRing { ring } => {
            let max = max_ground(unsafe_caps)?;
            cmd_audit_ring(ring, max, out)
        }
        Command::Verify {
            algebra,
            space,
            carrier_space,
            run,
            probe,
        } => {
            let only = check_filter(run)?;
            let overrides = probe_overrides(probe)?;
            let max = max_ground(unsafe_caps)?;
            let ps = verify_structure(
                algebra,
                space,
                carrier_space.as_deref(),
                &overrides,
                max,
                scan_options(run, unsafe_caps),
            )?;
            emit(&run_checks(&ps, only)?, run.json, out)
        }
        Command::Demo { name, run, probe } => {
            let only = check_filter(run)?;
            let overrides = probe_overrides(probe)?;
            let max = max_ground(unsafe_caps)?;
            cmd_demo(name, run, only, &overrides, max, scan_options(run, unsafe_caps), out)
        }
        Command::Closure { space, set, probe } => {
            let overrides = probe_overrides(probe)?;
            let max = max_ground(unsafe_caps)?;
            cmd_closure(space, set.as_deref(), &overrides, max, out)
        }
        Command::Product { factors, run } => {
            let only = check_filter(run)?;
            let max = max_ground(unsafe_caps)?;
            cmd_product(factors, run, only, max, scan_options(run, unsafe_caps), out)
        }
    }
}

fn emit(report: &SuiteReport, json: bool, out: &mut dyn Write) -> Outcome {
    let text = if json { report.to_json() } else { report.render() };
    let _ = writeln!(out, "{}", text.trim_end());
    Ok(if report.any_fail() { 1 } else { 0 })
}

fn cmd_audit_space(path: &Path, max: usize, out: &mut dyn Write) -> Outcome {
    let doc = load_space(path, max)?;
    let rel = doc.relation()?;
    let report = audit_axioms(&rel);
    let _ = writeln!(
        out,
        "space {} ({} elements, {})",
        path.display(),
        doc.ground.len(),
        rel.name()
    );
    let _ = write!(out, "{}", report.render(&doc.ground));
    Ok(if report.any_fail() { 1 } else { 0 })
}

fn cmd_audit_ring(path: &Path, max: usize, out: &mut dyn Write) -> Outcome {
    let doc = load_algebra(path, max)?;
    let ring = doc.ring();
    let report = audit_ring(ring);
    let _ = writeln!(out, "ring {} ({} elements)", ring.name(), ring.len());
    let _ = write!(out, "{}", report.render(ring.ground()));
    if let AlgebraDocument::Module(m) = &doc {
        let _ = writeln!(out, "module laws: pass ({} elements)", m.carrier().len());
    }
    Ok(if report.is_ring() { 0 } else { 1 })
}

fn audited(ring: &FiniteRing) -> Result<()> {
    match audit_ring(ring).first_failure() {
        Some((law, verdict)) => Err(Error::NotARing(format!("{law} {}", verdict.render(ring.ground())))),
        None => Ok(()),
    }
}

fn space_relation(path: &Path, overrides: &[(String, Vec<Feature>)], max: usize) -> Result<ProximityRelation> {
    let mut doc: SpaceDocument = load_space(path, max)?;
    if !overrides.is_empty() {
        doc.override_probe(overrides)?;
    }
    doc.relation()
}

fn verify_structure(
    algebra: &Path,
    space: &Path,
    carrier_space: Option<&Path>,
    overrides: &[(String, Vec<Feature>)],
    max: usize,
    opts: ScanOptions,
) -> Result<ProximalStructure> {
    let doc = load_algebra(algebra, max)?;
    audited(doc.ring())?;
    let rel = space_relation(space, overrides, max)?;
    match doc {
        AlgebraDocument::Ring(ring) => {
            let kind = if ring.is_field() {
                StructureKind::Field
            } else {
                StructureKind::Ring
            };
            ProximalStructure::ring(kind, ring, rel, opts)
        }
        AlgebraDocument::Module(module) => {
            let carrier_rel = match carrier_space {
                Some(p) => space_relation(p, overrides, max)?,
                None if module.carrier() == module.ring().ground() => rel.clone(),
                None => {
                    return Err(Error::Document(
                        "module documents need a second space document for the carrier".into(),
                    ))
                }
            };
            ProximalStructure::module(module, rel, carrier_rel, opts)
        }
    }
}

/// A built-in ring and its default relation.
struct Builtin {
    ring: FiniteRing,
    relation: ProximityRelation,
    kind: StructureKind,
    /// Probe values, for the descriptive ribbon ring.
    probe: Option<ProbeAssignment>,
}

fn parse_param(name: &str, value: &str) -> Result<usize> {
    value
        .parse()
        .map_err(|_| Error::Document(format!("demo `{name}`: `{value}` is not a number")))
}

fn builtin(name: &str, overrides: &[(String, Vec<Feature>)], max: usize) -> Result<Builtin> {
    let (family, param) = name.split_once(':').unwrap_or((name, ""));
    let (ring, kind) = match family {
        "ribbon" if param.is_empty() => {
            let (ring, probe) = ribbon_ring();
            let probe = override_probe(ring.ground(), probe, overrides)?;
            let relation = descriptive_relation(ring.ground(), &probe)?;
            return Ok(Builtin {
                ring,
                relation,
                kind: StructureKind::Ring,
                probe: Some(probe),
            });
        }
        "zn" => match parse_param(name, param)? {
            n if n < 2 => return Err(Error::Document(format!("demo `{name}`: n must be at least 2"))),
            n => (ring_zn(n)?, StructureKind::Ring),
        },
        "gf" => (field_gf(parse_param(name, param)?)?, StructureKind::Field),
        "boolean" => (boolean_ring(parse_param(name, param)?)?, StructureKind::Ring),
        _ => {
            return Err(Error::Document(format!(
                "unknown demo `{name}`; expected ribbon, zn:<n>, gf:<p> or boolean:<m>"
            )))
        }
    };
    if !overrides.is_empty() {
        return Err(Error::Document("--probe applies only to the ribbon demo".into()));
    }
    if ring.len() > max {
        return Err(Error::GroundTooLarge { size: ring.len(), max });
    }
    let relation = ProximityRelation::overlap(ring.ground());
    Ok(Builtin {
        ring,
        relation,
        kind,
        probe: None,
    })
}

fn override_probe(
    ground: &GroundSet,
    probe: ProbeAssignment,
    overrides: &[(String, Vec<Feature>)],
) -> Result<ProbeAssignment> {
    if overrides.is_empty() {
        return Ok(probe);
    }
    let mut map = probe.to_labels(ground);
    for (label, value) in overrides {
        ground.index_of(label)?;
        map.insert(label.clone(), value.clone());
    }
    ProbeAssignment::from_labels(ground, &map)
}

fn cmd_demo(
    name: &str,
    run: &RunArgs,
    only: Option<&str>,
    overrides: &[(String, Vec<Feature>)],
    max: usize,
    opts: ScanOptions,
    out: &mut dyn Write,
) -> Outcome {
    let b = builtin(name, overrides, max)?;
    let labels = b.ring.ground().labels().to_vec();
    if !run.json {
        let (plus, times) = if b.probe.is_some() { ("⊕", "⊙") } else { ("+", "*") };
        let _ = writeln!(out, "{} ({} elements)\n", b.ring.name(), b.ring.len());
        let _ = writeln!(out, "{}", render_table(plus, &labels, b.ring.add_table()));
        let _ = writeln!(out, "{}", render_table(times, &labels, b.ring.mul_table()));
        if let Some(probe) = &b.probe {
            write_ribbon_notes(&b, probe, out);
        }
        let audit = audit_ring(&b.ring);
        let verdict = if audit.is_ring() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "ring audit: {verdict}\n");
    }
    let mut ps = ProximalStructure::ring(b.kind, b.ring, b.relation, opts)?;
    if b.probe.is_some() {
        let name = format!("descriptive {}", ps.name());
        ps = ps.with_name(name);
    }
    emit(&run_checks(&ps, only)?, run.json, out)
}

fn write_ribbon_notes(b: &Builtin, probe: &ProbeAssignment, out: &mut dyn Write) {
    let g = b.ring.ground();
    let tol = b
        .relation
        .tolerance()
        .expect("descriptive relations are point-generated");
    let fx = ribbon_fixture();
    for (name, rb) in [("rbA", fx.rb_a()), ("rbB", fx.rb_b())] {
        let _ = writeln!(
            out,
            "fixture beta({name}) = 2k + n = 2*{} + {} = {}",
            rb.bridge_edges.len(),
            rb.common_vertices.len(),
            rb.beta()
        );
    }
    let values: Vec<String> = (0..g.len())
        .map(|i| {
            let f: Vec<String> = probe.features(i).iter().map(ToString::to_string).collect();
            format!("{}={}", g.label(i), f.join(":"))
        })
        .collect();
    let _ = writeln!(out, "probe: {}", values.join(" "));
    let (a, bb) = (g.index_of("rbA").expect("label"), g.index_of("rbB").expect("label"));
    let near = b.relation.near(&g.singleton(a), &g.singleton(bb)).expect("same ground");
    let _ = writeln!(out, "near({{rbA}}, {{rbB}}) = {near}");
    let classes: Vec<String> = (0..g.len())
        .map(|i| {
            let peers: Vec<&str> = (0..g.len())
                .filter(|&j| tol.related(i, j))
                .map(|j| g.label(j))
                .collect();
            format!("{}~{{{}}}", g.label(i), peers.join(","))
        })
        .collect();
    let _ = writeln!(out, "probe classes: {}\n", classes.join(" "));
}

fn cmd_closure(
    path: &Path,
    set: Option<&str>,
    overrides: &[(String, Vec<Feature>)],
    max: usize,
    out: &mut dyn Write,
) -> Outcome {
    let rel = space_relation(path, overrides, max)?;
    let g = rel.ground();
    let labels: Vec<&str> = set
        .unwrap_or("")
        .split(',')
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    let a = g.subset(labels)?;
    let cl = closure(&rel, &a)?;
    let fmt = |s: &crate::ground::Subset| format!("{{{}}}", g.labels_of(s.mask()).join(","));
    let _ = writeln!(out, "set:     {}", fmt(&a));
    let _ = writeln!(out, "closure: {}", fmt(&cl));
    let _ = writeln!(out, "closed:  {}", if cl == a { "yes" } else { "no" });
    Ok(0)
}

fn factor(spec: &str, max: usize, opts: &ScanOptions) -> Result<ProximalStructure> {
    if let Some((ring, space)) = spec.split_once(',') {
        let (ring, space) = (Path::new(ring.trim()), Path::new(space.trim()));
        let doc = load_algebra(ring, max)?;
        audited(doc.ring())?;
        let rel = space_relation(space, &[], max)?;
        return match doc {
            AlgebraDocument::Ring(r) => ProximalStructure::ring(StructureKind::Ring, r, rel, opts.clone()),
            AlgebraDocument::Module(m) => {
                if m.carrier() != m.ring().ground() {
                    return Err(Error::Document(format!(
                        "{spec}: module factors must act on a carrier labelled like the ring"
                    )));
                }
                ProximalStructure::module(m, rel.clone(), rel, opts.clone())
            }
        };
    }
    let b = builtin(spec, &[], max)?;
    ProximalStructure::ring(StructureKind::Ring, b.ring, b.relation, opts.clone())
}

fn cmd_product(
    factors: &[String],
    run: &RunArgs,
    only: Option<&str>,
    max: usize,
    opts: ScanOptions,
    out: &mut dyn Write,
) -> Outcome {
    let structures = factors
        .iter()
        .map(|f| factor(f, max, &opts))
        .collect::<Result<Vec<_>>>()?;
    let ps = product_structure(&structures)?;
    let size = ps
        .relation()
        .ground()
        .len()
        .max(ps.carrier_relation().map_or(0, |r| r.ground().len()));
    if size > max {
        return Err(Error::GroundTooLarge { size, max }.into());
    }
    let base: &[&str] = match ps.kind() {
        StructureKind::Module => registry(StructureKind::Module),
        _ => &["add", "mul", "inv"],
    };
    if let Some(name) = only {
        if !base.contains(&name) {
            return Err(Error::Document(format!("--check `{name}` is not part of the product checks")).into());
        }
    }
    let mut report = run_checks(&ps, only)?;
    report.checks.retain(|c| base.contains(&c.name.as_str()));
    emit(&report, run.json, out)
}
