//! `cpcohom`: multipliers, CP covers and verification suites from the shell.
//!
//! Exit status: 0 when every check passes, 1 on a mathematical failure
//! (or a negative answer), 2 on usage, input or cap errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use cpcohom::bound::{presentation_rank_bound, PresentationBoundInput};
use cpcohom::catalog::lookup;
use cpcohom::cohomology::{multiplier_invariants, uct_decomposition_mod, SCHEMA_VERSION};
use cpcohom::covers::{cp_cover, verify_cover};
use cpcohom::exterior::exterior_report;
use cpcohom::extensions::{check_cp_extension, ExtensionBundle};
use cpcohom::group::{build_group, FiniteGroup, GroupSpec};
use cpcohom::iso::{are_isoclinic, cp_extension_isoclinism_classes};
use cpcohom::verify::{run_suite, Filter, SuiteOptions, SuiteReport, DEFAULT_SEED, SUITES};
use cpcohom::Error;

#[derive(Parser)]
#[command(name = "cpcohom", version, about = "Commutativity-preserving cohomology of finite groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure, commuting probability and multipliers.
    Analyze { group: String },
    /// Bogomolov multiplier.
    B0 { group: String },
    /// H^2, H^2_CP and the split sequence with coefficients Z/m.
    H2cp {
        group: String,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Builds and certifies a CP cover.
    Cover {
        group: String,
        /// Writes the cover as an extension bundle.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Tests whether a bundled extension is commutativity preserving.
    CheckCp { bundle: PathBuf },
    /// Tests two groups for isoclinism.
    Isoclinic { g1: String, g2: String },
    /// Isoclinism classes of central CP extensions.
    Classes { group: String },
    /// Multipliers from the exterior squares, compared with cohomology.
    Oracle { group: String },
    /// Rank bound for the Bogomolov multiplier from a presentation.
    Bound { presentation: PathBuf },
    /// Runs a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Outcome of a command: a JSON value, a text rendering and the verdict.
struct Outcome {
    json: serde_json::Value,
    text: String,
    ok: bool,
}

fn outcome(value: impl Serialize, text: String, ok: bool) -> Result<Outcome, Error> {
    let mut json = serde_json::to_value(value)?;
    if let Some(obj) = json.as_object_mut() {
        obj.entry("schema_version").or_insert(json!(SCHEMA_VERSION));
    }
    Ok(Outcome { json, text, ok })
}

/// A catalog name, or a path to a group spec in JSON.
fn resolve(arg: &str) -> Result<FiniteGroup, Error> {
    if let Some(e) = lookup(arg) {
        return e.build();
    }
    let path = Path::new(arg);
    if path.is_file() {
        let spec: GroupSpec = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let name = path.file_stem().map_or(arg.into(), |s| s.to_string_lossy().into_owned());
        return Ok(build_group(&spec)?.with_name(name));
    }
    Err(Error::UnknownGroup(arg.into()))
}

fn analyze(arg: &str) -> Result<Outcome, Error> {
    let g = resolve(arg)?;
    let r = multiplier_invariants(&g)?;
    let value = json!({
        "group": g.name(),
        "order": g.order(),
        "exponent": g.exponent(),
        "abelian": g.is_abelian(),
        "center_order": g.center().len(),
        "derived_order": g.derived().len(),
        "commutator_set_size": g.commutator_set().len(),
        "class_count": g.class_count(),
        "abelianization": g.abelianization().invariants,
        "cp": g.commuting_probability().to_string(),
        "multipliers": r,
    });
    let text = format!(
        "{}: order {}, exponent {}, |Z| = {}, |G'| = {}, k = {}, G^ab = {:?}\ncp = {}\nM = {:?}, M0 = {:?}, B0 = {:?}",
        g.name(),
        g.order(),
        g.exponent(),
        g.center().len(),
        g.derived().len(),
        g.class_count(),
        g.abelianization().invariants,
        g.commuting_probability(),
        r.m,
        r.m0,
        r.b0
    );
    outcome(value, text, true)
}

fn b0(arg: &str) -> Result<Outcome, Error> {
    let g = resolve(arg)?;
    let r = multiplier_invariants(&g)?;
    let text = format!("B0({}) = {:?}", g.name(), r.b0);
    outcome(json!({ "group": g.name(), "b0": r.b0, "path": r.path }), text, true)
}

fn h2cp(arg: &str, m: u64) -> Result<Outcome, Error> {
    let g = resolve(arg)?;
    let d = uct_decomposition_mod(&g, m)?;
    let ok = d.check().is_ok() && d.h2_cp.order() == d.ext.order() * d.hom_b0.order();
    let value = json!({
        "group": g.name(),
        "modulus": m,
        "h2": d.h2.invariants(),
        "h2_cp": d.h2_cp.invariants(),
        "ext": d.ext.invariants(),
        "hom_b0": d.hom_b0.invariants(),
        "hom_m": d.hom_m.invariants(),
        "hom_m0": d.hom_m0.invariants(),
        "order_law": ok,
    });
    let text = format!(
        "H2({0}, Z/{m}) = {1:?}\nH2_CP({0}, Z/{m}) = {2:?}\nExt = {3:?}, Hom(B0, Z/{m}) = {4:?}\n|H2_CP| = |Ext| |Hom(B0)|: {5}",
        g.name(),
        d.h2.invariants(),
        d.h2_cp.invariants(),
        d.ext.invariants(),
        d.hom_b0.invariants(),
        ok
    );
    outcome(value, text, ok)
}

fn cover(arg: &str, export: Option<&Path>) -> Result<Outcome, Error> {
    let g = resolve(arg)?;
    let ext = cp_cover(&g)?;
    let report = verify_cover(&ext)?;
    if let Some(path) = export {
        let bundle = ExtensionBundle::from_extension(&ext);
        std::fs::write(path, serde_json::to_string_pretty(&bundle)? + "\n")?;
    }
    let mut text = format!("CP cover of {} has order {}", g.name(), report.order);
    for (name, ok) in report.checks() {
        text.push_str(&format!("\n  {:<24} {}", name, if ok { "pass" } else { "FAIL" }));
    }
    let ok = report.passed();
    outcome(json!({ "group": g.name(), "report": report, "passed": ok }), text, ok)
}

fn check_cp(path: &Path) -> Result<Outcome, Error> {
    let bundle: ExtensionBundle = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let ext = bundle.realize(resolve)?;
    let check = check_cp_extension(&ext)?;
    let text = match check.witness {
        None => format!("CP extension of order {}", ext.group.order()),
        Some((x, y)) => format!(
            "not CP: commuting pair ({x}, {y}) of the base has no commuting lift (order {})",
            ext.group.order()
        ),
    };
    let ok = check.is_cp;
    outcome(json!({ "order": ext.group.order(), "check": check }), text, ok)
}

fn isoclinic(a: &str, b: &str) -> Result<Outcome, Error> {
    let (g, h) = (resolve(a)?, resolve(b)?);
    let w = are_isoclinic(&g, &h)?;
    let ok = w.is_some();
    let text = format!("{} and {} are {}isoclinic", g.name(), h.name(), if ok { "" } else { "not " });
    outcome(json!({ "g1": g.name(), "g2": h.name(), "isoclinic": ok, "witness": w }), text, ok)
}

fn classes(arg: &str) -> Result<Outcome, Error> {
    let g = resolve(arg)?;
    let c = cp_extension_isoclinism_classes(&g)?;
    let text = format!(
        "B0({}) = {:?}: {} subgroups, {} isoclinism classes of central CP extensions",
        g.name(),
        c.b0,
        c.subgroup_count,
        c.orbit_count
    );
    outcome(json!({ "group": g.name(), "classes": c }), text, true)
}

fn oracle(arg: &str) -> Result<Outcome, Error> {
    let g = resolve(arg)?;
    let r = exterior_report(&g)?;
    let coh = multiplier_invariants(&g)?;
    let ok = coh.same_invariants(&r.multipliers);
    let text = format!(
        "|Q^Q| = {}, |Q curly Q| = {}, |Q'| = {}\noracle: M = {:?}, M0 = {:?}, B0 = {:?}\ncohomology agrees: {}",
        r.wedge_order, r.curly_order, r.derived_order, r.multipliers.m, r.multipliers.m0, r.multipliers.b0, ok
    );
    outcome(json!({ "group": g.name(), "oracle": r, "cohomology": coh, "agree": ok }), text, ok)
}

fn bound(path: &Path) -> Result<Outcome, Error> {
    let input: PresentationBoundInput = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let r = presentation_rank_bound(&input)?;
    let text = match r.bound {
        Some(b) => format!(
            "d(B0) <= {b} ({} relators, {} commutators, {} generators; minimality {:?})",
            r.relators, r.commutator_relators, r.generators, r.minimality
        ),
        None => format!("not applicable: the group needs {:?} generators", r.minimal_generators),
    };
    let mut text = text;
    for w in &r.warnings {
        text.push_str(&format!("\nwarning: {w}"));
    }
    outcome(r, text, true)
}

fn render_suite(r: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &r.cases {
        let tag = match c.status {
            cpcohom::verify::Status::Pass => "pass",
            cpcohom::verify::Status::Fail => "FAIL",
            cpcohom::verify::Status::Error => "ERROR",
        };
        out.push_str(&format!("{tag:<5} {:<28} {}\n", c.name, c.detail));
    }
    out.push_str(&format!("{}: {}/{} passed", r.suite, r.passed, r.total));
    out
}

/// Runs one suite or all of them; errors in cases turn the exit code to 2.
fn verify(suite: &str, filter: Option<&str>, seed: u64, jobs: usize) -> Result<(Outcome, bool), Error> {
    let opts = SuiteOptions {
        filter: filter.map(Filter::parse).transpose()?.unwrap_or_default(),
        seed,
        jobs: jobs.max(1),
    };
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut reports = Vec::new();
    for name in names {
        let r = run_suite(name, &opts)?;
        eprintln!("{name}: {:.2?}", r.wall_time);
        reports.push(r);
    }
    let failed = reports.iter().any(|r| r.failed > 0);
    let errored = reports.iter().any(|r| r.errors > 0);
    let text = reports.iter().map(render_suite).collect::<Vec<_>>().join("\n\n");
    let value = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        json!({ "schema_version": SCHEMA_VERSION, "reports": reports })
    };
    Ok((outcome(value, text, !failed)?, errored && !failed))
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::CoverSearchExhausted(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut usage_error = false;
    let result = match &cli.command {
        Command::Analyze { group } => analyze(group),
        Command::B0 { group } => b0(group),
        Command::H2cp { group, modulus } => h2cp(group, *modulus),
        Command::Cover { group, export } => cover(group, export.as_deref()),
        Command::CheckCp { bundle } => check_cp(bundle),
        Command::Isoclinic { g1, g2 } => isoclinic(g1, g2),
        Command::Classes { group } => classes(group),
        Command::Oracle { group } => oracle(group),
        Command::Bound { presentation } => bound(presentation),
        Command::Verify {
            suite,
            filter,
            seed,
            jobs,
        } => verify(suite, filter.as_deref(), *seed, *jobs).map(|(o, errored)| {
            usage_error = errored;
            o
        }),
    };
    match result {
        Ok(o) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&o.json).expect("serializable"));
            } else {
                println!("{}", o.text);
            }
            if !o.ok {
                ExitCode::from(1)
            } else if usage_error {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
