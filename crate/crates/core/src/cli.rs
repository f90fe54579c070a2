//! Command-line front end. Every command writes one JSON document, with keys
//! in sorted order, and optionally a DOT diagram.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::commspec::{topology_zoo, Flag};
use crate::dot::{frame_dot, poset_dot, topology_dot};
use crate::error::{Error, Result};
use crate::fixtures::{self, Fixture, LoadedModel};
use crate::frame::{ElemSet, FinitePoset, Frame};
use crate::functor::{composition_check, continuity_check, pullback_report, ExactFunctorModel, FunctorKind};
use crate::quiverrep::DEFAULT_DIM_BOUND;
use crate::serre::{classify_local, quotient_model, sp, CategoryModel, LocalityVerdict};
use crate::verify::{run_suite, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "serrelat", version, about = "Serre subcategory lattices of small abelian categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write a DOT diagram here.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Largest total dimension for subobject enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_BOUND)]
    pub dim_bound: usize,
    /// Seed for the random posets in `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The lattice of Serre subcategories and its Zariski basic opens.
    Lattice { fixture: String },
    /// Prime Serre subcategories, ordered by inclusion.
    Primes { fixture: String },
    /// Whether zero is prime, and why.
    Local { fixture: String },
    /// The quotient by a Serre subcategory, with its interval certificate.
    Quotient {
        fixture: String,
        /// Base labels generating the Serre subcategory, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        by: Vec<String>,
    },
    /// How `Ser(f)` treats joins and primes, for a functor fixture.
    Pullback { fixture: String },
    /// Comparison of the flagged Ziegler-type and Zariski-type topologies.
    Topologies {
        fixture: String,
        /// Family whose topologies are listed and drawn.
        #[arg(long)]
        flag: Option<Flag>,
    },
    /// The invariant suite, over the given fixtures or the bundled set.
    Verify { fixtures: Vec<String> },
}

/// What a command produced.
#[derive(Debug)]
pub struct Artifacts {
    pub json: Value,
    pub dot: Option<String>,
    pub exit_code: i32,
}

/// A path on disk, or else the name of a bundled fixture.
pub fn load_fixture(arg: &str) -> Result<Fixture> {
    let path = Path::new(arg);
    if path.exists() {
        return fixtures::load_path(path);
    }
    fixtures::bundled(arg).map_err(|_| Error::Fixture(format!("`{arg}` is neither a file nor a bundled fixture")))
}

fn load_model(arg: &str) -> Result<LoadedModel> {
    match load_fixture(arg)? {
        Fixture::Model(m) => Ok(m),
        Fixture::Functor(_) => Err(Error::Fixture(format!("`{arg}` is a functor, not a model"))),
    }
}

fn labels(base: &FinitePoset, set: ElemSet) -> Vec<String> {
    base.sorted_labels_of(set)
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidPoset(_) => "invalid_poset",
        Error::SizeGuard { .. } => "size_guard",
        Error::NotAnElement(_) => "not_an_element",
        Error::UnknownLabel(_) => "unknown_label",
        Error::LabelMismatch => "label_mismatch",
        Error::InvalidTopology(_) => "invalid_topology",
        Error::InvalidQuiver(_) => "invalid_quiver",
        Error::ShapeMismatch { .. } => "shape_mismatch",
        Error::RelationViolated(_) => "relation_violated",
        Error::DimensionBound { .. } => "dimension_bound",
        Error::UnsupportedField(_) => "unsupported_field",
        Error::ObjectMismatch(_) => "object_mismatch",
        Error::Unsupported(_) => "unsupported",
        Error::Precondition(_) => "precondition",
        Error::InvalidSubcategory(_) => "invalid_subcategory",
        Error::InvalidFunctor(_) => "invalid_functor",
        Error::InvalidSpectral(_) => "invalid_spectral",
        Error::UnknownFlag(_) => "unknown_flag",
        Error::Fixture(_) => "fixture",
        Error::Invariant { .. } => "invariant",
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut body = json!({ "kind": error_kind(e), "message": e.to_string() });
    if let Error::Invariant { check, .. } = e {
        body["check"] = json!(check);
    }
    json!({ "error": body })
}

fn is_chain(frame: &Frame) -> bool {
    let els = frame.elements();
    els.iter().all(|&a| els.iter().all(|&b| a.is_subset(b) || b.is_subset(a)))
}

pub fn lattice_report(model: &CategoryModel) -> Result<(Value, String)> {
    let ser = model.serre_lattice()?;
    let base = ser.base();
    let els = ser.elements();
    let basic_opens: Vec<Value> = els
        .iter()
        .map(|&a| {
            let open: Vec<Vec<String>> = els
                .iter()
                .filter(|s| a.is_subset(**s))
                .map(|&s| labels(base, s))
                .collect();
            json!({ "generator": labels(base, a), "open": open })
        })
        .collect();
    let covers: Vec<[usize; 2]> = ser.hasse().into_iter().map(|(lo, hi)| [lo, hi]).collect();
    let report = json!({
        "kind": model.kind(),
        "base": base.labels(),
        "size": ser.len(),
        "is_chain": is_chain(&ser),
        "elements": els.iter().map(|&e| labels(base, e)).collect::<Vec<_>>(),
        "covers": covers,
        "zariski_basic_opens": basic_opens,
    });
    Ok((report, frame_dot("Ser", &ser)))
}

pub fn primes_report(model: &CategoryModel) -> Result<(Value, String)> {
    let base = model.base();
    let spec = sp(model)?;
    let points: Vec<Value> = spec
        .pairs
        .iter()
        .map(|&(p, s)| json!({ "point": base.label(p), "prime": labels(&base, s) }))
        .collect();
    // Sp under inclusion is the base reversed.
    let order = base.opposite();
    let covers: Vec<[&str; 2]> = order
        .covers()
        .into_iter()
        .map(|(lo, hi)| [order.label(lo), order.label(hi)])
        .collect();
    let report = json!({ "kind": model.kind(), "primes": points, "covers_by_point": covers });
    Ok((report, poset_dot("Sp", &order)))
}

pub fn local_report(model: &CategoryModel) -> Result<Value> {
    let base = model.base();
    let ser = model.serre_lattice()?;
    let verdict = classify_local(model)?;
    let mut report = match &verdict {
        LocalityVerdict::NotLocal { witness } => json!({
            "verdict": "NotLocal",
            "witness": witness.map(|(a, b)| [labels(&base, a), labels(&base, b)]),
        }),
        LocalityVerdict::Case1 { simple, minimal } => json!({
            "verdict": "Case1",
            "simple": simple,
            "minimal": labels(&base, *minimal),
        }),
        LocalityVerdict::Case2 { minimal } => json!({ "verdict": "Case2", "minimal": labels(&base, *minimal) }),
        LocalityVerdict::Case3 => json!({ "verdict": "Case3" }),
    };
    report["zero_is_prime"] = json!(ser.is_prime(ser.bottom())?);
    report["kind"] = json!(model.kind());
    Ok(report)
}

pub fn quotient_report(model: &CategoryModel, by: &[String]) -> Result<(Value, String)> {
    let base = model.base();
    let s = base.up_closure(base.set_of(by)?);
    let q = quotient_model(model, s)?;
    let qbase = q.model.base();
    let qser = q.model.serre_lattice()?;
    let embedding: Vec<Value> = q
        .embedding
        .iter()
        .map(|&(e, img)| json!({ "quotient": labels(&qbase, e), "image": labels(&base, img) }))
        .collect();
    let report = json!({
        "kind": model.kind(),
        "by": labels(&base, s),
        "kept": q.kept.iter().map(|&i| base.label(i)).collect::<Vec<_>>(),
        "size": qser.len(),
        "embedding": embedding,
        "certificate": q.certificate,
    });
    Ok((report, frame_dot("Ser(A/S)", &qser)))
}

pub fn pullback_json(f: &ExactFunctorModel) -> Result<Value> {
    let r = pullback_report(f)?;
    let sbase = f.source().base();
    let tbase = f.target().base();
    let images: Vec<Value> = f
        .images()
        .iter()
        .enumerate()
        .map(|(x, &im)| json!({ "object": f.source().simple_name(x), "support": labels(&tbase, im) }))
        .collect();
    let join_failures: Vec<Value> = r
        .join_failures
        .iter()
        .map(|j| {
            json!({
                "s": j.s.members,
                "t": j.t.members,
                "pullback_of_join": j.pullback_of_join.members,
                "join_of_pullbacks": j.join_of_pullbacks.members,
                "witness": j.witness,
            })
        })
        .collect();
    let sp_failures: Vec<&Vec<String>> = r.sp_failures.iter().map(|s| &s.members).collect();
    let composition = if f.kind() == FunctorKind::Composite {
        Some(composition_check(f)?)
    } else {
        None
    };
    Ok(json!({
        "kind": f.kind(),
        "source": { "kind": f.source().kind(), "base": sbase.labels() },
        "target": { "kind": f.target().kind(), "base": tbase.labels() },
        "images": images,
        "preserves_order": r.preserves_order,
        "preserves_meets": r.preserves_meets,
        "join_failures": join_failures,
        "sp_failures": sp_failures,
        "continuity": continuity_check(f)?,
        "composition": composition,
    }))
}

pub fn topologies_report(loaded: &LoadedModel, flag: Option<Flag>) -> Result<(Value, String)> {
    let p = loaded
        .spectral
        .as_ref()
        .ok_or_else(|| Error::Precondition("topologies need a spectral fixture".into()))?;
    let spec = p.spec();
    let zoo = topology_zoo(p)?;
    let families: serde_json::Map<String, Value> = Flag::ALL_FLAGS
        .iter()
        .map(|&f| {
            let fam: Vec<Vec<String>> = p.family(f).iter().map(|&v| labels(spec, v)).collect();
            (f.to_string(), json!(fam))
        })
        .collect();
    let mut report = json!({
        "points": spec.labels(),
        "families": families,
        "ziegler": zoo.ziegler,
        "zariski": zoo.zariski,
        "all_is_alexandrov": zoo.all_is_alexandrov,
        "dual": zoo.dual,
    });
    let shown = flag.unwrap_or(Flag::All);
    let zg = p.ziegler_type_topology(shown)?;
    if let Some(f) = flag {
        let zr = p.zariski_type_topology(f)?;
        let opens = |t: &crate::frame::TopologySpace| -> Vec<Vec<String>> {
            t.opens().iter().map(|&u| labels(spec, u)).collect()
        };
        report["selected"] = json!({
            "flag": f,
            "ziegler_opens": opens(&zg),
            "zariski_opens": opens(&zr),
        });
    }
    Ok((report, topology_dot(&format!("Ziegler {shown}"), &zg)))
}

/// Runs one command without touching the filesystem beyond reading fixtures.
pub fn execute(cli: &Cli) -> Artifacts {
    match dispatch(cli) {
        Ok(a) => a,
        Err(e) => Artifacts {
            json: error_json(&e),
            dot: None,
            exit_code: if matches!(e, Error::Invariant { .. }) { 2 } else { 1 },
        },
    }
}

fn ok(json: Value, dot: Option<String>) -> Result<Artifacts> {
    Ok(Artifacts { json, dot, exit_code: 0 })
}

fn dispatch(cli: &Cli) -> Result<Artifacts> {
    match &cli.command {
        Command::Lattice { fixture } => {
            let (j, d) = lattice_report(&load_model(fixture)?.model)?;
            ok(j, Some(d))
        }
        Command::Primes { fixture } => {
            let (j, d) = primes_report(&load_model(fixture)?.model)?;
            ok(j, Some(d))
        }
        Command::Local { fixture } => ok(local_report(&load_model(fixture)?.model)?, None),
        Command::Quotient { fixture, by } => {
            let (j, d) = quotient_report(&load_model(fixture)?.model, by)?;
            ok(j, Some(d))
        }
        Command::Pullback { fixture } => match load_fixture(fixture)? {
            Fixture::Functor(f) => ok(pullback_json(&f)?, None),
            Fixture::Model(_) => Err(Error::Fixture(format!("`{fixture}` is a model, not a functor"))),
        },
        Command::Topologies { fixture, flag } => {
            let (j, d) = topologies_report(&load_model(fixture)?, *flag)?;
            ok(j, Some(d))
        }
        Command::Verify { fixtures } => {
            let loaded: Vec<(String, Fixture)> = if fixtures.is_empty() {
                fixtures::all_bundled()?
                    .into_iter()
                    .map(|(n, f)| (n.to_string(), f))
                    .collect()
            } else {
                fixtures
                    .iter()
                    .map(|a| Ok((a.clone(), load_fixture(a)?)))
                    .collect::<Result<_>>()?
            };
            let named: Vec<(&str, Fixture)> = loaded.iter().map(|(n, f)| (n.as_str(), f.clone())).collect();
            let opts = VerifyOptions {
                dim_bound: cli.dim_bound,
                seed: cli.seed,
                ..VerifyOptions::default()
            };
            let report = run_suite(&named, &opts);
            let code = if report.all_passed() { 0 } else { 2 };
            Ok(Artifacts {
                json: serde_json::to_value(&report).expect("report serialises"),
                dot: None,
                exit_code: code,
            })
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(json: &Value) -> String {
    let mut s = serde_json::to_string_pretty(json).expect("JSON values serialise");
    s.push('\n');
    s
}

/// Parses arguments, runs the command and writes its outputs; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let art = execute(&cli);
    let text = render(&art.json);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("cannot write {}: {e}", cli.out.as_ref().unwrap().display());
        return 1;
    }
    if let (Some(path), Some(dot)) = (&cli.dot, &art.dot) {
        if let Err(e) = std::fs::write(path, dot) {
            eprintln!("cannot write {}: {e}", path.display());
            return 1;
        }
    }
    art.exit_code
}
