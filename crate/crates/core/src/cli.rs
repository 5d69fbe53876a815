//! The `homex` command line.
//!
//! Exit status is 0 on success, 1 when a verification assertion fails and 2
//! for usage errors, including unreadable input, parameters outside a
//! bound's range and searches that hit the vertex cap.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::complex::Face;
use crate::connectivity::{collapse_to_dimension, growth_process, strong_components, CollapseOutcome};
use crate::constructions::{
    bound_pure, bound_rel, bound_strong, build_mh, build_ms, build_rel, build_suspension_example,
    connectivity_threshold, ConstructionError,
};
use crate::corpus::random_pure_complex;
use crate::homology::{homology_profile, is_homology_nontrivial, HomologyProfile};
use crate::io::{read_path, LabeledComplex, ParseError};
use crate::nerve::nerve_max;
use crate::search::{applicable_bound, configured_max_n, find_minimal_witness, SearchError, SearchMode, SearchOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "homex", version, about = "Vertex-minimal complexes with nontrivial homology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a construction or a random pure complex.
    Gen(GenArgs),
    /// Integral homology of a complex.
    Homology {
        file: PathBuf,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        json: bool,
    },
    /// Report the properties the bounds are about and compare with the bound.
    Check {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Connectivity dimension; omit for the pure bound.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Strong components w.r.t. a dimension.
    Components {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        json: bool,
    },
    /// A growth process w.r.t. a dimension.
    Growth {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        json: bool,
    },
    /// Try to collapse onto a dimension.
    Collapse {
        file: PathBuf,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Nerve of the cover by facets.
    Nerve {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form vertex bounds and the connectivity threshold.
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively confirm a bound.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Mh,
    Ms,
    Rel,
    Susp,
    Random,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    pub kind: GenKind,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub m: Option<usize>,
    /// Seed for `random`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Vertex count for `random`.
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Facet count for `random`.
    #[arg(long, default_value_t = 4)]
    pub facets: usize,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    /// Write JSON instead of `.sc` text.
    #[arg(long)]
    pub json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    PureBound,
    StrongBound,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub kind: VerifyKind,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
    /// Connectivity dimension for `strong-bound`; defaults to `d`.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long)]
    pub json: bool,
}

/// A failure with its exit status.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Postcondition { .. } => Failure { code: EXIT_FAILED, message: e.to_string() },
            _ => Failure::usage(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_FAILED, message: e.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command, writing
/// reports to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Gen(args) => gen(args, out),
        Command::Homology { file, reduced, json } => homology(&file, reduced, json, out),
        Command::Check { file, k, m, json } => check(&file, k, m, json, out),
        Command::Components { file, dim, json } => components(&file, dim, json, out),
        Command::Growth { file, dim, json } => growth(&file, dim, json, out),
        Command::Collapse { file, to, exhaustive, json } => collapse(&file, to, exhaustive, json, out),
        Command::Nerve { file, json } => nerve(&file, json, out),
        Command::Bounds { d, k, m, json } => bounds(d, k, m, json, out),
        Command::Verify(args) => verify(args, out),
    }
}

fn load(path: &Path) -> Result<LabeledComplex, Failure> {
    read_path(path).map_err(|e| match e {
        ParseError::Io { .. } => Failure::usage(e),
        _ => Failure::usage(format!("{}: {e}", path.display())),
    })
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Outcome {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"))?;
    Ok(EXIT_OK)
}

fn gen(args: GenArgs, out: &mut dyn Write) -> Outcome {
    let labeled = match args.kind {
        GenKind::Mh => build_mh(args.d, args.k)?.labeled(),
        GenKind::Ms => build_ms(args.d, args.k)?.labeled(),
        GenKind::Susp => build_suspension_example(args.d, args.k)?.labeled(),
        GenKind::Rel => {
            let m = args.m.ok_or_else(|| Failure::usage("gen rel needs --m"))?;
            build_rel(args.d, args.k, m)?.labeled()
        }
        GenKind::Random => {
            if args.n < args.d + 1 {
                return Err(Failure::usage(format!("need --n >= d+1, got n = {}, d = {}", args.n, args.d)));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            LabeledComplex::plain(random_pure_complex(&mut rng, args.n, args.d, args.facets))
        }
    };
    let text = if args.json {
        format!("{}\n", serde_json::to_string_pretty(&labeled.to_json()).expect("values serialize"))
    } else {
        labeled.to_sc()
    };
    match args.output {
        Some(path) => std::fs::write(&path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn profile_json(p: &HomologyProfile) -> Value {
    let groups: Vec<Value> = p
        .groups
        .iter()
        .enumerate()
        .map(|(i, g)| json!({ "degree": i, "betti": g.betti, "torsion": g.torsion }))
        .collect();
    json!({ "reduced": p.reduced, "groups": groups, "summary": p.to_string() })
}

fn homology(file: &Path, reduced: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let lc = load(file)?;
    let p = homology_profile(&lc.complex, reduced);
    if json {
        return emit_json(out, &profile_json(&p));
    }
    writeln!(out, "{p}")?;
    for (i, g) in p.groups.iter().enumerate() {
        let torsion = if g.torsion.is_empty() {
            "-".to_string()
        } else {
            g.torsion.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        };
        writeln!(out, "{i} {} {torsion}", g.betti)?;
    }
    Ok(EXIT_OK)
}

fn facet_lists(lc: &LabeledComplex, facets: impl IntoIterator<Item = Face>) -> Vec<Vec<String>> {
    facets.into_iter().map(|f| lc.face_labels(&f)).collect()
}

fn check(file: &Path, k: usize, m: Option<usize>, json: bool, out: &mut dyn Write) -> Outcome {
    let lc = load(file)?;
    let x = &lc.complex;
    let dim = x.dim().ok_or_else(|| Failure::usage("the complex is empty"))?;
    let pure = x.is_pure(dim);
    let mode = match m {
        Some(m) => SearchMode::Strong(m),
        None => SearchMode::Pure,
    };
    let bound = applicable_bound(dim, k, mode).map_err(Failure::usage)?;
    let connected = m.map(|m| strong_components(x, m).map(|c| c.len() == 1).unwrap_or(false));
    let nontrivial = is_homology_nontrivial(x, k);
    let in_class = pure && nontrivial && connected.unwrap_or(true);
    let consistent = !in_class || x.num_vertices() >= bound;
    if json {
        emit_json(
            out,
            &json!({
                "vertices": x.num_vertices(), "dim": dim, "pure": pure, "k": k, "m": m,
                "nontrivial": nontrivial, "strongly_connected": connected,
                "bound": bound, "in_class": in_class, "consistent": consistent,
            }),
        )?;
    } else {
        writeln!(out, "vertices: {}", x.num_vertices())?;
        writeln!(out, "dimension: {dim}{}", if pure { " (pure)" } else { "" })?;
        if let (Some(m), Some(c)) = (m, connected) {
            writeln!(out, "strongly connected w.r.t. {m}: {c}")?;
        }
        writeln!(out, "H_{k} nontrivial: {nontrivial}")?;
        writeln!(out, "bound: {bound}")?;
        writeln!(out, "{}", if consistent { "consistent with the bound" } else { "BEATS THE BOUND" })?;
    }
    Ok(if consistent { EXIT_OK } else { EXIT_FAILED })
}

fn components(file: &Path, dim: usize, json: bool, out: &mut dyn Write) -> Outcome {
    let lc = load(file)?;
    let comps = strong_components(&lc.complex, dim).map_err(Failure::usage)?;
    let lists: Vec<Vec<Vec<String>>> =
        comps.iter().map(|c| facet_lists(&lc, c.iter().map(|&i| lc.complex.facets()[i].clone()))).collect();
    if json {
        return emit_json(out, &json!({ "dim": dim, "components": lists }));
    }
    writeln!(out, "{} component(s) w.r.t. dimension {dim}", lists.len())?;
    for (i, c) in lists.iter().enumerate() {
        let facets: Vec<String> = c.iter().map(|f| format!("{{{}}}", f.join(" "))).collect();
        writeln!(out, "{i}: {}", facets.join(" "))?;
    }
    Ok(EXIT_OK)
}

fn growth(file: &Path, dim: usize, json: bool, out: &mut dyn Write) -> Outcome {
    let lc = load(file)?;
    let g = growth_process(&lc.complex, dim).map_err(Failure::usage)?;
    let order = facet_lists(&lc, g.facets.iter().cloned());
    if json {
        let steps: Vec<Value> = g
            .expansions()
            .iter()
            .map(|op| {
                json!({
                    "new_face": lc.face_labels(&op.new_face),
                    "attach_region": facet_lists(&lc, op.attach_region.facets().iter().cloned()),
                })
            })
            .collect();
        return emit_json(out, &json!({ "dim": dim, "facets": order, "steps": steps }));
    }
    for f in order {
        writeln!(out, "{}", f.join(" "))?;
    }
    Ok(EXIT_OK)
}

fn collapse(file: &Path, to: usize, exhaustive: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let lc = load(file)?;
    let outcome = collapse_to_dimension(&lc.complex, to, exhaustive);
    let (status, steps, facets) = match &outcome {
        CollapseOutcome::Collapsed { complex, steps } => {
            ("collapsed", Some(*steps), Some(facet_lists(&lc, complex.facets().iter().cloned())))
        }
        CollapseOutcome::Impossible { .. } => ("impossible", None, None),
        CollapseOutcome::Unknown { .. } => ("unknown", None, None),
    };
    if json {
        return emit_json(
            out,
            &json!({ "to": to, "exhaustive": exhaustive, "status": status, "steps": steps, "facets": facets }),
        );
    }
    match outcome {
        CollapseOutcome::Collapsed { steps, .. } => writeln!(out, "collapsed onto dimension {to} in {steps} step(s)")?,
        CollapseOutcome::Impossible { explored } => {
            writeln!(out, "does not collapse onto dimension {to} ({explored} states explored)")?
        }
        CollapseOutcome::Unknown { explored } => writeln!(
            out,
            "no collapse onto dimension {to} found ({explored} states explored; {})",
            if exhaustive { "budget exhausted" } else { "try --exhaustive" }
        )?,
    }
    if let Some(facets) = facets {
        for f in facets {
            writeln!(out, "{}", f.join(" "))?;
        }
    }
    Ok(EXIT_OK)
}

fn nerve(file: &Path, json: bool, out: &mut dyn Write) -> Outcome {
    let lc = load(file)?;
    let n = nerve_max(&lc.complex);
    let p = homology_profile(&n.complex, true);
    let faces: Vec<Vec<u32>> = n.complex.facets().iter().map(|f| f.vertices().to_vec()).collect();
    if json {
        return emit_json(
            out,
            &json!({
                "facets": faces,
                "source_facets": facet_lists(&lc, n.source_facets.iter().cloned()),
                "max_dim": n.max_dim,
                "homology": profile_json(&p),
            }),
        );
    }
    for (i, f) in n.source_facets.iter().enumerate() {
        writeln!(out, "f{i} = {{{}}}", lc.face_labels(f).join(" "))?;
    }
    for f in &faces {
        let names: Vec<String> = f.iter().map(|i| format!("f{i}")).collect();
        writeln!(out, "{}", names.join(" "))?;
    }
    writeln!(out, "{p}")?;
    Ok(EXIT_OK)
}

fn bounds(d: usize, k: usize, m: Option<usize>, json: bool, out: &mut dyn Write) -> Outcome {
    let pure = bound_pure(d, k)?;
    let threshold = connectivity_threshold(d, k)?;
    let strong = bound_strong(d, k).ok();
    let rel = m.map(|m| bound_rel(d, k, m));
    if let Some(Err(e)) = &rel {
        if !matches!(e, ConstructionError::BelowThreshold { .. }) {
            return Err(Failure::usage(e));
        }
    }
    if json {
        let rel_value = match &rel {
            Some(Ok(b)) => json!(b),
            _ => Value::Null,
        };
        return emit_json(
            out,
            &json!({ "d": d, "k": k, "m": m, "pure": pure, "strong": strong, "rel": rel_value, "threshold": threshold }),
        );
    }
    writeln!(out, "pure: {pure}")?;
    match strong {
        Some(s) => writeln!(out, "strong: {s}")?,
        None => writeln!(out, "strong: n/a (k = 0)")?,
    }
    match (m, rel) {
        (Some(m), Some(Ok(b))) => writeln!(out, "rel(m={m}): {b}")?,
        (Some(m), Some(Err(_))) => {
            writeln!(out, "rel(m={m}): n/a (m must exceed the threshold; the pure bound applies)")?
        }
        _ => {}
    }
    writeln!(out, "threshold: {threshold}")?;
    Ok(EXIT_OK)
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let mode = match args.kind {
        VerifyKind::PureBound => {
            if args.m.is_some() {
                return Err(Failure::usage("--m only applies to strong-bound"));
            }
            SearchMode::Pure
        }
        VerifyKind::StrongBound => SearchMode::Strong(args.m.unwrap_or(args.d)),
    };
    let bound = applicable_bound(args.d, args.k, mode).map_err(Failure::usage)?;
    let opts = SearchOptions { jobs: args.jobs, max_n: args.max_n.unwrap_or_else(configured_max_n) };
    let result = find_minimal_witness(args.d, args.k, mode, &opts);
    let (code, body) = match result {
        Ok(w) => {
            let witness = LabeledComplex::plain(w.witness.clone()).to_json();
            (
                EXIT_OK,
                json!({
                    "d": args.d, "k": args.k, "mode": mode, "bound": bound, "n_min": w.n_min, "ok": true,
                    "witness": witness["facets"], "reports": w.reports,
                }),
            )
        }
        Err(
            e @ (SearchError::Capacity { .. } | SearchError::TooManyCandidates { .. } | SearchError::NoWitness { .. }),
        ) => return Err(Failure::usage(e)),
        Err(e) => {
            let n_min = match e {
                SearchError::BoundMismatch { found, .. } => json!(found),
                _ => Value::Null,
            };
            (
                EXIT_FAILED,
                json!({
                    "d": args.d, "k": args.k, "mode": mode, "bound": bound, "n_min": n_min, "ok": false,
                    "error": e.to_string(),
                }),
            )
        }
    };
    if args.json {
        emit_json(out, &body)?;
        return Ok(code);
    }
    if let Some(reports) = body["reports"].as_array() {
        for r in reports {
            writeln!(
                out,
                "n = {}: {} classes, {} labeled, {} examined, {} witness class(es)",
                r["constraint"]["n"],
                r["canonical_classes"],
                r["labeled_complexes"],
                r["complexes_examined"],
                r["witnesses"].as_array().map_or(0, Vec::len)
            )?;
        }
    }
    match code {
        EXIT_OK => writeln!(out, "n_min = {} = bound {bound}", body["n_min"])?,
        _ => writeln!(out, "FAILED: {}", body["error"].as_str().unwrap_or("bound mismatch"))?,
    }
    Ok(code)
}
