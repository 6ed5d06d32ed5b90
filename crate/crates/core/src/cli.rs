//! The `mixgrass` command line. Parsing and dispatch live here so the binary
//! stays a thin wrapper and every command is testable in-process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster::{build_sigma_seed, explore, Independence, Seed, SeedJson};
use crate::exterior::Point;
use crate::ring::{Coordinates, Fp, ModularContext, RationalFn, Symbolic};
use crate::signature::{Ell, Signature};
use crate::verify::{run_suite, worked_example_fixture, Check, Suite, WORKED_EXAMPLE_FILE};
use crate::weave::{
    build_weyl_determinant_weave, greedy_reduction, greedy_reduction_from_right, patch,
    to_dot as weave_dot, Weave,
};
use crate::words::beta_sigma;

pub const DEFAULT_SEED: u64 = 1;
pub const BACKEND_ENV: &str = "MIXGRASS_BACKEND";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Rational functions in the coordinates.
    Exact,
    /// Random evaluation modulo a large prime.
    Modular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "mixgrass",
    version,
    about = "Cluster structures on mixed Grassmannians from Demazure weaves"
)]
pub struct Cli {
    /// Coefficient backend.
    #[arg(long, global = true, value_enum, env = BACKEND_ENV, default_value = "exact")]
    pub backend: Backend,
    /// RNG seed for the modular backend.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Signature combinatorics.
    #[command(subcommand)]
    Signature(SignatureCommand),
    /// Build a weave for one side of a cut.
    Weave(WeaveArgs),
    /// Seeds of a signature and cut.
    #[command(subcommand)]
    Seed(SeedCommand),
    /// Mutate a seed at one or more vertices, in order.
    Mutate(MutateArgs),
    /// Breadth-first exploration of the mutation graph.
    Explore(ExploreArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Write weaves and seeds of an instance to a directory.
    Export(ExportArgs),
}

#[derive(Debug, Subcommand)]
pub enum SignatureCommand {
    /// Admissibility, d-length, affine permutation and classification.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Subcommand)]
pub enum SeedCommand {
    /// The amalgamated seed, or one half of it.
    Compute(SeedArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Signature over {b, w} (or ● ○).
    #[arg(long)]
    pub pattern: String,
    #[arg(long)]
    pub d: u64,
    /// Same as --format json.
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Debug, Args)]
pub struct Instance {
    /// Signature over {b, w} (or ● ○).
    #[arg(long)]
    pub pattern: String,
    #[arg(long)]
    pub d: usize,
    /// Cut (p, q), 1-based.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true)]
    pub cut: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeaveKind {
    /// The initial weave of the construction.
    Initial,
    /// Greedy left-to-right reduction.
    Greedy,
    /// Greedy right-to-left reduction.
    GreedyRight,
    /// A weave carrying one determinant; needs --indices.
    Weyl,
}

#[derive(Debug, Args)]
pub struct WeaveArgs {
    #[command(flatten)]
    pub instance: Instance,
    #[arg(long, value_enum, default_value = "initial")]
    pub kind: WeaveKind,
    /// Which side of the cut: 1 is (p, q), 2 is (q, p + n).
    #[arg(long, default_value_t = 1)]
    pub half: usize,
    /// Same-colored indices for --kind weyl, e.g. 1,3,4.
    #[arg(long, value_delimiter = ',')]
    pub indices: Vec<i64>,
    /// Highlight this cycle (1-based) in DOT output.
    #[arg(long)]
    pub cycle: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    #[command(flatten)]
    pub instance: Instance,
    /// Only this half (1 or 2) instead of the amalgamated seed.
    #[arg(long)]
    pub half: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SeedSource {
    /// Seed JSON file, or - for stdin; replaces the instance options.
    #[arg(long, conflicts_with_all = ["pattern", "d", "cut"])]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub pattern: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true)]
    pub cut: Option<Vec<i64>>,
    /// Only this half (1 or 2) of a computed seed.
    #[arg(long)]
    pub half: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    #[command(flatten)]
    pub source: SeedSource,
    /// Vertex ids (1-based), applied left to right.
    #[arg(long = "vertex", required = true, num_args = 1.., value_delimiter = ',')]
    pub vertices: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[command(flatten)]
    pub source: SeedSource,
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Directory with golden files; defaults to the built-in copies.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub instance: Instance,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// What a command prints and the exit code it ends with.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, code: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub pattern: String,
    pub n: usize,
    pub d: u64,
    pub admissible: bool,
    pub d_length: u64,
    /// `ell[j-1][k]` is `ℓ(σ, j, k, d)`, null when infinite.
    pub ell: Vec<Vec<Option<u64>>>,
    pub zero_steps: Vec<u64>,
    pub pi_window: Vec<i64>,
    pub pi_steps: Vec<i64>,
    pub fixed_points: Vec<usize>,
    pub bounded: bool,
    pub abundant: bool,
    pub bias: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inventory {
    pub seeds: usize,
    pub complete: bool,
    pub cluster_variables: Vec<String>,
    pub frozen_variables: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub backend: Backend,
    pub seed: u64,
    pub checks: Vec<Check>,
}

/// Parse `args` (including the program name) and run. Diagnostics go to
/// stderr; the caller prints `stdout` and exits with `code`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        // help and version go to stdout with code 0, usage errors to stderr with code 2
        Err(e) if !e.use_stderr() => return Outcome::ok(e.to_string()),
        Err(e) => {
            eprint!("{}", e);
            return Outcome {
                stdout: String::new(),
                code: e.exit_code(),
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e);
            Outcome {
                stdout: String::new(),
                code: 2,
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let b = (cli.backend, cli.seed);
    match &cli.command {
        Command::Signature(SignatureCommand::Analyze(a)) => {
            let f = if a.json {
                Format::Json
            } else {
                cli.format.unwrap_or(Format::Text)
            };
            analyze(a, f).map(Outcome::ok)
        }
        Command::Weave(a) => weave(a, cli.format.unwrap_or(Format::Json)).map(Outcome::ok),
        Command::Seed(SeedCommand::Compute(a)) => {
            let src = SeedSource {
                input: None,
                pattern: Some(a.instance.pattern.clone()),
                d: Some(a.instance.d),
                cut: Some(a.instance.cut.clone()),
                half: a.half,
            };
            with_seed(&src, b, &SeedOp::Render, cli.format.unwrap_or(Format::Json)).map(Outcome::ok)
        }
        Command::Mutate(a) => with_seed(
            &a.source,
            b,
            &SeedOp::Mutate(&a.vertices),
            cli.format.unwrap_or(Format::Json),
        )
        .map(Outcome::ok),
        Command::Explore(a) => with_seed(
            &a.source,
            b,
            &SeedOp::Explore(a.radius),
            cli.format.unwrap_or(Format::Json),
        )
        .map(Outcome::ok),
        Command::Verify(a) => verify(a, b, cli.format.unwrap_or(Format::Text)),
        Command::Export(a) => export(a, b).map(Outcome::ok),
    }
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

fn parse_signature(p: &str) -> Result<Signature, CliError> {
    p.parse()
        .map_err(|e| usage(format!("bad --pattern {:?}: {}", p, e)))
}

fn check_d(d: u64) -> Result<(), CliError> {
    if d < 3 {
        return Err(usage(format!("--d must be at least 3, got {}", d)));
    }
    Ok(())
}

fn cut_of(cut: &[i64]) -> Result<(i64, i64), CliError> {
    match cut {
        [p, q] => Ok((*p, *q)),
        _ => Err(usage("--cut needs two integers P Q")),
    }
}

pub fn signature_report(sig: &Signature, d: u64) -> SignatureReport {
    let pi = sig.pi(d);
    let c = sig.classify(d);
    SignatureReport {
        pattern: sig.to_string(),
        n: sig.n(),
        d,
        admissible: c.admissible,
        d_length: c.d_length,
        ell: (1..=sig.n() as i64)
            .map(|j| {
                (0..d)
                    .map(|k| match sig.ell(j, k, d) {
                        Ell::Finite(l) => Some(l),
                        Ell::Infinite => None,
                    })
                    .collect()
            })
            .collect(),
        zero_steps: sig.zero_steps(d),
        pi_steps: pi.steps(),
        pi_window: pi.values,
        fixed_points: sig.fixed_points(d).into_iter().collect(),
        bounded: c.bounded,
        abundant: c.abundant,
        bias: c.bias,
    }
}

fn analyze(a: &AnalyzeArgs, f: Format) -> Result<String, CliError> {
    check_d(a.d)?;
    let sig = parse_signature(&a.pattern)?;
    let r = signature_report(&sig, a.d);
    match f {
        Format::Json => Ok(to_json(&r)),
        Format::Text => {
            let list = |xs: &[i64]| {
                xs.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            Ok(format!(
                "pattern: {}\nn: {}\nd: {}\nadmissible: {}\nd_length: {}\npi_window: {}\npi_steps: {}\nfixed_points: {}\nbounded: {}\nabundant: {}\nbias: {}\n",
                r.pattern,
                r.n,
                r.d,
                r.admissible,
                r.d_length,
                list(&r.pi_window),
                list(&r.pi_steps),
                list(&r.fixed_points.iter().map(|&x| x as i64).collect::<Vec<_>>()),
                r.bounded,
                r.abundant,
                r.bias
            ))
        }
        Format::Dot => Err(usage("signature analyze has no DOT form; use json or text")),
    }
}

/// `(p, q)` for half 1, `(q, p + n)` for half 2.
fn side(sig: &Signature, p: i64, q: i64, half: usize) -> Result<(i64, i64), CliError> {
    match half {
        1 => Ok((p, q)),
        2 => Ok((q, p + sig.n() as i64)),
        h => Err(usage(format!("--half must be 1 or 2, got {}", h))),
    }
}

pub fn build_weave(a: &WeaveArgs) -> Result<Weave, CliError> {
    let inst = &a.instance;
    check_d(inst.d as u64)?;
    let sig = parse_signature(&inst.pattern)?;
    let (p, q) = cut_of(&inst.cut)?;
    let (p, q) = side(&sig, p, q, a.half)?;
    let d = inst.d;
    match a.kind {
        WeaveKind::Initial => patch::build_feasible_initial_weave(&sig, d, p, q)
            .map(|iw| iw.weave)
            .map_err(|e| usage(format!("{}; see `signature analyze` for admissibility", e))),
        WeaveKind::Greedy | WeaveKind::GreedyRight => {
            if q <= p {
                return Err(usage(format!("cut ({}, {}) needs p < q", p, q)));
            }
            let top = beta_sigma(&sig, d).slice(p, q);
            Ok(if a.kind == WeaveKind::Greedy {
                greedy_reduction(&top, d)
            } else {
                greedy_reduction_from_right(&top, d)
            })
        }
        WeaveKind::Weyl => {
            if a.indices.is_empty() {
                return Err(usage("--kind weyl needs --indices, e.g. --indices 1,3,4"));
            }
            build_weyl_determinant_weave(&sig, d, p, q, &a.indices)
                .map(|w| w.weave)
                .map_err(usage)
        }
    }
}

fn weave(a: &WeaveArgs, f: Format) -> Result<String, CliError> {
    let w = build_weave(a)?;
    match f {
        Format::Json => Ok(to_json(&w.to_json())),
        Format::Dot => {
            let cs = w.cycles();
            let hl = match a.cycle {
                None => None,
                Some(k) if k >= 1 && k <= cs.len() => Some(&cs[k - 1]),
                Some(k) => {
                    return Err(usage(format!(
                        "--cycle {} out of range; the weave has {} cycles",
                        k,
                        cs.len()
                    )))
                }
            };
            Ok(weave_dot(&w, hl))
        }
        Format::Text => Ok(weave_text(&w)),
    }
}

fn weave_text(w: &Weave) -> String {
    let mut t = format!("d: {}\ntop: {}\n", w.d, w.top);
    for (i, l) in w.layers.iter().enumerate() {
        t.push_str(&format!("layer {}: {:?} at {}\n", i + 1, l.kind, l.pos));
    }
    t.push_str(&format!(
        "bottom: {}\ncycles: {}\n",
        w.bottom().digits(),
        w.cycles().len()
    ));
    t
}

fn render_seed<S: Independence>(s: &Seed<S>, f: Format) -> Result<String, CliError> {
    Ok(match f {
        Format::Json => to_json(&s.to_json()),
        Format::Dot => s.to_dot(),
        Format::Text => {
            let mut t = format!("vertices: {}\nmutable: {}\n", s.len(), s.mutable().len());
            for i in 0..s.len() {
                let tag = if s.quiver.frozen[i] {
                    "frozen"
                } else {
                    "mutable"
                };
                t.push_str(&format!("{} {}: {}\n", i + 1, tag, s.variables[i]));
            }
            for (i, j, c) in s.quiver.arrows() {
                t.push_str(&format!("{} -> {} x{}\n", i + 1, j + 1, c));
            }
            t
        }
    })
}

enum SeedOp<'a> {
    Render,
    Mutate(&'a [usize]),
    Explore(usize),
}

fn apply<S: Independence>(s: &Seed<S>, op: &SeedOp, f: Format) -> Result<String, CliError> {
    match op {
        SeedOp::Render => render_seed(s, f),
        SeedOp::Mutate(vs) => {
            let mut cur = s.clone();
            for &v in vs.iter() {
                if v == 0 || v > cur.len() {
                    return Err(usage(format!(
                        "vertex {} out of range; ids run from 1 to {}",
                        v,
                        cur.len()
                    )));
                }
                if cur.quiver.frozen[v - 1] {
                    return Err(usage(format!(
                        "vertex {} is frozen; mutable ids are {:?}",
                        v,
                        one_based(&cur.mutable())
                    )));
                }
                cur = cur.mutate(v - 1).map_err(usage)?;
            }
            render_seed(&cur, f)
        }
        SeedOp::Explore(radius) => {
            let ex = explore(s, *radius).map_err(usage)?;
            let inv = Inventory {
                seeds: ex.seeds.len(),
                complete: ex.complete,
                cluster_variables: ex.cluster_variables.iter().map(|x| x.to_string()).collect(),
                frozen_variables: ex.frozen_variables.iter().map(|x| x.to_string()).collect(),
            };
            match f {
                Format::Json => Ok(to_json(&inv)),
                Format::Text => Ok(inventory_text(&inv)),
                Format::Dot => Err(usage("explore has no DOT form; use json or text")),
            }
        }
    }
}

fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|x| x + 1).collect()
}

fn inventory_text(inv: &Inventory) -> String {
    let mut t = format!(
        "seeds: {}\ncomplete: {}\ncluster variables: {}\n",
        inv.seeds,
        inv.complete,
        inv.cluster_variables.len()
    );
    for v in &inv.cluster_variables {
        t.push_str(&format!("  {}\n", v));
    }
    t.push_str(&format!(
        "frozen variables: {}\n",
        inv.frozen_variables.len()
    ));
    for v in &inv.frozen_variables {
        t.push_str(&format!("  {}\n", v));
    }
    t
}

/// Apply `op` to the seed named by `src`, in the requested backend.
fn with_seed(
    src: &SeedSource,
    (backend, seed): (Backend, u64),
    op: &SeedOp,
    f: Format,
) -> Result<String, CliError> {
    if let Some(path) = &src.input {
        let text = if path.as_os_str() == "-" {
            std::io::read_to_string(std::io::stdin())?
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {}", path.display(), e)))?
        };
        let j: SeedJson =
            serde_json::from_str(&text).map_err(|e| usage(format!("bad seed JSON: {}", e)))?;
        let s = j
            .to_seed()
            .map_err(|e| usage(format!("bad seed JSON: {}", e)))?;
        return apply(&s, op, f);
    }
    let (Some(pattern), Some(d), Some(cut)) = (&src.pattern, src.d, &src.cut) else {
        return Err(usage(
            "give --pattern, --d and --cut, or --input with a seed JSON file",
        ));
    };
    check_d(d as u64)?;
    let sig = parse_signature(pattern)?;
    let (p, q) = cut_of(cut)?;
    match backend {
        Backend::Exact => apply(
            &computed::<RationalFn, _>(&sig, d, p, q, src.half, &mut Symbolic)?,
            op,
            f,
        ),
        Backend::Modular => apply(
            &computed(&sig, d, p, q, src.half, &mut ModularContext::new(seed))?,
            op,
            f,
        ),
    }
}

fn computed<S: Independence, C: Coordinates<S>>(
    sig: &Signature,
    d: usize,
    p: i64,
    q: i64,
    half: Option<usize>,
    coords: &mut C,
) -> Result<Seed<S>, CliError> {
    let u = Point::generic(sig, d, coords);
    let s = build_sigma_seed(&u, p, q)
        .map_err(|e| usage(format!("{}; seeds need odd d and a valid cut", e)))?;
    match half {
        None => Ok(s.seed),
        Some(h @ 1..=2) => Ok(s.halves[h - 1].seed.clone()),
        Some(h) => Err(usage(format!("--half must be 1 or 2, got {}", h))),
    }
}

fn lift_modular(seed: u64) -> impl Fn(&RationalFn) -> Result<Fp, String> {
    let ctx = ModularContext::new(seed);
    move |x| x.mod_eval(&ctx).map_err(|e| e.to_string())
}

fn verify(a: &VerifyArgs, (backend, seed): (Backend, u64), f: Format) -> Result<Outcome, CliError> {
    let suite = a.suite;
    let fx = match &a.fixtures {
        None => worked_example_fixture(),
        Some(dir) => {
            let path = dir.join(WORKED_EXAMPLE_FILE);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| usage(format!("cannot read {}: {}", path.display(), e)))?;
            serde_json::from_str(&text)
                .map_err(|e| usage(format!("bad fixture {}: {}", path.display(), e)))?
        }
    };
    let checks = match backend {
        Backend::Exact => run_suite::<RationalFn, _>(suite, &mut Symbolic, &|x| Ok(x.clone()), &fx),
        Backend::Modular => run_suite(
            suite,
            &mut ModularContext::new(seed),
            &lift_modular(seed),
            &fx,
        ),
    };
    let code = if checks.iter().all(|c| c.passed) {
        0
    } else {
        1
    };
    let rep = VerifyReport {
        suite,
        backend,
        seed,
        checks,
    };
    let stdout = match f {
        Format::Json => to_json(&rep),
        Format::Text => {
            let mut t = String::new();
            for c in &rep.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                t.push_str(&format!("{} {}: {}\n", tag, c.name, c.detail));
            }
            let failed = rep.checks.iter().filter(|c| !c.passed).count();
            t.push_str(&format!("{} checks, {} failed\n", rep.checks.len(), failed));
            t
        }
        Format::Dot => return Err(usage("verify has no DOT form; use json or text")),
    };
    Ok(Outcome { stdout, code })
}

fn export(a: &ExportArgs, b: (Backend, u64)) -> Result<String, CliError> {
    let inst = &a.instance;
    let mut files: Vec<(String, String)> = Vec::new();
    let sig = parse_signature(&inst.pattern)?;
    check_d(inst.d as u64)?;
    files.push((
        "signature.json".into(),
        to_json(&signature_report(&sig, inst.d as u64)),
    ));
    for half in [1, 2] {
        let w = build_weave(&WeaveArgs {
            instance: inst.clone(),
            kind: WeaveKind::Initial,
            half,
            indices: vec![],
            cycle: None,
        })?;
        files.push((format!("weave{}.json", half), to_json(&w.to_json())));
        files.push((format!("weave{}.dot", half), weave_dot(&w, None)));
    }
    let src = SeedSource {
        input: None,
        pattern: Some(inst.pattern.clone()),
        d: Some(inst.d),
        cut: Some(inst.cut.clone()),
        half: None,
    };
    files.push((
        "seed.json".into(),
        with_seed(&src, b, &SeedOp::Render, Format::Json)?,
    ));
    files.push((
        "seed.dot".into(),
        with_seed(&src, b, &SeedOp::Render, Format::Dot)?,
    ));
    std::fs::create_dir_all(&a.out)?;
    let mut out = String::new();
    for (name, body) in &files {
        let path = a.out.join(name);
        std::fs::write(&path, body)?;
        out.push_str(&format!("{}\n", path.display()));
    }
    Ok(out)
}
