//! `rp3kh`: Khovanov-type homology of links in RP³ from the command line.
//!
//! Exit codes: 0 success, 1 a check failed or homology could not be computed,
//! 2 invalid input (diagram, dyad, face or arc), 3 class mismatch between the
//! diagram and the chosen variant.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use rp3kh::algebra::{builtin_dyads, Dyad};
use rp3kh::complex::{build_default, chain_dims, ComplexError, Variant};
use rp3kh::corpus::{corpus, lookup, Family};
use rp3kh::homology::{euler_characteristic, poincare_any, HomologyError};
use rp3kh::skein::jones;
use rp3kh::verify::{mirror_observation, verify, Check, Options, Outcome};
use rp3kh::{DiagramError, DiagramRP2};

#[derive(Parser)]
#[command(name = "rp3kh", version, about = "Khovanov-type homology of link diagrams on RP²")]
#[command(after_help = "Exit codes: 0 ok, 1 check failure, 2 invalid input, 3 class mismatch")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Poincaré polynomial, Euler characteristic and chain ranks.
    Compute(ComputeArgs),
    /// Even and odd Jones polynomials.
    Jones(JonesArgs),
    /// Structural checks on one diagram.
    Verify(VerifyArgs),
    /// Runs the checks over the bundled corpus.
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum VariantArg {
    Reduced,
    Unreduced,
    Class1,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Reduced => Variant::Reduced,
            VariantArg::Unreduced => Variant::Unreduced,
            VariantArg::Class1 => Variant::Class1,
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// Diagram JSON file or corpus name.
    diagram: String,
    /// Built-in dyad name or dyad JSON file.
    #[arg(long, default_value = "aps")]
    dyad: String,
    #[arg(long, value_enum, default_value = "reduced")]
    variant: VariantArg,
    #[arg(long)]
    basepoint_face: Option<usize>,
    #[arg(long)]
    marked_arc: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct JonesArgs {
    diagram: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Comma-separated checks: d2, marked-point, reidemeister, euler, parity,
    /// direct-sum, unreduced, bracket.
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    checks: Vec<Check>,
    /// Run every check.
    #[arg(long)]
    all: bool,
    /// Restrict to these dyads (names or files). Default: all built-ins.
    #[arg(long, value_delimiter = ',')]
    dyad: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    diagram: String,
    #[command(flatten)]
    checks: CheckArgs,
    /// Also print Kh(mirror L) next to the dual dyad's Kh(L). Not a check.
    #[arg(long)]
    mirror_pair: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long)]
    family: Option<Family>,
    #[command(flatten)]
    checks: CheckArgs,
    /// Report wall time per entry.
    #[arg(long)]
    bench: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// An error carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        let code = match e {
            DiagramError::NotNullHomologous | DiagramError::NotClassOne => 3,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Diagram(d) => d.into(),
            ComplexError::Dyad(_) | ComplexError::MarkedArc(_) | ComplexError::TooManyCrossings(_) => Failure::new(2, e.to_string()),
            _ => Failure::new(1, e.to_string()),
        }
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        Failure::new(1, e.to_string())
    }
}

fn load_diagram(arg: &str) -> Result<DiagramRP2, Failure> {
    let d = if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| Failure::new(2, format!("{arg}: {e}")))?;
        DiagramRP2::from_json(&text).map_err(|e| Failure::new(2, format!("{arg}: {e}")))?
    } else {
        lookup(arg).ok_or_else(|| Failure::new(2, format!("`{arg}` is neither a file nor a corpus diagram")))?
    };
    d.check_valid()?;
    Ok(d)
}

fn load_dyad(arg: &str) -> Result<Dyad, Failure> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| Failure::new(2, format!("{arg}: {e}")))?;
        let d = Dyad::from_json(&text).map_err(|e| Failure::new(2, format!("{arg}: {e}")))?;
        let problems = d.validate();
        if !problems.is_empty() {
            return Err(Failure::new(2, format!("{arg}: invalid dyad: {}", problems.join("; "))));
        }
        Ok(d)
    } else {
        Dyad::builtin(arg).map_err(|e| Failure::new(2, e.to_string()))
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json serializes"));
}

fn compute(a: ComputeArgs) -> Result<u8, Failure> {
    let variant = Variant::from(a.variant);
    if variant == Variant::Class1 && a.marked_arc.is_some() {
        return Err(Failure::new(2, "--marked-arc does not apply to the class1 variant"));
    }
    let mut d = load_diagram(&a.diagram)?;
    let dyad = load_dyad(&a.dyad)?;
    if let Some(f) = a.basepoint_face {
        d.basepoint_face = Some(f);
    }
    if let Some(m) = a.marked_arc {
        d.marked_arc = Some(m);
    }
    let c = build_default(&d, &dyad, variant)?;
    let p = poincare_any(&c)?;
    let euler = euler_characteristic(&p);
    let mut ranks: Vec<_> = chain_dims(&c).into_iter().collect();
    ranks.sort();
    let marked = c.marked_arc.map_or("none".to_string(), |m| m.to_string());
    if a.format == Format::Json {
        print_json(&json!({
            "diagram": d.name,
            "dyad": dyad.name,
            "variant": a.variant.to_possible_value().map(|v| v.get_name().to_string()),
            "basepoint_face": c.face.0,
            "marked_arc": c.marked_arc,
            "q_graded": c.q_graded,
            "poincare": p.to_string(),
            "euler": euler.to_string(),
            "chain_ranks": ranks.iter().map(|&((i, q), r)| json!({"i": i, "q": q, "rank": r})).collect::<Vec<_>>(),
        }));
    } else {
        println!("poincare: {p}");
        println!("euler: {euler}");
        println!("P face: {}", c.face.0);
        println!("M arc: {marked}");
        if !c.q_graded {
            println!("note: differential is not q-homogeneous, homology graded by t only");
        }
        println!("chain ranks (i, q: rank):");
        for ((i, q), r) in ranks {
            println!("  {i}, {q}: {r}");
        }
    }
    Ok(0)
}

fn jones_cmd(a: JonesArgs) -> Result<u8, Failure> {
    let d = load_diagram(&a.diagram)?;
    let j0 = jones(&d, 0)?;
    let j1 = jones(&d, 1)?;
    let sum = j0.clone() + j1.clone();
    if a.format == Format::Json {
        print_json(&json!({"diagram": d.name, "J0": j0.to_string(), "J1": j1.to_string(), "J0+J1": sum.to_string()}));
    } else {
        println!("J0: {j0}");
        println!("J1: {j1}");
        println!("J0+J1: {sum}");
    }
    Ok(0)
}

const DEFAULT_CHECKS: [Check; 5] = [Check::DSquared, Check::MarkedPoint, Check::Reidemeister, Check::Euler, Check::Parity];

fn options(a: &CheckArgs) -> Result<Options, Failure> {
    let checks = if a.all {
        Check::ALL.to_vec()
    } else if a.checks.is_empty() {
        DEFAULT_CHECKS.to_vec()
    } else {
        a.checks.clone()
    };
    let dyads = if a.dyad.is_empty() { builtin_dyads() } else { a.dyad.iter().map(|s| load_dyad(s)).collect::<Result<_, _>>()? };
    Ok(Options { dyads, checks, ..Options::default() })
}

fn outcome_json(o: &Outcome) -> Value {
    json!({"check": o.check.name(), "passed": o.passed, "detail": o.detail})
}

fn verify_cmd(a: VerifyArgs) -> Result<u8, Failure> {
    let d = load_diagram(&a.diagram)?;
    let opts = options(&a.checks)?;
    let outcomes = verify(&d, &opts);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let mut observations = Vec::new();
    if a.mirror_pair {
        if d.k() % 2 == 1 {
            return Err(Failure::new(3, "--mirror-pair needs a null-homologous diagram"));
        }
        for dyad in &opts.dyads {
            let (lhs, rhs) = mirror_observation(&d, dyad)?;
            observations.push((dyad.name.clone(), lhs, rhs));
        }
    }
    if a.format == Format::Json {
        print_json(&json!({
            "diagram": d.name,
            "outcomes": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
            "failures": failed,
            "mirror_pair": observations.iter().map(|(n, l, r)| json!({
                "dyad": n, "mirror": l.to_string(), "dual": r.to_string(), "equal": l == r,
            })).collect::<Vec<_>>(),
        }));
    } else {
        for o in &outcomes {
            println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.check.name(), o.detail);
        }
        for (n, l, r) in &observations {
            println!("observe {n}: Kh(mirror L) = {l}");
            println!("observe {n}: Kh*(L)       = {r} ({})", if l == r { "equal" } else { "different" });
        }
        println!("{} checks, {failed} failed", outcomes.len());
    }
    Ok(if failed > 0 { 1 } else { 0 })
}

fn corpus_cmd(a: CorpusArgs) -> Result<u8, Failure> {
    let opts = options(&a.checks)?;
    let entries: Vec<_> = corpus().into_iter().filter(|e| a.family.is_none_or(|f| e.family == f)).collect();
    let rows: Vec<_> = entries
        .par_iter()
        .map(|e| {
            let start = Instant::now();
            let outcomes = verify(&e.diagram, &opts);
            (e, outcomes, start.elapsed())
        })
        .collect();
    let total_failed: usize = rows.iter().map(|(_, o, _)| o.iter().filter(|o| !o.passed).count()).sum();
    if a.format == Format::Json {
        print_json(&json!({
            "entries": rows.iter().map(|(e, o, t)| {
                let mut v = json!({
                    "name": e.name(),
                    "family": e.family.name(),
                    "crossings": e.diagram.n(),
                    "outcomes": o.iter().map(outcome_json).collect::<Vec<_>>(),
                });
                if a.bench {
                    v["millis"] = json!(t.as_secs_f64() * 1e3);
                }
                v
            }).collect::<Vec<_>>(),
            "failures": total_failed,
        }));
    } else {
        let width = rows.iter().map(|(e, _, _)| e.name().len()).max().unwrap_or(4).max(4);
        let bench = if a.bench { format!(" {:>10}", "ms") } else { String::new() };
        println!("{:<width$} {:<7} {:>2} {:>6}  failed{bench}", "name", "family", "n", "passed");
        for (e, o, t) in &rows {
            let passed = o.iter().filter(|o| o.passed).count();
            let failed: Vec<_> = o.iter().filter(|o| !o.passed).map(|o| o.check.name()).collect();
            let failed = if failed.is_empty() { "-".to_string() } else { failed.join(",") };
            let bench = if a.bench { format!(" {:>10.1}", t.as_secs_f64() * 1e3) } else { String::new() };
            println!("{:<width$} {:<7} {:>2} {:>3}/{:<2}  {failed}{bench}", e.name(), e.family.name(), e.diagram.n(), passed, o.len());
        }
        for (e, o, _) in &rows {
            for o in o.iter().filter(|o| !o.passed) {
                println!("witness {} {}: {}", e.name(), o.check.name(), o.detail);
            }
        }
        println!("{} entries, {total_failed} failures", rows.len());
    }
    Ok(if total_failed > 0 { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.cmd {
        Cmd::Compute(a) => compute(a),
        Cmd::Jones(a) => jones_cmd(a),
        Cmd::Verify(a) => verify_cmd(a),
        Cmd::Corpus(a) => corpus_cmd(a),
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
