//! Command-line front end. Every subcommand prints one JSON document tagged
//! with `"schema": "v1"`.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 when a budget or
//! convergence limit is hit. Thread count comes from `--threads` or the
//! `FEYNMAN_THREADS` environment variable.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::{Graph, GraphFile, LoopBasis, Theory};
use crate::hopf::{bphz, GraphCharacter, ToyCharacter};
use crate::motive::{affine_cone_class, banana_class, frame_class_2, graph_sum_class, point_count_hypersurface, PrimeField};
use crate::param::{
    build_parametric_two_point, eval_master_two_loop, gamma_laurent, integrate_simplex, master_laurent, MasterEval,
    Precision,
};
use crate::rg::universal_singular_frame;
use crate::series::Window;
use crate::symanzik::{psi_determinant, psi_spanning_trees};

pub const SCHEMA: &str = "v1";
pub const THREADS_ENV: &str = "FEYNMAN_THREADS";

#[derive(Parser, Debug)]
#[command(name = "feynman", version, about = "Feynman graph polynomials, motives and renormalization")]
struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// First Symanzik polynomial Ψ.
    Psi {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = PsiMethod::Trees)]
        method: PsiMethod,
    },
    /// Classes in ℤ[L] with finite-field checks.
    Class {
        #[command(subcommand)]
        kind: ClassKind,
    },
    /// BPHZ renormalization of a graph under a toy character.
    Renormalize {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "nested:c=1")]
        character: String,
        #[arg(long, default_value_t = 12)]
        order: u32,
        /// Theory by vertex valences, e.g. "4" or "3".
        #[arg(long)]
        theory: Option<String>,
    },
    /// Coefficients of the universal singular frame.
    RgFrame {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Monte Carlo evaluation of a two-point parametric integral.
    Param {
        #[arg(long)]
        graph: String,
        #[arg(long = "D")]
        d: f64,
        #[arg(long, default_value_t = 1.0)]
        p2: f64,
        #[arg(long, value_enum, default_value_t = Mode::Massless)]
        mode: Mode,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        /// Sample count; accepts forms like 1e6.
        #[arg(long, default_value = "1e5")]
        samples: String,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// The closed-form two-loop master integral.
    Master {
        #[arg(long = "D")]
        d: f64,
        #[arg(long, default_value_t = 1.0)]
        p2: f64,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Laurent coefficients of Γ at a point.
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Class of the frame manifold for two subspaces.
    Frames {
        #[arg(long)]
        d1: u32,
        #[arg(long)]
        d2: u32,
        #[arg(long)]
        d12: u32,
    },
    /// The built-in graph corpus with basic invariants.
    Corpus,
}

#[derive(Subcommand, Debug)]
enum ClassKind {
    /// Banana graph with n parallel edges.
    Banana {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        check_primes: Vec<u64>,
    },
    /// Symmetry-weighted sum over vacuum graphs, fitted in q.
    GraphSum {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "4")]
        theory: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PsiMethod {
    Trees,
    Determinant,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Massless,
    Massive,
}

/// Exit code and JSON document of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
}

fn tagged(command: &str, mut body: Value) -> Value {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("command".into(), json!(command));
    }
    body
}

fn error_json(kind: &str, message: &str) -> Value {
    json!({"schema": SCHEMA, "error": {"kind": kind, "message": message}})
}

/// Load a graph from a JSON file path or a built-in name.
pub fn load_graph(spec: &str) -> Result<(Graph, Option<Theory>)> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        let file = GraphFile::parse(&text)?;
        return Ok((file.graph()?, file.theory()?));
    }
    Ok((fixtures::by_name(spec)?, fixtures::theory_of(spec)))
}

fn parse_theory(s: &str) -> Result<Theory> {
    let valences = s
        .split(',')
        .map(|v| v.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad valence {v:?}"))))
        .collect::<Result<Vec<_>>>()?;
    match valences.as_slice() {
        [4] => Ok(Theory::phi4()),
        [3] => Ok(fixtures::phi3_with_insertions()),
        _ => Theory::new(valences, 4),
    }
}

fn parse_count(s: &str) -> Result<u64> {
    let x: f64 = s.parse().map_err(|_| Error::Parse(format!("bad sample count {s:?}")))?;
    if !(x >= 1.0 && x.fract() == 0.0 && x < 1e15) {
        return Err(Error::Parse(format!("sample count must be a positive integer, got {s}")));
    }
    Ok(x as u64)
}

fn psi(graph: &str, method: PsiMethod) -> Result<Value> {
    let (g, _) = load_graph(graph)?;
    let p = match method {
        PsiMethod::Trees => psi_spanning_trees(&g)?,
        PsiMethod::Determinant => psi_determinant(&g, &LoopBasis::dfs(&g))?,
    };
    Ok(json!({
        "graph": graph,
        "edges": g.edge_count(),
        "loops": g.loop_number(),
        "psi": p.to_string(),
        "homogeneity": p.homogeneity(),
    }))
}

fn class_banana(n: u32, primes: &[u64]) -> Result<Value> {
    let class = banana_class(n)?;
    let affine = affine_cone_class(&class);
    let psi = psi_spanning_trees(&crate::graph::make_banana(n as usize)?)?;
    let mut checks = Vec::new();
    for &q in primes {
        let field = PrimeField::new(q)?;
        let formula = affine.eval_u64(q)?;
        let brute = BigInt::from(point_count_hypersurface(&psi, field)?);
        checks.push(json!({
            "q": q,
            "formula": formula.to_string(),
            "bruteforce": brute.to_string(),
            "match": formula == brute,
        }));
    }
    Ok(json!({
        "n": n,
        "class": class.to_string(),
        "affine_class": affine.to_string(),
        "euler": class.euler_characteristic().to_string(),
        "checks": checks,
    }))
}

fn class_graph_sum(n: usize, theory: &str, primes: &[u64]) -> Result<Value> {
    let report = graph_sum_class(n, &parse_theory(theory)?, primes)?;
    let mut v = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    if let Value::Object(map) = &mut v {
        map.insert("status".into(), json!("evidence"));
    }
    Ok(v)
}

fn renormalize(graph: &str, character: &str, order: u32, theory: Option<&str>) -> Result<Value> {
    let (g, from_file) = load_graph(graph)?;
    let th = match theory {
        Some(t) => parse_theory(t)?,
        None => from_file.unwrap_or_else(Theory::phi4),
    };
    let toy: ToyCharacter = character.parse()?;
    let phi = GraphCharacter::new(toy, Window::new(crate::series::DEFAULT_POLAR_DEPTH, order));
    let r = bphz(&th, &phi, &g)?;
    Ok(json!({
        "graph": graph,
        "character": character,
        "prepared": r.prepared.to_string(),
        "counterterm": r.counterterm.to_string(),
        "renormalized": r.renormalized.to_string(),
        "series": r,
    }))
}

fn rg_frame(max_degree: u32) -> Result<Value> {
    let entries = universal_singular_frame(max_degree)?;
    let table: serde_json::Map<String, Value> = entries
        .iter()
        .map(|e| (e.word.to_string(), json!(crate::rg::fmt_rational(&e.coeff))))
        .collect();
    Ok(json!({"max_degree": max_degree, "entries": entries, "table": table}))
}

#[allow(clippy::too_many_arguments)]
fn param(graph: &str, d: f64, p2: f64, mode: Mode, m: f64, samples: &str, seed: u64) -> Result<Value> {
    let (g, _) = load_graph(graph)?;
    let (p2, m) = match mode {
        Mode::Massless => (p2, 0.0),
        Mode::Massive => (0.0, m),
    };
    let pi = build_parametric_two_point(&g, p2, d, m)?;
    let est = integrate_simplex(&pi, Precision::samples(parse_count(samples)?).with_seed(seed))?;
    Ok(json!({
        "graph": graph,
        "estimate": est.estimate,
        "stderr": est.stderr,
        "exact_if_known": pi.exact_if_known(),
        "samples": est.samples,
        "seed": est.seed,
        "integrand": pi,
    }))
}

fn master(d: f64, p2: f64, order: usize) -> Result<Value> {
    match eval_master_two_loop(d, p2)? {
        MasterEval::Finite { value } => Ok(json!({"d": d, "p2": p2, "value": value})),
        MasterEval::Pole(report) => {
            let laurent = master_laurent(d, p2, order)?;
            Ok(json!({"d": d, "p2": p2, "pole": report, "laurent_in_z": laurent}))
        }
    }
}

fn dispatch(cmd: Command) -> Result<(&'static str, Value)> {
    Ok(match cmd {
        Command::Psi { graph, method } => ("psi", psi(&graph, method)?),
        Command::Class { kind } => match kind {
            ClassKind::Banana { n, check_primes } => ("class", class_banana(n, &check_primes)?),
            ClassKind::GraphSum { n, theory, primes } => ("class", class_graph_sum(n, &theory, &primes)?),
        },
        Command::Renormalize {
            graph,
            character,
            order,
            theory,
        } => ("renormalize", renormalize(&graph, &character, order, theory.as_deref())?),
        Command::RgFrame { max_degree } => ("rg-frame", rg_frame(max_degree)?),
        Command::Param {
            graph,
            d,
            p2,
            mode,
            m,
            samples,
            seed,
        } => ("param", param(&graph, d, p2, mode, m, &samples, seed)?),
        Command::Master { d, p2, order } => ("master", master(d, p2, order)?),
        Command::Gamma { a, order } => ("gamma", serde_json::to_value(gamma_laurent(a, order)?).map_err(|e| Error::Internal(e.to_string()))?),
        Command::Frames { d1, d2, d12 } => ("frames", json!({"class": frame_class_2(d1, d2, d12)?.to_string()})),
        Command::Corpus => ("corpus", corpus_list()?),
    })
}

/// Stable listing of the built-in graphs.
pub fn corpus_list() -> Result<Value> {
    let mut graphs = Vec::new();
    for (name, g) in fixtures::corpus() {
        graphs.push(json!({
            "name": name,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "legs": g.legs().len(),
            "b1": g.loop_number(),
            "one_pi": g.is_1pi()?,
            "three_edge_connected": g.is_3_edge_connected()?,
        }));
    }
    let expected = fixtures::expected_values();
    Ok(json!({"graphs": graphs, "expected": expected}))
}

fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.parse().ok()
}

/// Run one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    json: json!({"schema": SCHEMA, "help": e.to_string()}),
                },
                _ => Outcome {
                    code: 2,
                    json: error_json("usage", &e.to_string()),
                },
            };
        }
    };
    let threads = cli.threads.or_else(threads_from_env);
    let work = || dispatch(cli.command);
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Err(Error::Internal(e.to_string())),
        },
        None => work(),
    };
    match result {
        Ok((name, body)) => Outcome {
            code: 0,
            json: tagged(name, body),
        },
        Err(e) => Outcome {
            code: if e.is_budget() { 3 } else { 2 },
            json: error_json(e.kind(), &e.to_string()),
        },
    }
}
