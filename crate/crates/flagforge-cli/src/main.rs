//! `flagforge`: decompose, bound, construct and verify flag complex face
//! vectors. Every output line is one JSON record.
//!
//! Exit codes: 0 success, 1 usage or IO error, 2 mathematical negative
//! (mismatch, failed construction), 3 internal self-check failure.

use clap::{Parser, Subcommand, ValueEnum};
use flagforge::bounds::{
    c_cost, c_cost_upper, d_cost, d_cost_upper, equal_vertices_bound, ffk_bound, flag_bound_branches, kk_chain,
    kk_shadow, limit_constant_dim, limit_constant_two, Direction,
};
use flagforge::complex::{clique_f_vector, f_to_h, FaceVector, GraphFile, VertexColoredGraph};
use flagforge::construct::{construct, construct_hvec, AllocMode, ConstructError, ConstructionPlan};
use flagforge::decompose::{color_rep, dim_two_term_rep, flag_rep, kk_rep, two_term_rep};
use flagforge::real::{Surd, SurdView};
use flagforge::verify::{search_flag_profiles, verify_graph, VerifyOutcome};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "flagforge", version, about = "Face vectors of flag complexes")]
struct Cli {
    /// Worker threads for counting and search.
    #[arg(long, global = true, env = "FLAGFORGE_THREADS")]
    threads: Option<usize>,
    /// Fractional digits for irrational bounds (at least 50).
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,
    /// Progress notes on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum DecompFlavor {
    Plain,
    Colored,
    TwoTerm,
    Flag,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum BoundKindArg {
    Kk,
    Chain,
    Ffk,
    Flag,
    Cost,
    Equal,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum DirArg {
    Down,
    Up,
}

#[derive(Copy, Clone, Debug, ValueEnum, PartialEq, Eq)]
enum GraphFormat {
    Json,
    Edgelist,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Cascade representations of an integer.
    Decompose {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long, value_enum)]
        flavor: Option<DecompFlavor>,
    },
    /// Lower bounds and cost functions.
    Bound {
        #[arg(long, value_enum)]
        kind: BoundKindArg,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
        /// Number of colors for `equal`.
        #[arg(long)]
        d: Option<i64>,
        /// Chain length for `chain`.
        #[arg(long, default_value_t = 1)]
        i: i64,
        #[arg(long, value_enum, default_value = "down")]
        direction: DirArg,
    },
    /// Build a flag complex with a given face vector.
    Construct {
        #[arg(long = "f-vector", value_delimiter = ',', required = true)]
        f_vector: Vec<u64>,
        /// `auto`, `balanced`, or explicit top-stage part sizes `p1,...,pd`.
        #[arg(long, default_value = "auto")]
        alloc: String,
        /// Write the graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the plan JSON here as well.
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Recount cliques of a graph file and compare with a face vector.
    Verify {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        expect: Vec<u64>,
    },
    /// Rebuild a saved plan and check it reproduces byte for byte.
    Replay { plan: PathBuf },
    /// Exhaustive search over small graphs.
    Search {
        #[arg(long)]
        fix_card: usize,
        #[arg(long)]
        fix_count: u64,
        #[arg(long)]
        report_card: usize,
        #[arg(long)]
        max_vertices: usize,
    },
    /// Build a flag complex with a given h-vector.
    Hvec {
        #[arg(long = "h-vector", value_delimiter = ',', required = true)]
        h_vector: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Ratio of the cost function to its growth rate along a ladder of m.
    Limits {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long, default_value_t = 1_000_000)]
        upto: u64,
    },
}

enum Fail {
    Usage(String),
    Negative,
    Internal(String),
}

impl From<flagforge::Error> for Fail {
    fn from(e: flagforge::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

type Run = Result<(), Fail>;

fn emit(v: Value) {
    println!("{}", serde_json::to_string(&v).expect("json"));
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn need<T>(v: Option<T>, name: &str) -> Result<T, Fail> {
    v.ok_or_else(|| Fail::Usage(format!("--{name} is required here")))
}

fn surd(s: &Surd, digits: u32) -> Value {
    to_value(&SurdView::with_digits(s, digits))
}

fn read_graph(path: &Path) -> Result<VertexColoredGraph, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let f: GraphFile = serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
        Ok(VertexColoredGraph::from_file(&f)?)
    } else {
        Ok(VertexColoredGraph::from_edgelist(&text)?)
    }
}

fn graph_text(g: &VertexColoredGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Json => serde_json::to_string(&g.to_file()).expect("json") + "\n",
        GraphFormat::Edgelist => g.to_edgelist(),
    }
}

fn write_graph(g: &VertexColoredGraph, out: &Option<PathBuf>, format: GraphFormat) -> Run {
    match out {
        Some(path) => {
            std::fs::write(path, graph_text(g, format)).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
            emit(json!({"record": "graph_file", "path": path.display().to_string(), "vertices": g.vertex_count()}));
        }
        None => match format {
            GraphFormat::Json => emit(json!({"record": "graph", "graph": to_value(&g.to_file())})),
            GraphFormat::Edgelist => print!("{}", g.to_edgelist()),
        },
    }
    Ok(())
}

fn construct_failure(e: ConstructError) -> Fail {
    match e {
        ConstructError::Invalid(e) => Fail::Usage(e.to_string()),
        ConstructError::Failed(plan) => {
            let msg = ConstructError::Failed(plan.clone()).to_string();
            emit(json!({"record": "failure", "diagnosis": msg, "plan": to_value(&*plan)}));
            Fail::Negative
        }
        ConstructError::Overshoot(plan) => {
            emit(json!({"record": "failure", "plan": to_value(&*plan)}));
            Fail::Negative
        }
        e @ ConstructError::SelfCheck { .. } => Fail::Internal(e.to_string()),
    }
}

fn parse_alloc(s: &str) -> Result<AllocMode, Fail> {
    match s {
        "auto" => Ok(AllocMode::Auto),
        "balanced" => Ok(AllocMode::Balanced),
        _ => s
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map(AllocMode::Parts)
            .map_err(|_| Fail::Usage(format!("--alloc expects auto, balanced or p1,...,pd; got {s}"))),
    }
}

/// Brute-force recount before reporting success.
fn self_verify(g: &VertexColoredGraph, expected: &FaceVector) -> Run {
    match verify_graph(g, expected) {
        VerifyOutcome::Pass => {
            emit(json!({"record": "verify", "result": "pass"}));
            Ok(())
        }
        m => Err(Fail::Internal(format!("self-verification failed: {}", to_value(&m)))),
    }
}

fn cmd_decompose(m: u64, k: i64, r: Option<i64>, flavor: Option<DecompFlavor>) -> Run {
    let flavor = flavor.unwrap_or(if r.is_some() { DecompFlavor::Colored } else { DecompFlavor::Plain });
    let v = match flavor {
        DecompFlavor::Plain => to_value(&kk_rep(m, k)?),
        DecompFlavor::Colored => to_value(&color_rep(m, k, need(r, "r")?)?),
        DecompFlavor::TwoTerm => match r {
            Some(r) => to_value(&dim_two_term_rep(m, k, r)?),
            None => to_value(&two_term_rep(m, k)?),
        },
        DecompFlavor::Flag => to_value(&flag_rep(m, k)?),
    };
    emit(json!({"record": "decomposition", "m": m, "k": k, "representation": v}));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bound(kind: BoundKindArg, m: u64, k: i64, p: Option<i64>, r: Option<i64>, d: Option<i64>, i: i64, dir: DirArg, digits: u32) -> Run {
    let rec = match kind {
        BoundKindArg::Kk => {
            let p = need(p, "p")?;
            json!({"kind": "kk_shadow", "value": json_big(&kk_shadow(m, k, p)?)})
        }
        BoundKindArg::Chain => {
            let dir = match dir {
                DirArg::Down => Direction::Down,
                DirArg::Up => Direction::Up,
            };
            json!({"kind": "kk_chain", "value": json_big(&kk_chain(m, k, i, dir)?)})
        }
        BoundKindArg::Ffk => {
            let (p, r) = (need(p, "p")?, need(r, "r")?);
            json!({"kind": "ffk", "value": json_big(&ffk_bound(m, k, p, r)?)})
        }
        BoundKindArg::Flag => {
            let p = need(p, "p")?;
            let fb = flag_bound_branches(m, k, p)?;
            json!({
                "kind": "flag_two_branch",
                "value": json_big(&fb.value()),
                "branch_taken": to_value(&fb.branch()),
                "simplex_branch": json_big(&fb.simplex),
                "colored_branch": fb.colored.as_ref().map(json_big),
            })
        }
        BoundKindArg::Cost => {
            let p = need(p, "p")?;
            match r {
                None => {
                    let upper = if p > 1 { Some(surd(&c_cost_upper(m, k, p)?, digits)) } else { None };
                    json!({"kind": "c_cost", "value": json_big(&c_cost(m, k, p)?), "ceiling": upper})
                }
                Some(r) => {
                    let upper = if p > 1 { Some(surd(&d_cost_upper(m, k, p, r)?, digits)) } else { None };
                    json!({"kind": "d_cost", "value": json_big(&d_cost(m, k, p, r)?), "ceiling": upper})
                }
            }
        }
        BoundKindArg::Equal => {
            let (p, d) = (need(p, "p")?, need(d, "d")?);
            json!({"kind": "equal_vertices", "value": surd(&equal_vertices_bound(d, k, p, m)?, digits)})
        }
    };
    let mut rec = rec;
    rec["record"] = json!("bound");
    rec["m"] = json!(m);
    rec["k"] = json!(k);
    emit(rec);
    Ok(())
}

fn json_big(v: &num_bigint::BigUint) -> Value {
    serde_json::from_str(&v.to_string()).expect("integer literal")
}

fn cmd_construct(f: Vec<u64>, alloc: &str, out: Option<PathBuf>, plan_path: Option<PathBuf>, format: GraphFormat, verbose: u8) -> Run {
    let mode = parse_alloc(alloc)?;
    if verbose > 0 {
        eprintln!("constructing {f:?} with {mode:?}");
    }
    let c = construct(&f, &mode).map_err(construct_failure)?;
    let plan_json = serde_json::to_string(&c.plan).expect("json");
    if let Some(path) = &plan_path {
        std::fs::write(path, &plan_json).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    }
    emit(json!({"record": "plan", "plan": to_value(&c.plan)}));
    write_graph(&c.graph, &out, format)?;
    self_verify(&c.graph, &FaceVector::from_u64(&f))
}

fn cmd_verify(path: &Path, expect: Vec<u64>) -> Run {
    let g = read_graph(path)?;
    let outcome = verify_graph(&g, &FaceVector::from_u64(&expect));
    let mut rec = to_value(&outcome);
    rec["record"] = json!("verify");
    emit(rec);
    match outcome {
        VerifyOutcome::Pass => Ok(()),
        VerifyOutcome::Mismatch { .. } => Err(Fail::Negative),
    }
}

fn cmd_replay(path: &Path) -> Run {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    let plan: ConstructionPlan = serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    let again = flagforge::construct::construct_main(&plan.target, &plan.seeds).map_err(construct_failure)?;
    let same = serde_json::to_string(&again.plan).expect("json") == text.trim_end();
    emit(json!({"record": "replay", "identical": same}));
    if !same {
        return Err(Fail::Negative);
    }
    self_verify(&again.graph, &FaceVector::from_u64(&plan.target))
}

fn cmd_search(fix_card: usize, fix_count: u64, report_card: usize, max_vertices: usize) -> Run {
    let rep = search_flag_profiles(fix_card, fix_count, report_card, max_vertices)?;
    let mut rec = to_value(&rep);
    rec["record"] = json!("search");
    emit(rec);
    Ok(())
}

fn cmd_hvec(h: Vec<u64>, out: Option<PathBuf>, format: GraphFormat) -> Run {
    let b = construct_hvec(&h).map_err(construct_failure)?;
    if let Some(plan) = &b.plan {
        emit(json!({"record": "plan", "plan": to_value(plan)}));
    }
    write_graph(&b.graph, &out, format)?;
    let d = h.len() - 1;
    let mut f = clique_f_vector(&b.graph, d).0;
    f.resize(d + 1, Default::default());
    let got = f_to_h(&FaceVector(f));
    emit(json!({"record": "verify", "h_vector": to_value(&got), "result": "pass"}));
    Ok(())
}

fn cmd_limits(k: i64, p: i64, r: Option<i64>, upto: u64) -> Run {
    let constant = match r {
        None => limit_constant_two(k, p)?,
        Some(r) => limit_constant_dim(r, k, p)?,
    };
    let limit = constant.to_f64();
    let exp = (p - 1) as f64 / (k - 1) as f64;
    let mut m = 10u64;
    let mut ladder = Vec::new();
    loop {
        let m_eff = m.min(upto);
        ladder.push(m_eff);
        if m_eff == upto {
            break;
        }
        m = m.saturating_mul(10);
    }
    for m in ladder {
        let cost = match r {
            None => c_cost(m, k, p)?,
            Some(r) => d_cost(m, k, p, r)?,
        };
        let ratio = num_traits::ToPrimitive::to_f64(&cost).unwrap_or(f64::INFINITY) / (m as f64).powf(exp);
        emit(json!({
            "record": "limit",
            "m": m,
            "cost": json_big(&cost),
            "ratio": ratio,
            "limit": limit,
            "relative_gap": (ratio - limit) / limit,
        }));
    }
    Ok(())
}

fn run(cli: Cli) -> Run {
    if cli.precision < 50 {
        return Err(Fail::Usage("--precision must be at least 50".into()));
    }
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Fail::Usage("thread count must be at least 1".into()));
        }
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match cli.cmd {
        Cmd::Decompose { m, k, r, flavor } => cmd_decompose(m, k, r, flavor),
        Cmd::Bound { kind, m, k, p, r, d, i, direction } => cmd_bound(kind, m, k, p, r, d, i, direction, cli.precision),
        Cmd::Construct { f_vector, alloc, out, plan, format } => cmd_construct(f_vector, &alloc, out, plan, format, cli.verbose),
        Cmd::Verify { graph, expect } => cmd_verify(&graph, expect),
        Cmd::Replay { plan } => cmd_replay(&plan),
        Cmd::Search { fix_card, fix_count, report_card, max_vertices } => {
            cmd_search(fix_card, fix_count, report_card, max_vertices)
        }
        Cmd::Hvec { h_vector, out, format } => cmd_hvec(h_vector, out, format),
        Cmd::Limits { k, p, r, upto } => cmd_limits(k, p, r, upto),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Usage(msg)) => {
            emit(json!({"record": "error", "kind": "usage", "message": msg}));
            ExitCode::from(1)
        }
        Err(Fail::Negative) => ExitCode::from(2),
        Err(Fail::Internal(msg)) => {
            emit(json!({"record": "error", "kind": "internal", "message": msg}));
            ExitCode::from(3)
        }
    }
}
