use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use ecg_core::bounds::{BoundFormula, BoundId};
use ecg_core::constructions::ConstructionKind;
use ecg_core::extraction::{audit_trace, extract_proper_mk3, Extraction};
use ecg_core::rainbow::{
    find_disjoint_rainbow_cliques_with_stats, find_rainbow_clique_with_stats, max_disjoint_rainbow_triangles_with_stats,
};
use ecg_core::saturation::{saturation_report, Subject};
use ecg_core::verify::{check_graph, exhaustive_verify, random_verify, SamplingConfig, SCHEMA_VERSION};
use ecg_core::{ColoredGraph, Vertex};

#[derive(Parser, Debug)]
#[command(name = "ecg", version, about = "Edge-colored graph toolkit: constructions, rainbow searches, saturation, extraction, verification")]
struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "ECG_JOBS")]
    jobs: Option<usize>,
    /// Omit the timestamp so repeated runs print identical JSON.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named construction and write it in ecg format.
    Construct {
        #[arg(long)]
        kind: ConstructionKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a bound's threshold.
    Bounds {
        #[arg(long)]
        id: BoundId,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Search a graph for rainbow cliques or disjoint packings.
    Find(FindArgs),
    /// Saturation numbers of a vertex set or sequence.
    Saturation(SaturationArgs),
    /// Peel a complete host down to a proper mK_3.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        /// Write the full peeling trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Test a bound exhaustively or by seeded sampling.
    Verify(VerifyArgs),
    /// Evaluate every bound on one graph.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("query").required(true).args(["rainbow_clique", "pack", "max_pack"])))]
struct FindArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    rainbow_clique: Option<usize>,
    /// Clique size K and count M.
    #[arg(long, num_args = 2, value_names = ["K", "M"])]
    pack: Option<Vec<usize>>,
    #[arg(long)]
    max_pack: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("subject").required(true).args(["set", "seq"])))]
struct SaturationArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated vertex set.
    #[arg(long)]
    set: Option<String>,
    /// Comma-separated ordered vertex sequence.
    #[arg(long)]
    seq: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "trials"])))]
struct VerifyArgs {
    #[arg(long)]
    bound: BoundId,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, requires = "seed")]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Colors sampled above the hypothesis minimum.
    #[arg(long, default_value_t = 1)]
    slack: usize,
    /// Sample complete hosts only.
    #[arg(long)]
    complete_only: bool,
    /// Allow parameters outside the statement's stated range.
    #[arg(long)]
    outside_range: bool,
    /// Where a counterexample is written (default: counterexample-<bound>-n<N>-m<M>.ecg).
    #[arg(long)]
    counterexample_out: Option<PathBuf>,
}

/// Successful runs either pass (exit 0) or report a finding (exit 2).
enum Outcome {
    Pass,
    Flagged,
}

type CliResult = Result<Outcome, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Flagged) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, mut value: Value) {
    if let Value::Object(map) = &mut value {
        map.entry("schema").or_insert(json!(SCHEMA_VERSION));
        if !cli.deterministic {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
            map.insert("timestamp".into(), json!(secs));
        }
    }
    let mut text = serde_json::to_string_pretty(&value).expect("json");
    text.push('\n');
    print_raw(&text);
}

/// Writes to stdout, ignoring a closed pipe.
fn print_raw(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read_graph(path: &Path) -> Result<ColoredGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ColoredGraph::from_ecg(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_vertices(s: &str) -> Result<Vec<Vertex>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<Vertex>().map_err(|_| format!("bad vertex {t:?} in {s:?}")))
        .collect()
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("json")
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Construct { kind, n, m, out } => {
            let m = match (kind, m) {
                (ConstructionKind::Tn, _) => m.unwrap_or(1),
                (_, Some(m)) => *m,
                (_, None) => return Err("--m is required for this construction".into()),
            };
            let g = kind.build(*n, m).map_err(|e| e.to_string())?;
            let text = g.to_ecg();
            match out {
                Some(path) => {
                    write_file(path, &text)?;
                    emit(cli, json!({
                        "n": n,
                        "m": m,
                        "edges": g.edge_count(),
                        "colors": g.color_count(),
                        "out": path,
                    }));
                }
                None => print_raw(&text),
            }
            Ok(Outcome::Pass)
        }
        Command::Bounds { id, n, m, k } => {
            let f = BoundFormula::new(*id, *n, *m, *k);
            let t = f.threshold().map_err(|e| e.to_string())?;
            emit(cli, json!({
                "bound": id,
                "status": id.status(),
                "n": n,
                "m": m,
                "k": k,
                "threshold": t.value,
                "strict": t.strict,
                "quantity": t.quantity,
                "in_stated_range": f.in_stated_range(),
                "requires_complete_host": f.requires_complete_host(),
                "conclusion": to_json(&f.conclusion()),
            }));
            Ok(Outcome::Pass)
        }
        Command::Find(args) => {
            let g = read_graph(&args.input)?;
            let (query, found, witness, nodes) = if let Some(k) = args.rainbow_clique {
                let (c, nodes) = find_rainbow_clique_with_stats(&g, k);
                (json!({"rainbow_clique": k}), c.is_some(), to_json(&c), nodes)
            } else if let Some(km) = &args.pack {
                let (k, m) = (km[0], km[1]);
                if k < 3 || m < 1 {
                    return Err("--pack needs K >= 3 and M >= 1".into());
                }
                let (p, stats) = find_disjoint_rainbow_cliques_with_stats(&g, k, m);
                let witness = p.as_ref().map(|p| to_json(&p.cliques));
                (json!({"pack": {"k": k, "m": m}}), p.is_some(), to_json(&witness), stats.nodes_explored)
            } else {
                let (pack, nodes) = max_disjoint_rainbow_triangles_with_stats(&g);
                (json!({"max_pack": pack.len()}), !pack.is_empty(), to_json(&pack), nodes)
            };
            emit(cli, json!({
                "query": query,
                "found": found,
                "witness": witness,
                "nodes_explored": nodes,
            }));
            Ok(Outcome::Pass)
        }
        Command::Saturation(args) => {
            let g = read_graph(&args.input)?;
            let subject = match (&args.set, &args.seq) {
                (Some(s), _) => Subject::Set(parse_vertices(s)?),
                (_, Some(s)) => Subject::Sequence(parse_vertices(s)?),
                _ => unreachable!("clap enforces one of --set / --seq"),
            };
            let report = saturation_report(&g, subject).map_err(|e| e.to_string())?;
            emit(cli, to_json(&report));
            Ok(Outcome::Pass)
        }
        Command::Extract { input, m, trace } => {
            let g = read_graph(input)?;
            let result = extract_proper_mk3(&g, *m).map_err(|e| e.to_string())?;
            let t = result.trace();
            if let (Some(path), Some(t)) = (trace, t) {
                write_file(path, &serde_json::to_string_pretty(t).expect("json"))?;
            }
            let audit = t.map(|t| audit_trace(&g, t));
            let (found, reason) = match &result {
                Extraction::Found { .. } => (true, None),
                Extraction::Failed(r) => (false, Some(r.reason)),
            };
            emit(cli, json!({
                "found": found,
                "m": m,
                "pack": to_json(&result.pack()),
                "k": t.map(|t| t.final_k),
                "steps": to_json(&t.map(|t| &t.steps)),
                "W": t.map(|t| t.color_losses()),
                "failure": reason,
                "audit": to_json(&audit),
            }));
            let audit_ok = audit.is_none_or(|a| a.passed);
            Ok(if found && audit_ok { Outcome::Pass } else { Outcome::Flagged })
        }
        Command::Verify(args) => {
            let f = BoundFormula::new(args.bound, args.n, args.m, args.k);
            if !f.in_stated_range() && !args.outside_range {
                return Err(format!(
                    "{} is not stated for n = {}, m = {}, k = {}; pass --outside-range to test the formula anyway",
                    args.bound, args.n, args.m, args.k
                ));
            }
            let verdict = if args.exhaustive {
                exhaustive_verify(&f)
            } else {
                let config = SamplingConfig { slack: args.slack, near_complete: !args.complete_only, ..SamplingConfig::default() };
                random_verify(&f, args.trials.expect("clap group"), args.seed.expect("clap requires"), config)
            }
            .map_err(|e| e.to_string())?;
            let mut value = to_json(&verdict);
            if let Some(cx) = &verdict.counterexample {
                let path = args.counterexample_out.clone().unwrap_or_else(|| {
                    PathBuf::from(format!("counterexample-{}-n{}-m{}.ecg", args.bound, args.n, args.m))
                });
                write_file(&path, &cx.ecg)?;
                value["counterexample_file"] = json!(path);
            }
            emit(cli, value);
            Ok(if verdict.passed { Outcome::Pass } else { Outcome::Flagged })
        }
        Command::Check { input, m, k } => {
            let g = read_graph(input)?;
            let report = check_graph(&g, *m, *k);
            let flagged = report.theorem_violations > 0 || report.conjecture_counterexamples > 0;
            emit(cli, to_json(&report));
            Ok(if flagged { Outcome::Flagged } else { Outcome::Pass })
        }
    }
}
