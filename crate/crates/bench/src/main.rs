use clap::{Args, Parser, Subcommand};
use hgraph::io::{self, InstanceSpec};
use hgraph::oracle;
use hgraph::solvers::{self, Answer, Problem, Repr, SolverResult, Witness};
use hgraph_bench::{load_manifest, run_config, run_manifest, summarize, write_csv, BenchRecord, RunConfig, RunOptions, Status};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(name = "hgraph", version, about = "Exact graph search on hybrid and adjacency-list representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Generate an instance in edge-list format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run a bench manifest and emit one record per run.
    Bench(BenchArgs),
    /// Check a solution produced by `solve --json`.
    Verify(VerifyArgs),
    /// Brute-force answer for a small instance.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Instance file; `.clq`, `.col` and `.dimacs` are read as DIMACS.
    #[arg(long)]
    input: PathBuf,
    /// Use the complement graph.
    #[arg(long)]
    complement: bool,
}

impl InputArgs {
    fn load(&self) -> Result<InstanceSpec, String> {
        let spec = io::read_instance(&self.input).map_err(|e| e.to_string())?;
        if spec.duplicates > 0 {
            eprintln!("warning: {} duplicate edge lines collapsed", spec.duplicates);
        }
        if let Some(m) = spec.header_mismatch {
            eprintln!("warning: header announces {m} edges, read {}", spec.edges.len());
        }
        Ok(if self.complement { spec.complement() } else { spec })
    }
}

#[derive(Args)]
struct SolveArgs {
    /// vc, vc-parm, ds or ce.
    problem: Problem,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "hybrid")]
    repr: Repr,
    /// Parameter for vc-parm and ce.
    #[arg(long)]
    k: Option<usize>,
    /// Degree-2 folding (vc-parm only).
    #[arg(long)]
    fold: bool,
    #[arg(long, env = "HGRAPH_TIMEOUT_S")]
    timeout_s: Option<f64>,
    #[arg(long, env = "HGRAPH_REPS", default_value_t = 1)]
    reps: usize,
    #[arg(long)]
    json: bool,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Uniform random graph with exactly m edges.
    Gnm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disjoint cliques with k random pair edits; writes `<out>.meta.json`.
    Ce {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        clusters: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph with per-vertex edge weights drawn from [low, high].
    Phat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        low: f64,
        #[arg(long)]
        high: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random d-regular graph.
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, env = "HGRAPH_REPS")]
    reps: Option<usize>,
    #[arg(long, env = "HGRAPH_TIMEOUT_S")]
    timeout_s: Option<f64>,
    /// Emit JSON lines instead of CSV.
    #[arg(long)]
    json: bool,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    problem: Problem,
    #[command(flatten)]
    input: InputArgs,
    /// JSON record as printed by `solve --json`.
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    problem: Problem,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    k: Option<usize>,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_ERROR)
}

fn print_record(r: &BenchRecord, json: bool, csv: bool) {
    if json {
        println!("{}", serde_json::to_string(r).expect("records serialize"));
    } else if csv {
        if let Err(e) = write_csv(std::io::stdout().lock(), std::slice::from_ref(r)) {
            eprintln!("error: {e}");
        }
    } else {
        println!("instance  {}", r.instance);
        println!("problem   {} ({}{})", r.problem, r.repr, if r.fold { ", fold" } else { "" });
        if let Some(k) = r.k {
            println!("k         {k}");
        }
        println!("answer    {}", if r.answer.is_empty() { "-" } else { &r.answer });
        println!("nodes     {}", r.nodes);
        println!("time      {:.3} ms", r.wall_ms);
        println!("accesses  {}", r.counters.total_accesses());
        println!("status    {}", r.status.as_str());
        if let Some(m) = &r.message {
            println!("note      {m}");
        }
    }
}

fn cmd_solve(a: &SolveArgs) -> ExitCode {
    if a.problem.is_decision() && a.k.is_none() {
        return fail(format!("{} needs --k", a.problem));
    }
    if a.fold && a.problem != Problem::VcParm {
        return fail("--fold is only valid with vc-parm");
    }
    let spec = match a.input.load() {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let cfg = RunConfig {
        problem: a.problem,
        repr: a.repr,
        k: a.k,
        fold: a.fold,
        complement: a.input.complement,
        reps: a.reps,
        timeout: a.timeout_s.map(Duration::from_secs_f64),
    };
    let rec = run_config(&spec, &cfg);
    print_record(&rec, a.json, a.csv);
    let code = match rec.status {
        Status::Ok if rec.answer == "no" => EXIT_NO,
        Status::Ok => EXIT_OK,
        Status::Timeout => EXIT_TIMEOUT,
        _ => EXIT_ERROR,
    };
    ExitCode::from(code)
}

fn emit(spec: &InstanceSpec, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(p) => io::write_edge_list(p, spec).map_err(|e| e.to_string()),
        None => {
            print!("{}", io::to_edge_list(spec));
            Ok(())
        }
    }
}

fn cmd_gen(g: &GenCommand) -> ExitCode {
    let result = match g {
        GenCommand::Gnm { n, m, seed, out } => io::gen_random_gnm(*n, *m, *seed).map(|s| (s, out, None)),
        GenCommand::Ce { n, clusters, k, seed, out } => {
            io::gen_cluster_editing(*n, *clusters, *k, *seed).map(|(s, planted)| (s, out, Some(planted)))
        }
        GenCommand::Phat { n, low, high, seed, out } => io::gen_p_hat(*n, *low, *high, *seed).map(|s| (s, out, None)),
        GenCommand::Regular { n, d, seed, out } => io::gen_random_regular(*n, *d, *seed).map(|s| (s, out, None)),
    };
    let (spec, out, planted) = match result {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    if let Err(e) = emit(&spec, out.as_deref()) {
        return fail(e);
    }
    if let (Some(k), Some(path)) = (planted, out) {
        let meta = serde_json::json!({
            "name": spec.name,
            "n": spec.n,
            "m": spec.edges.len(),
            "source": spec.source,
            "planted_k": k,
        });
        let mut side = path.clone().into_os_string();
        side.push(".meta.json");
        let text = serde_json::to_string_pretty(&meta).expect("metadata serializes") + "\n";
        if let Err(e) = std::fs::write(&side, text) {
            return fail(format!("{}: {e}", PathBuf::from(side).display()));
        }
    }
    ExitCode::from(EXIT_OK)
}

fn cmd_bench(a: &BenchArgs) -> ExitCode {
    let manifest = match load_manifest(&a.manifest) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let opts = RunOptions { jobs: a.jobs, reps: a.reps, timeout: a.timeout_s.map(Duration::from_secs_f64) };
    let records = run_manifest(&manifest, &opts);
    let mut text = Vec::new();
    if a.json {
        for r in &records {
            text.extend(serde_json::to_string(r).expect("records serialize").into_bytes());
            text.push(b'\n');
        }
    } else if let Err(e) = write_csv(&mut text, &records) {
        return fail(e);
    }
    let written = match &a.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&text).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        return fail(e);
    }
    if let Some(s) = summarize(&records) {
        eprintln!(
            "{} pairs, median speedup {:.2}x, min {:.2}x, hybrid faster on every pair: {}",
            s.pairs, s.median, s.min, s.hybrid_wins_all
        );
    }
    let failed = records.iter().filter(|r| r.status != Status::Ok).count();
    if failed > 0 {
        eprintln!("{failed} of {} runs failed", records.len());
        return ExitCode::from(EXIT_ERROR);
    }
    ExitCode::from(EXIT_OK)
}

#[derive(Deserialize)]
struct SolutionFile {
    answer: String,
    k: Option<usize>,
    witness: Option<Witness>,
}

fn cmd_verify(a: &VerifyArgs) -> ExitCode {
    let spec = match a.input.load() {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let text = match std::fs::read_to_string(&a.solution) {
        Ok(t) => t,
        Err(e) => return fail(format!("{}: {e}", a.solution.display())),
    };
    let sol: SolutionFile = match serde_json::from_str(text.trim()) {
        Ok(s) => s,
        Err(e) => return fail(format!("{}: {e}", a.solution.display())),
    };
    let answer = match sol.answer.as_str() {
        "yes" => Answer::Decision(true),
        "no" => Answer::Decision(false),
        s => match s.parse() {
            Ok(v) => Answer::Optimum(v),
            Err(_) => return fail(format!("unrecognized answer {s:?}")),
        },
    };
    let result = SolverResult {
        problem: a.problem,
        answer,
        witness: sol.witness.unwrap_or(Witness::None),
        nodes: 0,
        counters: Default::default(),
        elapsed: Duration::ZERO,
        k: sol.k,
    };
    if solvers::verify_solution(spec.n, &spec.edges, &result) {
        println!("valid");
        ExitCode::from(EXIT_OK)
    } else {
        println!("invalid");
        ExitCode::from(EXIT_NO)
    }
}

fn cmd_oracle(a: &OracleArgs) -> ExitCode {
    let spec = match a.input.load() {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let (n, e) = (spec.n, &spec.edges);
    let answer = match (a.problem, a.k) {
        (Problem::Vc, _) => oracle::brute_vc(n, e).map(Answer::Optimum),
        (Problem::Ds, _) => oracle::brute_ds(n, e).map(Answer::Optimum),
        (Problem::VcParm, Some(k)) => oracle::brute_vc_decision(n, e, k).map(Answer::Decision),
        (Problem::Ce, Some(k)) => oracle::brute_ce(n, e, k).map(Answer::Decision),
        (p, None) => return fail(format!("{p} needs --k")),
    };
    match answer {
        Ok(ans) => {
            println!("{ans}");
            ExitCode::from(if ans == Answer::Decision(false) { EXIT_NO } else { EXIT_OK })
        }
        Err(err) => fail(err),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Gen(g) => cmd_gen(g),
        Command::Bench(a) => cmd_bench(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
    }
}
