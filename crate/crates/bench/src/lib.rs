//! Running solvers on instances and reporting the results.
//!
//! A [`BenchRecord`] is one (instance, problem, representation) run. Wall
//! time is the median over repetitions and covers the search only. Bench
//! manifests list instances and the configurations to run on them; paired
//! hybrid/alist runs get a speedup column, and their node counts must agree.

pub mod manifest;

use hgraph::io::{InstanceSpec, Source};
use hgraph::solvers::{self, Answer, Problem, Repr, SolveError, SolveOptions, SolveRequest, Witness};
use hgraph::Counters;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::io::Write;
use std::time::Duration;

pub use manifest::{load_manifest, run_manifest, GenSpec, Manifest, ManifestError, RunOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Timeout,
    Error,
    /// The witness failed independent verification.
    Invalid,
    /// Paired representations disagreed on answer or node count.
    Mismatch,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Timeout => "timeout",
            Status::Error => "error",
            Status::Invalid => "invalid",
            Status::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub problem: Problem,
    pub repr: Repr,
    pub fold: bool,
    /// Optimum size, `yes` or `no`; empty when the run failed.
    pub answer: String,
    pub k: Option<usize>,
    pub nodes: u64,
    pub counters: Counters,
    pub wall_ms: f64,
    pub seed: Option<u64>,
    pub config_hash: String,
    /// alist wall time over hybrid wall time, on both rows of a pair.
    pub speedup: Option<f64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// One solver configuration.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub problem: Problem,
    pub repr: Repr,
    pub k: Option<usize>,
    pub fold: bool,
    pub complement: bool,
    pub reps: usize,
    pub timeout: Option<Duration>,
}

pub fn seed_of(spec: &InstanceSpec) -> Option<u64> {
    match spec.source {
        Source::Gnm { seed, .. }
        | Source::ClusterEditing { seed, .. }
        | Source::PHat { seed, .. }
        | Source::Regular { seed, .. } => Some(seed),
        Source::File { .. } | Source::Text => None,
    }
}

/// Short digest of everything that determines a run besides the code.
pub fn config_hash(spec: &InstanceSpec, cfg: &RunConfig) -> String {
    let key = serde_json::json!({
        "instance": spec.name,
        "source": spec.source,
        "n": spec.n,
        "m": spec.edges.len(),
        "problem": cfg.problem,
        "repr": cfg.repr,
        "k": cfg.k,
        "fold": cfg.fold,
        "complement": cfg.complement,
        "reps": cfg.reps,
    });
    let digest = Sha256::digest(key.to_string().as_bytes());
    hex::encode(&digest[..8])
}

pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

fn blank_record(spec: &InstanceSpec, cfg: &RunConfig) -> BenchRecord {
    BenchRecord {
        instance: spec.name.clone(),
        problem: cfg.problem,
        repr: cfg.repr,
        fold: cfg.fold,
        answer: String::new(),
        k: cfg.k,
        nodes: 0,
        counters: Counters::default(),
        wall_ms: 0.0,
        seed: seed_of(spec),
        config_hash: config_hash(spec, cfg),
        speedup: None,
        status: Status::Ok,
        message: None,
        witness: None,
    }
}

/// Record for a run that could not start, e.g. an unreadable instance.
pub fn error_record(name: &str, cfg: &RunConfig, message: String) -> BenchRecord {
    let spec = InstanceSpec {
        name: name.to_owned(),
        n: 0,
        edges: Vec::new(),
        source: Source::Text,
        duplicates: 0,
        header_mismatch: None,
    };
    BenchRecord { status: Status::Error, message: Some(message), ..blank_record(&spec, cfg) }
}

/// Runs one configuration `cfg.reps` times (at least once). Answers and
/// node counts must be the same in every repetition; the reported wall time
/// is the median. The witness of the first run is verified against the
/// input edge list.
pub fn run_config(spec: &InstanceSpec, cfg: &RunConfig) -> BenchRecord {
    let mut rec = blank_record(spec, cfg);
    let req = SolveRequest { problem: cfg.problem, repr: cfg.repr, k: cfg.k, fold: cfg.fold };
    let mut times = Vec::with_capacity(cfg.reps.max(1));
    let mut first: Option<solvers::SolverResult> = None;
    for _ in 0..cfg.reps.max(1) {
        let opts = cfg.timeout.map(SolveOptions::with_timeout).unwrap_or_default();
        match solvers::solve(&req, spec.n, &spec.edges, &opts) {
            Ok(r) => {
                times.push(r.elapsed.as_secs_f64() * 1e3);
                match &first {
                    None => first = Some(r),
                    Some(f) if f.nodes != r.nodes || f.answer != r.answer => {
                        rec.status = Status::Mismatch;
                        rec.message = Some("repetitions disagree".into());
                    }
                    Some(_) => {}
                }
            }
            Err(e) => {
                rec.status = match e {
                    SolveError::Timeout { .. } => Status::Timeout,
                    _ => Status::Error,
                };
                rec.message = Some(e.to_string());
                return rec;
            }
        }
    }
    let r = first.expect("at least one repetition");
    rec.answer = r.answer.to_string();
    rec.nodes = r.nodes;
    rec.counters = r.counters;
    rec.wall_ms = median(&mut times);
    let has_witness = !matches!(r.answer, Answer::Decision(false));
    if has_witness && !solvers::verify_solution(spec.n, &spec.edges, &r) {
        rec.status = Status::Invalid;
        rec.message = Some("witness failed verification".into());
    }
    rec.witness = Some(r.witness);
    rec
}

/// Fills in speedups and checks representation independence for every
/// hybrid/alist pair of the same configuration in `records`.
pub fn pair_up(records: &mut [BenchRecord]) {
    for i in 0..records.len() {
        if records[i].repr != Repr::Hybrid {
            continue;
        }
        let partner = (0..records.len()).find(|&j| {
            let (a, b) = (&records[i], &records[j]);
            b.repr == Repr::Alist && a.instance == b.instance && a.problem == b.problem && a.k == b.k && a.fold == b.fold
        });
        let Some(j) = partner else { continue };
        if records[i].status != Status::Ok || records[j].status != Status::Ok {
            continue;
        }
        if records[i].nodes != records[j].nodes || records[i].answer != records[j].answer {
            let msg = format!(
                "hybrid {} nodes / {} vs alist {} nodes / {}",
                records[i].nodes, records[i].answer, records[j].nodes, records[j].answer
            );
            for x in [i, j] {
                records[x].status = Status::Mismatch;
                records[x].message = Some(msg.clone());
            }
            continue;
        }
        let s = records[j].wall_ms / records[i].wall_ms.max(1e-9);
        records[i].speedup = Some(s);
        records[j].speedup = Some(s);
    }
}

/// Speedups of the hybrid rows that have a partner.
#[derive(Debug, Clone, Serialize)]
pub struct SpeedupSummary {
    pub pairs: usize,
    pub median: f64,
    pub min: f64,
    pub hybrid_wins_all: bool,
}

pub fn summarize(records: &[BenchRecord]) -> Option<SpeedupSummary> {
    let mut s: Vec<f64> = records.iter().filter(|r| r.repr == Repr::Hybrid).filter_map(|r| r.speedup).collect();
    if s.is_empty() {
        return None;
    }
    let min = s.iter().copied().fold(f64::INFINITY, f64::min);
    Some(SpeedupSummary { pairs: s.len(), median: median(&mut s), min, hybrid_wins_all: min > 1.0 })
}

const CLASSES: [&str; 6] = ["adjacency", "edge_deletion", "vertex_deletion", "edge_addition", "contraction", "restore"];

/// CSV column names, in record field order with counters flattened.
pub fn csv_header() -> Vec<String> {
    let mut h: Vec<String> = ["instance", "problem", "repr", "fold", "answer", "k", "nodes"].map(String::from).into();
    for c in CLASSES {
        for f in ["calls", "reads", "writes"] {
            h.push(format!("{c}_{f}"));
        }
    }
    h.extend(["wall_ms", "seed", "config_hash", "speedup", "status", "message"].map(String::from));
    h
}

fn csv_row(r: &BenchRecord) -> Vec<String> {
    let opt = |x: Option<String>| x.unwrap_or_default();
    let mut row = vec![
        r.instance.clone(),
        r.problem.to_string(),
        r.repr.to_string(),
        r.fold.to_string(),
        r.answer.clone(),
        opt(r.k.map(|k| k.to_string())),
        r.nodes.to_string(),
    ];
    let c = &r.counters;
    for oc in [c.adjacency, c.edge_deletion, c.vertex_deletion, c.edge_addition, c.contraction, c.restore] {
        row.extend([oc.calls.to_string(), oc.reads.to_string(), oc.writes.to_string()]);
    }
    row.extend([
        format!("{:.3}", r.wall_ms),
        opt(r.seed.map(|s| s.to_string())),
        r.config_hash.clone(),
        opt(r.speedup.map(|s| format!("{s:.3}"))),
        r.status.as_str().to_owned(),
        opt(r.message.clone()),
    ]);
    row
}

pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header())?;
    for r in records {
        w.write_record(csv_row(r))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(median(&mut []), 0.0);
    }

    #[test]
    fn csv_row_matches_header_width() {
        let spec = hgraph::io::gen_random_gnm(8, 10, 1).unwrap();
        let cfg = RunConfig {
            problem: Problem::Ds,
            repr: Repr::Hybrid,
            k: None,
            fold: false,
            complement: false,
            reps: 1,
            timeout: None,
        };
        let r = run_config(&spec, &cfg);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(csv_row(&r).len(), csv_header().len());
        assert_eq!(r.seed, Some(1));
    }

    #[test]
    fn config_hash_depends_on_repr() {
        let spec = hgraph::io::gen_random_gnm(8, 10, 1).unwrap();
        let mut cfg = RunConfig {
            problem: Problem::Vc,
            repr: Repr::Hybrid,
            k: None,
            fold: false,
            complement: false,
            reps: 3,
            timeout: None,
        };
        let a = config_hash(&spec, &cfg);
        cfg.repr = Repr::Alist;
        assert_ne!(a, config_hash(&spec, &cfg));
        assert_eq!(a.len(), 16);
    }
}
