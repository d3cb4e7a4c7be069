//! Instance files and seeded generators.
//!
//! Two text formats are understood. DIMACS (`c` comments, one `p edge n m`
//! line, `e u v` edges, 1-indexed) and a plain edge list: a `n m` header
//! followed by one 0-indexed `u v` pair per line. The edge-list writer and
//! reader round-trip exactly.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)`, so a
//! (parameters, seed) pair always yields the same edge list.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("no problem line before the first edge")]
    MissingProblemLine,
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: endpoint {endpoint} out of range for n = {n}")]
    OutOfRange { line: usize, endpoint: i64, n: usize },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("header announces {expected} edges but {found} were read")]
    EdgeCount { expected: usize, found: usize },
    #[error("cannot place {m} edges on {n} vertices")]
    Infeasible { n: usize, m: usize },
    #[error("{0}")]
    BadParameter(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    File { path: PathBuf },
    Text,
    Gnm { n: usize, m: usize, seed: u64 },
    ClusterEditing { n: usize, clusters: usize, k: usize, seed: u64 },
    PHat { n: usize, low: f64, high: f64, seed: u64 },
    Regular { n: usize, d: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub name: String,
    pub n: usize,
    /// Edges with `u < v`.
    pub edges: Vec<(usize, usize)>,
    pub source: Source,
    /// Duplicate DIMACS edge lines that were collapsed.
    pub duplicates: usize,
    /// Edge count announced by a DIMACS header, when it disagrees with the
    /// number of distinct edges read.
    pub header_mismatch: Option<usize>,
}

impl InstanceSpec {
    fn new(name: impl Into<String>, n: usize, edges: Vec<(usize, usize)>, source: Source) -> Self {
        InstanceSpec { name: name.into(), n, edges, source, duplicates: 0, header_mismatch: None }
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// The complement graph on the same vertex set.
    pub fn complement(&self) -> InstanceSpec {
        let present: HashSet<(usize, usize)> = self.edges.iter().copied().collect();
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !present.contains(&(u, v)) {
                    edges.push((u, v));
                }
            }
        }
        InstanceSpec::new(format!("{}.complement", self.name), self.n, edges, self.source.clone())
    }
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<i64, IoError> {
    let tok = tok.ok_or_else(|| IoError::Malformed { line, msg: format!("missing {what}") })?;
    tok.parse::<i64>()
        .map_err(|_| IoError::Malformed { line, msg: format!("bad {what} {tok:?}") })
}

/// Parses DIMACS text. Duplicate edges are collapsed and counted, a header
/// edge count that disagrees with the edges read is kept as a warning.
pub fn parse_dimacs(name: &str, text: &str) -> Result<InstanceSpec, IoError> {
    let mut header: Option<(usize, usize)> = None;
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    let mut duplicates = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(IoError::Malformed { line, msg: "second problem line".into() });
                }
                toks.next(); // format word: edge, col, ...
                let n = parse_num(toks.next(), line, "vertex count")?;
                let m = parse_num(toks.next(), line, "edge count")?;
                if n < 0 || m < 0 {
                    return Err(IoError::Malformed { line, msg: "negative size".into() });
                }
                header = Some((n as usize, m as usize));
            }
            Some("e") => {
                let (n, _) = header.ok_or(IoError::MissingProblemLine)?;
                let a = parse_num(toks.next(), line, "endpoint")?;
                let b = parse_num(toks.next(), line, "endpoint")?;
                for x in [a, b] {
                    if x < 1 || x as usize > n {
                        return Err(IoError::OutOfRange { line, endpoint: x, n });
                    }
                }
                let (u, v) = (a as usize - 1, b as usize - 1);
                if u == v {
                    return Err(IoError::SelfLoop { line, v: u });
                }
                let e = normalize(u, v);
                if seen.insert(e) {
                    edges.push(e);
                } else {
                    duplicates += 1;
                }
            }
            Some(other) => {
                return Err(IoError::Malformed { line, msg: format!("unknown line type {other:?}") })
            }
        }
    }
    let (n, m) = header.ok_or(IoError::MissingProblemLine)?;
    let mut spec = InstanceSpec::new(name, n, edges, Source::Text);
    spec.duplicates = duplicates;
    if m != spec.edges.len() {
        spec.header_mismatch = Some(m);
    }
    Ok(spec)
}

/// Parses the plain edge-list format.
pub fn parse_edge_list(name: &str, text: &str) -> Result<InstanceSpec, IoError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(IoError::Malformed { line: 1, msg: "empty file".into() })?;
    let mut toks = header.split_whitespace();
    let n = parse_num(toks.next(), hline + 1, "vertex count")?;
    let m = parse_num(toks.next(), hline + 1, "edge count")?;
    if n < 0 || m < 0 || toks.next().is_some() {
        return Err(IoError::Malformed { line: hline + 1, msg: "header must be `n m`".into() });
    }
    let n = n as usize;
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(m as usize);
    for (i, raw) in lines {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let a = parse_num(toks.next(), line, "endpoint")?;
        let b = parse_num(toks.next(), line, "endpoint")?;
        if toks.next().is_some() {
            return Err(IoError::Malformed { line, msg: "trailing tokens".into() });
        }
        for x in [a, b] {
            if x < 0 || x as usize >= n {
                return Err(IoError::OutOfRange { line, endpoint: x, n });
            }
        }
        let (u, v) = (a as usize, b as usize);
        if u == v {
            return Err(IoError::SelfLoop { line, v: u });
        }
        if !seen.insert(normalize(u, v)) {
            return Err(IoError::Duplicate { line, u, v });
        }
        edges.push((u, v));
    }
    if edges.len() != m as usize {
        return Err(IoError::EdgeCount { expected: m as usize, found: edges.len() });
    }
    Ok(InstanceSpec::new(name, n, edges, Source::Text))
}

/// Renders the edge-list format; edges are written in stored order.
pub fn to_edge_list(spec: &InstanceSpec) -> String {
    let mut out = String::with_capacity(12 * (spec.edges.len() + 1));
    let _ = writeln!(out, "{} {}", spec.n, spec.edges.len());
    for &(u, v) in &spec.edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File { path: path.to_owned(), source })
}

fn stem(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

pub fn write_edge_list(path: &Path, spec: &InstanceSpec) -> Result<(), IoError> {
    std::fs::write(path, to_edge_list(spec))
        .map_err(|source| IoError::File { path: path.to_owned(), source })
}

pub fn read_edge_list(path: &Path) -> Result<InstanceSpec, IoError> {
    let mut spec = parse_edge_list(&stem(path), &read_text(path)?)?;
    spec.source = Source::File { path: path.to_owned() };
    Ok(spec)
}

pub fn read_dimacs(path: &Path) -> Result<InstanceSpec, IoError> {
    let mut spec = parse_dimacs(&stem(path), &read_text(path)?)?;
    spec.source = Source::File { path: path.to_owned() };
    Ok(spec)
}

/// Reads DIMACS for `.clq`, `.col` and `.dimacs` files, the edge-list
/// format otherwise.
pub fn read_instance(path: &Path) -> Result<InstanceSpec, IoError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("clq" | "col" | "dimacs") => read_dimacs(path),
        _ => read_edge_list(path),
    }
}

/// Pair `(u, v)`, `u < v`, of lexicographic rank `r` among all pairs on `n`.
fn unrank_pair(n: usize, mut r: usize) -> (usize, usize) {
    let mut u = 0;
    while r >= n - 1 - u {
        r -= n - 1 - u;
        u += 1;
    }
    (u, u + 1 + r)
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Uniform simple graph with exactly `m` edges, sorted.
pub fn gen_random_gnm(n: usize, m: usize, seed: u64) -> Result<InstanceSpec, IoError> {
    let total = pair_count(n);
    if m > total {
        return Err(IoError::Infeasible { n, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = index::sample(&mut rng, total, m).into_vec();
    ranks.sort_unstable();
    let edges = ranks.into_iter().map(|r| unrank_pair(n, r)).collect();
    Ok(InstanceSpec::new(format!("gnm-{n}-{m}-{seed}"), n, edges, Source::Gnm { n, m, seed }))
}

/// Disjoint cliques over a uniformly random assignment of vertices to
/// `clusters` groups, then `k` distinct vertex pairs toggled: intra-cluster
/// pairs lose their edge, inter-cluster pairs gain one. Returns the
/// instance and the planted edit count.
pub fn gen_cluster_editing(
    n: usize,
    clusters: usize,
    k: usize,
    seed: u64,
) -> Result<(InstanceSpec, usize), IoError> {
    if clusters == 0 || clusters > n {
        return Err(IoError::BadParameter(format!("need 1 <= clusters <= n, got {clusters} for n = {n}")));
    }
    let total = pair_count(n);
    if k > total {
        return Err(IoError::BadParameter(format!("{k} edits requested but only {total} pairs exist")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cluster: Vec<usize> = (0..n).map(|_| rng.gen_range(0..clusters)).collect();
    let mut toggled = vec![false; total];
    for r in index::sample(&mut rng, total, k) {
        toggled[r] = true;
    }
    let mut edges = Vec::new();
    let mut r = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if (cluster[u] == cluster[v]) != toggled[r] {
                edges.push((u, v));
            }
            r += 1;
        }
    }
    let spec = InstanceSpec::new(
        format!("ce-{n}-{clusters}-{k}-{seed}"),
        n,
        edges,
        Source::ClusterEditing { n, clusters, k, seed },
    );
    Ok((spec, k))
}

/// Graph with uneven degree spread in the style of the p_hat family: each
/// vertex draws a weight uniformly from `[low, high]` and a pair is joined
/// with probability equal to the mean of its two weights.
pub fn gen_p_hat(n: usize, low: f64, high: f64, seed: u64) -> Result<InstanceSpec, IoError> {
    if !(0.0..=1.0).contains(&low) || !(low..=1.0).contains(&high) {
        return Err(IoError::BadParameter(format!("need 0 <= low <= high <= 1, got [{low}, {high}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight: Vec<f64> = (0..n).map(|_| rng.gen_range(low..=high)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool((weight[u] + weight[v]) / 2.0) {
                edges.push((u, v));
            }
        }
    }
    Ok(InstanceSpec::new(
        format!("phat-{n}-{low}-{high}-{seed}"),
        n,
        edges,
        Source::PHat { n, low, high, seed },
    ))
}

/// Uniform-ish random `d`-regular graph by the configuration model with
/// rejection of pairings that produce loops or multi-edges.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<InstanceSpec, IoError> {
    if d >= n.max(1) || (n * d) % 2 == 1 {
        return Err(IoError::BadParameter(format!("no {d}-regular graph on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    for _attempt in 0..100_000 {
        rand::seq::SliceRandom::shuffle(stubs.as_mut_slice(), &mut rng);
        let mut seen = HashSet::new();
        let ok = stubs.chunks(2).all(|p| p[0] != p[1] && seen.insert(normalize(p[0], p[1])));
        if ok {
            let mut edges: Vec<_> = seen.into_iter().collect();
            edges.sort_unstable();
            return Ok(InstanceSpec::new(
                format!("reg-{n}-{d}-{seed}"),
                n,
                edges,
                Source::Regular { n, d, seed },
            ));
        }
    }
    Err(IoError::BadParameter(format!("pairing rejection did not converge for n = {n}, d = {d}")))
}
