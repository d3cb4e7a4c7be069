//! Bench manifests.
//!
//! ```toml
//! [defaults]
//! reps = 3
//! timeout_s = 120
//!
//! [[instance]]
//! problem = "ds"
//! gen = { kind = "gnm", n = 100, m = 400, seed = 1 }
//!
//! [[instance]]
//! name = "p_hat300-1"
//! problem = "vc"
//! input = "dimacs/p_hat300-1.clq"
//! reprs = ["hybrid"]
//! ```
//!
//! `input` paths are relative to the manifest. A generated cluster-editing
//! instance without `k` is solved at its planted edit count.

use crate::{error_record, pair_up, run_config, BenchRecord, RunConfig};
use hgraph::io::{self, InstanceSpec, IoError};
use hgraph::solvers::{Problem, Repr};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: toml::de::Error },
    #[error("entry {index}: {msg}")]
    Entry { index: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GenSpec {
    Gnm { n: usize, m: usize, seed: u64 },
    Ce { n: usize, clusters: usize, k: usize, seed: u64 },
    Phat { n: usize, low: f64, high: f64, seed: u64 },
    Regular { n: usize, d: usize, seed: u64 },
}

impl GenSpec {
    /// The generated instance and, for cluster editing, the planted k.
    pub fn generate(&self) -> Result<(InstanceSpec, Option<usize>), IoError> {
        Ok(match *self {
            GenSpec::Gnm { n, m, seed } => (io::gen_random_gnm(n, m, seed)?, None),
            GenSpec::Ce { n, clusters, k, seed } => {
                let (spec, planted) = io::gen_cluster_editing(n, clusters, k, seed)?;
                (spec, Some(planted))
            }
            GenSpec::Phat { n, low, high, seed } => (io::gen_p_hat(n, low, high, seed)?, None),
            GenSpec::Regular { n, d, seed } => (io::gen_random_regular(n, d, seed)?, None),
        })
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Defaults {
    pub reps: Option<usize>,
    pub timeout_s: Option<f64>,
    pub reprs: Option<Vec<Repr>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub name: Option<String>,
    pub problem: Problem,
    pub input: Option<PathBuf>,
    pub gen: Option<GenSpec>,
    pub k: Option<usize>,
    #[serde(default)]
    pub fold: bool,
    #[serde(default)]
    pub complement: bool,
    pub reprs: Option<Vec<Repr>>,
    pub reps: Option<usize>,
    pub timeout_s: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub defaults: Defaults,
    #[serde(default, rename = "instance")]
    pub instances: Vec<Entry>,
    /// Directory that relative `input` paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

pub fn load_manifest(path: &Path) -> Result<Manifest, ManifestError> {
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Read { path: path.to_owned(), source })?;
    let mut m: Manifest = toml::from_str(&text).map_err(|source| ManifestError::Parse { path: path.to_owned(), source })?;
    m.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    for (index, e) in m.instances.iter().enumerate() {
        if e.input.is_some() == e.gen.is_some() {
            return Err(ManifestError::Entry { index, msg: "exactly one of `input` and `gen` is required".into() });
        }
    }
    Ok(m)
}

/// Command-line overrides for a whole bench run.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub jobs: usize,
    pub reps: Option<usize>,
    pub timeout: Option<Duration>,
}

fn entry_name(e: &Entry, spec: Option<&InstanceSpec>) -> String {
    e.name.clone().or_else(|| spec.map(|s| s.name.clone())).unwrap_or_else(|| {
        e.input.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "unnamed".into())
    })
}

fn run_entry(m: &Manifest, e: &Entry, opts: &RunOptions) -> Vec<BenchRecord> {
    let reprs = e.reprs.clone().or_else(|| m.defaults.reprs.clone()).unwrap_or_else(|| vec![Repr::Hybrid, Repr::Alist]);
    let timeout_s = opts.timeout.map(|d| d.as_secs_f64()).or(e.timeout_s).or(m.defaults.timeout_s);
    let cfg_for = |repr, k| RunConfig {
        problem: e.problem,
        repr,
        k,
        fold: e.fold,
        complement: e.complement,
        reps: opts.reps.or(e.reps).or(m.defaults.reps).unwrap_or(3),
        timeout: timeout_s.map(Duration::from_secs_f64),
    };
    let loaded = match (&e.input, &e.gen) {
        (Some(p), _) => io::read_instance(&m.base_dir.join(p)).map(|s| (s, None)),
        (_, Some(g)) => g.generate(),
        (None, None) => unreachable!("validated on load"),
    };
    let (mut spec, planted) = match loaded {
        Ok(x) => x,
        Err(err) => {
            let name = entry_name(e, None);
            return reprs.iter().map(|&r| error_record(&name, &cfg_for(r, e.k), err.to_string())).collect();
        }
    };
    if e.complement {
        spec = spec.complement();
    }
    spec.name = entry_name(e, Some(&spec));
    let k = e.k.or(if e.problem == Problem::Ce { planted } else { None });
    let mut out: Vec<BenchRecord> = reprs.iter().map(|&r| run_config(&spec, &cfg_for(r, k))).collect();
    pair_up(&mut out);
    out
}

/// Runs every manifest entry on a pool of `opts.jobs` threads (default 1)
/// and returns the records in manifest order.
pub fn run_manifest(m: &Manifest, opts: &RunOptions) -> Vec<BenchRecord> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build().expect("thread pool");
    pool.install(|| m.instances.par_iter().map(|e| run_entry(m, e, opts)).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Status;

    fn parse(text: &str) -> Manifest {
        toml::from_str(text).unwrap()
    }

    #[test]
    fn empty_manifest_gives_no_rows() {
        let m = parse("");
        assert!(run_manifest(&m, &RunOptions::default()).is_empty());
    }

    #[test]
    fn generated_entries_pair_up() {
        let m = parse(
            r#"
            [defaults]
            reps = 1
            [[instance]]
            problem = "ds"
            gen = { kind = "gnm", n = 20, m = 40, seed = 1 }
            [[instance]]
            problem = "ce"
            gen = { kind = "ce", n = 12, clusters = 3, k = 3, seed = 2 }
            "#,
        );
        let rows = run_manifest(&m, &RunOptions { jobs: 2, ..Default::default() });
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.status == Status::Ok), "{rows:?}");
        assert_eq!(rows[2].k, Some(3));
        assert_eq!(rows[2].answer, "yes");
        assert!(rows.iter().all(|r| r.speedup.is_some()));
        assert_eq!(rows[0].nodes, rows[1].nodes);
    }

    #[test]
    fn missing_file_is_an_error_row() {
        let m = parse("[[instance]]\nproblem = \"vc\"\ninput = \"/nonexistent/x.el\"\nreprs = [\"hybrid\"]\n");
        let rows = run_manifest(&m, &RunOptions::default());
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].status, Status::Error);
    }
}
