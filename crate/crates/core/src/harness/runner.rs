use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::judge::{judge_pair, JudgeConfig, PairResult};
use crate::mappers::{load_external_mappings, Algorithm, NodeMappingSet};
use crate::refine::{FilePair, Refined};

use super::config::Config;
use super::corpus::{discover, load_tree, read_file, Revision};
use super::report::{build_report, CorpusReport, RevisionReport};

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub algorithms: Vec<String>,
    /// Prefer `mapping.<algorithm>.json` over the built-in mapper.
    pub external: bool,
    pub config: Config,
}

impl RunOptions {
    pub fn new(algorithms: &[&str]) -> Self {
        RunOptions {
            algorithms: algorithms.iter().map(|s| s.to_string()).collect(),
            external: false,
            config: Config::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.len() < 2 {
            return Err(Error::Config("at least two algorithms are needed".into()));
        }
        let mut seen = self.algorithms.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.algorithms.len() {
            return Err(Error::Config("algorithm names must be distinct".into()));
        }
        for a in &self.algorithms {
            if !self.external && a.parse::<Algorithm>().is_err() {
                return Err(Error::Config(format!(
                    "unknown algorithm `{}` (external mappings need --external)",
                    a
                )));
            }
        }
        self.config.mapper.validate()
    }
}

/// Judges every unordered pair of algorithms, in argument order.
pub fn judge_all(files: &FilePair, refined: &[Refined], cfg: &JudgeConfig) -> Vec<PairResult> {
    let mut out = Vec::new();
    for i in 0..refined.len() {
        for j in i + 1..refined.len() {
            out.push(judge_pair(files, &refined[i], &refined[j], cfg));
        }
    }
    out
}

/// Judges already computed mappings of one revision.
pub fn analyze(revision: &str, files: &FilePair, mappings: Vec<NodeMappingSet>, cfg: &JudgeConfig) -> RevisionReport {
    let refined: Vec<Refined> = mappings.into_iter().map(|m| Refined::new(files, m)).collect();
    let pairs = judge_all(files, &refined, cfg);
    build_report(revision, files, &refined, &pairs)
}

fn mapping_for(rev: &Revision, files: &FilePair, name: &str, opts: &RunOptions) -> Result<NodeMappingSet> {
    if opts.external {
        if let Some(path) = rev.external.get(name) {
            let bytes = read_file(path)?;
            let m = load_external_mappings(&bytes, &files.src, &files.dst)
                .map_err(|e| Error::Revision(format!("{}: {}", path.display(), e)))?;
            return Ok(m.with_algorithm(name));
        }
    }
    let alg: Algorithm = name
        .parse()
        .map_err(|_| Error::Revision(format!("no mapping.{}.json in revision {}", name, rev.id)))?;
    Ok(alg
        .run(&files.src, &files.dst, &opts.config.mapper)
        .with_algorithm(name))
}

fn try_run(rev: &Revision, opts: &RunOptions) -> Result<RevisionReport> {
    let files = FilePair::new(load_tree(&rev.before)?, load_tree(&rev.after)?);
    let mappings = opts
        .algorithms
        .iter()
        .map(|a| mapping_for(rev, &files, a, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(analyze(&rev.id, &files, mappings, &opts.config.judge))
}

/// Runs one revision. Failures are recorded in the report.
pub fn run_revision(rev: &Revision, opts: &RunOptions) -> RevisionReport {
    try_run(rev, opts).unwrap_or_else(|e| RevisionReport::failed(&rev.id, &opts.algorithms, e.to_string()))
}

fn run_dir(dir: &Path, opts: &RunOptions) -> RevisionReport {
    match Revision::from_dir(dir) {
        Ok(rev) => run_revision(&rev, opts),
        Err(e) => {
            let id = dir
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            RevisionReport::failed(&id, &opts.algorithms, e.to_string())
        }
    }
}

/// Runs every revision under `root` on `jobs` workers (0 picks the number of
/// cores). Output order is by revision id whatever the worker count.
pub fn run_corpus(root: &Path, opts: &RunOptions, jobs: usize) -> Result<CorpusReport> {
    opts.validate()?;
    let dirs = discover(root)?;
    let mut reports: Vec<RevisionReport> = if jobs == 1 {
        dirs.iter().map(|d| run_dir(d, opts)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        pool.install(|| dirs.par_iter().map(|d| run_dir(d, opts)).collect())
    };
    reports.sort_by(|a, b| a.revision.cmp(&b.revision));
    Ok(CorpusReport::new(&opts.algorithms, reports))
}
