//! Corpus driver: loads revisions, runs mappers, judges every algorithm pair
//! and aggregates reports.

pub mod config;
pub mod corpus;
pub mod eval;
pub mod report;
pub mod runner;
pub mod synth;

pub use config::Config;
pub use corpus::{discover, load_tree, Revision};
pub use eval::{evaluate, EvalResult, Label};
pub use report::{AlgorithmReport, AlgorithmSummary, CorpusReport, RevisionReport, StatementReport, VerdictReport};
pub use runner::{analyze, judge_all, run_corpus, run_revision, RunOptions};
