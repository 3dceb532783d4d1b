//! Scoring detected statements against ground-truth labels.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::refine::Side;

use super::report::CorpusReport;

/// One statement known to be inaccurately mapped by `algorithm`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub revision: String,
    pub algorithm: String,
    pub side: Side,
    pub statement_range: [usize; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    /// `None` when nothing was detected.
    pub precision: Option<f64>,
    /// `None` when nothing was labeled.
    pub recall: Option<f64>,
}

impl EvalResult {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Self {
        let ratio = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
        EvalResult {
            tp,
            fp,
            fn_,
            precision: ratio(tp, tp + fp),
            recall: ratio(tp, tp + fn_),
        }
    }
}

pub fn parse_labels(bytes: &[u8]) -> serde_json::Result<Vec<Label>> {
    serde_json::from_slice(bytes)
}

/// Detected statements of a report, keyed like labels.
pub fn detected(report: &CorpusReport) -> BTreeSet<Label> {
    let mut out = BTreeSet::new();
    for r in report.revisions.iter().filter(|r| r.error.is_none()) {
        for a in &r.per_algorithm {
            for s in &a.inaccurate_statements {
                out.insert(Label {
                    revision: r.revision.clone(),
                    algorithm: a.algorithm.clone(),
                    side: s.side,
                    statement_range: s.range,
                });
            }
        }
    }
    out
}

/// Per-algorithm scores over every algorithm present in the report or the labels.
pub fn evaluate(report: &CorpusReport, labels: &[Label]) -> BTreeMap<String, EvalResult> {
    let found = detected(report);
    let truth: BTreeSet<Label> = labels.iter().cloned().collect();
    let mut algorithms: BTreeSet<String> = report.summary.iter().map(|s| s.algorithm.clone()).collect();
    algorithms.extend(truth.iter().map(|l| l.algorithm.clone()));
    algorithms
        .into_iter()
        .map(|alg| {
            let d: BTreeSet<&Label> = found.iter().filter(|l| l.algorithm == alg).collect();
            let t: BTreeSet<&Label> = truth.iter().filter(|l| l.algorithm == alg).collect();
            let tp = d.intersection(&t).count();
            let result = EvalResult::from_counts(tp, d.len() - tp, t.len() - tp);
            (alg, result)
        })
        .collect()
}

pub fn format_results(results: &BTreeMap<String, EvalResult>) -> String {
    let fmt = |v: Option<f64>| v.map_or("n/a".to_string(), |x| format!("{:.2}", x));
    let mut out = String::from("algorithm      tp     fp     fn  precision  recall\n");
    for (alg, r) in results {
        out.push_str(&format!(
            "{:<10} {:>6} {:>6} {:>6} {:>10} {:>7}\n",
            alg,
            r.tp,
            r.fp,
            r.fn_,
            fmt(r.precision),
            fmt(r.recall)
        ));
    }
    out
}
