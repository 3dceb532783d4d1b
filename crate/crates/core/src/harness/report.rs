use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ast::NodeId;
use crate::judge::{Element, Evidence, MeasureVector, PairResult, Status, Verdict};
use crate::refine::{FilePair, Refined, Side};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VerdictReport {
    /// The algorithm whose mapping won; absent for Step-1 verdicts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub against: Option<String>,
    pub element: String,
    pub decided_by: String,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementReport {
    pub side: Side,
    pub range: [usize; 2],
    pub line: usize,
    pub statement_text: String,
    pub verdicts: Vec<VerdictReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgorithmReport {
    pub algorithm: String,
    pub inaccurate_statements: Vec<StatementReport>,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub a: String,
    pub b: String,
    pub inconsistent_statement_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UndecidedReport {
    pub a: String,
    pub b: String,
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevisionReport {
    pub revision: String,
    pub per_algorithm: Vec<AlgorithmReport>,
    pub pairs: Vec<PairReport>,
    pub undecided: Vec<UndecidedReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Side-by-side rendering of the flagged statements.
    #[serde(skip)]
    pub text: String,
}

impl RevisionReport {
    pub fn failed(revision: &str, algorithms: &[String], error: String) -> Self {
        RevisionReport {
            revision: revision.to_string(),
            per_algorithm: algorithms
                .iter()
                .map(|a| AlgorithmReport {
                    algorithm: a.clone(),
                    inaccurate_statements: Vec::new(),
                    flagged: false,
                })
                .collect(),
            pairs: Vec::new(),
            undecided: Vec::new(),
            text: format!("== {}: error: {}\n", revision, error),
            error: Some(error),
        }
    }

    pub fn algorithm(&self, name: &str) -> Option<&AlgorithmReport> {
        self.per_algorithm.iter().find(|a| a.algorithm == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: String,
    pub inaccurate_statements: usize,
    pub flagged_revisions: usize,
    pub revisions: usize,
    pub flagged_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub summary: Vec<AlgorithmSummary>,
    pub errors: usize,
    pub revisions: Vec<RevisionReport>,
}

impl CorpusReport {
    /// Totals over per-revision reports, which must be sorted by id.
    pub fn new(algorithms: &[String], revisions: Vec<RevisionReport>) -> Self {
        let analyzed: Vec<&RevisionReport> = revisions.iter().filter(|r| r.error.is_none()).collect();
        let summary = algorithms
            .iter()
            .map(|alg| {
                let per: Vec<&AlgorithmReport> = analyzed.iter().filter_map(|r| r.algorithm(alg)).collect();
                let flagged_revisions = per.iter().filter(|a| a.flagged).count();
                AlgorithmSummary {
                    algorithm: alg.clone(),
                    inaccurate_statements: per.iter().map(|a| a.inaccurate_statements.len()).sum(),
                    flagged_revisions,
                    revisions: analyzed.len(),
                    flagged_ratio: if analyzed.is_empty() {
                        0.0
                    } else {
                        flagged_revisions as f64 / analyzed.len() as f64
                    },
                }
            })
            .collect();
        CorpusReport {
            summary,
            errors: revisions.len() - analyzed.len(),
            revisions,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.summary {
            let _ = writeln!(
                out,
                "{:<8} {:>6} statements  {:>5}/{} revisions flagged ({:.2})",
                s.algorithm, s.inaccurate_statements, s.flagged_revisions, s.revisions, s.flagged_ratio
            );
        }
        for r in &self.revisions {
            out.push_str(&r.text);
        }
        out
    }
}

fn position(files: &FilePair, side: Side, offset: usize) -> (usize, usize) {
    let src = files.ast(side).source();
    let line = files.ast(side).line_of(offset);
    let line_start = src[..offset].rfind('\n').map_or(0, |i| i + 1);
    (line, offset - line_start + 1)
}

pub(crate) fn describe(files: &FilePair, e: Element) -> String {
    match e {
        Element::Statement { side, node } => {
            let (l, c) = position(files, side, files.ast(side).node(node).span.start);
            format!("{} {} at {}:{}", side, files.ast(side).label(node), l, c)
        }
        Element::Token { side, index } => {
            let t = files.tokens(side).get(index);
            let (l, c) = position(files, side, t.span.start);
            format!("{} token `{}` at {}:{}", side, t.text, l, c)
        }
    }
}

fn measures(m: &MeasureVector) -> String {
    let mut parts = Vec::new();
    if let Some(v) = m.nit {
        parts.push(format!("NIT={}", v));
    }
    if let Some(v) = m.pm {
        parts.push(format!("PM={}", v));
    }
    if let Some(v) = m.type_ok {
        parts.push(format!("TYPE={}", v));
    }
    if let Some(v) = m.stmt_ok {
        parts.push(format!("STMT={}", v));
    }
    if let Some(v) = m.val_ok {
        parts.push(format!("VAL={}", v));
    }
    if let Some(v) = m.llcs {
        parts.push(format!("LLCS={}", v));
    }
    parts.join(" ")
}

fn evidence_text(files: &FilePair, loser: &str, ev: &Evidence) -> String {
    let to = ev.to.map_or("nothing".to_string(), |t| describe(files, t));
    let mut s = format!(
        "{} maps {} to {} ({})",
        ev.algorithm,
        describe(files, ev.from),
        to,
        measures(&ev.measures)
    );
    if ev.algorithm != loser {
        match (ev.rejected, &ev.rejected_measures) {
            (Some(r), Some(m)) => {
                let _ = write!(s, "; {} chose {} ({})", loser, describe(files, r), measures(m));
            }
            _ => {
                let _ = write!(s, "; {} leaves it unmapped", loser);
            }
        }
    }
    s
}

/// First line of a statement, whitespace collapsed.
pub(crate) fn statement_text(files: &FilePair, side: Side, node: NodeId) -> String {
    let text = files.ast(side).text(node);
    let first = text.lines().next().unwrap_or("");
    first.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Builds the report of one revision from its pairwise judgements.
pub fn build_report(revision: &str, files: &FilePair, refined: &[Refined], pairs: &[PairResult]) -> RevisionReport {
    let mut per_algorithm = Vec::new();
    let mut text = String::new();
    for r in refined {
        let alg = r.algorithm();
        let mut by_statement: BTreeMap<(Side, NodeId), BTreeSet<VerdictReport>> = BTreeMap::new();
        for p in pairs.iter().filter(|p| p.a == alg || p.b == alg) {
            let other = if p.a == alg { &p.b } else { &p.a };
            for v in p.verdicts_of(alg).filter(|v| v.status == Status::Inaccurate) {
                let Some(stmt) = v.element.statement(files) else {
                    continue;
                };
                by_statement
                    .entry((v.element.side(), stmt))
                    .or_default()
                    .insert(verdict_report(files, alg, other, v));
            }
        }
        let mut statements: Vec<StatementReport> = by_statement
            .into_iter()
            .map(|((side, node), verdicts)| {
                let span = files.ast(side).node(node).span;
                StatementReport {
                    side,
                    range: [span.start, span.end],
                    line: files.ast(side).line_of(span.start),
                    statement_text: statement_text(files, side, node),
                    verdicts: dedup(verdicts),
                }
            })
            .collect();
        statements.sort_by_key(|s| (s.side, s.range[0], s.range[1]));
        render_algorithm(&mut text, revision, files, refined, alg, &statements);
        per_algorithm.push(AlgorithmReport {
            algorithm: alg.to_string(),
            flagged: !statements.is_empty(),
            inaccurate_statements: statements,
        });
    }
    let undecided: BTreeSet<UndecidedReport> = pairs
        .iter()
        .flat_map(|p| {
            p.verdicts
                .iter()
                .filter(|v| v.status == Status::Undecided)
                .map(|v| UndecidedReport {
                    a: p.a.clone(),
                    b: p.b.clone(),
                    element: describe(files, v.element),
                })
        })
        .collect();
    RevisionReport {
        revision: revision.to_string(),
        per_algorithm,
        pairs: pairs
            .iter()
            .map(|p| PairReport {
                a: p.a.clone(),
                b: p.b.clone(),
                inconsistent_statement_count: p.inconsistent.len(),
            })
            .collect(),
        undecided: undecided.into_iter().collect(),
        error: None,
        text,
    }
}

/// The same element and decision reached from either side of a statement
/// pair differ only in evidence; the first one is kept.
fn dedup(verdicts: BTreeSet<VerdictReport>) -> Vec<VerdictReport> {
    let mut out: Vec<VerdictReport> = verdicts.into_iter().collect();
    out.dedup_by(|b, a| a.against == b.against && a.element == b.element && a.decided_by == b.decided_by);
    out
}

fn verdict_report(files: &FilePair, alg: &str, other: &str, v: &Verdict) -> VerdictReport {
    let step1 = v.evidence.as_ref().is_some_and(|e| e.algorithm == alg);
    VerdictReport {
        against: (!step1).then(|| other.to_string()),
        element: describe(files, v.element),
        decided_by: v.decided_by.map(|d| d.to_string()).unwrap_or_default(),
        evidence: v
            .evidence
            .as_ref()
            .map(|e| evidence_text(files, alg, e))
            .unwrap_or_default(),
    }
}

fn render_algorithm(
    out: &mut String,
    revision: &str,
    files: &FilePair,
    refined: &[Refined],
    alg: &str,
    statements: &[StatementReport],
) {
    for s in statements {
        let _ = writeln!(
            out,
            "== {} [{}] {} {}: {}",
            revision, alg, s.side, s.line, s.statement_text
        );
        let node = files.ast(s.side).statements().into_iter().find(|&n| {
            files.ast(s.side).node(n).span.start == s.range[0] && files.ast(s.side).node(n).span.end == s.range[1]
        });
        if let Some(node) = node {
            let width = refined.iter().map(|r| r.algorithm().len()).max().unwrap_or(0);
            for r in refined {
                let partner = r
                    .statements
                    .partner(s.side, node)
                    .map_or("(unmapped)".to_string(), |p| {
                        let other = s.side.other();
                        let line = files.ast(other).line_of(files.ast(other).node(p).span.start);
                        format!("{} {}: {}", other, line, statement_text(files, other, p))
                    });
                let _ = writeln!(out, "   {:<width$} -> {}", r.algorithm(), partner, width = width);
            }
        }
        for v in &s.verdicts {
            let _ = writeln!(out, "   - {} on {}: {}", v.decided_by, v.element, v.evidence);
        }
    }
}
