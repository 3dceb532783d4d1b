//! Finds statements that two algorithms map inconsistently and decides which
//! algorithm is inaccurate.
//!
//! Step 1 condemns mappings outright: a non-block statement pair without a
//! single identical mapped token, a block pair whose parents are not mapped
//! to each other, a token pair of different kinds. Step 2 compares the
//! statement choices of two algorithms, Step 3 their token choices inside a
//! statement both map to the same partner. An algorithm is inaccurate on
//! `e0` and `e1` when the other algorithm's mapping `e0 -> e1` is more
//! similar than both of its own mappings touching `e0` or `e1`.

mod measures;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::ast::NodeId;
use crate::refine::{FilePair, Refined, Side};

pub use measures::{
    compare_statement_choices, compare_token_choices, llcs, nit, pm, statement_measures, token_measures, MeasureVector,
    Preference, Sim,
};
use measures::{oriented, statement_rule, statement_sim, token_sim};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JudgeConfig {
    /// Count only name tokens in NIT.
    pub nit_names_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Nit,
    Pm,
    /// PM applied to a block pair.
    PmBlock,
    Type,
    Stmt,
    Val,
    Llcs,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Nit => "NIT",
            Measure::Pm => "PM",
            Measure::PmBlock => "PM-block",
            Measure::Type => "TYPE",
            Measure::Stmt => "STMT",
            Measure::Val => "VAL",
            Measure::Llcs => "LLCS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecidedBy {
    Step1(Measure),
    Measure(Measure),
    /// The losing choice was unmapped.
    SimTwoCondition,
}

impl fmt::Display for DecidedBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecidedBy::Step1(m) => write!(f, "step1-rule:{}", m.as_str()),
            DecidedBy::Measure(m) => f.write_str(m.as_str()),
            DecidedBy::SimTwoCondition => f.write_str("sim-two-condition"),
        }
    }
}

impl Serialize for DecidedBy {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Element {
    Statement { side: Side, node: NodeId },
    Token { side: Side, index: usize },
}

impl Element {
    pub fn side(self) -> Side {
        match self {
            Element::Statement { side, .. } | Element::Token { side, .. } => side,
        }
    }

    /// The statement an element belongs to.
    pub fn statement(self, files: &FilePair) -> Option<NodeId> {
        match self {
            Element::Statement { node, .. } => Some(node),
            Element::Token { side, index } => files.token_statement(side, index),
        }
    }

    fn partner(self, r: &Refined) -> Option<Element> {
        match self {
            Element::Statement { side, node } => r.statements.partner(side, node).map(|n| Element::Statement {
                side: side.other(),
                node: n,
            }),
            Element::Token { side, index } => r.tokens.partner(side, index).map(|i| Element::Token {
                side: side.other(),
                index: i,
            }),
        }
    }

    fn id(self) -> usize {
        match self {
            Element::Statement { node, .. } => node,
            Element::Token { index, .. } => index,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Inaccurate,
    Undecided,
}

/// The mapping that decided a verdict: `algorithm` maps `from` to `to`.
/// For Step-2/3 verdicts `rejected` is the losing algorithm's choice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Evidence {
    pub algorithm: String,
    pub from: Element,
    pub to: Option<Element>,
    pub measures: MeasureVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected_measures: Option<MeasureVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Verdict {
    pub algorithm: String,
    pub element: Element,
    pub status: Status,
    pub decided_by: Option<DecidedBy>,
    pub evidence: Option<Evidence>,
}

impl Verdict {
    fn undecided(algorithm: &str, element: Element) -> Self {
        Verdict {
            algorithm: algorithm.to_string(),
            element,
            status: Status::Undecided,
            decided_by: None,
            evidence: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenDisagreement {
    pub token: usize,
    pub choices: BTreeMap<String, Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InconsistentStatement {
    pub side: Side,
    pub statement: NodeId,
    pub stmt_choice: BTreeMap<String, Option<NodeId>>,
    pub token_disagreements: Vec<TokenDisagreement>,
}

/// Statements of either file that the two algorithms map, or whose tokens
/// they map, to different partners. Unmapped counts as a partner.
pub fn find_inconsistent_statements(files: &FilePair, a: &Refined, b: &Refined) -> Vec<InconsistentStatement> {
    assert_ne!(a.algorithm(), b.algorithm(), "algorithms must have distinct names");
    let mut out = Vec::new();
    for side in [Side::Src, Side::Dst] {
        let ast = files.ast(side);
        let mut tokens_of: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
        for t in files.tokens(side).tokens() {
            if let Some(s) = ast.enclosing_statement(t.drn) {
                tokens_of.entry(s).or_default().push(t.index);
            }
        }
        for stmt in ast.statements() {
            let ca = a.statements.partner(side, stmt);
            let cb = b.statements.partner(side, stmt);
            let token_disagreements: Vec<TokenDisagreement> = tokens_of
                .get(&stmt)
                .into_iter()
                .flatten()
                .filter_map(|&t| {
                    let (pa, pb) = (a.tokens.partner(side, t), b.tokens.partner(side, t));
                    (pa != pb).then(|| TokenDisagreement {
                        token: t,
                        choices: BTreeMap::from([(a.algorithm().to_string(), pa), (b.algorithm().to_string(), pb)]),
                    })
                })
                .collect();
            if ca != cb || !token_disagreements.is_empty() {
                out.push(InconsistentStatement {
                    side,
                    statement: stmt,
                    stmt_choice: BTreeMap::from([(a.algorithm().to_string(), ca), (b.algorithm().to_string(), cb)]),
                    token_disagreements,
                });
            }
        }
    }
    out
}

/// Step 1: verdicts that need no competing algorithm.
pub fn step1_rules(files: &FilePair, r: &Refined, cfg: &JudgeConfig) -> Vec<Verdict> {
    let mut out = Vec::new();
    let mut condemn = |from: Element, to: Element, rule: Measure, measures: MeasureVector| {
        let evidence = Evidence {
            algorithm: r.algorithm().to_string(),
            from,
            to: Some(to),
            measures,
            rejected: None,
            rejected_measures: None,
        };
        for element in [from, to] {
            out.push(Verdict {
                algorithm: r.algorithm().to_string(),
                element,
                status: Status::Inaccurate,
                decided_by: Some(DecidedBy::Step1(rule)),
                evidence: Some(evidence.clone()),
            });
        }
    };
    for &(s, d) in &r.statements.pairs {
        if let Some(rule) = statement_rule(files, r, s, d, cfg) {
            condemn(
                Element::Statement {
                    side: Side::Src,
                    node: s,
                },
                Element::Statement {
                    side: Side::Dst,
                    node: d,
                },
                rule,
                statement_measures(files, r, s, d, cfg),
            );
        }
    }
    for &(x, y) in &r.tokens.pairs {
        if files.src_tokens.get(x).kind != files.dst_tokens.get(y).kind {
            condemn(
                Element::Token {
                    side: Side::Src,
                    index: x,
                },
                Element::Token {
                    side: Side::Dst,
                    index: y,
                },
                Measure::Type,
                token_measures(files, r, x, y),
            );
        }
    }
    out
}

fn sim(files: &FilePair, r: &Refined, e0: Option<Element>, e: Option<Element>, side: Side, cfg: &JudgeConfig) -> Sim {
    let statement = matches!(e0.or(e), Some(Element::Statement { .. }));
    let (e0, e) = (e0.map(Element::id), e.map(Element::id));
    if statement {
        statement_sim(files, r, side, e0, e, cfg)
    } else {
        token_sim(files, r, side, e0, e)
    }
}

fn measures_of(files: &FilePair, r: &Refined, e0: Element, e: Element, cfg: &JudgeConfig) -> MeasureVector {
    let (s, d) = oriented(e0.side(), e0.id(), e.id());
    match e0 {
        Element::Statement { .. } => statement_measures(files, r, s, d, cfg),
        Element::Token { .. } => token_measures(files, r, s, d),
    }
}

/// Inaccurate verdicts for `lose` on `e0` and `e1`, where `win` maps `e0`
/// to `e1` and `lose` does not. Empty when either condition fails.
pub fn determine_inaccurate(
    files: &FilePair,
    e0: Element,
    win: &Refined,
    lose: &Refined,
    cfg: &JudgeConfig,
) -> Vec<Verdict> {
    let Some(e1) = e0.partner(win) else {
        return Vec::new();
    };
    let e2 = e0.partner(lose);
    if e2 == Some(e1) {
        return Vec::new();
    }
    let e4 = e1.partner(lose);
    let side = e0.side();
    let compare: fn(Sim, Sim) -> (Preference, Option<DecidedBy>) = match e0 {
        Element::Statement { .. } => compare_statement_choices,
        Element::Token { .. } => compare_token_choices,
    };
    let s_win = sim(files, win, Some(e0), Some(e1), side, cfg);
    let (first, decided_by) = compare(s_win, sim(files, lose, Some(e0), e2, side, cfg));
    let (second, _) = compare(s_win, sim(files, lose, e4, Some(e1), side, cfg));
    if first != Preference::A || second != Preference::A {
        return Vec::new();
    }
    let evidence = Evidence {
        algorithm: win.algorithm().to_string(),
        from: e0,
        to: Some(e1),
        measures: measures_of(files, win, e0, e1, cfg),
        rejected: e2,
        rejected_measures: e2.map(|e2| measures_of(files, lose, e0, e2, cfg)),
    };
    [e0, e1]
        .into_iter()
        .map(|element| Verdict {
            algorithm: lose.algorithm().to_string(),
            element,
            status: Status::Inaccurate,
            decided_by,
            evidence: Some(evidence.clone()),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResult {
    pub a: String,
    pub b: String,
    pub inconsistent: Vec<InconsistentStatement>,
    pub verdicts: BTreeSet<Verdict>,
}

impl PairResult {
    pub fn verdicts_of<'a>(&'a self, algorithm: &'a str) -> impl Iterator<Item = &'a Verdict> + 'a {
        self.verdicts.iter().filter(move |v| v.algorithm == algorithm)
    }
}

/// Judges two algorithms against each other. The result does not depend on
/// argument order beyond the `a`/`b` labels.
pub fn judge_pair(files: &FilePair, a: &Refined, b: &Refined, cfg: &JudgeConfig) -> PairResult {
    let mut verdicts: BTreeSet<Verdict> = BTreeSet::new();
    verdicts.extend(step1_rules(files, a, cfg));
    verdicts.extend(step1_rules(files, b, cfg));
    let inconsistent = find_inconsistent_statements(files, a, b);
    let mut adjudicate = |e0: Element| {
        let mut found = determine_inaccurate(files, e0, a, b, cfg);
        found.extend(determine_inaccurate(files, e0, b, a, cfg));
        if found.is_empty() {
            found.push(Verdict::undecided(a.algorithm(), e0));
            found.push(Verdict::undecided(b.algorithm(), e0));
        }
        verdicts.extend(found);
    };
    for unit in &inconsistent {
        let ca = unit.stmt_choice[a.algorithm()];
        let cb = unit.stmt_choice[b.algorithm()];
        if ca != cb {
            adjudicate(Element::Statement {
                side: unit.side,
                node: unit.statement,
            });
        } else if ca.is_some() {
            for d in &unit.token_disagreements {
                adjudicate(Element::Token {
                    side: unit.side,
                    index: d.token,
                });
            }
        }
    }
    PairResult {
        a: a.algorithm().to_string(),
        b: b.algorithm().to_string(),
        inconsistent,
        verdicts,
    }
}

/// Statements carrying at least one Inaccurate verdict for `algorithm`.
pub fn inaccurate_statements<'a>(
    files: &FilePair,
    algorithm: &str,
    verdicts: impl IntoIterator<Item = &'a Verdict>,
) -> BTreeSet<(Side, NodeId)> {
    verdicts
        .into_iter()
        .filter(|v| v.algorithm == algorithm && v.status == Status::Inaccurate)
        .filter_map(|v| v.element.statement(files).map(|s| (v.element.side(), s)))
        .collect()
}

/// Union over pairwise results of the statements flagged for `target`.
pub fn union_verdicts<'a>(
    files: &FilePair,
    target: &str,
    results: impl IntoIterator<Item = &'a PairResult>,
) -> BTreeSet<(Side, NodeId)> {
    results
        .into_iter()
        .flat_map(|r| inaccurate_statements(files, target, &r.verdicts))
        .collect()
}
