//! Statement measures (NIT, PM, LLCS), token measures (TYPE, STMT, VAL) and
//! the preference order built on them.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::ast::{NodeId, StatementKind};
use crate::refine::{FilePair, Refined, Side};

use super::{DecidedBy, JudgeConfig, Measure};

/// Measures of one mapping. Statement pairs fill `nit`, `pm` and `llcs`;
/// token pairs fill `type_ok`, `stmt_ok`, `val_ok` and the `llcs` of their
/// statement pair when that pair is mapped.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MeasureVector {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nit: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pm: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stmt_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub val_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub llcs: Option<usize>,
}

/// Orders an element and its partner as (src, dst).
pub(crate) fn oriented(side: Side, e0: usize, e: usize) -> (usize, usize) {
    match side {
        Side::Src => (e0, e),
        Side::Dst => (e, e0),
    }
}

/// Mapped token pairs of a statement pair whose texts are equal.
pub fn nit(files: &FilePair, r: &Refined, src: NodeId, dst: NodeId, cfg: &JudgeConfig) -> usize {
    r.tokens
        .of_statements(src, dst)
        .iter()
        .filter(|&&(x, y)| {
            let (a, b) = (files.src_tokens.get(x), files.dst_tokens.get(y));
            a.text == b.text && (!cfg.nit_names_only || a.kind.is_name())
        })
        .count()
}

/// Whether the parents of two nodes are mapped to each other. Two roots
/// count as having mapped parents.
pub fn pm(files: &FilePair, r: &Refined, src: NodeId, dst: NodeId) -> bool {
    match (files.src.parent(src), files.dst.parent(dst)) {
        (None, None) => true,
        (Some(p), Some(q)) => r.nodes.contains(p, q),
        _ => false,
    }
}

/// Longest subsequence of token pairs increasing in both coordinates.
pub fn llcs(pairs: &[(usize, usize)]) -> usize {
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut tails: Vec<usize> = Vec::new();
    for (_, y) in sorted {
        let at = tails.partition_point(|&t| t < y);
        if at == tails.len() {
            tails.push(y);
        } else {
            tails[at] = y;
        }
    }
    tails.len()
}

pub fn statement_measures(files: &FilePair, r: &Refined, src: NodeId, dst: NodeId, cfg: &JudgeConfig) -> MeasureVector {
    MeasureVector {
        nit: Some(nit(files, r, src, dst, cfg)),
        pm: Some(pm(files, r, src, dst)),
        llcs: Some(llcs(r.tokens.of_statements(src, dst))),
        ..Default::default()
    }
}

pub fn token_measures(files: &FilePair, r: &Refined, x: usize, y: usize) -> MeasureVector {
    let (a, b) = (files.src_tokens.get(x), files.dst_tokens.get(y));
    let stmts = (files.token_statement(Side::Src, x), files.token_statement(Side::Dst, y));
    let mapped = match stmts {
        (Some(s), Some(d)) => r.statements.contains(s, d).then_some((s, d)),
        _ => None,
    };
    MeasureVector {
        type_ok: Some(a.kind == b.kind),
        stmt_ok: Some(mapped.is_some()),
        val_ok: Some(a.text == b.text),
        llcs: mapped.map(|(s, d)| llcs(r.tokens.of_statements(s, d))),
        ..Default::default()
    }
}

/// Step-1 condemnation of a mapped statement pair.
pub(crate) fn statement_rule(
    files: &FilePair,
    r: &Refined,
    src: NodeId,
    dst: NodeId,
    cfg: &JudgeConfig,
) -> Option<Measure> {
    if files.src.statement_kind(src) == StatementKind::Block {
        (!pm(files, r, src, dst)).then_some(Measure::PmBlock)
    } else {
        (nit(files, r, src, dst, cfg) == 0).then_some(Measure::Nit)
    }
}

/// Similarity of one algorithm's choice for an element. `Bottom` covers an
/// unmapped element, a choice condemned by a Step-1 rule and, for tokens, a
/// partner outside the mapped statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sim {
    /// The measure that condemned the choice; `None` when unmapped.
    Bottom(Option<Measure>),
    Statement {
        nit: usize,
        pm: bool,
    },
    Token {
        val: bool,
        llcs: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    A,
    B,
    Tie,
}

impl Sim {
    pub fn is_bottom(&self) -> bool {
        matches!(self, Sim::Bottom(_))
    }
}

/// Larger NIT wins, then mapped parents.
pub fn compare_statement_choices(a: Sim, b: Sim) -> (Preference, Option<DecidedBy>) {
    compare(a, b)
}

/// STMT first, then VAL, then LLCS of the enclosing statement pair.
/// An unmapped token loses on STMT.
pub fn compare_token_choices(a: Sim, b: Sim) -> (Preference, Option<DecidedBy>) {
    let (p, by) = compare(a, b);
    let by = by.map(|d| match d {
        DecidedBy::SimTwoCondition => DecidedBy::Measure(Measure::Stmt),
        other => other,
    });
    (p, by)
}

fn compare(a: Sim, b: Sim) -> (Preference, Option<DecidedBy>) {
    let pref = |o: Ordering| match o {
        Ordering::Greater => Preference::A,
        Ordering::Less => Preference::B,
        Ordering::Equal => Preference::Tie,
    };
    match (a, b) {
        (Sim::Bottom(_), Sim::Bottom(_)) => (Preference::Tie, None),
        (Sim::Bottom(why), _) => (Preference::B, Some(bottom_reason(why))),
        (_, Sim::Bottom(why)) => (Preference::A, Some(bottom_reason(why))),
        (Sim::Statement { nit: na, pm: pa }, Sim::Statement { nit: nb, pm: pb }) => {
            if na != nb {
                (pref(na.cmp(&nb)), Some(DecidedBy::Measure(Measure::Nit)))
            } else if pa != pb {
                (pref(pa.cmp(&pb)), Some(DecidedBy::Measure(Measure::Pm)))
            } else {
                (Preference::Tie, None)
            }
        }
        (Sim::Token { val: va, llcs: la }, Sim::Token { val: vb, llcs: lb }) => {
            if va != vb {
                (pref(va.cmp(&vb)), Some(DecidedBy::Measure(Measure::Val)))
            } else if la != lb {
                (pref(la.cmp(&lb)), Some(DecidedBy::Measure(Measure::Llcs)))
            } else {
                (Preference::Tie, None)
            }
        }
        _ => panic!("statement and token similarities are not comparable"),
    }
}

fn bottom_reason(why: Option<Measure>) -> DecidedBy {
    why.map_or(DecidedBy::SimTwoCondition, DecidedBy::Measure)
}

/// Similarity of `algorithm`'s statement choice `e` for `e0` on `side`.
pub(crate) fn statement_sim(
    files: &FilePair,
    r: &Refined,
    side: Side,
    e0: Option<NodeId>,
    e: Option<NodeId>,
    cfg: &JudgeConfig,
) -> Sim {
    let (Some(e0), Some(e)) = (e0, e) else {
        return Sim::Bottom(None);
    };
    let (s, d) = oriented(side, e0, e);
    if let Some(rule) = statement_rule(files, r, s, d, cfg) {
        return Sim::Bottom(Some(rule));
    }
    Sim::Statement {
        nit: nit(files, r, s, d, cfg),
        pm: pm(files, r, s, d),
    }
}

pub(crate) fn token_sim(files: &FilePair, r: &Refined, side: Side, t0: Option<usize>, t: Option<usize>) -> Sim {
    let (Some(t0), Some(t)) = (t0, t) else {
        return Sim::Bottom(None);
    };
    let (x, y) = oriented(side, t0, t);
    let m = token_measures(files, r, x, y);
    if m.type_ok == Some(false) {
        return Sim::Bottom(Some(Measure::Type));
    }
    if m.stmt_ok == Some(false) {
        return Sim::Bottom(Some(Measure::Stmt));
    }
    Sim::Token {
        val: m.val_ok == Some(true),
        llcs: m.llcs.unwrap_or(0),
    }
}
