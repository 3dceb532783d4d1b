#![allow(dead_code)]

pub mod expectations;
pub mod oracles;
pub mod scenarios;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use astdiff_judge::ast::{parse_source, Ast, NodeId};
use astdiff_judge::judge::{judge_pair, JudgeConfig, PairResult, Status};
use astdiff_judge::mappers::{Algorithm, MapperConfig, NodeMappingSet};
use astdiff_judge::refine::{FilePair, Refined, Side};

pub fn golden_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn golden(name: &str) -> FilePair {
    let dir = golden_root().join(name);
    let read = |f: &str| fs::read_to_string(dir.join(f)).unwrap();
    FilePair::new(
        parse_source(&read("before.java")).unwrap(),
        parse_source(&read("after.java")).unwrap(),
    )
}

/// The `n`th node in preorder with this label and exact source text.
pub fn nth(ast: &Ast, label: &str, text: &str, n: usize) -> NodeId {
    ast.preorder()
        .iter()
        .copied()
        .filter(|&x| ast.label(x) == label && ast.text(x) == text)
        .nth(n)
        .unwrap_or_else(|| panic!("no {} #{} `{}`", label, n, text))
}

pub fn find(ast: &Ast, label: &str, text: &str) -> NodeId {
    nth(ast, label, text, 0)
}

/// A mutable node mapping for building hand-crafted scenarios.
#[derive(Clone)]
pub struct Rewire<'a> {
    pub files: &'a FilePair,
    pub pairs: BTreeSet<(NodeId, NodeId)>,
}

impl<'a> Rewire<'a> {
    pub fn of(files: &'a FilePair, alg: Algorithm) -> Self {
        let m = alg.run(&files.src, &files.dst, &MapperConfig::default());
        Rewire {
            files,
            pairs: m.pairs().clone(),
        }
    }

    pub fn empty(files: &'a FilePair) -> Self {
        Rewire {
            files,
            pairs: BTreeSet::new(),
        }
    }

    pub fn unmap_src(&mut self, node: NodeId) -> &mut Self {
        let ast = &self.files.src;
        self.pairs.retain(|&(s, _)| !ast.is_in_subtree(node, s));
        self
    }

    pub fn unmap_dst(&mut self, node: NodeId) -> &mut Self {
        let ast = &self.files.dst;
        self.pairs.retain(|&(_, d)| !ast.is_in_subtree(node, d));
        self
    }

    /// Maps the subtree of `s` onto the subtree of `d`, pairing nodes in
    /// preorder by label, after clearing both subtrees.
    pub fn remap(&mut self, s: NodeId, d: NodeId) -> &mut Self {
        self.unmap_src(s).unmap_dst(d);
        let (src, dst) = (&self.files.src, &self.files.dst);
        let targets = dst.subtree(d);
        let mut at = 0;
        for &x in src.subtree(s) {
            if let Some(k) = targets[at..].iter().position(|&y| dst.label(y) == src.label(x)) {
                self.pairs.insert((x, targets[at + k]));
                at += k + 1;
            }
        }
        self
    }

    /// Adds one pair, dropping any pair that shares an endpoint with it.
    pub fn add(&mut self, s: NodeId, d: NodeId) -> &mut Self {
        self.pairs.retain(|&(x, y)| x != s && y != d);
        self.pairs.insert((s, d));
        self
    }

    pub fn remove(&mut self, s: NodeId, d: NodeId) -> &mut Self {
        assert!(self.pairs.remove(&(s, d)), "pair ({}, {}) not present", s, d);
        self
    }

    pub fn build(&self, name: &str) -> NodeMappingSet {
        NodeMappingSet::from_pairs(name, &self.files.src, &self.files.dst, self.pairs.iter().copied()).unwrap()
    }
}

pub fn refine(files: &FilePair, mappings: Vec<NodeMappingSet>) -> Vec<Refined> {
    mappings.into_iter().map(|m| Refined::new(files, m)).collect()
}

pub fn judge(files: &FilePair, a: &Refined, b: &Refined, cfg: &JudgeConfig) -> PairResult {
    judge_pair(files, a, b, cfg)
}

/// `(side, line, element text, decided_by)` of an algorithm's Inaccurate
/// verdicts; statements appear by label, tokens by text.
pub fn flagged(files: &FilePair, result: &PairResult, alg: &str) -> BTreeSet<(Side, usize, String, String)> {
    use astdiff_judge::judge::Element;
    result
        .verdicts_of(alg)
        .filter(|v| v.status == Status::Inaccurate)
        .map(|v| {
            let (side, start, what) = match v.element {
                Element::Statement { side, node } => (
                    side,
                    files.ast(side).node(node).span.start,
                    files.ast(side).label(node).to_string(),
                ),
                Element::Token { side, index } => {
                    let t = files.tokens(side).get(index);
                    (side, t.span.start, t.text.clone())
                }
            };
            let by = v.decided_by.map(|d| d.to_string()).unwrap_or_default();
            (side, files.ast(side).line_of(start), what, by)
        })
        .collect()
}

pub fn undecided_count(result: &PairResult, alg: &str) -> usize {
    result
        .verdicts_of(alg)
        .filter(|v| v.status == Status::Undecided)
        .count()
}

pub fn expect(items: &[(Side, usize, &str, &str)]) -> BTreeSet<(Side, usize, String, String)> {
    items
        .iter()
        .map(|&(s, l, w, b)| (s, l, w.to_string(), b.to_string()))
        .collect()
}

pub fn names_only() -> JudgeConfig {
    JudgeConfig { nit_names_only: true }
}
