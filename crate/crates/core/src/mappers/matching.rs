//! Mutable matching state and the building blocks shared by the mappers.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap};

use crate::ast::{Ast, NodeId};

use super::NodeMappingSet;

/// Normalized edit similarity of two optional values. Two valueless nodes
/// are fully similar; a valued node is dissimilar to a valueless one.
pub fn similarity(a: Option<&str>, b: Option<&str>) -> f64 {
    match (a, b) {
        (None, None) => 1.0,
        (Some(a), Some(b)) => strsim::normalized_levenshtein(a, b),
        _ => 0.0,
    }
}

/// Isomorphism classes over both trees: two subtrees share a class iff they
/// have the same labels, values and shape.
pub(crate) fn isomorphism_classes(src: &Ast, dst: &Ast) -> (Vec<usize>, Vec<usize>) {
    let mut interner: HashMap<(String, Option<String>, Vec<usize>), usize> = HashMap::new();
    let mut classify = |ast: &Ast| {
        let mut class = vec![0; ast.len()];
        for &n in ast.preorder().iter().rev() {
            let node = ast.node(n);
            let key = (
                node.label.clone(),
                node.value().map(String::from),
                node.children.iter().map(|&c| class[c]).collect(),
            );
            let next = interner.len();
            class[n] = *interner.entry(key).or_insert(next);
        }
        class
    };
    let s = classify(src);
    let d = classify(dst);
    (s, d)
}

pub(crate) fn postorder(ast: &Ast) -> Vec<NodeId> {
    let mut out = Vec::with_capacity(ast.len());
    let mut stack = vec![(ast.root(), false)];
    while let Some((n, expanded)) = stack.pop() {
        if expanded {
            out.push(n);
        } else {
            stack.push((n, true));
            for &c in ast.children(n).iter().rev() {
                stack.push((c, false));
            }
        }
    }
    out
}

pub(crate) struct Matching<'a> {
    pub src: &'a Ast,
    pub dst: &'a Ast,
    s2d: Vec<Option<NodeId>>,
    d2s: Vec<Option<NodeId>>,
}

impl<'a> Matching<'a> {
    pub fn new(src: &'a Ast, dst: &'a Ast) -> Self {
        Matching {
            src,
            dst,
            s2d: vec![None; src.len()],
            d2s: vec![None; dst.len()],
        }
    }

    pub fn link(&mut self, s: NodeId, d: NodeId) {
        debug_assert!(self.s2d[s].is_none() && self.d2s[d].is_none());
        debug_assert_eq!(self.src.label(s), self.dst.label(d));
        self.s2d[s] = Some(d);
        self.d2s[d] = Some(s);
    }

    pub fn dst_of(&self, s: NodeId) -> Option<NodeId> {
        self.s2d[s]
    }

    pub fn src_mapped(&self, s: NodeId) -> bool {
        self.s2d[s].is_some()
    }

    pub fn dst_mapped(&self, d: NodeId) -> bool {
        self.d2s[d].is_some()
    }

    pub fn map_roots(&mut self) {
        let (s, d) = (self.src.root(), self.dst.root());
        if !self.src_mapped(s) && !self.dst_mapped(d) && self.src.label(s) == self.dst.label(d) {
            self.link(s, d);
        }
    }

    /// Greedily maps identical subtrees of height at least `min_height`,
    /// tallest first, ties broken by smallest (src, dst).
    pub fn identical_subtrees(
        &mut self,
        classes: &(Vec<usize>, Vec<usize>),
        min_height: usize,
        allow: impl Fn(&Self, NodeId, NodeId) -> bool,
    ) {
        let (sc, dc) = classes;
        let mut by_class: HashMap<usize, Vec<NodeId>> = HashMap::new();
        for (d, &class) in dc.iter().enumerate() {
            if self.dst.height(d) >= min_height {
                by_class.entry(class).or_default().push(d);
            }
        }
        let mut candidates = Vec::new();
        for (s, class) in sc.iter().enumerate() {
            if self.src.height(s) < min_height {
                continue;
            }
            if let Some(ds) = by_class.get(class) {
                candidates.extend(ds.iter().map(|&d| (Reverse(self.src.height(s)), s, d)));
            }
        }
        candidates.sort_unstable();
        for (_, s, d) in candidates {
            if self.src_mapped(s) || self.dst_mapped(d) || !allow(self, s, d) {
                continue;
            }
            let (ss, ds) = (self.src.subtree(s), self.dst.subtree(d));
            if ss.iter().any(|&x| self.src_mapped(x)) || ds.iter().any(|&y| self.dst_mapped(y)) {
                continue;
            }
            for (&x, &y) in ss.iter().zip(ds) {
                self.link(x, y);
            }
        }
    }

    /// Unmapped same-label dst nodes that are ancestors of the partners of
    /// mapped nodes in `among`.
    pub fn candidates(&self, s: NodeId, among: &[NodeId]) -> BTreeSet<NodeId> {
        let label = self.src.label(s);
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for &x in among {
            let Some(y) = self.s2d[x] else { continue };
            for a in self.dst.ancestors_or_self(y).skip(1) {
                if !seen.insert(a) {
                    break;
                }
                if !self.dst_mapped(a) && self.dst.label(a) == label {
                    out.insert(a);
                }
            }
        }
        out
    }

    /// Dice coefficient of two node sets under the current mapping.
    pub fn dice(&self, among_s: &[NodeId], d: NodeId, among_d_len: usize) -> f64 {
        let total = among_s.len() + among_d_len;
        if total == 0 {
            return 0.0;
        }
        let common = among_s
            .iter()
            .filter(|&&x| self.s2d[x].is_some_and(|y| y != d && self.dst.is_in_subtree(d, y)))
            .count();
        2.0 * common as f64 / total as f64
    }

    /// Maps remaining children of a mapped pair in order, then descends into
    /// child pairs.
    pub fn recover(&mut self, s: NodeId, d: NodeId, accept: &impl Fn(&Self, NodeId, NodeId) -> bool) {
        let (src, dst) = (self.src, self.dst);
        for &cs in src.children(s) {
            if self.src_mapped(cs) {
                continue;
            }
            let found = dst
                .children(d)
                .iter()
                .copied()
                .find(|&cd| !self.dst_mapped(cd) && src.label(cs) == dst.label(cd) && accept(self, cs, cd));
            if let Some(cd) = found {
                self.link(cs, cd);
            }
        }
        for &cs in src.children(s) {
            if let Some(cd) = self.s2d[cs] {
                if dst.parent(cd) == Some(d) {
                    self.recover(cs, cd, accept);
                }
            }
        }
    }

    pub fn finish(self, algorithm: &str) -> NodeMappingSet {
        let pairs = self.s2d.iter().enumerate().filter_map(|(s, d)| d.map(|d| (s, d)));
        NodeMappingSet::from_pairs(algorithm, self.src, self.dst, pairs)
            .expect("mapper output satisfies mapping invariants")
    }
}
