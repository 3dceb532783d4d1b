use std::collections::BTreeMap;

use crate::ast::{Ast, NodeId};

use super::matching::{isomorphism_classes, postorder, similarity, Matching};
use super::{MapperConfig, NodeMappingSet};

/// Prunes identical subtrees, matches the remaining leaves by value
/// similarity in source order, then matches inner nodes by the dice
/// coefficient over mapped leaves.
pub fn map_leaf_first(src: &Ast, dst: &Ast, cfg: &MapperConfig) -> NodeMappingSet {
    let mut m = Matching::new(src, dst);
    let classes = isomorphism_classes(src, dst);
    m.identical_subtrees(&classes, cfg.min_subtree_height, |_, _, _| true);

    let mut dst_leaves: BTreeMap<&str, Vec<NodeId>> = BTreeMap::new();
    for &d in dst.preorder() {
        if dst.node(d).is_leaf() && d != dst.root() {
            dst_leaves.entry(dst.label(d)).or_default().push(d);
        }
    }
    for &s in src.preorder() {
        if !src.node(s).is_leaf() || s == src.root() || m.src_mapped(s) {
            continue;
        }
        let Some(pool) = dst_leaves.get(src.label(s)) else {
            continue;
        };
        let mut best: Option<(f64, NodeId)> = None;
        for &d in pool {
            if m.dst_mapped(d) {
                continue;
            }
            let sim = similarity(src.node(s).value(), dst.node(d).value());
            let better = best.is_none_or(|(b, bd)| sim > b || (sim == b && d < bd));
            if sim >= cfg.name_similarity_threshold && better {
                best = Some((sim, d));
            }
        }
        if let Some((_, d)) = best {
            m.link(s, d);
        }
    }

    let src_leaves = leaf_lists(src);
    let dst_leaf_counts: Vec<usize> = leaf_lists(dst).iter().map(Vec::len).collect();
    for s in postorder(src) {
        if m.src_mapped(s) || src.node(s).is_leaf() || s == src.root() {
            continue;
        }
        let leaves = &src_leaves[s];
        let mut best: Option<(f64, NodeId)> = None;
        for d in m.candidates(s, leaves) {
            if d == dst.root() {
                continue;
            }
            let dice = m.dice(leaves, d, dst_leaf_counts[d]);
            if dice >= cfg.dice_threshold && best.is_none_or(|(b, _)| dice > b) {
                best = Some((dice, d));
            }
        }
        if let Some((_, d)) = best {
            m.link(s, d);
        }
    }
    m.map_roots();
    m.finish("mtd")
}

/// Leaf descendants of every node (a leaf's own list is empty).
fn leaf_lists(ast: &Ast) -> Vec<Vec<NodeId>> {
    (0..ast.len())
        .map(|n| {
            ast.descendants(n)
                .iter()
                .copied()
                .filter(|&x| ast.node(x).is_leaf())
                .collect()
        })
        .collect()
}
