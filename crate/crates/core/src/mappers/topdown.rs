use crate::ast::Ast;

use super::matching::{isomorphism_classes, postorder, Matching};
use super::{MapperConfig, NodeMappingSet};

/// Top-down identical subtrees, then bottom-up container matching by dice
/// over mapped descendants, each container match followed by in-order
/// recovery of its remaining children.
pub fn map_topdown_bottomup(src: &Ast, dst: &Ast, cfg: &MapperConfig) -> NodeMappingSet {
    let mut m = Matching::new(src, dst);
    let classes = isomorphism_classes(src, dst);
    m.identical_subtrees(&classes, cfg.min_subtree_height, |_, _, _| true);
    bottom_up(&mut m, cfg, &|_, _, _| true);
    m.map_roots();
    m.recover(src.root(), dst.root(), &|_, _, _| true);
    m.finish("gt")
}

pub(crate) fn bottom_up(
    m: &mut Matching<'_>,
    cfg: &MapperConfig,
    accept: &impl Fn(&Matching<'_>, usize, usize) -> bool,
) {
    let (src, dst) = (m.src, m.dst);
    for s in postorder(src) {
        if m.src_mapped(s) || src.node(s).is_leaf() || s == src.root() {
            continue;
        }
        let desc = src.descendants(s);
        let mut best: Option<(f64, usize)> = None;
        for d in m.candidates(s, desc) {
            if d == dst.root() || !accept(m, s, d) {
                continue;
            }
            let dice = m.dice(desc, d, dst.descendants(d).len());
            if dice >= cfg.dice_threshold && best.is_none_or(|(b, _)| dice > b) {
                best = Some((dice, d));
            }
        }
        if let Some((_, d)) = best {
            m.link(s, d);
            m.recover(s, d, accept);
        }
    }
}
