use crate::ast::{Ast, NodeId, StatementKind};

use super::matching::{isomorphism_classes, similarity, Matching};
use super::topdown::bottom_up;
use super::{MapperConfig, NodeMappingSet};

/// Matches declarations by name first, then runs the top-down/bottom-up
/// procedure inside each pair of matched declarations. Valued nodes must
/// also have similar values to be matched outside identical subtrees.
pub fn map_name_aware(src: &Ast, dst: &Ast, cfg: &MapperConfig) -> NodeMappingSet {
    let sp = Partitions::new(src);
    let dp = Partitions::new(dst);
    let mut m = Matching::new(src, dst);

    let mut src_decls = Vec::new();
    for &s in src.preorder() {
        if !sp.is_decl(s) {
            continue;
        }
        src_decls.push(s);
        let want_parent = src.parent(s).and_then(|p| sp.owner[p]);
        let mut best: Option<(f64, NodeId)> = None;
        for &d in dst.preorder() {
            if !dp.is_decl(d) || m.dst_mapped(d) || dst.label(d) != src.label(s) {
                continue;
            }
            let parent = dst.parent(d).and_then(|p| dp.owner[p]);
            let parents_agree = match (want_parent, parent) {
                (None, None) => true,
                (Some(a), Some(b)) => m.dst_of(a) == Some(b),
                _ => false,
            };
            if !parents_agree {
                continue;
            }
            let sim = similarity(declaration_name(src, s), declaration_name(dst, d));
            let better = best.is_none_or(|(b, bd)| sim > b || (sim == b && d < bd));
            if sim >= cfg.name_similarity_threshold && better {
                best = Some((sim, d));
            }
        }
        if let Some((_, d)) = best {
            m.link(s, d);
        }
    }

    let same_partition = |m: &Matching<'_>, s: NodeId, d: NodeId| match (sp.owner[s], dp.owner[d]) {
        (None, None) => true,
        (Some(a), Some(b)) => m.dst_of(a) == Some(b),
        _ => false,
    };

    let classes = isomorphism_classes(src, dst);
    m.identical_subtrees(&classes, cfg.min_subtree_height, |m, s, d| {
        !sp.has_decl[s] && same_partition(m, s, d)
    });

    let threshold = cfg.name_similarity_threshold;
    let accept = |m: &Matching<'_>, s: NodeId, d: NodeId| {
        !sp.is_decl(s)
            && !dp.is_decl(d)
            && same_partition(m, s, d)
            && similarity(src.node(s).value(), dst.node(d).value()) >= threshold
    };
    bottom_up(&mut m, cfg, &accept);
    for s in src_decls {
        if let Some(d) = m.dst_of(s) {
            m.recover(s, d, &accept);
        }
    }
    m.map_roots();
    m.recover(src.root(), dst.root(), &accept);
    m.finish("ijm")
}

struct Partitions {
    /// Nearest declaration ancestor-or-self.
    owner: Vec<Option<NodeId>>,
    /// Whether a subtree contains a declaration.
    has_decl: Vec<bool>,
}

impl Partitions {
    fn new(ast: &Ast) -> Self {
        let mut owner = vec![None; ast.len()];
        for &n in ast.preorder() {
            owner[n] = if ast.statement_kind(n) == StatementKind::Declaration {
                Some(n)
            } else {
                ast.parent(n).and_then(|p| owner[p])
            };
        }
        let mut has_decl = vec![false; ast.len()];
        for &n in ast.preorder().iter().rev() {
            has_decl[n] =
                ast.statement_kind(n) == StatementKind::Declaration || ast.children(n).iter().any(|&c| has_decl[c]);
        }
        Partitions { owner, has_decl }
    }

    fn is_decl(&self, n: NodeId) -> bool {
        self.owner[n] == Some(n)
    }
}

/// First name node owned by the declaration itself, looking through
/// variable fragments but not into nested statements.
fn declaration_name(ast: &Ast, decl: NodeId) -> Option<&str> {
    ast.descendants(decl)
        .iter()
        .copied()
        .find(|&n| ast.label(n) == "SimpleName" && ast.enclosing_statement(n) == Some(decl))
        .and_then(|n| ast.node(n).value())
}
