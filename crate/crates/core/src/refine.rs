//! Statement and token mappings derived from a node mapping.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ast::{Ast, NodeId};
use crate::mappers::NodeMappingSet;
use crate::tokenizer::{tokenize, TokenList};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Src,
    Dst,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Src => Side::Dst,
            Side::Dst => Side::Src,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Src => "src",
            Side::Dst => "dst",
        })
    }
}

/// Both versions of a file with their token lists.
#[derive(Debug, Clone)]
pub struct FilePair {
    pub src: Ast,
    pub dst: Ast,
    pub src_tokens: TokenList,
    pub dst_tokens: TokenList,
}

impl FilePair {
    pub fn new(src: Ast, dst: Ast) -> Self {
        let src_tokens = tokenize(&src);
        let dst_tokens = tokenize(&dst);
        FilePair {
            src,
            dst,
            src_tokens,
            dst_tokens,
        }
    }

    pub fn ast(&self, side: Side) -> &Ast {
        match side {
            Side::Src => &self.src,
            Side::Dst => &self.dst,
        }
    }

    pub fn tokens(&self, side: Side) -> &TokenList {
        match side {
            Side::Src => &self.src_tokens,
            Side::Dst => &self.dst_tokens,
        }
    }

    /// Statement that owns a token, through its directly relevant node.
    pub fn token_statement(&self, side: Side, token: usize) -> Option<NodeId> {
        let drn = self.tokens(side).get(token).drn;
        self.ast(side).enclosing_statement(drn)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementGroup {
    pub statement: NodeId,
    /// Nodes whose enclosing statement is `statement`, by range start.
    pub own_nodes: Vec<NodeId>,
    pub grouped_pairs: Vec<(NodeId, NodeId)>,
}

pub fn group_by_statement(ast: &Ast, mapping: &NodeMappingSet, side: Side) -> Vec<StatementGroup> {
    let mut own: BTreeMap<NodeId, Vec<NodeId>> = ast.statements().into_iter().map(|s| (s, Vec::new())).collect();
    for &n in ast.preorder() {
        if let Some(s) = ast.enclosing_statement(n) {
            own.get_mut(&s).expect("statement").push(n);
        }
    }
    ast.statements()
        .into_iter()
        .map(|s| {
            let mut own_nodes = own.remove(&s).unwrap_or_default();
            own_nodes.sort_by_key(|&n| (ast.node(n).span.start, ast.pre_index(n)));
            let grouped_pairs = own_nodes
                .iter()
                .filter_map(|&n| match side {
                    Side::Src => mapping.dst_of(n).map(|d| (n, d)),
                    Side::Dst => mapping.src_of(n).map(|o| (o, n)),
                })
                .collect();
            StatementGroup {
                statement: s,
                own_nodes,
                grouped_pairs,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementMappingSet {
    pub pairs: BTreeSet<(NodeId, NodeId)>,
    pub unmapped_src: BTreeSet<NodeId>,
    pub unmapped_dst: BTreeSet<NodeId>,
    s2d: BTreeMap<NodeId, NodeId>,
    d2s: BTreeMap<NodeId, NodeId>,
}

impl StatementMappingSet {
    pub fn partner(&self, side: Side, stmt: NodeId) -> Option<NodeId> {
        match side {
            Side::Src => self.s2d.get(&stmt).copied(),
            Side::Dst => self.d2s.get(&stmt).copied(),
        }
    }

    pub fn contains(&self, src: NodeId, dst: NodeId) -> bool {
        self.s2d.get(&src) == Some(&dst)
    }
}

pub fn derive_statement_mappings(src: &Ast, dst: &Ast, mapping: &NodeMappingSet) -> StatementMappingSet {
    let pairs: BTreeSet<(NodeId, NodeId)> = mapping
        .pairs()
        .iter()
        .copied()
        .filter(|&(s, d)| src.is_statement(s) && dst.is_statement(d))
        .collect();
    let s2d: BTreeMap<_, _> = pairs.iter().copied().collect();
    let d2s: BTreeMap<_, _> = pairs.iter().map(|&(s, d)| (d, s)).collect();
    let unmapped_src = src.statements().into_iter().filter(|s| !s2d.contains_key(s)).collect();
    let unmapped_dst = dst.statements().into_iter().filter(|d| !d2s.contains_key(d)).collect();
    StatementMappingSet {
        pairs,
        unmapped_src,
        unmapped_dst,
        s2d,
        d2s,
    }
}

pub type StatementKey = (Option<NodeId>, Option<NodeId>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenMappingSet {
    pub pairs: BTreeSet<(usize, usize)>,
    /// Token pairs keyed by the enclosing statements of their two tokens.
    pub per_statement: BTreeMap<StatementKey, Vec<(usize, usize)>>,
    s2d: Vec<Option<usize>>,
    d2s: Vec<Option<usize>>,
}

impl TokenMappingSet {
    pub fn partner(&self, side: Side, token: usize) -> Option<usize> {
        match side {
            Side::Src => self.s2d[token],
            Side::Dst => self.d2s[token],
        }
    }

    pub fn of_statements(&self, src: NodeId, dst: NodeId) -> &[(usize, usize)] {
        self.per_statement
            .get(&(Some(src), Some(dst)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

/// Pairs two token lists: equal texts along a longest common subsequence
/// (lexicographically smallest by position), then every gap between
/// consecutive anchors front to back. List ends count as anchors.
pub fn pair_token_lists<T: PartialEq>(a: &[T], b: &[T]) -> Vec<(usize, usize)> {
    let anchors = leftmost_lcs(a, b);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut ps, mut pd) = (0, 0);
    for &(s, d) in anchors.iter().chain(std::iter::once(&(a.len(), b.len()))) {
        out.extend((ps..s).zip(pd..d));
        if s < a.len() {
            out.push((s, d));
        }
        ps = s + 1;
        pd = d + 1;
    }
    out
}

/// Longest common subsequence as index pairs; among maximum ones, the
/// lexicographically smallest sequence of (src, dst) positions.
// The bounds are reassigned before every restart of the outer loop.
#[allow(clippy::mut_range_bound)]
pub fn leftmost_lcs<T: PartialEq>(a: &[T], b: &[T]) -> Vec<(usize, usize)> {
    let (n, m) = (a.len(), b.len());
    let mut suffix = vec![vec![0u32; m + 1]; n + 1];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            suffix[i][j] = if a[i] == b[j] {
                suffix[i + 1][j + 1] + 1
            } else {
                suffix[i + 1][j].max(suffix[i][j + 1])
            };
        }
    }
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    let mut need = suffix[0][0];
    'next: while need > 0 {
        for x in i..n {
            for y in j..m {
                if a[x] == b[y] && suffix[x + 1][y + 1] + 1 == need {
                    out.push((x, y));
                    i = x + 1;
                    j = y + 1;
                    need -= 1;
                    continue 'next;
                }
            }
        }
        unreachable!("suffix table promises a match");
    }
    out
}

/// Maps tokens through their directly relevant nodes. Value tokens and
/// other tokens of a node pair are paired separately, so a value token is
/// never mapped to a non-value one. Two singleton lists with the same role
/// fall out of this as a single gap.
pub fn derive_token_mappings(files: &FilePair, mapping: &NodeMappingSet) -> TokenMappingSet {
    let (st, dt) = (&files.src_tokens, &files.dst_tokens);
    let mut pairs = BTreeSet::new();
    for &(s, d) in mapping.pairs() {
        let (a, b) = (st.of_node(s), dt.of_node(d));
        for (xs, ys) in [(&a.value, &b.value), (&a.other, &b.other)] {
            let ta: Vec<&str> = xs.iter().map(|&i| st.get(i).text.as_str()).collect();
            let tb: Vec<&str> = ys.iter().map(|&i| dt.get(i).text.as_str()).collect();
            pairs.extend(pair_token_lists(&ta, &tb).into_iter().map(|(x, y)| (xs[x], ys[y])));
        }
    }
    let mut s2d = vec![None; st.len()];
    let mut d2s = vec![None; dt.len()];
    let mut per_statement: BTreeMap<StatementKey, Vec<(usize, usize)>> = BTreeMap::new();
    for &(x, y) in &pairs {
        s2d[x] = Some(y);
        d2s[y] = Some(x);
        let key = (files.token_statement(Side::Src, x), files.token_statement(Side::Dst, y));
        per_statement.entry(key).or_default().push((x, y));
    }
    TokenMappingSet {
        pairs,
        per_statement,
        s2d,
        d2s,
    }
}

/// One algorithm's mappings at all three granularities.
#[derive(Debug, Clone)]
pub struct Refined {
    pub nodes: NodeMappingSet,
    pub statements: StatementMappingSet,
    pub tokens: TokenMappingSet,
}

impl Refined {
    pub fn new(files: &FilePair, nodes: NodeMappingSet) -> Self {
        let statements = derive_statement_mappings(&files.src, &files.dst, &nodes);
        let tokens = derive_token_mappings(files, &nodes);
        Refined {
            nodes,
            statements,
            tokens,
        }
    }

    pub fn algorithm(&self) -> &str {
        self.nodes.algorithm()
    }

    pub fn node_partner(&self, side: Side, node: NodeId) -> Option<NodeId> {
        match side {
            Side::Src => self.nodes.dst_of(node),
            Side::Dst => self.nodes.src_of(node),
        }
    }
}
