//! Labeled ordered rooted trees over a source text.
//!
//! Every node carries a label, an optional value and a half-open byte span
//! into the source. Node ids are dense (`0..len`). The built-in parser emits
//! ids in preorder, interchange documents may use any dense numbering.

pub mod interchange;
pub mod lexer;
pub mod parser;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::SchemaError;

pub use interchange::{load_ast, save_ast};
pub use parser::parse_source;

pub type NodeId = usize;

/// Half-open byte interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AstNode {
    pub id: NodeId,
    pub label: String,
    pub value: Option<String>,
    pub span: Span,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
}

impl AstNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// The value when present and nonempty.
    pub fn value(&self) -> Option<&str> {
        self.value.as_deref().filter(|v| !v.is_empty())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StatementKind {
    OrdinaryStatement,
    Declaration,
    Block,
    NonStatement,
}

impl StatementKind {
    pub fn is_statement(self) -> bool {
        self != StatementKind::NonStatement
    }
}

pub const DEFAULT_BLOCK_LABEL: &str = "Block";

/// Statement labels of the built-in grammar.
pub const DEFAULT_STATEMENT_LABELS: &[&str] = &[
    "TypeDeclaration",
    "FieldDeclaration",
    "MethodDeclaration",
    "Block",
    "VariableDeclarationStatement",
    "ExpressionStatement",
    "ReturnStatement",
    "IfStatement",
    "ForStatement",
    "WhileStatement",
];

/// Which labels denote statements. Labels ending in `Declaration` classify as
/// declarations, the block label as a block, any other listed label as an
/// ordinary statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelTable {
    statement_labels: BTreeSet<String>,
    block_label: String,
}

impl Default for LabelTable {
    fn default() -> Self {
        LabelTable::new(
            DEFAULT_STATEMENT_LABELS.iter().map(|s| s.to_string()),
            DEFAULT_BLOCK_LABEL,
        )
    }
}

impl LabelTable {
    pub fn new(labels: impl IntoIterator<Item = String>, block_label: impl Into<String>) -> Self {
        LabelTable {
            statement_labels: labels.into_iter().collect(),
            block_label: block_label.into(),
        }
    }

    pub fn statement_labels(&self) -> impl Iterator<Item = &str> {
        self.statement_labels.iter().map(String::as_str)
    }

    pub fn block_label(&self) -> &str {
        &self.block_label
    }

    pub fn kind(&self, label: &str) -> StatementKind {
        if label == self.block_label {
            StatementKind::Block
        } else if !self.statement_labels.contains(label) {
            StatementKind::NonStatement
        } else if label.ends_with("Declaration") {
            StatementKind::Declaration
        } else {
            StatementKind::OrdinaryStatement
        }
    }
}

/// An immutable tree plus the source it was built from.
#[derive(Debug, Clone)]
pub struct Ast {
    nodes: Vec<AstNode>,
    root: NodeId,
    source: String,
    labels: LabelTable,
    preorder: Vec<NodeId>,
    pre_index: Vec<usize>,
    size: Vec<usize>,
    height: Vec<usize>,
}

impl Ast {
    /// Builds a tree after checking every structural invariant.
    pub fn new(nodes: Vec<AstNode>, source: String, labels: LabelTable) -> Result<Ast, SchemaError> {
        let root = validate(&nodes, &source)?;
        Ok(Ast::assemble(nodes, root, source, labels))
    }

    fn assemble(nodes: Vec<AstNode>, root: NodeId, source: String, labels: LabelTable) -> Ast {
        let n = nodes.len();
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            preorder.push(id);
            stack.extend(nodes[id].children.iter().rev());
        }
        let mut pre_index = vec![0; n];
        for (i, &id) in preorder.iter().enumerate() {
            pre_index[id] = i;
        }
        let mut size = vec![1; n];
        let mut height = vec![1; n];
        for &id in preorder.iter().rev() {
            for &c in &nodes[id].children {
                size[id] += size[c];
                height[id] = height[id].max(height[c] + 1);
            }
        }
        Ast {
            nodes,
            root,
            source,
            labels,
            preorder,
            pre_index,
            size,
            height,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn labels(&self) -> &LabelTable {
        &self.labels
    }

    pub fn nodes(&self) -> &[AstNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &AstNode {
        &self.nodes[id]
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.nodes[id].label
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].children
    }

    /// Source text covered by the node.
    pub fn text(&self, id: NodeId) -> &str {
        let span = self.nodes[id].span;
        &self.source[span.start..span.end]
    }

    /// Nodes in preorder.
    pub fn preorder(&self) -> &[NodeId] {
        &self.preorder
    }

    pub fn pre_index(&self, id: NodeId) -> usize {
        self.pre_index[id]
    }

    /// Number of nodes in the subtree rooted at `id`, itself included.
    pub fn size(&self, id: NodeId) -> usize {
        self.size[id]
    }

    /// Leaves have height 1.
    pub fn height(&self, id: NodeId) -> usize {
        self.height[id]
    }

    /// Strict descendants of `id`, in preorder.
    pub fn descendants(&self, id: NodeId) -> &[NodeId] {
        let start = self.pre_index[id];
        &self.preorder[start + 1..start + self.size[id]]
    }

    /// Nodes of the subtree rooted at `id` (itself first), in preorder.
    pub fn subtree(&self, id: NodeId) -> &[NodeId] {
        let start = self.pre_index[id];
        &self.preorder[start..start + self.size[id]]
    }

    /// Whether `node` lies in the subtree rooted at `ancestor` (inclusive).
    pub fn is_in_subtree(&self, ancestor: NodeId, node: NodeId) -> bool {
        let a = self.pre_index[ancestor];
        let n = self.pre_index[node];
        a <= n && n < a + self.size[ancestor]
    }

    /// `id` followed by its ancestors up to the root.
    pub fn ancestors_or_self(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::successors(Some(id), move |&n| self.nodes[n].parent)
    }

    pub fn statement_kind(&self, id: NodeId) -> StatementKind {
        self.labels.kind(&self.nodes[id].label)
    }

    pub fn is_statement(&self, id: NodeId) -> bool {
        self.statement_kind(id).is_statement()
    }

    /// Nearest ancestor-or-self classified as a statement.
    pub fn enclosing_statement(&self, id: NodeId) -> Option<NodeId> {
        self.ancestors_or_self(id).find(|&n| self.is_statement(n))
    }

    /// Statement nodes ordered by span start, outer before inner on ties.
    pub fn statements(&self) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self
            .preorder
            .iter()
            .copied()
            .filter(|&n| self.is_statement(n))
            .collect();
        out.sort_by_key(|&n| (self.nodes[n].span.start, self.pre_index[n]));
        out
    }

    /// 1-based line of a byte offset.
    pub fn line_of(&self, offset: usize) -> usize {
        line_of(&self.source, offset)
    }
}

pub(crate) fn line_of(source: &str, offset: usize) -> usize {
    let offset = offset.min(source.len());
    source.as_bytes()[..offset].iter().filter(|&&b| b == b'\n').count() + 1
}

/// Checks tree shape, span nesting, child ordering and value placement.
/// Returns the root id.
fn validate(nodes: &[AstNode], source: &str) -> Result<NodeId, SchemaError> {
    let n = nodes.len();
    if n == 0 {
        return Err(SchemaError::new("no nodes"));
    }
    for (i, node) in nodes.iter().enumerate() {
        if node.id != i {
            return Err(SchemaError::new(format!(
                "node ids not dense: position {} holds id {}",
                i, node.id
            )));
        }
    }
    let mut parent: Vec<Option<NodeId>> = vec![None; n];
    for node in nodes {
        for &c in &node.children {
            if c >= n {
                return Err(SchemaError::new(format!(
                    "node {} references unknown child {}",
                    node.id, c
                )));
            }
            if parent[c].is_some() {
                return Err(SchemaError::new(format!("node {} has multiple parents", c)));
            }
            parent[c] = Some(node.id);
        }
    }
    let roots: Vec<NodeId> = (0..n).filter(|&i| parent[i].is_none()).collect();
    let root = match roots.as_slice() {
        [r] => *r,
        [] => return Err(SchemaError::new("no root (cycle)")),
        _ => return Err(SchemaError::new("multiple roots")),
    };
    // reachability rules out cycles detached from the root
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    let mut count = 0;
    while let Some(id) = stack.pop() {
        if seen[id] {
            return Err(SchemaError::new("cycle"));
        }
        seen[id] = true;
        count += 1;
        stack.extend(nodes[id].children.iter().copied());
    }
    if count != n {
        return Err(SchemaError::new("cycle"));
    }
    for node in nodes {
        if node.parent != parent[node.id] {
            return Err(SchemaError::new(format!(
                "node {} parent link disagrees with child lists",
                node.id
            )));
        }
        let span = node.span;
        if span.start > span.end || span.end > source.len() {
            return Err(SchemaError::new(format!(
                "node {} range {}..{} outside source",
                node.id, span.start, span.end
            )));
        }
        if !source.is_char_boundary(span.start) || !source.is_char_boundary(span.end) {
            return Err(SchemaError::new(format!(
                "node {} range not on a character boundary",
                node.id
            )));
        }
        let mut prev_end = span.start;
        for &c in &node.children {
            let cs = nodes[c].span;
            if !span.contains(cs) {
                return Err(SchemaError::new(format!(
                    "range nesting: child {} not inside parent {}",
                    c, node.id
                )));
            }
            if cs.start < prev_end {
                return Err(SchemaError::new(format!(
                    "child order: children of {} overlap or are out of order",
                    node.id
                )));
            }
            prev_end = cs.end;
        }
        if let Some(v) = node.value() {
            if !source[span.start..span.end].contains(v) {
                return Err(SchemaError::new(format!(
                    "value of node {} does not occur in its range",
                    node.id
                )));
            }
        }
    }
    Ok(root)
}
