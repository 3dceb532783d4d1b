//! JSON interchange format for trees produced by external parsers.
//!
//! ```json
//! { "header": { "format_version": 1,
//!               "statement_labels": ["ExpressionStatement", "..."],
//!               "block_label": "Block" },
//!   "nodes": [ { "id": 0, "label": "CompilationUnit", "start": 0, "end": 12,
//!                "children": [1] }, "..." ],
//!   "source": "..." }
//! ```

use serde::{Deserialize, Serialize};

use super::{Ast, AstNode, LabelTable, Span};
use crate::error::SchemaError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AstHeader {
    pub format_version: u32,
    pub statement_labels: Vec<String>,
    pub block_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: usize,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub start: usize,
    pub end: usize,
    #[serde(default)]
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AstDocument {
    pub header: AstHeader,
    pub nodes: Vec<NodeRecord>,
    pub source: String,
}

impl AstDocument {
    pub fn from_ast(ast: &Ast) -> Self {
        AstDocument {
            header: AstHeader {
                format_version: FORMAT_VERSION,
                statement_labels: ast.labels().statement_labels().map(String::from).collect(),
                block_label: ast.labels().block_label().to_string(),
            },
            nodes: ast
                .nodes()
                .iter()
                .map(|n| NodeRecord {
                    id: n.id,
                    label: n.label.clone(),
                    value: n.value.clone(),
                    start: n.span.start,
                    end: n.span.end,
                    children: n.children.clone(),
                })
                .collect(),
            source: ast.source().to_string(),
        }
    }

    pub fn into_ast(self) -> Result<Ast, SchemaError> {
        if self.header.format_version != FORMAT_VERSION {
            return Err(SchemaError::new(format!(
                "unsupported format_version {}",
                self.header.format_version
            )));
        }
        let n = self.nodes.len();
        let mut slots: Vec<Option<AstNode>> = vec![None; n];
        for rec in self.nodes {
            if rec.id >= n {
                return Err(SchemaError::new(format!(
                    "node ids not dense: id {} with {} nodes",
                    rec.id, n
                )));
            }
            if slots[rec.id].is_some() {
                return Err(SchemaError::new(format!("duplicate node id {}", rec.id)));
            }
            slots[rec.id] = Some(AstNode {
                id: rec.id,
                label: rec.label,
                value: rec.value,
                span: Span::new(rec.start, rec.end),
                parent: None,
                children: rec.children,
            });
        }
        let mut nodes: Vec<AstNode> = slots.into_iter().map(|s| s.expect("dense ids")).collect();
        let links: Vec<(usize, usize)> = nodes
            .iter()
            .flat_map(|p| p.children.iter().map(move |&c| (p.id, c)))
            .collect();
        for (p, c) in links {
            if let Some(child) = nodes.get_mut(c) {
                child.parent = Some(p);
            }
        }
        let labels = LabelTable::new(self.header.statement_labels, self.header.block_label);
        Ast::new(nodes, self.source, labels)
    }
}

/// Reads and validates an AST interchange document.
pub fn load_ast(bytes: &[u8]) -> Result<Ast, SchemaError> {
    let doc: AstDocument =
        serde_json::from_slice(bytes).map_err(|e| SchemaError::new(format!("malformed document: {}", e)))?;
    doc.into_ast()
}

pub fn save_ast(ast: &Ast) -> String {
    serde_json::to_string_pretty(&AstDocument::from_ast(ast)).expect("serializable")
}
