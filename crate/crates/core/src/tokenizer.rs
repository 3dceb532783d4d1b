//! Token lists derived from a tree.
//!
//! A token belongs to its directly relevant node: the deepest node whose span
//! contains it. Tokens are found by lexing the parts of each node's span that
//! no child covers, so comments and whitespace never produce tokens and a
//! string literal stays a single token.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ast::lexer::lex_lenient;
use crate::ast::{Ast, NodeId, Span};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    VariableName,
    TypeName,
    MethodName,
    DeclarationName,
    /// Label of the directly relevant node, for tokens not owned by a name.
    Structural(String),
}

impl TokenKind {
    pub fn is_name(&self) -> bool {
        !matches!(self, TokenKind::Structural(_))
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::VariableName => f.write_str("VariableName"),
            TokenKind::TypeName => f.write_str("TypeName"),
            TokenKind::MethodName => f.write_str("MethodName"),
            TokenKind::DeclarationName => f.write_str("DeclarationName"),
            TokenKind::Structural(label) => write!(f, "Structural({})", label),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub index: usize,
    pub text: String,
    pub span: Span,
    /// Directly relevant node.
    pub drn: NodeId,
    /// Whether the token composes the value of its directly relevant node.
    pub in_node_value: bool,
    pub kind: TokenKind,
}

/// Directly relevant tokens of one node, in source order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DrnTokens {
    pub value: Vec<usize>,
    pub other: Vec<usize>,
}

impl DrnTokens {
    pub fn len(&self) -> usize {
        self.value.len() + self.other.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenList {
    tokens: Vec<Token>,
    by_drn: Vec<DrnTokens>,
}

impl TokenList {
    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn get(&self, index: usize) -> &Token {
        &self.tokens[index]
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn of_node(&self, node: NodeId) -> &DrnTokens {
        &self.by_drn[node]
    }

    /// One line per token: index, kind, text, range, drn.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for t in &self.tokens {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}..{}\t{}\n",
                t.index, t.kind, t.text, t.span.start, t.span.end, t.drn
            ));
        }
        out
    }
}

const NAME_LABELS: &[&str] = &["SimpleName", "QualifiedName"];
const TYPE_LABELS: &[&str] = &[
    "SimpleType",
    "ParameterizedType",
    "QualifiedType",
    "PrimitiveType",
    "ArrayType",
];
const DECLARATION_PARENTS: &[&str] = &[
    "TypeDeclaration",
    "MethodDeclaration",
    "VariableDeclarationFragment",
    "SingleVariableDeclaration",
    "EnumDeclaration",
    "EnumConstantDeclaration",
];
const CALL_PARENTS: &[&str] = &["MethodInvocation", "SuperMethodInvocation"];

pub fn tokenize(ast: &Ast) -> TokenList {
    let source = ast.source();
    let mut raw: Vec<(Span, NodeId, bool)> = Vec::new();
    for node in ast.nodes() {
        let mut own = Vec::new();
        let mut cursor = node.span.start;
        for &c in &node.children {
            let cs = ast.node(c).span;
            own.extend(lex_lenient(source, Span::new(cursor, cs.start)));
            cursor = cs.end;
        }
        own.extend(lex_lenient(source, Span::new(cursor, node.span.end)));

        let mut in_value = vec![false; own.len()];
        if let Some(value) = node.value() {
            let lexemes = lex_lenient(value, Span::new(0, value.len()));
            let words: Vec<&str> = lexemes
                .iter()
                .filter(|l| l.kind.is_wordlike())
                .map(|l| &value[l.span.start..l.span.end])
                .collect();
            let wanted: Vec<&str> = if words.is_empty() {
                lexemes.iter().map(|l| &value[l.span.start..l.span.end]).collect()
            } else {
                words
            };
            let mut k = 0;
            for (i, l) in own.iter().enumerate() {
                if k < wanted.len() && &source[l.span.start..l.span.end] == wanted[k] {
                    in_value[i] = true;
                    k += 1;
                }
            }
        }
        raw.extend(own.iter().zip(in_value).map(|(l, v)| (l.span, node.id, v)));
    }
    raw.sort_by_key(|&(span, _, _)| span.start);

    let mut by_drn = vec![DrnTokens::default(); ast.len()];
    let tokens = raw
        .into_iter()
        .enumerate()
        .map(|(index, (span, drn, in_node_value))| {
            let cell = &mut by_drn[drn];
            if in_node_value {
                cell.value.push(index);
            } else {
                cell.other.push(index);
            }
            Token {
                index,
                text: source[span.start..span.end].to_string(),
                span,
                drn,
                in_node_value,
                kind: classify(ast, drn, in_node_value),
            }
        })
        .collect();
    TokenList { tokens, by_drn }
}

/// Deepest node whose span contains `span`.
pub fn directly_relevant_node(ast: &Ast, span: Span) -> Option<NodeId> {
    let mut current = ast.root();
    if !ast.node(current).span.contains(span) {
        return None;
    }
    'descend: loop {
        for &c in ast.children(current) {
            if ast.node(c).span.contains(span) {
                current = c;
                continue 'descend;
            }
        }
        return Some(current);
    }
}

pub fn token_kind(ast: &Ast, token: &Token) -> TokenKind {
    classify(ast, token.drn, token.in_node_value)
}

fn classify(ast: &Ast, drn: NodeId, in_node_value: bool) -> TokenKind {
    let label = ast.label(drn);
    if !in_node_value {
        return TokenKind::Structural(label.to_string());
    }
    if TYPE_LABELS.contains(&label) && label != "PrimitiveType" {
        return TokenKind::TypeName;
    }
    if !NAME_LABELS.contains(&label) {
        return TokenKind::Structural(label.to_string());
    }
    let Some(parent) = ast.parent(drn) else {
        return TokenKind::VariableName;
    };
    let parent_label = ast.label(parent);
    if DECLARATION_PARENTS.contains(&parent_label) {
        let first_name = ast
            .children(parent)
            .iter()
            .copied()
            .find(|&c| NAME_LABELS.contains(&ast.label(c)));
        if first_name == Some(drn) {
            return TokenKind::DeclarationName;
        }
    }
    if TYPE_LABELS.contains(&parent_label) {
        return TokenKind::TypeName;
    }
    if CALL_PARENTS.contains(&parent_label) {
        let after = &ast.source()[ast.node(drn).span.end..];
        if after.trim_start().starts_with('(') {
            return TokenKind::MethodName;
        }
    }
    TokenKind::VariableName
}
