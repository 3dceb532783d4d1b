//! Recursive-descent parser for a small Java-like language.
//!
//! Covers class, field and method declarations, blocks, local variables,
//! assignments, calls, returns, `if`/`for`/`while`, casts, literals and
//! generic type references. Node labels follow the JDT naming scheme.

use super::lexer::{lex, LexKind, Lexeme};
use super::{Ast, AstNode, LabelTable, NodeId, Span};
use crate::error::SyntaxError;

const MODIFIERS: &[&str] = &["public", "private", "protected", "static", "final", "abstract"];
const PRIMITIVES: &[&str] = &["int", "long", "short", "byte", "char", "boolean", "double", "float"];
const RESERVED: &[&str] = &[
    "class",
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "void",
    "return",
    "if",
    "else",
    "for",
    "while",
    "new",
    "this",
    "null",
    "true",
    "false",
    "extends",
    "int",
    "long",
    "short",
    "byte",
    "char",
    "boolean",
    "double",
    "float",
];
const ASSIGN_OPS: &[&str] = &["=", "+=", "-=", "*=", "/=", "%="];
const BINARY_LEVELS: &[&[&str]] = &[
    &["||"],
    &["&&"],
    &["==", "!="],
    &["<", ">", "<=", ">="],
    &["+", "-"],
    &["*", "/", "%"],
];

#[derive(Debug)]
struct PNode {
    label: &'static str,
    value: Option<String>,
    span: Span,
    children: Vec<PNode>,
}

impl PNode {
    fn new(label: &'static str, span: Span) -> Self {
        PNode {
            label,
            value: None,
            span,
            children: Vec::new(),
        }
    }

    fn valued(label: &'static str, span: Span, value: impl Into<String>) -> Self {
        PNode {
            value: Some(value.into()),
            ..PNode::new(label, span)
        }
    }

    fn with(mut self, children: Vec<PNode>) -> Self {
        self.children = children;
        self
    }
}

/// Parses source text with the default statement table.
pub fn parse_source(text: &str) -> Result<Ast, SyntaxError> {
    let lexemes = lex(text, Span::new(0, text.len())).map_err(|e| position(text, e.offset, e.message))?;
    let mut p = Parser {
        src: text,
        lx: lexemes,
        pos: 0,
    };
    let mut types = Vec::new();
    while !p.at_end() {
        let start = p.pos;
        let mods = p.modifiers();
        types.push(p.type_decl(start, mods)?);
    }
    let root = PNode::new("CompilationUnit", Span::new(0, text.len())).with(types);
    let nodes = flatten(root);
    let ast = Ast::new(nodes, text.to_string(), LabelTable::default()).expect("parser output violates tree invariants");
    Ok(ast)
}

fn position(src: &str, offset: usize, message: impl Into<String>) -> SyntaxError {
    let line = super::line_of(src, offset);
    let line_start = src[..offset.min(src.len())].rfind('\n').map_or(0, |i| i + 1);
    SyntaxError {
        line,
        column: offset - line_start + 1,
        message: message.into(),
    }
}

fn flatten(root: PNode) -> Vec<AstNode> {
    fn walk(node: PNode, parent: Option<NodeId>, out: &mut Vec<AstNode>) -> NodeId {
        let id = out.len();
        out.push(AstNode {
            id,
            label: node.label.to_string(),
            value: node.value,
            span: node.span,
            parent,
            children: Vec::new(),
        });
        for child in node.children {
            let c = walk(child, Some(id), out);
            out[id].children.push(c);
        }
        id
    }
    let mut out = Vec::new();
    walk(root, None, &mut out);
    out
}

type PResult<T> = Result<T, SyntaxError>;

struct Parser<'a> {
    src: &'a str,
    lx: Vec<Lexeme>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.lx.len()
    }

    fn text_at(&self, i: usize) -> Option<&'a str> {
        self.lx.get(i).map(|l| &self.src[l.span.start..l.span.end])
    }

    fn peek(&self) -> Option<&'a str> {
        self.text_at(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&'a str> {
        self.text_at(self.pos + k)
    }

    fn kind(&self) -> Option<LexKind> {
        self.lx.get(self.pos).map(|l| l.kind)
    }

    fn at(&self, text: &str) -> bool {
        self.peek() == Some(text)
    }

    fn at_any(&self, set: &[&str]) -> Option<&'a str> {
        self.peek().filter(|t| set.contains(t))
    }

    fn bump(&mut self) -> Lexeme {
        let l = self.lx[self.pos];
        self.pos += 1;
        l
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.at(text) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        let offset = self.lx.get(self.pos).map_or(self.src.len(), |l| l.span.start);
        position(self.src, offset, message)
    }

    fn expect(&mut self, text: &str) -> PResult<Lexeme> {
        if self.at(text) {
            Ok(self.bump())
        } else {
            Err(self.error(format!(
                "expected `{}`, found {}",
                text,
                self.peek().map_or("end of input".to_string(), |t| format!("`{}`", t))
            )))
        }
    }

    fn start(&self) -> usize {
        self.lx.get(self.pos).map_or(self.src.len(), |l| l.span.start)
    }

    fn start_of(&self, lexeme_index: usize) -> usize {
        self.lx[lexeme_index].span.start
    }

    fn last_end(&self) -> usize {
        self.lx[self.pos - 1].span.end
    }

    fn span_from(&self, start: usize) -> Span {
        Span::new(start, self.last_end())
    }

    fn is_ident(&self) -> bool {
        self.kind() == Some(LexKind::Word) && !RESERVED.contains(&self.peek().unwrap_or(""))
    }

    fn simple_name(&mut self) -> PResult<PNode> {
        if !self.is_ident() {
            return Err(self.error("expected identifier"));
        }
        let l = self.bump();
        Ok(PNode::valued("SimpleName", l.span, &self.src[l.span.start..l.span.end]))
    }

    fn modifiers(&mut self) -> Vec<PNode> {
        let mut out = Vec::new();
        while let Some(m) = self.at_any(MODIFIERS) {
            let l = self.bump();
            out.push(PNode::valued("Modifier", l.span, m));
        }
        out
    }

    fn type_decl(&mut self, start_lexeme: usize, mut children: Vec<PNode>) -> PResult<PNode> {
        let start = if start_lexeme < self.lx.len() {
            self.start_of(start_lexeme)
        } else {
            self.src.len()
        };
        self.expect("class")?;
        children.push(self.simple_name()?);
        if self.eat("extends") {
            children.push(self.parse_type()?);
        }
        self.expect("{")?;
        while !self.at("}") {
            if self.at_end() {
                return Err(self.error("unterminated class body"));
            }
            children.push(self.member()?);
        }
        self.expect("}")?;
        Ok(PNode::new("TypeDeclaration", self.span_from(start)).with(children))
    }

    fn member(&mut self) -> PResult<PNode> {
        let start_lexeme = self.pos;
        let start = self.start();
        let mut children = self.modifiers();
        if self.at("class") {
            return self.type_decl(start_lexeme, children);
        }
        if self.is_ident() && self.peek_at(1) == Some("(") {
            children.push(self.simple_name()?);
            return self.method_rest(start, children);
        }
        if self.at("void") {
            let l = self.bump();
            children.push(PNode::valued("PrimitiveType", l.span, "void"));
        } else {
            children.push(self.parse_type()?);
        }
        if self.is_ident() && self.peek_at(1) == Some("(") {
            children.push(self.simple_name()?);
            return self.method_rest(start, children);
        }
        loop {
            children.push(self.fragment()?);
            if !self.eat(",") {
                break;
            }
        }
        self.expect(";")?;
        Ok(PNode::new("FieldDeclaration", self.span_from(start)).with(children))
    }

    fn method_rest(&mut self, start: usize, mut children: Vec<PNode>) -> PResult<PNode> {
        self.expect("(")?;
        if !self.at(")") {
            loop {
                let pstart = self.start();
                let mut param = self.modifiers();
                param.push(self.parse_type()?);
                param.push(self.simple_name()?);
                children.push(PNode::new("SingleVariableDeclaration", self.span_from(pstart)).with(param));
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        if self.at("{") {
            children.push(self.block()?);
        } else {
            self.expect(";")?;
        }
        Ok(PNode::new("MethodDeclaration", self.span_from(start)).with(children))
    }

    fn fragment(&mut self) -> PResult<PNode> {
        let start = self.start();
        let mut children = vec![self.simple_name()?];
        if self.eat("=") {
            children.push(self.expression()?);
        }
        Ok(PNode::new("VariableDeclarationFragment", self.span_from(start)).with(children))
    }

    fn parse_type(&mut self) -> PResult<PNode> {
        let start = self.start();
        let mut ty = if let Some(p) = self.at_any(PRIMITIVES) {
            let l = self.bump();
            PNode::valued("PrimitiveType", l.span, p)
        } else {
            if !self.is_ident() {
                return Err(self.error("expected type"));
            }
            let name = self.bump();
            if self.eat("<") {
                let mut args = Vec::new();
                loop {
                    args.push(self.parse_type()?);
                    if !self.eat(",") {
                        break;
                    }
                }
                self.expect(">")?;
                let span = self.span_from(start);
                PNode::valued("ParameterizedType", span, &self.src[span.start..span.end]).with(args)
            } else {
                PNode::valued("SimpleType", name.span, &self.src[name.span.start..name.span.end])
            }
        };
        while self.at("[") && self.peek_at(1) == Some("]") {
            self.pos += 2;
            ty = PNode::new("ArrayType", self.span_from(start)).with(vec![ty]);
        }
        Ok(ty)
    }

    /// Parses a type followed by an identifier without consuming input on
    /// failure.
    fn try_decl_head(&mut self) -> Option<PNode> {
        let save = self.pos;
        match self.parse_type() {
            Ok(ty) if self.is_ident() && matches!(self.peek_at(1), Some("=" | ";" | ",")) => Some(ty),
            _ => {
                self.pos = save;
                None
            }
        }
    }

    fn block(&mut self) -> PResult<PNode> {
        let start = self.start();
        self.expect("{")?;
        let mut stmts = Vec::new();
        while !self.at("}") {
            if self.at_end() {
                return Err(self.error("unterminated block"));
            }
            stmts.push(self.statement()?);
        }
        self.expect("}")?;
        Ok(PNode::new("Block", self.span_from(start)).with(stmts))
    }

    fn statement(&mut self) -> PResult<PNode> {
        let start = self.start();
        match self.peek() {
            Some("{") => return self.block(),
            Some("return") => {
                self.bump();
                let mut children = Vec::new();
                if !self.at(";") {
                    children.push(self.expression()?);
                }
                self.expect(";")?;
                return Ok(PNode::new("ReturnStatement", self.span_from(start)).with(children));
            }
            Some("if") => {
                self.bump();
                self.expect("(")?;
                let mut children = vec![self.expression()?];
                self.expect(")")?;
                children.push(self.statement()?);
                if self.eat("else") {
                    children.push(self.statement()?);
                }
                return Ok(PNode::new("IfStatement", self.span_from(start)).with(children));
            }
            Some("while") => {
                self.bump();
                self.expect("(")?;
                let mut children = vec![self.expression()?];
                self.expect(")")?;
                children.push(self.statement()?);
                return Ok(PNode::new("WhileStatement", self.span_from(start)).with(children));
            }
            Some("for") => return self.for_statement(),
            _ => {}
        }
        let save = self.pos;
        let mods = self.modifiers();
        if let Some(ty) = self.try_decl_head() {
            let mut children = mods;
            children.push(ty);
            loop {
                children.push(self.fragment()?);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(";")?;
            return Ok(PNode::new("VariableDeclarationStatement", self.span_from(start)).with(children));
        }
        if !mods.is_empty() {
            self.pos = save;
            return Err(self.error("expected local variable declaration after modifier"));
        }
        let expr = self.expression()?;
        self.expect(";")?;
        Ok(PNode::new("ExpressionStatement", self.span_from(start)).with(vec![expr]))
    }

    fn for_statement(&mut self) -> PResult<PNode> {
        let start = self.start();
        self.expect("for")?;
        self.expect("(")?;
        let mut children = Vec::new();
        if !self.at(";") {
            let istart = self.start();
            if let Some(ty) = self.try_decl_head() {
                let mut decl = vec![ty];
                loop {
                    decl.push(self.fragment()?);
                    if !self.eat(",") {
                        break;
                    }
                }
                children.push(PNode::new("VariableDeclarationExpression", self.span_from(istart)).with(decl));
            } else {
                loop {
                    children.push(self.expression()?);
                    if !self.eat(",") {
                        break;
                    }
                }
            }
        }
        self.expect(";")?;
        if !self.at(";") {
            children.push(self.expression()?);
        }
        self.expect(";")?;
        if !self.at(")") {
            loop {
                children.push(self.expression()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        children.push(self.statement()?);
        Ok(PNode::new("ForStatement", self.span_from(start)).with(children))
    }

    fn expression(&mut self) -> PResult<PNode> {
        let lhs = self.binary(0)?;
        if let Some(op) = self.at_any(ASSIGN_OPS) {
            self.bump();
            let rhs = self.expression()?;
            let span = Span::new(lhs.span.start, rhs.span.end);
            return Ok(PNode::valued("Assignment", span, op).with(vec![lhs, rhs]));
        }
        Ok(lhs)
    }

    fn binary(&mut self, level: usize) -> PResult<PNode> {
        if level == BINARY_LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        while let Some(op) = self.at_any(BINARY_LEVELS[level]) {
            self.bump();
            let rhs = self.binary(level + 1)?;
            let span = Span::new(lhs.span.start, rhs.span.end);
            lhs = PNode::valued("InfixExpression", span, op).with(vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn starts_operand(&self) -> bool {
        match self.kind() {
            Some(LexKind::Word) => {
                let t = self.peek().unwrap_or("");
                !RESERVED.contains(&t) || matches!(t, "this" | "new" | "null" | "true" | "false")
            }
            Some(LexKind::Number | LexKind::Str | LexKind::Char) => true,
            Some(LexKind::Punct) => self.at("(") || self.at("!"),
            None => false,
        }
    }

    fn unary(&mut self) -> PResult<PNode> {
        let start = self.start();
        if let Some(op) = self.at_any(&["!", "-", "+", "++", "--"]) {
            self.bump();
            let operand = self.unary()?;
            return Ok(PNode::valued("PrefixExpression", self.span_from(start), op).with(vec![operand]));
        }
        if self.at("(") {
            let save = self.pos;
            self.bump();
            if let Ok(ty) = self.parse_type() {
                if self.eat(")") && self.starts_operand() {
                    let operand = self.unary()?;
                    return Ok(PNode::new("CastExpression", self.span_from(start)).with(vec![ty, operand]));
                }
            }
            self.pos = save;
        }
        self.postfix()
    }

    fn arguments(&mut self) -> PResult<Vec<PNode>> {
        self.expect("(")?;
        let mut args = Vec::new();
        if !self.at(")") {
            loop {
                args.push(self.expression()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        Ok(args)
    }

    fn postfix(&mut self) -> PResult<PNode> {
        let start = self.start();
        let mut expr = self.primary()?;
        loop {
            if self.eat(".") {
                let name = self.simple_name()?;
                if self.at("(") {
                    let mut children = vec![expr, name];
                    children.extend(self.arguments()?);
                    expr = PNode::new("MethodInvocation", self.span_from(start)).with(children);
                } else {
                    expr = PNode::new("FieldAccess", self.span_from(start)).with(vec![expr, name]);
                }
            } else if self.eat("[") {
                let index = self.expression()?;
                self.expect("]")?;
                expr = PNode::new("ArrayAccess", self.span_from(start)).with(vec![expr, index]);
            } else if let Some(op) = self.at_any(&["++", "--"]) {
                self.bump();
                expr = PNode::valued("PostfixExpression", self.span_from(start), op).with(vec![expr]);
            } else {
                return Ok(expr);
            }
        }
    }

    fn primary(&mut self) -> PResult<PNode> {
        let start = self.start();
        let Some(kind) = self.kind() else {
            return Err(self.error("expected expression, found end of input"));
        };
        let text = self.peek().unwrap_or("");
        match kind {
            LexKind::Number => {
                let l = self.bump();
                Ok(PNode::valued("NumberLiteral", l.span, text))
            }
            LexKind::Str => {
                let l = self.bump();
                Ok(PNode::valued("StringLiteral", l.span, text))
            }
            LexKind::Char => {
                let l = self.bump();
                Ok(PNode::valued("CharacterLiteral", l.span, text))
            }
            LexKind::Punct if text == "(" => {
                self.bump();
                let inner = self.expression()?;
                self.expect(")")?;
                Ok(PNode::new("ParenthesizedExpression", self.span_from(start)).with(vec![inner]))
            }
            LexKind::Word => match text {
                "this" => {
                    let l = self.bump();
                    Ok(PNode::valued("ThisExpression", l.span, "this"))
                }
                "true" | "false" => {
                    let l = self.bump();
                    Ok(PNode::valued("BooleanLiteral", l.span, text))
                }
                "null" => {
                    let l = self.bump();
                    Ok(PNode::valued("NullLiteral", l.span, "null"))
                }
                "new" => {
                    self.bump();
                    let mut children = vec![self.parse_type()?];
                    children.extend(self.arguments()?);
                    Ok(PNode::new("ClassInstanceCreation", self.span_from(start)).with(children))
                }
                _ => {
                    let name = self.simple_name()?;
                    if self.at("(") {
                        let mut children = vec![name];
                        children.extend(self.arguments()?);
                        Ok(PNode::new("MethodInvocation", self.span_from(start)).with(children))
                    } else {
                        Ok(name)
                    }
                }
            },
            _ => Err(self.error(format!("unexpected `{}`", text))),
        }
    }
}
