//! Seeded synthetic corpus: random classes, a short random edit script per
//! revision, the mapping implied by the script and a corrupted copy of it.
//!
//! Every statement sits on its own line and every edit keeps the shape of the
//! statements it touches, so corresponding statements are found by line and
//! their own nodes pair up in preorder.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ast::{parse_source, Ast, NodeId, StatementKind};
use crate::error::{Error, Result};
use crate::mappers::{save_mappings, Algorithm, MapperConfig, NodeMappingSet};
use crate::refine::{FilePair, Refined, Side};

use super::eval::Label;

pub const TRUTH: &str = "truth";
pub const CORRUPT: &str = "corrupt";

const VARIABLES: &[&str] = &[
    "count", "total", "index", "value", "buffer", "data", "result", "offset", "size", "limit", "name", "item",
    "cursor", "width", "height", "delta",
];
const METHODS: &[&str] = &[
    "read", "write", "close", "update", "reset", "append", "flush", "get", "put", "compute",
];
const PRIMITIVES: &[&str] = &["int", "long", "short", "byte"];
const OBJECTS: &[&str] = &["String", "Object", "Buffer", "List", "Reader"];
const OPERATORS: &[&str] = &["+", "-", "*"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EditKind {
    Rename,
    TypeChange,
    Move,
    Insert,
    Delete,
    LiteralUpdate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// Two name tokens in different statements exchange partners.
    TokenSwap,
    /// Two statements exchange partners; their nodes stay put.
    StatementSwap,
    /// Every node of one statement loses its partner.
    Unmap,
}

#[derive(Debug, Clone)]
enum Expr {
    Var(String),
    Num(u32),
    Bin(Box<Expr>, &'static str, Box<Expr>),
    Call(String, &'static str, Vec<Expr>),
}

#[derive(Debug, Clone)]
enum Kind {
    Decl {
        ty: String,
        name: String,
        init: Expr,
    },
    Assign {
        target: String,
        value: Expr,
    },
    Call {
        recv: String,
        method: &'static str,
        args: Vec<Expr>,
    },
}

#[derive(Debug, Clone)]
struct Stmt {
    id: u32,
    kind: Kind,
}

#[derive(Debug, Clone)]
struct Method {
    id: u32,
    name: String,
    params: Vec<(String, String)>,
    body: Vec<Stmt>,
}

#[derive(Debug, Clone)]
struct Program {
    class: String,
    fields: Vec<Stmt>,
    methods: Vec<Method>,
}

const CLASS_ID: u32 = 0;

impl Expr {
    fn render(&self, out: &mut String) {
        match self {
            Expr::Var(v) => out.push_str(v),
            Expr::Num(n) => {
                let _ = write!(out, "{}", n);
            }
            Expr::Bin(a, op, b) => {
                a.render(out);
                let _ = write!(out, " {} ", op);
                b.render(out);
            }
            Expr::Call(recv, m, args) => {
                let _ = write!(out, "{}.{}(", recv, m);
                render_args(args, out);
                out.push(')');
            }
        }
    }

    fn rename(&mut self, from: &str, to: &str) {
        match self {
            Expr::Var(v) => rename_str(v, from, to),
            Expr::Num(_) => {}
            Expr::Bin(a, _, b) => {
                a.rename(from, to);
                b.rename(from, to);
            }
            Expr::Call(recv, _, args) => {
                rename_str(recv, from, to);
                args.iter_mut().for_each(|a| a.rename(from, to));
            }
        }
    }

    fn numbers(&mut self) -> Vec<&mut u32> {
        match self {
            Expr::Var(_) => Vec::new(),
            Expr::Num(n) => vec![n],
            Expr::Bin(a, _, b) => {
                let mut v = a.numbers();
                v.extend(b.numbers());
                v
            }
            Expr::Call(_, _, args) => args.iter_mut().flat_map(|a| a.numbers()).collect(),
        }
    }
}

fn rename_str(s: &mut String, from: &str, to: &str) {
    if s == from {
        *s = to.to_string();
    }
}

fn render_args(args: &[Expr], out: &mut String) {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        a.render(out);
    }
}

impl Kind {
    fn render(&self) -> String {
        let mut out = String::new();
        match self {
            Kind::Decl { ty, name, init } => {
                let _ = write!(out, "{} {} = ", ty, name);
                init.render(&mut out);
            }
            Kind::Assign { target, value } => {
                let _ = write!(out, "{} = ", target);
                value.render(&mut out);
            }
            Kind::Call { recv, method, args } => {
                let _ = write!(out, "{}.{}(", recv, method);
                render_args(args, &mut out);
                out.push(')');
            }
        }
        out.push(';');
        out
    }

    fn rename(&mut self, from: &str, to: &str) {
        match self {
            Kind::Decl { name, init, .. } => {
                rename_str(name, from, to);
                init.rename(from, to);
            }
            Kind::Assign { target, value } => {
                rename_str(target, from, to);
                value.rename(from, to);
            }
            Kind::Call { recv, args, .. } => {
                rename_str(recv, from, to);
                args.iter_mut().for_each(|a| a.rename(from, to));
            }
        }
    }

    fn numbers(&mut self) -> Vec<&mut u32> {
        match self {
            Kind::Decl { init, .. } => init.numbers(),
            Kind::Assign { value, .. } => value.numbers(),
            Kind::Call { args, .. } => args.iter_mut().flat_map(|a| a.numbers()).collect(),
        }
    }
}

impl Program {
    /// Source text and the 1-based line of every class, field, method and
    /// statement id.
    fn render(&self) -> (String, BTreeMap<u32, usize>) {
        let mut lines = vec![format!("public class {} {{", self.class)];
        let mut at = BTreeMap::from([(CLASS_ID, 1)]);
        for f in &self.fields {
            lines.push(format!("    private {}", f.kind.render()));
            at.insert(f.id, lines.len());
        }
        for m in &self.methods {
            lines.push(String::new());
            let params: Vec<String> = m.params.iter().map(|(t, n)| format!("{} {}", t, n)).collect();
            lines.push(format!("    public void {}({}) {{", m.name, params.join(", ")));
            at.insert(m.id, lines.len());
            for s in &m.body {
                lines.push(format!("        {}", s.kind.render()));
                at.insert(s.id, lines.len());
            }
            lines.push("    }".to_string());
        }
        lines.push("}".to_string());
        let mut text = lines.join("\n");
        text.push('\n');
        (text, at)
    }

    fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut decl = |k: &Kind| {
            if let Kind::Decl { name, .. } = k {
                out.insert(name.clone());
            }
        };
        for f in &self.fields {
            decl(&f.kind);
        }
        for m in &self.methods {
            for s in &m.body {
                decl(&s.kind);
            }
        }
        for m in &self.methods {
            out.extend(m.params.iter().map(|(_, n)| n.clone()));
        }
        out
    }

    /// Fields, then the method's parameters and locals.
    fn scope(&self, method: usize) -> Vec<String> {
        let decl_name = |s: &Stmt| match &s.kind {
            Kind::Decl { name, .. } => Some(name.clone()),
            _ => None,
        };
        let mut out: Vec<String> = self.fields.iter().filter_map(decl_name).collect();
        let m = &self.methods[method];
        out.extend(m.params.iter().map(|(_, n)| n.clone()));
        out.extend(m.body.iter().filter_map(decl_name));
        out
    }
}

struct Gen {
    rng: ChaCha8Rng,
    next_id: u32,
}

impl Gen {
    fn id(&mut self) -> u32 {
        self.next_id += 1;
        self.next_id
    }

    fn fresh_name(&mut self, used: &mut BTreeSet<String>) -> String {
        let base = *VARIABLES.choose(&mut self.rng).unwrap();
        let mut name = base.to_string();
        let mut k = 1;
        while used.contains(&name) {
            k += 1;
            name = format!("{}{}", base, k);
        }
        used.insert(name.clone());
        name
    }

    fn ty(&mut self) -> String {
        let pool = if self.rng.gen_bool(0.5) { PRIMITIVES } else { OBJECTS };
        pool.choose(&mut self.rng).unwrap().to_string()
    }

    fn atom(&mut self, scope: &[String]) -> Expr {
        match scope.choose(&mut self.rng) {
            Some(v) if self.rng.gen_bool(0.6) => Expr::Var(v.clone()),
            _ => Expr::Num(self.rng.gen_range(0..100)),
        }
    }

    fn expr(&mut self, scope: &[String]) -> Expr {
        match self.rng.gen_range(0..10) {
            0..=3 => self.atom(scope),
            4..=6 => {
                let a = self.atom(scope);
                let op = *OPERATORS.choose(&mut self.rng).unwrap();
                let b = self.atom(scope);
                Expr::Bin(Box::new(a), op, Box::new(b))
            }
            _ => match scope.choose(&mut self.rng) {
                Some(recv) => {
                    let recv = recv.clone();
                    let method = *METHODS.choose(&mut self.rng).unwrap();
                    let n = self.rng.gen_range(0..=2);
                    let args = (0..n).map(|_| self.atom(scope)).collect();
                    Expr::Call(recv, method, args)
                }
                None => self.atom(scope),
            },
        }
    }

    fn statement(&mut self, scope: &[String], used: &mut BTreeSet<String>) -> Stmt {
        let id = self.id();
        let roll = if scope.is_empty() { 0 } else { self.rng.gen_range(0..10) };
        let kind = match roll {
            0..=3 => {
                let ty = self.ty();
                let init = self.expr(scope);
                Kind::Decl {
                    ty,
                    name: self.fresh_name(used),
                    init,
                }
            }
            4..=6 => Kind::Assign {
                target: scope.choose(&mut self.rng).unwrap().clone(),
                value: self.expr(scope),
            },
            _ => {
                let recv = scope.choose(&mut self.rng).unwrap().clone();
                let method = *METHODS.choose(&mut self.rng).unwrap();
                let n = self.rng.gen_range(0..=2);
                Kind::Call {
                    recv,
                    method,
                    args: (0..n).map(|_| self.expr(scope)).collect(),
                }
            }
        };
        Stmt { id, kind }
    }

    fn program(&mut self, index: usize) -> Program {
        let mut used = BTreeSet::new();
        let mut fields = Vec::new();
        for _ in 0..self.rng.gen_range(1..=3) {
            let id = self.id();
            let ty = self.ty();
            let name = self.fresh_name(&mut used);
            fields.push(Stmt {
                id,
                kind: Kind::Decl {
                    ty,
                    name,
                    init: Expr::Num(self.rng.gen_range(0..100)),
                },
            });
        }
        let mut program = Program {
            class: format!("Sample{}", index),
            fields,
            methods: Vec::new(),
        };
        let n = self.rng.gen_range(1..=3);
        let method_names: Vec<&str> = METHODS.choose_multiple(&mut self.rng, n).copied().collect();
        for name in method_names {
            let id = self.id();
            let params = (0..self.rng.gen_range(0..=2))
                .map(|_| (self.ty(), self.fresh_name(&mut used)))
                .collect();
            program.methods.push(Method {
                id,
                name: format!("{}Values", name),
                params,
                body: Vec::new(),
            });
            let m = program.methods.len() - 1;
            for _ in 0..self.rng.gen_range(2..=7) {
                let scope = program.scope(m);
                let s = self.statement(&scope, &mut used);
                program.methods[m].body.push(s);
            }
        }
        program
    }

    fn edit(&mut self, p: &mut Program, kind: EditKind) -> bool {
        let m = self.rng.gen_range(0..p.methods.len());
        match kind {
            EditKind::Rename => {
                let method = &p.methods[m];
                let mut local: Vec<String> = method.params.iter().map(|(_, n)| n.clone()).collect();
                local.extend(method.body.iter().filter_map(|s| match &s.kind {
                    Kind::Decl { name, .. } => Some(name.clone()),
                    _ => None,
                }));
                let Some(from) = local.choose(&mut self.rng).cloned() else {
                    return false;
                };
                let mut used = p.names();
                let to = self.fresh_name(&mut used);
                let method = &mut p.methods[m];
                method.params.iter_mut().for_each(|(_, n)| rename_str(n, &from, &to));
                method.body.iter_mut().for_each(|s| s.kind.rename(&from, &to));
                true
            }
            EditKind::TypeChange => {
                let mut decls: Vec<&mut Kind> = p
                    .fields
                    .iter_mut()
                    .chain(p.methods.iter_mut().flat_map(|m| m.body.iter_mut()))
                    .map(|s| &mut s.kind)
                    .filter(|k| matches!(k, Kind::Decl { .. }))
                    .collect();
                let i = match decls.len() {
                    0 => return false,
                    n => self.rng.gen_range(0..n),
                };
                if let Kind::Decl { ty, .. } = &mut decls[i] {
                    let pool = if PRIMITIVES.contains(&ty.as_str()) {
                        PRIMITIVES
                    } else {
                        OBJECTS
                    };
                    let others: Vec<&&str> = pool.iter().filter(|t| **t != ty.as_str()).collect();
                    *ty = others.choose(&mut self.rng).unwrap().to_string();
                }
                true
            }
            EditKind::LiteralUpdate => {
                let mut numbers: Vec<&mut u32> = p
                    .fields
                    .iter_mut()
                    .chain(p.methods.iter_mut().flat_map(|m| m.body.iter_mut()))
                    .flat_map(|s| s.kind.numbers())
                    .collect();
                let i = match numbers.len() {
                    0 => return false,
                    n => self.rng.gen_range(0..n),
                };
                *numbers[i] = (*numbers[i] + self.rng.gen_range(1..50)) % 100;
                true
            }
            EditKind::Insert => {
                let scope = p.scope(m);
                let mut used = p.names();
                let s = self.statement(&scope, &mut used);
                let at = self.rng.gen_range(0..=p.methods[m].body.len());
                p.methods[m].body.insert(at, s);
                true
            }
            EditKind::Delete => {
                let body = &mut p.methods[m].body;
                if body.len() < 2 {
                    return false;
                }
                body.remove(self.rng.gen_range(0..body.len()));
                true
            }
            EditKind::Move => {
                let body = &mut p.methods[m].body;
                if body.len() < 2 {
                    return false;
                }
                let from = self.rng.gen_range(0..body.len());
                let mut to = self.rng.gen_range(0..body.len() - 1);
                if to >= from {
                    to += 1;
                }
                let s = body.remove(from);
                body.insert(to, s);
                true
            }
        }
    }
}

/// One generated revision with its recorded and corrupted mappings.
#[derive(Debug, Clone)]
pub struct SynthRevision {
    pub id: String,
    pub before: String,
    pub after: String,
    pub edits: Vec<EditKind>,
    pub corruption: Corruption,
    pub truth: NodeMappingSet,
    pub corrupt: NodeMappingSet,
}

impl SynthRevision {
    pub fn files(&self) -> Result<FilePair> {
        let parse = |text: &str, which: &str| {
            parse_source(text).map_err(|e| Error::Revision(format!("{} {}: {}", self.id, which, e)))
        };
        Ok(FilePair::new(
            parse(&self.before, "before")?,
            parse(&self.after, "after")?,
        ))
    }
}

fn statements_by_line(ast: &Ast) -> BTreeMap<usize, Vec<NodeId>> {
    let mut out: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
    for s in ast.statements() {
        out.entry(ast.line_of(ast.node(s).span.start)).or_default().push(s);
    }
    out
}

fn own_nodes(ast: &Ast) -> BTreeMap<NodeId, Vec<NodeId>> {
    let mut out: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    for &n in ast.preorder() {
        if let Some(s) = ast.enclosing_statement(n) {
            out.entry(s).or_default().push(n);
        }
    }
    out
}

/// Pairs implied by the edit script: the roots, plus the own nodes of every
/// statement that survives, in preorder.
fn truth_pairs(
    src: &Ast,
    dst: &Ast,
    src_at: &BTreeMap<u32, usize>,
    dst_at: &BTreeMap<u32, usize>,
) -> Vec<(NodeId, NodeId)> {
    let (sl, dl) = (statements_by_line(src), statements_by_line(dst));
    let (so, do_) = (own_nodes(src), own_nodes(dst));
    let mut pairs = vec![(src.root(), dst.root())];
    for (id, line) in src_at {
        let Some(other) = dst_at.get(id) else { continue };
        let (Some(ss), Some(ds)) = (sl.get(line), dl.get(other)) else {
            continue;
        };
        for (&s, &d) in ss.iter().zip(ds) {
            if src.label(s) != dst.label(d) {
                continue;
            }
            let (a, b) = (&so[&s], &do_[&d]);
            let same_shape = a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| src.label(x) == dst.label(y));
            if same_shape {
                pairs.extend(a.iter().copied().zip(b.iter().copied()));
            } else {
                pairs.push((s, d));
            }
        }
    }
    pairs
}

fn corrupt_pairs(
    rng: &mut ChaCha8Rng,
    files: &FilePair,
    truth: &NodeMappingSet,
) -> (Corruption, Vec<(NodeId, NodeId)>) {
    let (src, dst) = (&files.src, &files.dst);
    let pairs: Vec<(NodeId, NodeId)> = truth.pairs().iter().copied().collect();
    let mut order = [Corruption::TokenSwap, Corruption::StatementSwap, Corruption::Unmap];
    order.shuffle(rng);
    for kind in order {
        match kind {
            Corruption::TokenSwap => {
                let names: Vec<(NodeId, NodeId)> = pairs
                    .iter()
                    .copied()
                    .filter(|&(s, _)| src.label(s) == "SimpleName")
                    .collect();
                let mut candidates = Vec::new();
                for (i, &(s1, d1)) in names.iter().enumerate() {
                    for &(s2, d2) in &names[i + 1..] {
                        if src.enclosing_statement(s1) != src.enclosing_statement(s2)
                            && dst.node(d1).value != dst.node(d2).value
                        {
                            candidates.push(((s1, d1), (s2, d2)));
                        }
                    }
                }
                if let Some(&((s1, d1), (s2, d2))) = candidates.choose(rng) {
                    let mut out: Vec<_> = pairs
                        .iter()
                        .copied()
                        .filter(|&p| p != (s1, d1) && p != (s2, d2))
                        .collect();
                    out.extend([(s1, d2), (s2, d1)]);
                    return (kind, out);
                }
            }
            Corruption::StatementSwap => {
                let stmts: Vec<(NodeId, NodeId)> = pairs
                    .iter()
                    .copied()
                    .filter(|&(s, _)| src.statement_kind(s) == StatementKind::OrdinaryStatement)
                    .collect();
                let mut candidates = Vec::new();
                for (i, &a) in stmts.iter().enumerate() {
                    for &b in &stmts[i + 1..] {
                        if src.label(a.0) == src.label(b.0) {
                            candidates.push((a, b));
                        }
                    }
                }
                if let Some(&((s1, d1), (s2, d2))) = candidates.choose(rng) {
                    let mut out: Vec<_> = pairs
                        .iter()
                        .copied()
                        .filter(|&p| p != (s1, d1) && p != (s2, d2))
                        .collect();
                    out.extend([(s1, d2), (s2, d1)]);
                    return (kind, out);
                }
            }
            Corruption::Unmap => {
                let stmts: Vec<NodeId> = pairs
                    .iter()
                    .map(|&(s, _)| s)
                    .filter(|&s| matches!(src.statement_kind(s), StatementKind::OrdinaryStatement))
                    .collect();
                if let Some(&victim) = stmts.choose(rng) {
                    let out = pairs
                        .iter()
                        .copied()
                        .filter(|&(s, _)| src.enclosing_statement(s) != Some(victim))
                        .collect();
                    return (kind, out);
                }
            }
        }
    }
    (Corruption::Unmap, pairs)
}

const EDITS: [EditKind; 6] = [
    EditKind::Rename,
    EditKind::TypeChange,
    EditKind::Move,
    EditKind::Insert,
    EditKind::Delete,
    EditKind::LiteralUpdate,
];

/// Generates `count` revisions from `seed`. Identical arguments give
/// identical output.
pub fn generate(seed: u64, count: usize) -> Result<Vec<SynthRevision>> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let width = count.saturating_sub(1).to_string().len().max(3);
    (0..count)
        .map(|i| {
            let mut g = Gen {
                rng: ChaCha8Rng::seed_from_u64(master.gen()),
                next_id: CLASS_ID,
            };
            let before = g.program(i);
            let mut after = before.clone();
            let mut edits = Vec::new();
            for _ in 0..g.rng.gen_range(1..=3) {
                for _ in 0..10 {
                    let kind = *EDITS.choose(&mut g.rng).unwrap();
                    if g.edit(&mut after, kind) {
                        edits.push(kind);
                        break;
                    }
                }
            }
            let (before_text, before_at) = before.render();
            let (after_text, after_at) = after.render();
            let id = format!("rev{:0width$}", i, width = width);
            let parse = |text: &str, which: &str| {
                parse_source(text).map_err(|e| Error::Revision(format!("{} {}: {}", id, which, e)))
            };
            let files = FilePair::new(parse(&before_text, "before")?, parse(&after_text, "after")?);
            let schema = |e: crate::error::SchemaError| Error::Revision(format!("{}: {}", id, e));
            let truth = NodeMappingSet::from_pairs(
                TRUTH,
                &files.src,
                &files.dst,
                truth_pairs(&files.src, &files.dst, &before_at, &after_at),
            )
            .map_err(schema)?;
            let (corruption, pairs) = corrupt_pairs(&mut g.rng, &files, &truth);
            let corrupt = NodeMappingSet::from_pairs(CORRUPT, &files.src, &files.dst, pairs).map_err(schema)?;
            Ok(SynthRevision {
                id,
                before: before_text,
                after: after_text,
                edits,
                corruption,
                truth,
                corrupt,
            })
        })
        .collect()
}

/// Statements whose statement partner or any token partner under `r`
/// differs from the recorded mapping.
pub fn deviating_statements(files: &FilePair, r: &Refined, truth: &Refined) -> BTreeSet<(Side, NodeId)> {
    let mut out = BTreeSet::new();
    for side in [Side::Src, Side::Dst] {
        for s in files.ast(side).statements() {
            if r.statements.partner(side, s) != truth.statements.partner(side, s) {
                out.insert((side, s));
            }
        }
        for t in 0..files.tokens(side).len() {
            if r.tokens.partner(side, t) != truth.tokens.partner(side, t) {
                if let Some(s) = files.token_statement(side, t) {
                    out.insert((side, s));
                }
            }
        }
    }
    out
}

/// Labels for the corrupted mapping and the built-in mappers run with `cfg`.
pub fn labels_for(rev: &SynthRevision, cfg: &MapperConfig) -> Result<Vec<Label>> {
    let files = rev.files()?;
    let truth = Refined::new(&files, rev.truth.clone());
    let mut mappings = vec![rev.corrupt.clone()];
    mappings.extend(Algorithm::ALL.iter().map(|a| a.run(&files.src, &files.dst, cfg)));
    let mut out = Vec::new();
    for m in mappings {
        let r = Refined::new(&files, m);
        for (side, s) in deviating_statements(&files, &r, &truth) {
            let span = files.ast(side).node(s).span;
            out.push(Label {
                revision: rev.id.clone(),
                algorithm: r.algorithm().to_string(),
                side,
                statement_range: [span.start, span.end],
            });
        }
    }
    Ok(out)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes the corpus layout under `out` plus a `labels.json` covering the
/// corrupted mapping and the built-in mappers at default settings.
pub fn write_corpus(out: &Path, seed: u64, count: usize) -> Result<Vec<SynthRevision>> {
    let revisions = generate(seed, count)?;
    let mut labels = Vec::new();
    for rev in &revisions {
        let dir = out.join(&rev.id);
        fs::create_dir_all(&dir).map_err(|source| Error::Io {
            path: dir.display().to_string(),
            source,
        })?;
        write(&dir.join("before.java"), &rev.before)?;
        write(&dir.join("after.java"), &rev.after)?;
        write(&dir.join(format!("mapping.{}.json", TRUTH)), &save_mappings(&rev.truth))?;
        write(
            &dir.join(format!("mapping.{}.json", CORRUPT)),
            &save_mappings(&rev.corrupt),
        )?;
        labels.extend(labels_for(rev, &MapperConfig::default())?);
    }
    let mut text = serde_json::to_string_pretty(&labels).expect("serializable");
    text.push('\n');
    write(&out.join("labels.json"), &text)?;
    Ok(revisions)
}
