//! Golden revisions with the mappings each algorithm is assumed to produce.

use astdiff_judge::judge::JudgeConfig;
use astdiff_judge::mappers::{Algorithm, NodeMappingSet};
use astdiff_judge::refine::FilePair;

use super::{find, golden, names_only, nth, Rewire};

pub struct Scenario {
    pub name: &'static str,
    pub files: FilePair,
    pub mappings: Vec<NodeMappingSet>,
    pub cfg: JudgeConfig,
}

fn scenario(name: &'static str, build: impl FnOnce(&FilePair) -> Vec<NodeMappingSet>) -> Scenario {
    let files = golden(name);
    let mappings = build(&files);
    Scenario {
        name,
        files,
        mappings,
        cfg: JudgeConfig::default(),
    }
}

fn builtin(files: &FilePair, alg: Algorithm) -> NodeMappingSet {
    Rewire::of(files, alg).build(alg.name())
}

/// Built-in GT-style and IJM-style mappers.
pub fn motivating() -> Scenario {
    scenario("motivating", |f| {
        vec![builtin(f, Algorithm::Gt), builtin(f, Algorithm::Ijm)]
    })
}

/// GT with crossed type mappings: the declared `HashMap` type goes to
/// the `HashMap` of the new assignment, the old creation stays unmapped.
pub fn motivating_crossed() -> Scenario {
    scenario("motivating", |f| {
        let (src, dst) = (&f.src, &f.dst);
        let mut gt = Rewire::of(f, Algorithm::Gt);
        let declared = nth(src, "ParameterizedType", "HashMap<Integer, Integer>", 0);
        let created = nth(src, "ParameterizedType", "HashMap<Integer, Integer>", 1);
        let target = find(dst, "ParameterizedType", "HashMap<Integer, Integer>");
        gt.unmap_src(created).remap(declared, target);
        vec![gt.build("gt"), builtin(f, Algorithm::Ijm)]
    })
}

/// IJM maps the statement to the second, less similar copy.
pub fn nit_5_vs_4() -> Scenario {
    scenario("nit_5_vs_4", |f| {
        let gt = builtin(f, Algorithm::Gt);
        let mut ijm = Rewire::of(f, Algorithm::Gt);
        let s = find(&f.src, "VariableDeclarationStatement", "int sum = total;");
        let d = find(&f.dst, "VariableDeclarationStatement", "int max = total;");
        ijm.remap(s, d);
        vec![gt, ijm.build("ijm")]
    })
}

/// GT maps the call into the other method's body.
pub fn pm() -> Scenario {
    scenario("pm", |f| {
        let mut gt = Rewire::of(f, Algorithm::Gt);
        let s = find(&f.src, "ExpressionStatement", "runner.run();");
        let d = nth(&f.dst, "ExpressionStatement", "runner.run();", 1);
        gt.remap(s, d);
        vec![gt.build("gt"), builtin(f, Algorithm::Ijm)]
    })
}

/// GT maps the method body to the body of the other method.
pub fn block() -> Scenario {
    scenario("block", |f| {
        let mut gt = Rewire::of(f, Algorithm::Gt);
        let s = find(&f.src, "Block", "{\n        runner.run();\n    }");
        let d = nth(&f.dst, "Block", "{\n        runner.run();\n    }", 1);
        gt.remap(s, d);
        vec![gt.build("gt"), builtin(f, Algorithm::Ijm)]
    })
}

/// GT maps the variable `value` to the method name `bytevalue`.
pub fn type_change() -> Scenario {
    scenario("type", |f| {
        let mut gt = Rewire::of(f, Algorithm::Gt);
        gt.add(
            find(&f.src, "SimpleName", "value"),
            find(&f.dst, "SimpleName", "bytevalue"),
        );
        vec![gt.build("gt"), builtin(f, Algorithm::Ijm)]
    })
}

/// GT keeps the two `value` tokens paired, IJM leaves them unmapped.
pub fn stmt_value() -> Scenario {
    scenario("stmt_value", |f| {
        let mut gt = Rewire::of(f, Algorithm::Gt);
        gt.add(find(&f.src, "SimpleName", "value"), find(&f.dst, "SimpleName", "value"));
        vec![gt.build("gt"), builtin(f, Algorithm::Ijm)]
    })
}

fn getbytes_error(r: &mut Rewire<'_>) {
    let f = r.files;
    let (write, write_bytes) = (
        find(&f.src, "SimpleName", "write"),
        find(&f.dst, "SimpleName", "writeBytes"),
    );
    let (get, get2) = (
        find(&f.src, "SimpleName", "getBytes"),
        find(&f.dst, "SimpleName", "getBytes"),
    );
    r.pairs
        .retain(|&(s, d)| (s, d) != (write, write_bytes) && (s, d) != (get, get2));
    r.add(get, write_bytes);
}

/// GT pairs `getBytes` with `writeBytes`; IJM pairs the two `getBytes`.
pub fn val_getbytes() -> Scenario {
    scenario("val_getbytes", |f| {
        let mut gt = Rewire::of(f, Algorithm::Gt);
        getbytes_error(&mut gt);
        let mut ijm = Rewire::of(f, Algorithm::Gt);
        ijm.add(
            find(&f.src, "SimpleName", "write"),
            find(&f.dst, "SimpleName", "writeBytes"),
        );
        vec![gt.build("gt"), ijm.build("ijm")]
    })
}

/// GT crosses the two `Filterable` type tokens.
pub fn llcs_filterable() -> Scenario {
    scenario("llcs_filterable", |f| {
        let mut gt = Rewire::of(f, Algorithm::Gt);
        let (s0, s1) = (
            nth(&f.src, "SimpleType", "Filterable", 0),
            nth(&f.src, "SimpleType", "Filterable", 1),
        );
        let (d0, d1) = (
            nth(&f.dst, "SimpleType", "Filterable", 0),
            nth(&f.dst, "SimpleType", "Filterable", 1),
        );
        let mut ijm = gt.clone();
        ijm.add(s0, d0).add(s1, d1);
        gt.add(s0, d1).add(s1, d0);
        vec![gt.build("gt"), ijm.build("ijm")]
    })
}

/// MTD maps two calls sharing no name; GT leaves them unmapped. NIT counts
/// names only.
pub fn nit_zero() -> Scenario {
    let mut s = scenario("nit_zero", |f| {
        let s = find(&f.src, "ExpressionStatement", "reader.close();");
        let d = find(&f.dst, "ExpressionStatement", "log(message);");
        let mut gt = Rewire::of(f, Algorithm::Gt);
        gt.unmap_src(s).unmap_dst(d);
        let mut mtd = gt.clone();
        mtd.add(s, d).add(
            find(&f.src, "MethodInvocation", "reader.close()"),
            find(&f.dst, "MethodInvocation", "log(message)"),
        );
        vec![gt.build("gt"), mtd.build("mtd")]
    });
    s.cfg = names_only();
    s
}

/// GT shares one wrong token pair with MTD and another with IJM.
pub fn shared_errors() -> Scenario {
    scenario("shared_errors", |f| {
        let base = Rewire::of(f, Algorithm::Gt);
        let (write, write_bytes) = (
            find(&f.src, "SimpleName", "write"),
            find(&f.dst, "SimpleName", "writeBytes"),
        );
        let (read, read_chars) = (
            find(&f.src, "SimpleName", "read"),
            find(&f.dst, "SimpleName", "readChars"),
        );
        let get_bytes = (
            find(&f.src, "SimpleName", "getBytes"),
            find(&f.dst, "SimpleName", "getBytes"),
        );
        let get_chars = (
            find(&f.src, "SimpleName", "getChars"),
            find(&f.dst, "SimpleName", "getChars"),
        );
        let mut full = base.clone();
        full.add(write, write_bytes)
            .add(read, read_chars)
            .add(get_bytes.0, get_bytes.1)
            .add(get_chars.0, get_chars.1);
        let error_x = |r: &mut Rewire<'_>| {
            r.pairs.retain(|&p| p != (write, write_bytes) && p != get_bytes);
            r.add(get_bytes.0, write_bytes);
        };
        let error_y = |r: &mut Rewire<'_>| {
            r.pairs.retain(|&p| p != (read, read_chars) && p != get_chars);
            r.add(get_chars.0, read_chars);
        };
        let (mut gt, mut mtd, mut ijm) = (full.clone(), full.clone(), full);
        error_x(&mut gt);
        error_y(&mut gt);
        error_x(&mut mtd);
        error_y(&mut ijm);
        vec![gt.build("gt"), mtd.build("mtd"), ijm.build("ijm")]
    })
}

pub fn all() -> Vec<Scenario> {
    vec![
        motivating(),
        motivating_crossed(),
        nit_5_vs_4(),
        pm(),
        block(),
        type_change(),
        stmt_value(),
        val_getbytes(),
        llcs_filterable(),
        nit_zero(),
        shared_errors(),
    ]
}
