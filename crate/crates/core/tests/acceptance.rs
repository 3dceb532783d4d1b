//! Acceptance run: one PASS/FAIL line per criterion. Built without the libtest
//! harness so the lines appear in order on stdout.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use astdiff_judge::harness::eval::parse_labels;
use astdiff_judge::harness::synth::{self, SynthRevision};
use astdiff_judge::harness::{evaluate, judge_all, run_corpus, RunOptions};
use astdiff_judge::judge::{judge_pair, llcs, union_verdicts, DecidedBy, Element, JudgeConfig, Measure, Status};
use astdiff_judge::mappers::{Algorithm, MapperConfig, NodeMappingSet};
use astdiff_judge::refine::{derive_token_mappings, leftmost_lcs, FilePair, Refined, Side};

use common::expectations;
use common::oracles::*;
use common::scenarios;

const SEED: u64 = 42;
const REVISIONS: usize = 200;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn golden_scenarios() -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    for (name, f) in expectations::ALL {
        if panic::catch_unwind(f).is_err() {
            failed.push(*name);
        }
    }
    let took = start.elapsed();
    let detail = format!(
        "{} checks, {} failed {:?}, {:.3}s",
        expectations::ALL.len(),
        failed.len(),
        failed,
        took.as_secs_f64()
    );
    check(failed.is_empty() && took < Duration::from_secs(1), detail)
}

fn llcs_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = 0;
    for _ in 0..1000 {
        let pairs = random_pairs(&mut rng, 12);
        if llcs(&pairs) != llcs_exhaustive(&pairs) {
            bad += 1;
        }
    }
    check(bad == 0, format!("1000 lists, {} mismatches", bad))
}

fn token_pairing_oracle() -> Outcome {
    const WORDS: &[&str] = &["Map", "HashMap", "Integer", "List"];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for case in 0..500 {
        let (a, b) = (random_words(&mut rng, WORDS, 8), random_words(&mut rng, WORDS, 8));
        let files = FilePair::new(value_node(&a), value_node(&b));
        let m = NodeMappingSet::from_pairs("x", &files.src, &files.dst, [(0, 0)]).unwrap();
        let got: Vec<(usize, usize)> = derive_token_mappings(&files, &m).pairs.into_iter().collect();
        let injective = got.iter().map(|p| p.1).collect::<BTreeSet<_>>().len() == got.len();
        let lcs = leftmost_lcs(&a, &b);
        let ordered = lcs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1) && lcs.iter().all(|p| got.contains(p));
        if !injective || !ordered || got != pair_tokens_reference(&a, &b) {
            bad.push(case);
        }
    }
    check(bad.is_empty(), format!("500 list pairs, failing cases {:?}", bad))
}

struct Corpus {
    revisions: Vec<SynthRevision>,
    files: Vec<FilePair>,
}

impl Corpus {
    fn write(dir: &Path) -> Corpus {
        let revisions = synth::write_corpus(dir, SEED, REVISIONS).unwrap();
        let files = revisions.iter().map(|r| r.files().unwrap()).collect();
        Corpus { revisions, files }
    }

    /// Truth, corrupt and the three built-in mappers.
    fn refined(&self, i: usize) -> Vec<Refined> {
        let (rev, files) = (&self.revisions[i], &self.files[i]);
        let mut ms = vec![rev.truth.clone(), rev.corrupt.clone()];
        ms.extend(
            Algorithm::ALL
                .iter()
                .map(|a| a.run(&files.src, &files.dst, &MapperConfig::default())),
        );
        ms.into_iter().map(|m| Refined::new(files, m)).collect()
    }
}

/// Step-1 condemnations recomputed from the mapping alone.
fn expected_step1(files: &FilePair, r: &Refined) -> BTreeSet<(Element, DecidedBy)> {
    let mut out = BTreeSet::new();
    let mut both = |a: Element, b: Element, m: Measure| {
        out.insert((a, DecidedBy::Step1(m)));
        out.insert((b, DecidedBy::Step1(m)));
    };
    for &(s, d) in &r.statements.pairs {
        let (es, ed) = (
            Element::Statement {
                side: Side::Src,
                node: s,
            },
            Element::Statement {
                side: Side::Dst,
                node: d,
            },
        );
        if files.src.label(s) == "Block" {
            let mapped = match (files.src.parent(s), files.dst.parent(d)) {
                (Some(p), Some(q)) => r.nodes.pairs().contains(&(p, q)),
                (None, None) => true,
                _ => false,
            };
            if !mapped {
                both(es, ed, Measure::PmBlock);
            }
        } else {
            let identical = r.tokens.pairs.iter().any(|&(x, y)| {
                files.token_statement(Side::Src, x) == Some(s)
                    && files.token_statement(Side::Dst, y) == Some(d)
                    && files.src_tokens.get(x).text == files.dst_tokens.get(y).text
            });
            if !identical {
                both(es, ed, Measure::Nit);
            }
        }
    }
    for &(x, y) in &r.tokens.pairs {
        if files.src_tokens.get(x).kind != files.dst_tokens.get(y).kind {
            both(
                Element::Token {
                    side: Side::Src,
                    index: x,
                },
                Element::Token {
                    side: Side::Dst,
                    index: y,
                },
                Measure::Type,
            );
        }
    }
    out
}

fn step1_completeness(c: &Corpus) -> Outcome {
    let cfg = JudgeConfig::default();
    let (mut expected, mut missing) = (0, 0);
    for i in 0..c.files.len() {
        let files = &c.files[i];
        let r = c.refined(i);
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)] {
            let res = judge_pair(files, &r[a], &r[b], &cfg);
            for x in [&r[a], &r[b]] {
                let got: BTreeSet<(Element, DecidedBy)> = res
                    .verdicts_of(x.algorithm())
                    .filter(|v| v.status == Status::Inaccurate)
                    .filter_map(|v| v.decided_by.map(|d| (v.element, d)))
                    .collect();
                let want = expected_step1(files, x);
                expected += want.len();
                missing += want.difference(&got).count();
            }
        }
    }
    check(
        missing == 0 && expected > 0,
        format!("{} expected Step-1 verdicts, {} missing", expected, missing),
    )
}

fn external_options() -> RunOptions {
    let mut opts = RunOptions::new(&[synth::TRUTH, synth::CORRUPT, "gt", "mtd", "ijm"]);
    opts.external = true;
    opts
}

fn symmetry_and_determinism(c: &Corpus, dir: &Path) -> Outcome {
    let cfg = JudgeConfig::default();
    let mut asymmetric = 0;
    for i in 0..c.files.len() {
        let r = c.refined(i);
        for a in 0..r.len() {
            for b in a + 1..r.len() {
                let ab = judge_pair(&c.files[i], &r[a], &r[b], &cfg);
                let ba = judge_pair(&c.files[i], &r[b], &r[a], &cfg);
                if ab.verdicts != ba.verdicts {
                    asymmetric += 1;
                }
            }
        }
    }
    let opts = external_options();
    let sequential = run_corpus(dir, &opts, 1).unwrap().to_json();
    let parallel = run_corpus(dir, &opts, 8).unwrap().to_json();
    check(
        asymmetric == 0 && sequential == parallel,
        format!(
            "{} asymmetric pairs, reports identical: {}",
            asymmetric,
            sequential == parallel
        ),
    )
}

fn union_growth(c: &Corpus) -> Outcome {
    let s = scenarios::shared_errors();
    let r: Vec<Refined> = s.mappings.into_iter().map(|m| Refined::new(&s.files, m)).collect();
    let pairs = judge_all(&s.files, &r, &s.cfg);
    let two = [
        union_verdicts(&s.files, "gt", &pairs[0..1]),
        union_verdicts(&s.files, "gt", &pairs[1..2]),
    ];
    let all = union_verdicts(&s.files, "gt", &pairs);
    let strict = two.iter().all(|t| all.is_superset(t) && all.len() > t.len());

    let cfg = JudgeConfig::default();
    let mut violations = 0;
    for i in 0..c.files.len() {
        let files = &c.files[i];
        let r: Vec<Refined> = c.refined(i).into_iter().skip(2).collect();
        let pairs = judge_all(files, &r, &cfg);
        for target in r.iter().map(Refined::algorithm) {
            let involved: Vec<_> = pairs.iter().filter(|p| p.a == target || p.b == target).collect();
            let all = union_verdicts(files, target, involved.iter().copied());
            violations += involved
                .iter()
                .filter(|p| !all.is_superset(&union_verdicts(files, target, [**p])))
                .count();
        }
    }
    check(
        strict && violations == 0,
        format!(
            "fixture strict containment: {}, corpus violations: {}",
            strict, violations
        ),
    )
}

fn synthetic_precision(dir: &Path) -> Outcome {
    let report = run_corpus(dir, &external_options(), 0).unwrap();
    let labels = parse_labels(&std::fs::read(dir.join("labels.json")).unwrap()).unwrap();
    let results = evaluate(&report, &labels);
    let (tp, fp) = results.values().fold((0, 0), |(tp, fp), r| (tp + r.tp, fp + r.fp));
    let precision = tp as f64 / (tp + fp).max(1) as f64;
    let per: Vec<String> = results
        .iter()
        .map(|(a, r)| {
            let f = |v: Option<f64>| v.map_or("n/a".into(), |x| format!("{:.2}", x));
            format!("{} p={} r={}", a, f(r.precision), f(r.recall))
        })
        .collect();
    check(
        report.errors == 0 && tp > 0 && precision >= 0.95,
        format!("precision {:.3} (tp {}, fp {}); {}", precision, tp, fp, per.join(", ")),
    )
}

fn evaluate_arithmetic() -> Outcome {
    use astdiff_judge::harness::EvalResult;
    let cases = [
        ((56, 1, 27), (0.98, 0.67)),
        ((90, 0, 30), (1.00, 0.75)),
        ((59, 1, 32), (0.98, 0.65)),
    ];
    let mut got = Vec::new();
    let mut ok = true;
    for ((tp, fp, fn_), (p, r)) in cases {
        let e = EvalResult::from_counts(tp, fp, fn_);
        let (gp, gr) = (
            format!("{:.2}", e.precision.unwrap()),
            format!("{:.2}", e.recall.unwrap()),
        );
        ok &= gp == format!("{:.2}", p) && gr == format!("{:.2}", r);
        got.push(format!("({},{})", gp, gr));
    }
    check(ok, got.join(" "))
}

fn throughput(dir: &Path) -> Outcome {
    let start = Instant::now();
    let report = run_corpus(dir, &RunOptions::new(&["gt", "mtd", "ijm"]), 0).unwrap();
    let took = start.elapsed();
    check(
        report.errors == 0 && report.revisions.len() == REVISIONS && took < Duration::from_secs(10),
        format!("{} revisions in {:.2}s", report.revisions.len(), took.as_secs_f64()),
    )
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = Corpus::write(dir.path());
    let path = dir.path();
    let criteria: Vec<Criterion> = vec![
        ("golden scenarios", Box::new(golden_scenarios)),
        ("llcs oracle", Box::new(llcs_oracle)),
        ("token pairing oracle", Box::new(token_pairing_oracle)),
        ("step-1 completeness", Box::new(|| step1_completeness(&corpus))),
        (
            "symmetry and determinism",
            Box::new(|| symmetry_and_determinism(&corpus, path)),
        ),
        ("union monotonicity", Box::new(|| union_growth(&corpus))),
        ("synthetic precision", Box::new(|| synthetic_precision(path))),
        ("evaluate arithmetic", Box::new(evaluate_arithmetic)),
        ("throughput", Box::new(|| throughput(path))),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (name, run) in &criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {}: {}", name, detail),
            Err(detail) => {
                failures += 1;
                println!("FAIL {}: {}", name, detail);
            }
        }
    }
    let _ = panic::take_hook();
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
