use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use astdiff_judge::harness::{self, eval, synth, Config, CorpusReport, RunOptions};
use astdiff_judge::tokenizer::tokenize;
use astdiff_judge::Error;

#[derive(Parser)]
#[command(
    name = "astdiff-judge",
    version,
    about = "Compare AST mappings of file revisions and flag inaccurate ones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Judge every revision of a corpus.
    Run {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "gt,mtd,ijm")]
        algorithms: Vec<String>,
        /// Use mapping.<algorithm>.json documents where present.
        #[arg(long)]
        external: bool,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// TOML file with mapper and judge settings.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        min_subtree_height: Option<usize>,
        #[arg(long)]
        dice_threshold: Option<f64>,
        #[arg(long)]
        name_similarity_threshold: Option<f64>,
        /// Count only name tokens in NIT.
        #[arg(long)]
        nit_names_only: bool,
    },
    /// Score a JSON report against ground-truth labels.
    Eval {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the token list of a source file or AST document.
    DumpTokens { file: PathBuf },
    /// Write a seeded synthetic corpus with recorded mappings and labels.
    GenSynth {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read(path: &Path) -> anyhow::Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

/// Returns the exit code for a completed command.
fn execute(cmd: Command) -> anyhow::Result<u8> {
    match cmd {
        Command::Run {
            corpus,
            algorithms,
            external,
            jobs,
            format,
            out,
            config,
            min_subtree_height,
            dice_threshold,
            name_similarity_threshold,
            nit_names_only,
        } => {
            let mut cfg = match &config {
                Some(path) => Config::load(path)?,
                None => Config::default(),
            };
            if let Some(v) = min_subtree_height {
                cfg.mapper.min_subtree_height = v;
            }
            if let Some(v) = dice_threshold {
                cfg.mapper.dice_threshold = v;
            }
            if let Some(v) = name_similarity_threshold {
                cfg.mapper.name_similarity_threshold = v;
            }
            if nit_names_only {
                cfg.judge.nit_names_only = true;
            }
            let opts = RunOptions {
                algorithms,
                external,
                config: cfg,
            };
            let report = harness::run_corpus(&corpus, &opts, jobs)?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            emit(out.as_deref(), &text)?;
            for r in report.revisions.iter().filter(|r| r.error.is_some()) {
                eprintln!("{}: {}", r.revision, r.error.as_deref().unwrap_or_default());
            }
            Ok(if report.errors > 0 { 1 } else { 0 })
        }
        Command::Eval { report, labels, format } => {
            let parsed: CorpusReport = serde_json::from_slice(&read(&report)?)
                .with_context(|| format!("parsing report {}", report.display()))?;
            let labels =
                eval::parse_labels(&read(&labels)?).with_context(|| format!("parsing labels {}", labels.display()))?;
            let results = eval::evaluate(&parsed, &labels);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&results)? + "\n",
                Format::Text => eval::format_results(&results),
            };
            emit(None, &text)?;
            Ok(0)
        }
        Command::DumpTokens { file } => {
            let ast = harness::load_tree(&file)?;
            emit(None, &tokenize(&ast).dump())?;
            Ok(0)
        }
        Command::GenSynth { seed, count, out } => {
            let revs = synth::write_corpus(&out, seed, count)?;
            eprintln!("wrote {} revisions to {}", revs.len(), out.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {:#}", e);
            let usage = matches!(e.downcast_ref::<Error>(), Some(Error::Config(_)));
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
