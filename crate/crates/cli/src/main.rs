use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rrgbench::baselines::{
    build_constant_from_corpus, gen_constant, gen_nearest_neighbor, gen_random, gen_top_sentences,
    gen_top_words, read_feature_csv, DEFAULT_CONSTANT_REPORT,
};
use rrgbench::corpus::{load_corpus, text_to_scoring_tokens, Split};
use rrgbench::harness::{corpus_report, render_table, run_benchmark, TableFormat};
use rrgbench::labeler::{
    accuracy_per_disease, auc_macro, binarize, label_report, UncertainPolicy, DISEASE_COUNT,
};
use rrgbench::metrics::{bleu, cider_d, rouge_l, CiderParams, DEFAULT_BETA};
use rrgbench::synth::{generate, SyntheticConfig};
use rrgbench::{BenchmarkConfig, CorpusFormat, Disease, LabelVector, Lexicon, TokenizerConfig};
use serde_json::json;

#[derive(Subcommand)]
enum CorpusAction {
    /// Corpus counts, vocabulary and the most frequent train sentences.
    Stats(StatsArgs),
}

#[derive(Args)]
struct StatsArgs {
    corpus: PathBuf,
    #[arg(long, default_value_t = 20)]
    top: usize,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Parser)]
#[command(
    name = "rrgbench",
    version,
    about = "Weak-baseline scoreboard for chest X-ray report generation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Baseline {
    Random,
    Constant,
    Nn,
    TopSentences,
    TopWords,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Metric {
    Bleu,
    Rouge,
    Cider,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Pos,
    Neg,
}

impl From<Policy> for UncertainPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Pos => UncertainPolicy::UncertainAsPositive,
            Policy::Neg => UncertainPolicy::UncertainAsNegative,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Train,
    Test,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Corpus inspection.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Same as `corpus stats`.
    Stats(StatsArgs),
    /// Score candidate reports against references.
    ///
    /// Files are JSON lines of {"study_id", "text"} joined by id, or plain text
    /// with one report per line paired by position.
    Score {
        #[arg(long)]
        candidates: PathBuf,
        #[arg(long)]
        references: PathBuf,
        #[arg(long, value_delimiter = ',', default_values = ["bleu", "rouge", "cider"])]
        metrics: Vec<Metric>,
        #[arg(long, default_value_t = DEFAULT_BETA)]
        beta: f64,
        #[arg(long, default_value_t = 6.0)]
        sigma: f64,
        /// Score sentence-final periods as tokens.
        #[arg(long)]
        period_tokens: bool,
        #[arg(long)]
        json: bool,
    },
    /// Label every report of a corpus; writes JSON lines of {"study_id", "labels"}.
    ///
    /// With --uncertain each line also carries the binarized "binary" vector.
    Label {
        corpus: PathBuf,
        #[arg(long)]
        lexicon: Option<PathBuf>,
        #[arg(long, value_enum)]
        uncertain: Option<Policy>,
        #[arg(long, value_enum, default_value = "all")]
        split: SplitArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Accuracy and ROC-AUC of predicted labels against gold labels.
    EvalLabels {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long, value_enum, default_value = "pos")]
        uncertain: Policy,
    },
    /// Run one baseline over the test split; writes JSON lines of {"study_id", "text"}.
    Generate {
        corpus: PathBuf,
        #[arg(long, value_enum)]
        baseline: Baseline,
        /// Sentence or word count for the top-k baselines; sentence count for
        /// a corpus-built constant report.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        constant_file: Option<PathBuf>,
        #[arg(long)]
        features: Option<PathBuf>,
        #[arg(long)]
        lexicon: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full scoreboard from a TOML config. Honors RRGBENCH_SEED.
    Benchmark {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides `output.format` from the config.
        #[arg(long)]
        format: Option<String>,
    },
    /// Write the seeded synthetic corpus, features and a benchmark config.
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        reports: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let mut stdout = String::new();
    let mut notes = Vec::new();
    let result = run(Cli::parse(), &mut stdout, &mut notes);
    print!("{stdout}");
    for n in notes {
        eprintln!("{n}");
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Writes `text` to `out` if given, else appends it to the stdout buffer.
fn emit(stdout: &mut String, out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            stdout.push_str(text);
            Ok(())
        }
    }
}

fn lexicon(path: Option<&Path>) -> Result<Lexicon> {
    Ok(match path {
        Some(p) => Lexicon::load(p)?,
        None => Lexicon::builtin(),
    })
}

fn open_corpus(path: &Path) -> Result<rrgbench::Corpus> {
    Ok(load_corpus(
        path,
        CorpusFormat::from_path(path),
        TokenizerConfig::default(),
    )?)
}

/// `study_id → text` for JSON lines, or `line number → text` otherwise.
fn read_texts(path: &Path) -> Result<(bool, BTreeMap<String, String>)> {
    let content =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let lines: Vec<&str> = content.lines().filter(|l| !l.trim().is_empty()).collect();
    let jsonl = lines
        .first()
        .is_some_and(|l| l.trim_start().starts_with('{'));
    let mut out = BTreeMap::new();
    for (i, line) in lines.iter().enumerate() {
        if jsonl {
            let v: serde_json::Value = serde_json::from_str(line)
                .with_context(|| format!("{}: line {}", path.display(), i + 1))?;
            let id = v["study_id"].as_str().context("missing study_id")?;
            let text = v["text"].as_str().context("missing text")?;
            if out.insert(id.to_string(), text.to_string()).is_some() {
                bail!("{}: duplicate study_id `{id}`", path.display());
            }
        } else {
            out.insert(format!("{:09}", i), line.to_string());
        }
    }
    Ok((jsonl, out))
}

fn read_labels(path: &Path) -> Result<BTreeMap<String, LabelVector>> {
    let content =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = BTreeMap::new();
    for (i, line) in content
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let mut v: serde_json::Value = serde_json::from_str(line)
            .with_context(|| format!("{}: line {}", path.display(), i + 1))?;
        let study_id = v["study_id"]
            .as_str()
            .context("missing study_id")?
            .to_string();
        let labels: LabelVector = serde_json::from_value(v["labels"].take())
            .with_context(|| format!("{}: line {}", path.display(), i + 1))?;
        if out.insert(study_id.clone(), labels).is_some() {
            bail!("{}: duplicate study_id `{study_id}`", path.display());
        }
    }
    Ok(out)
}

fn run(cli: Cli, o: &mut String, notes: &mut Vec<String>) -> Result<()> {
    match cli.command {
        Command::Corpus {
            action: CorpusAction::Stats(args),
        }
        | Command::Stats(args) => {
            let StatsArgs {
                corpus,
                top,
                lexicon: lex,
                json,
            } = args;
            let corpus = open_corpus(&corpus)?;
            let stats = corpus_report(&corpus, &lexicon(lex.as_deref())?, top)?;
            if json {
                writeln!(o, "{}", serde_json::to_string_pretty(&stats)?)?;
            } else {
                writeln!(
                    o,
                    "reports: {} (train {}, test {}, empty {})",
                    stats.reports, stats.train_reports, stats.test_reports, stats.empty_reports
                )?;
                writeln!(o, "vocabulary (train): {}", stats.vocabulary_size)?;
                writeln!(o, "sentences: {}", stats.sentence_count)?;
                writeln!(
                    o,
                    "no-finding sentence fraction: {:.4}",
                    stats.normal_sentence_fraction
                )?;
                writeln!(o, "top sentences:")?;
                for (s, c) in &stats.top_sentences {
                    writeln!(o, "{c:>8}  {s}")?;
                }
            }
        }
        Command::Score {
            candidates,
            references,
            metrics,
            beta,
            sigma,
            period_tokens,
            json,
        } => {
            let (cj, cands) = read_texts(&candidates)?;
            let (rj, refs) = read_texts(&references)?;
            if cj != rj {
                bail!("candidates and references must both be JSON lines or both plain text");
            }
            if cands.len() != refs.len() || cands.keys().ne(refs.keys()) {
                bail!(
                    "candidate and reference ids differ ({} vs {} entries)",
                    cands.len(),
                    refs.len()
                );
            }
            let tok = TokenizerConfig {
                period_tokens,
                ..TokenizerConfig::default()
            };
            let c: Vec<_> = cands
                .values()
                .map(|t| text_to_scoring_tokens(t, &tok))
                .collect();
            let r: Vec<_> = refs
                .values()
                .map(|t| text_to_scoring_tokens(t, &tok))
                .collect();
            let mut result = serde_json::Map::new();
            if metrics.contains(&Metric::Bleu) {
                let b = bleu(&c, &r, 4)?;
                result.insert("bleu".into(), serde_json::to_value(&b)?);
            }
            if metrics.contains(&Metric::Rouge) {
                result.insert(
                    "rouge_l".into(),
                    serde_json::to_value(rouge_l(&c, &r, beta)?)?,
                );
            }
            if metrics.contains(&Metric::Cider) {
                let params = CiderParams {
                    sigma,
                    ..CiderParams::default()
                };
                let s = cider_d(&c, &r, &params)?;
                result.insert(
                    "cider_d".into(),
                    json!({ "value": s.value, "per_n": s.per_n }),
                );
            }
            if json {
                writeln!(o, "{}", serde_json::to_string_pretty(&result)?)?;
            } else {
                if let Some(b) = result.get("bleu") {
                    for (i, v) in b["per_n"].as_array().unwrap().iter().enumerate() {
                        writeln!(o, "BLEU-{}\t{:.4}", i + 1, v.as_f64().unwrap())?;
                    }
                    writeln!(o, "B\t{:.4}", b["mean_b"].as_f64().unwrap())?;
                }
                if let Some(r) = result.get("rouge_l") {
                    writeln!(o, "ROUGE-L\t{:.4}", r["f"].as_f64().unwrap())?;
                }
                if let Some(c) = result.get("cider_d") {
                    writeln!(o, "CIDEr-D\t{:.4}", c["value"].as_f64().unwrap())?;
                }
            }
        }
        Command::Label {
            corpus,
            lexicon: lex,
            uncertain,
            split,
            out,
        } => {
            let corpus = open_corpus(&corpus)?;
            let lex = lexicon(lex.as_deref())?;
            let mut text = String::new();
            for report in corpus.reports() {
                let keep = match split {
                    SplitArg::All => true,
                    SplitArg::Train => report.split == Split::Train,
                    SplitArg::Test => report.split == Split::Test,
                };
                if keep {
                    let labels = label_report(report, &lex)?;
                    let mut line = json!({ "study_id": report.study_id, "labels": labels });
                    if let Some(p) = uncertain {
                        line["binary"] = json!(binarize(&labels, p.into()));
                    }
                    text.push_str(&line.to_string());
                    text.push('\n');
                }
            }
            emit(o, out.as_deref(), &text)?;
        }
        Command::EvalLabels {
            pred,
            gold,
            uncertain,
        } => {
            let pred = read_labels(&pred)?;
            let gold = read_labels(&gold)?;
            if pred.len() != gold.len() || pred.keys().ne(gold.keys()) {
                bail!(
                    "prediction and gold ids differ ({} vs {} entries)",
                    pred.len(),
                    gold.len()
                );
            }
            let policy = UncertainPolicy::from(uncertain);
            let p: Vec<_> = pred.values().map(|v| binarize(v, policy)).collect();
            let g: Vec<_> = gold.values().map(|v| binarize(v, policy)).collect();
            let acc = accuracy_per_disease(&p, &g)?;
            let scores: Vec<[f64; DISEASE_COUNT]> = p.iter().map(|x| x.map(f64::from)).collect();
            let auc = auc_macro(&scores, &g);
            writeln!(o, "{:<28} {:>8} {:>8}", "observation", "acc", "auc")?;
            for d in Disease::ALL {
                let a = auc.as_ref().ok().and_then(|r| r.per_disease[d.index()]);
                writeln!(
                    o,
                    "{:<28} {:>8.3} {:>8}",
                    d.name(),
                    acc[d.index()],
                    a.map(|x| format!("{x:.3}")).unwrap_or_else(|| "-".into())
                )?;
            }
            let mean_acc = acc.iter().sum::<f64>() / DISEASE_COUNT as f64;
            match auc {
                Ok(r) => {
                    writeln!(o, "{:<28} {:>8.3} {:>8.3}", "macro", mean_acc, r.macro_auc)?;
                    for w in r.warnings {
                        notes.push(format!("warning: {w}"));
                    }
                }
                Err(e) => {
                    writeln!(o, "{:<28} {:>8.3} {:>8}", "macro", mean_acc, "-")?;
                    notes.push(format!("warning: {e}"));
                }
            }
        }
        Command::Generate {
            corpus,
            baseline,
            n,
            seed,
            constant_file,
            features,
            lexicon: lex,
            out,
        } => {
            let corpus = open_corpus(&corpus)?;
            let set = match baseline {
                Baseline::Random => gen_random(&corpus, seed)?,
                Baseline::Constant => {
                    let text = match (constant_file, n) {
                        (Some(f), _) => fs::read_to_string(&f)
                            .with_context(|| format!("reading {}", f.display()))?,
                        (None, Some(k)) => {
                            build_constant_from_corpus(&corpus, &lexicon(lex.as_deref())?, k)?
                        }
                        (None, None) => DEFAULT_CONSTANT_REPORT.to_string(),
                    };
                    gen_constant(&corpus, text.trim())?
                }
                Baseline::Nn => {
                    let path = features.context("--features is required for the nn baseline")?;
                    let file = fs::File::open(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    gen_nearest_neighbor(&corpus, &read_feature_csv(file)?)?
                }
                Baseline::TopSentences => gen_top_sentences(&corpus, n.unwrap_or(100), seed)?,
                Baseline::TopWords => gen_top_words(&corpus, n.unwrap_or(50), seed)?,
            };
            emit(o, out.as_deref(), &set.to_jsonl())?;
        }
        Command::Benchmark {
            config,
            out,
            format,
        } => {
            let mut cfg = BenchmarkConfig::load(&config)?;
            cfg.apply_env()?;
            let format = match format {
                Some(f) => {
                    TableFormat::parse(&f).with_context(|| format!("unknown format `{f}`"))?
                }
                None => cfg.output.format,
            };
            let base = config.parent().unwrap_or(Path::new("."));
            let table = run_benchmark(&cfg, base)?;
            emit(o, out.as_deref(), &render_table(&table, format))?;
        }
        Command::Synth { out, reports, seed } => {
            let mut cfg = SyntheticConfig::default();
            if let Some(r) = reports {
                cfg.reports = r;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let synthetic = generate(&cfg)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            fs::write(out.join("corpus.jsonl"), synthetic.to_jsonl())?;
            fs::write(out.join("features.csv"), synthetic.features_csv()?)?;
            fs::write(out.join("benchmark.toml"), SYNTHETIC_CONFIG)?;
            notes.push(format!(
                "wrote {} reports, no-finding sentence fraction {:.4}",
                synthetic.records.len(),
                synthetic.normal_fraction()
            ));
        }
    }
    Ok(())
}

const SYNTHETIC_CONFIG: &str = r#"corpus = "corpus.jsonl"

[[baselines]]
kind = "constant"

[[baselines]]
kind = "random"

[[baselines]]
kind = "nearest-neighbor"
features = "features.csv"

[[baselines]]
kind = "top-sentences"
n = 100

[[baselines]]
kind = "top-words"
n = 50
"#;
