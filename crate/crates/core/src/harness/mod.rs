//! End-to-end scoreboard: corpus → baselines → metrics → labeler.

mod config;
pub mod published;
mod render;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

pub use config::{
    BaselineSpec, BenchmarkConfig, LabelerConfig, MetricConfig, OutputConfig, TableFormat,
    DEFAULT_SEED, SEED_ENV,
};
pub use render::{config_from_rendered, format_cell, render_table};

use crate::baselines::{
    build_constant_from_corpus, gen_constant, gen_nearest_neighbor, gen_random, gen_top_sentences,
    gen_top_words, read_feature_csv, BaselineError, GeneratedSet, DEFAULT_CONSTANT_REPORT,
};
use crate::corpus::{load_corpus, Corpus, CorpusError, Report};
use crate::labeler::{
    accuracy_macro, auc_macro, binarize, label_report, label_text, normal_sentence_fraction,
    BinaryLabels, ClassificationError, Disease, LabelError, Lexicon, LexiconError, UncertainPolicy,
    DISEASE_COUNT,
};
use crate::metrics::{bleu, cider_d, rouge_l, CiderParams};
use config::resolve;

pub const COLUMNS: [&str; 9] = ["B-1", "B-2", "B-3", "B-4", "B", "R-L", "C-D", "Acc", "AUC"];

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus: {0}")]
    Corpus(#[from] CorpusError),
    #[error("lexicon: {0}")]
    Lexicon(#[from] LexiconError),
    #[error("labeler: {0}")]
    Label(#[from] LabelError),
    #[error("corpus has no test reports to score")]
    NoTestReports,
    #[error("{system}: {message}")]
    System { system: String, message: String },
}

fn system_err(system: &str, e: impl std::fmt::Display) -> HarnessError {
    HarnessError::System {
        system: system.to_string(),
        message: e.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScoreRow {
    pub system: String,
    /// Values in [`COLUMNS`] order; `None` renders as "-".
    pub cells: [Option<f64>; 9],
    pub warnings: Vec<String>,
    /// False for published constants shown for context.
    pub computed: bool,
}

impl ScoreRow {
    pub fn cell(&self, column: &str) -> Option<f64> {
        COLUMNS
            .iter()
            .position(|c| *c == column)
            .and_then(|i| self.cells[i])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScoreTable {
    pub rows: Vec<ScoreRow>,
    /// Notes that hold for every row, such as single-class gold columns.
    pub warnings: Vec<String>,
    pub reference_rows: Vec<ScoreRow>,
    /// TOML snapshot of the config that produced the table.
    pub config: String,
}

impl ScoreTable {
    pub fn row(&self, system: &str) -> Option<&ScoreRow> {
        self.rows.iter().find(|r| r.system == system)
    }
}

pub fn reference_rows() -> Vec<ScoreRow> {
    published::STATE_OF_THE_ART
        .iter()
        .chain(published::CNN_LSTM)
        .map(|r| ScoreRow {
            system: r.system.to_string(),
            cells: r.cells,
            warnings: Vec::new(),
            computed: false,
        })
        .collect()
}

/// Shared, read-only inputs for scoring every system.
pub struct Evaluator<'a> {
    pub corpus: &'a Corpus,
    pub lexicon: &'a Lexicon,
    pub metrics: MetricConfig,
    pub policy: UncertainPolicy,
    test: Vec<&'a Report>,
    references: Vec<Vec<String>>,
    gold: Vec<BinaryLabels>,
    gold_warnings: Vec<String>,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        corpus: &'a Corpus,
        lexicon: &'a Lexicon,
        metrics: MetricConfig,
        policy: UncertainPolicy,
    ) -> Result<Evaluator<'a>, HarnessError> {
        let test: Vec<&Report> = corpus.test().collect();
        if test.is_empty() {
            return Err(HarnessError::NoTestReports);
        }
        let references = test
            .iter()
            .map(|r| r.scoring_tokens(corpus.tokenizer()))
            .collect();
        let gold = test
            .iter()
            .map(|r| label_report(r, lexicon).map(|v| binarize(&v, policy)))
            .collect::<Result<Vec<BinaryLabels>, _>>()?;
        let gold_warnings = Disease::ALL
            .iter()
            .filter(|d| {
                let positives = gold.iter().filter(|g| g[d.index()] == 1).count();
                positives == 0 || positives == gold.len()
            })
            .map(|d| {
                format!(
                    "{}: single-class gold column, excluded from macro AUC",
                    d.name()
                )
            })
            .collect();
        Ok(Evaluator {
            corpus,
            lexicon,
            metrics,
            policy,
            test,
            references,
            gold,
            gold_warnings,
        })
    }

    pub fn gold(&self) -> &[BinaryLabels] {
        &self.gold
    }

    /// Warnings that follow from the gold labels alone.
    pub fn gold_warnings(&self) -> &[String] {
        &self.gold_warnings
    }

    /// Scores one generated set against the test references.
    pub fn score(&self, system: &str, set: &GeneratedSet) -> Result<ScoreRow, HarnessError> {
        for id in set.outputs.keys() {
            match self.corpus.get(id) {
                Some(r) if r.split == crate::corpus::Split::Test => {}
                Some(_) => {
                    return Err(system_err(
                        system,
                        format!("`{id}` is a train study; only test studies are scored"),
                    ))
                }
                None => return Err(system_err(system, format!("`{id}` is not in the corpus"))),
            }
        }
        let tokenizer = self.corpus.tokenizer();
        let mut candidates = Vec::with_capacity(self.test.len());
        let mut predictions = Vec::with_capacity(self.test.len());
        let mut label_cache: BTreeMap<&str, BinaryLabels> = BTreeMap::new();
        for report in &self.test {
            let text = set.outputs.get(&report.study_id).ok_or_else(|| {
                system_err(
                    system,
                    format!("no output for test study `{}`", report.study_id),
                )
            })?;
            candidates.push(self.corpus.scoring_tokens_for(text));
            let pred = match label_cache.get(text.as_str()) {
                Some(p) => *p,
                None => {
                    let p = binarize(&label_text(text, tokenizer, self.lexicon)?, self.policy);
                    label_cache.insert(text, p);
                    p
                }
            };
            predictions.push(pred);
        }

        let b = bleu(&candidates, &self.references, 4).map_err(|e| system_err(system, e))?;
        let r = rouge_l(&candidates, &self.references, self.metrics.beta)
            .map_err(|e| system_err(system, e))?;
        let cider_params = CiderParams {
            sigma: self.metrics.sigma,
            ..CiderParams::default()
        };
        let c = cider_d(&candidates, &self.references, &cider_params)
            .map_err(|e| system_err(system, e))?;
        let acc = accuracy_macro(&predictions, &self.gold).map_err(|e| system_err(system, e))?;

        let scores: Vec<[f64; DISEASE_COUNT]> =
            predictions.iter().map(|p| p.map(f64::from)).collect();
        let auc = match auc_macro(&scores, &self.gold) {
            Ok(report) => Some(report.macro_auc),
            Err(ClassificationError::AllDiseasesDegenerate) => None,
            Err(e) => return Err(system_err(system, e)),
        };

        Ok(ScoreRow {
            system: system.to_string(),
            cells: [
                Some(b.per_n[0]),
                Some(b.per_n[1]),
                Some(b.per_n[2]),
                Some(b.per_n[3]),
                Some(b.mean_b),
                Some(r.f),
                Some(c.value),
                Some(acc),
                auc,
            ],
            warnings: Vec::new(),
            computed: true,
        })
    }
}

/// Runs one baseline spec to a generated set. Paths resolve against `base_dir`.
pub fn generate(
    spec: &BaselineSpec,
    config: &BenchmarkConfig,
    corpus: &Corpus,
    lexicon: &Lexicon,
    base_dir: &Path,
) -> Result<GeneratedSet, HarnessError> {
    let name = spec.display_name();
    let wrap = |e: BaselineError| system_err(&name, e);
    match spec {
        BaselineSpec::Random { seed, .. } => {
            gen_random(corpus, config.effective_seed(*seed)).map_err(wrap)
        }
        BaselineSpec::Constant {
            text,
            text_file,
            from_corpus,
            ..
        } => {
            let report = match (text, text_file, from_corpus) {
                (Some(t), None, None) => t.clone(),
                (None, Some(f), None) => {
                    let path = resolve(base_dir, f);
                    std::fs::read_to_string(&path)
                        .map_err(|source| HarnessError::Io { path, source })?
                }
                (None, None, Some(k)) => {
                    build_constant_from_corpus(corpus, lexicon, *k).map_err(wrap)?
                }
                (None, None, None) => DEFAULT_CONSTANT_REPORT.to_string(),
                _ => {
                    return Err(system_err(
                        &name,
                        "set at most one of `text`, `text_file`, `from_corpus`",
                    ))
                }
            };
            gen_constant(corpus, report.trim()).map_err(wrap)
        }
        BaselineSpec::NearestNeighbor { features, .. } => {
            let path = resolve(base_dir, features);
            let file =
                std::fs::File::open(&path).map_err(|source| HarnessError::Io { path, source })?;
            let features = read_feature_csv(file).map_err(wrap)?;
            gen_nearest_neighbor(corpus, &features).map_err(wrap)
        }
        BaselineSpec::TopSentences { n, seed, .. } => {
            gen_top_sentences(corpus, *n, config.effective_seed(*seed)).map_err(wrap)
        }
        BaselineSpec::TopWords { n, seed, .. } => {
            gen_top_words(corpus, *n, config.effective_seed(*seed)).map_err(wrap)
        }
    }
}

pub fn load_lexicon(config: &BenchmarkConfig, base_dir: &Path) -> Result<Lexicon, HarnessError> {
    Ok(match &config.labeler.lexicon {
        Some(p) => Lexicon::load(&resolve(base_dir, p))?,
        None => Lexicon::builtin(),
    })
}

/// Builds the full table or fails; partial tables are never returned.
pub fn run_benchmark(
    config: &BenchmarkConfig,
    base_dir: &Path,
) -> Result<ScoreTable, HarnessError> {
    if config.baselines.is_empty() {
        return Err(HarnessError::Config("no baselines configured".into()));
    }
    let corpus = load_corpus(
        &resolve(base_dir, &config.corpus),
        config.corpus_format(),
        config.tokenizer,
    )?;
    let lexicon = load_lexicon(config, base_dir)?;
    let evaluator = Evaluator::new(&corpus, &lexicon, config.metrics, config.labeler.uncertain)?;

    // baselines are independent; results are joined back in config order
    let results: Vec<Result<ScoreRow, HarnessError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .baselines
            .iter()
            .map(|spec| {
                let evaluator = &evaluator;
                let corpus = &corpus;
                let lexicon = &lexicon;
                scope.spawn(move || {
                    let set = generate(spec, config, corpus, lexicon, base_dir)?;
                    evaluator.score(&spec.display_name(), &set)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("baseline worker panicked"))
            .collect()
    });
    let rows = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut warnings = evaluator.gold_warnings().to_vec();
    if warnings.len() == DISEASE_COUNT {
        warnings.push("AUC undefined: every gold column is single-class".into());
    }
    Ok(ScoreTable {
        rows,
        warnings,
        reference_rows: if config.output.reference_rows {
            reference_rows()
        } else {
            Vec::new()
        },
        config: config.to_toml(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusStats {
    pub reports: usize,
    pub train_reports: usize,
    pub test_reports: usize,
    pub empty_reports: usize,
    /// Distinct train tokens.
    pub vocabulary_size: usize,
    /// Sentences over both splits.
    pub sentence_count: usize,
    pub normal_sentence_fraction: f64,
    pub top_sentences: Vec<(String, u64)>,
}

pub fn corpus_report(
    corpus: &Corpus,
    lexicon: &Lexicon,
    top: usize,
) -> Result<CorpusStats, HarnessError> {
    Ok(CorpusStats {
        reports: corpus.len(),
        train_reports: corpus.train().count(),
        test_reports: corpus.test().count(),
        empty_reports: corpus.reports().filter(|r| r.is_empty()).count(),
        vocabulary_size: corpus.word_freq().len(),
        sentence_count: corpus.reports().map(|r| r.sentences.len()).sum(),
        normal_sentence_fraction: normal_sentence_fraction(corpus, lexicon)?,
        top_sentences: corpus
            .top_sentences(top)
            .into_iter()
            .map(|(s, c)| (s.to_string(), c))
            .collect(),
    })
}
