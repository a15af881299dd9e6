//! The five weak report generators.
//!
//! Every generator covers exactly the test studies of a corpus. Randomized
//! generators draw from one stream per study, seeded from `(seed, study_id)`,
//! so outputs do not depend on iteration or thread order.

mod features;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

pub use features::{
    extract_features, read_feature_csv, write_feature_csv, FeatureMap, FeatureVector, GrayImage,
    DEFAULT_SIDE,
};

use crate::corpus::{Corpus, Split};
use crate::labeler::{label_sentence, LabelError, Lexicon};
use crate::rng::keyed_rng;

/// The constant report used when none is supplied: three common no-finding sentences.
pub const DEFAULT_CONSTANT_REPORT: &str =
    "The cardiac silhouette is normal in size and configuration. \
The lungs are clear. No pneumothorax or pleural effusion.";

#[derive(Debug, Error, PartialEq)]
pub enum BaselineError {
    #[error("{0} split is empty")]
    EmptySplit(Split),
    #[error("constant report text is empty")]
    EmptyReportText,
    #[error("only {available} normal train sentences, {needed} requested")]
    NotEnoughNormalSentences { needed: usize, available: usize },
    #[error("only {available} distinct train sentences, {needed} requested")]
    NotEnoughSentences { needed: usize, available: usize },
    #[error("only {available} distinct train words, {needed} requested")]
    NotEnoughWords { needed: usize, available: usize },
    #[error("no feature vector for study `{0}`")]
    MissingFeatures(String),
    #[error("feature vector for `{study_id}` has {found} values, expected {expected}")]
    DimensionMismatch {
        study_id: String,
        expected: usize,
        found: usize,
    },
    #[error("image has no pixels")]
    EmptyImage,
    #[error("pixel intensity {0} outside [0, 1]")]
    InvalidPixel(f64),
    #[error("feature file: {0}")]
    FeatureFile(String),
    #[error(transparent)]
    Label(#[from] LabelError),
}

/// One generator's outputs for the test split.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratedSet {
    pub system_name: String,
    /// Test study id → generated report text.
    pub outputs: BTreeMap<String, String>,
    pub seed: u64,
    pub provenance: BTreeMap<String, String>,
}

impl GeneratedSet {
    fn new(system_name: &str, seed: u64, outputs: BTreeMap<String, String>) -> GeneratedSet {
        GeneratedSet {
            system_name: system_name.to_string(),
            outputs,
            seed,
            provenance: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> GeneratedSet {
        self.provenance.insert(key.to_string(), value.to_string());
        self
    }

    /// JSON lines of `{"study_id": …, "text": …}` in study id order.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (study_id, text) in &self.outputs {
            let line = serde_json::json!({ "study_id": study_id, "text": text });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

fn require_split(corpus: &Corpus, split: Split) -> Result<(), BaselineError> {
    if corpus.split(split).next().is_none() {
        return Err(BaselineError::EmptySplit(split));
    }
    Ok(())
}

fn per_test_study(corpus: &Corpus, mut f: impl FnMut(&str) -> String) -> BTreeMap<String, String> {
    corpus
        .test()
        .map(|r| (r.study_id.clone(), f(&r.study_id)))
        .collect()
}

/// Each test study receives a uniformly drawn train report.
pub fn gen_random(corpus: &Corpus, seed: u64) -> Result<GeneratedSet, BaselineError> {
    require_split(corpus, Split::Train)?;
    require_split(corpus, Split::Test)?;
    let train: Vec<&str> = corpus.train().map(|r| r.raw_text.as_str()).collect();
    let outputs = per_test_study(corpus, |id| {
        let mut rng = keyed_rng(seed, id);
        train[rng.gen_range(0..train.len())].to_string()
    });
    Ok(GeneratedSet::new("Random", seed, outputs).with("train_pool", train.len()))
}

pub fn gen_constant(corpus: &Corpus, report_text: &str) -> Result<GeneratedSet, BaselineError> {
    if report_text.trim().is_empty() {
        return Err(BaselineError::EmptyReportText);
    }
    require_split(corpus, Split::Test)?;
    let outputs = per_test_study(corpus, |_| report_text.to_string());
    Ok(GeneratedSet::new("Constant", 0, outputs).with("text", report_text))
}

fn join_sentences<'a>(sentences: impl IntoIterator<Item = &'a str>) -> String {
    sentences
        .into_iter()
        .map(|s| format!("{s}."))
        .collect::<Vec<_>>()
        .join(" ")
}

/// The `k` most frequent train sentences that label as normal, in frequency order.
pub fn build_constant_from_corpus(
    corpus: &Corpus,
    lexicon: &Lexicon,
    k: usize,
) -> Result<String, BaselineError> {
    require_split(corpus, Split::Train)?;
    if lexicon.phrase_count() == 0 {
        return Err(LabelError::EmptyLexicon.into());
    }
    let ranked = corpus.top_sentences(usize::MAX);
    let normal: Vec<&str> = ranked
        .iter()
        .map(|(s, _)| *s)
        .filter(|s| {
            let tokens: Vec<String> = s.split(' ').map(str::to_string).collect();
            !label_sentence(&tokens, lexicon).has_finding()
        })
        .take(k)
        .collect();
    if normal.len() < k || k == 0 {
        return Err(BaselineError::NotEnoughNormalSentences {
            needed: k,
            available: normal.len(),
        });
    }
    Ok(join_sentences(normal))
}

/// Each test study receives the report of its closest train study in feature
/// space (Euclidean; ties go to the smaller study id).
pub fn gen_nearest_neighbor(
    corpus: &Corpus,
    features: &FeatureMap,
) -> Result<GeneratedSet, BaselineError> {
    require_split(corpus, Split::Train)?;
    require_split(corpus, Split::Test)?;

    let mut dim: Option<usize> = None;
    let mut lookup = |id: &str| -> Result<&FeatureVector, BaselineError> {
        let fv = features
            .get(id)
            .ok_or_else(|| BaselineError::MissingFeatures(id.to_string()))?;
        match dim {
            None => dim = Some(fv.dim()),
            Some(d) if d != fv.dim() => {
                return Err(BaselineError::DimensionMismatch {
                    study_id: id.to_string(),
                    expected: d,
                    found: fv.dim(),
                })
            }
            Some(_) => {}
        }
        Ok(fv)
    };

    let train: Vec<(&str, &FeatureVector, &str)> = corpus
        .train()
        .map(|r| {
            Ok((
                r.study_id.as_str(),
                lookup(&r.study_id)?,
                r.raw_text.as_str(),
            ))
        })
        .collect::<Result<_, BaselineError>>()?;

    let mut outputs = BTreeMap::new();
    for report in corpus.test() {
        let query = lookup(&report.study_id)?;
        // train is in ascending study id order, so strict `<` keeps the smallest id on ties
        let mut best: Option<(f64, &str)> = None;
        for (_, fv, text) in &train {
            let d = query.squared_distance(fv);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, text));
            }
        }
        let (_, text) = best.expect("train split is non-empty");
        outputs.insert(report.study_id.clone(), text.to_string());
    }
    Ok(GeneratedSet::new("Nearest-neighbor", 0, outputs).with("dim", dim.unwrap_or(0)))
}

/// The `n` most common train sentences in a per-study random order.
pub fn gen_top_sentences(
    corpus: &Corpus,
    n: usize,
    seed: u64,
) -> Result<GeneratedSet, BaselineError> {
    require_split(corpus, Split::Test)?;
    let top: Vec<&str> = corpus
        .top_sentences(n)
        .into_iter()
        .map(|(s, _)| s)
        .collect();
    if top.len() < n || n == 0 {
        return Err(BaselineError::NotEnoughSentences {
            needed: n,
            available: corpus.sentence_freq().len(),
        });
    }
    let outputs = per_test_study(corpus, |id| {
        let mut order = top.clone();
        order.shuffle(&mut keyed_rng(seed, id));
        join_sentences(order)
    });
    Ok(GeneratedSet::new(&format!("Top-sentences-{n}"), seed, outputs).with("n", n))
}

/// The `n` most common train words in a per-study random order.
pub fn gen_top_words(corpus: &Corpus, n: usize, seed: u64) -> Result<GeneratedSet, BaselineError> {
    require_split(corpus, Split::Test)?;
    let top: Vec<&str> = corpus.top_words(n).into_iter().map(|(s, _)| s).collect();
    if top.len() < n || n == 0 {
        return Err(BaselineError::NotEnoughWords {
            needed: n,
            available: corpus.word_freq().len(),
        });
    }
    let outputs = per_test_study(corpus, |id| {
        let mut order = top.clone();
        order.shuffle(&mut keyed_rng(seed, id));
        order.join(" ")
    });
    Ok(GeneratedSet::new(&format!("Top-words-{n}"), seed, outputs).with("n", n))
}
