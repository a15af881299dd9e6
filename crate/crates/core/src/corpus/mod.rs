//! Report corpora: ingestion, normalization and train-split statistics.
//!
//! A [`Corpus`] is immutable once loaded. Frequency tables are built from the
//! train split only so that no baseline can see test text.

mod tokenizer;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use tokenizer::{
    scoring_tokens, split_sentences, text_to_scoring_tokens, tokenize, tokenize_sentences,
    TokenizerConfig, PERIOD_TOKEN,
};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    UnreadableFile {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: missing field `{field}`")]
    MissingField { line: usize, field: &'static str },
    #[error("line {line}: {reason}")]
    InvalidRecord { line: usize, reason: String },
    #[error("line {line}: duplicate study_id `{study_id}`")]
    DuplicateStudyId { line: usize, study_id: String },
    #[error("corpus contains no records")]
    EmptyCorpus,
    #[error("corpus has no non-empty train reports")]
    EmptyTrainSplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub fn parse(s: &str) -> Option<Split> {
        match s.trim().to_ascii_lowercase().as_str() {
            "train" => Some(Split::Train),
            "test" => Some(Split::Test),
            _ => None,
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Test => "test",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    #[serde(alias = "jsonl")]
    JsonLines,
    Tsv,
}

impl CorpusFormat {
    /// `.tsv` means TSV, anything else is JSON lines.
    pub fn from_path(path: &Path) -> CorpusFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("tsv") => CorpusFormat::Tsv,
            _ => CorpusFormat::JsonLines,
        }
    }
}

/// One input record before normalization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub study_id: String,
    pub split: Split,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub features: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub study_id: String,
    pub split: Split,
    pub raw_text: String,
    pub sentences: Vec<Vec<String>>,
    pub tokens: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub features: Option<String>,
}

impl Report {
    pub fn new(record: Record, config: &TokenizerConfig) -> Report {
        let sentences = tokenize_sentences(&record.text, config);
        let tokens = sentences.concat();
        Report {
            study_id: record.study_id,
            split: record.split,
            raw_text: record.text,
            sentences,
            tokens,
            features: record.features,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Tokens as seen by the metrics (see [`TokenizerConfig::period_tokens`]).
    pub fn scoring_tokens(&self, config: &TokenizerConfig) -> Vec<String> {
        scoring_tokens(&self.sentences, config)
    }
}

pub type WordFreq = BTreeMap<String, u64>;
pub type SentenceFreq = BTreeMap<String, u64>;

#[derive(Clone, Debug, Serialize)]
pub struct Corpus {
    tokenizer: TokenizerConfig,
    reports: BTreeMap<String, Report>,
    word_freq: WordFreq,
    sentence_freq: SentenceFreq,
}

impl Corpus {
    /// Builds a corpus from records in input order. `line` numbers in errors are
    /// 1-based positions in `records`.
    pub fn from_records(
        records: impl IntoIterator<Item = Record>,
        tokenizer: TokenizerConfig,
    ) -> Result<Corpus, CorpusError> {
        let numbered = records.into_iter().enumerate().map(|(i, r)| (i + 1, r));
        Self::from_numbered(numbered, tokenizer)
    }

    fn from_numbered(
        records: impl IntoIterator<Item = (usize, Record)>,
        tokenizer: TokenizerConfig,
    ) -> Result<Corpus, CorpusError> {
        let mut reports = BTreeMap::new();
        for (line, record) in records {
            if reports.contains_key(&record.study_id) {
                return Err(CorpusError::DuplicateStudyId {
                    line,
                    study_id: record.study_id,
                });
            }
            let report = Report::new(record, &tokenizer);
            reports.insert(report.study_id.clone(), report);
        }
        if reports.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }
        let (word_freq, sentence_freq) = count_train(reports.values());
        Ok(Corpus {
            tokenizer,
            reports,
            word_freq,
            sentence_freq,
        })
    }

    pub fn tokenizer(&self) -> &TokenizerConfig {
        &self.tokenizer
    }

    pub fn len(&self) -> usize {
        self.reports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }

    pub fn get(&self, study_id: &str) -> Option<&Report> {
        self.reports.get(study_id)
    }

    /// All reports ordered by study id.
    pub fn reports(&self) -> impl Iterator<Item = &Report> {
        self.reports.values()
    }

    pub fn split(&self, split: Split) -> impl Iterator<Item = &Report> {
        self.reports.values().filter(move |r| r.split == split)
    }

    pub fn train(&self) -> impl Iterator<Item = &Report> {
        self.split(Split::Train)
    }

    pub fn test(&self) -> impl Iterator<Item = &Report> {
        self.split(Split::Test)
    }

    pub fn test_ids(&self) -> BTreeSet<&str> {
        self.test().map(|r| r.study_id.as_str()).collect()
    }

    pub fn word_freq(&self) -> &WordFreq {
        &self.word_freq
    }

    pub fn sentence_freq(&self) -> &SentenceFreq {
        &self.sentence_freq
    }

    /// The `k` most frequent train sentences, ties broken lexicographically.
    pub fn top_sentences(&self, k: usize) -> Vec<(&str, u64)> {
        top_k(&self.sentence_freq, k)
    }

    /// The `k` most frequent train words, ties broken lexicographically.
    pub fn top_words(&self, k: usize) -> Vec<(&str, u64)> {
        top_k(&self.word_freq, k)
    }

    /// Normalizes free text with this corpus' tokenizer into metric tokens.
    pub fn scoring_tokens_for(&self, text: &str) -> Vec<String> {
        text_to_scoring_tokens(text, &self.tokenizer)
    }
}

/// Frequency-ranked entries; equal counts fall back to key order.
pub fn top_k(table: &BTreeMap<String, u64>, k: usize) -> Vec<(&str, u64)> {
    let mut entries: Vec<(&str, u64)> = table.iter().map(|(s, &c)| (s.as_str(), c)).collect();
    // BTreeMap iteration is already lexicographic; a stable sort keeps that for ties.
    entries.sort_by_key(|e| std::cmp::Reverse(e.1));
    entries.truncate(k);
    entries
}

fn count_train<'a>(reports: impl Iterator<Item = &'a Report>) -> (WordFreq, SentenceFreq) {
    let mut words = WordFreq::new();
    let mut sentences = SentenceFreq::new();
    for report in reports.filter(|r| r.split == Split::Train && !r.is_empty()) {
        for token in &report.tokens {
            *words.entry(token.clone()).or_default() += 1;
        }
        for sentence in &report.sentences {
            *sentences.entry(sentence.join(" ")).or_default() += 1;
        }
    }
    (words, sentences)
}

/// `(word_freq, sentence_freq)` over the train split.
pub fn frequency_tables(corpus: &Corpus) -> Result<(WordFreq, SentenceFreq), CorpusError> {
    if corpus.word_freq.is_empty() {
        return Err(CorpusError::EmptyTrainSplit);
    }
    Ok((corpus.word_freq.clone(), corpus.sentence_freq.clone()))
}

pub fn load_corpus(
    path: &Path,
    format: CorpusFormat,
    tokenizer: TokenizerConfig,
) -> Result<Corpus, CorpusError> {
    let content = fs::read_to_string(path).map_err(|source| CorpusError::UnreadableFile {
        path: path.to_path_buf(),
        source,
    })?;
    let records = match format {
        CorpusFormat::JsonLines => parse_jsonl(&content)?,
        CorpusFormat::Tsv => parse_tsv(&content)?,
    };
    Corpus::from_numbered(records, tokenizer)
}

/// Parses JSON-lines records, keeping 1-based line numbers. Blank lines are skipped.
pub fn parse_jsonl(content: &str) -> Result<Vec<(usize, Record)>, CorpusError> {
    let mut out = Vec::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(raw).map_err(|e| CorpusError::InvalidRecord {
                line,
                reason: e.to_string(),
            })?;
        let field = |name: &'static str| -> Result<&str, CorpusError> {
            match value.get(name) {
                None | Some(serde_json::Value::Null) => {
                    Err(CorpusError::MissingField { line, field: name })
                }
                Some(v) => v.as_str().ok_or_else(|| CorpusError::InvalidRecord {
                    line,
                    reason: format!("field `{name}` must be a string"),
                }),
            }
        };
        let study_id = field("study_id")?.to_string();
        let split = parse_split(field("split")?, line)?;
        let text = field("text")?.to_string();
        let features = value
            .get("features")
            .and_then(|v| v.as_str())
            .map(str::to_string);
        out.push((
            line,
            Record {
                study_id,
                split,
                text,
                features,
            },
        ));
    }
    Ok(out)
}

/// `study_id<TAB>split<TAB>text`; an optional header row is skipped.
pub fn parse_tsv(content: &str) -> Result<Vec<(usize, Record)>, CorpusError> {
    let mut out = Vec::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let mut parts = raw.splitn(3, '\t');
        let study_id = parts.next().unwrap_or_default().trim();
        if line == 1 && study_id == "study_id" {
            continue;
        }
        if study_id.is_empty() {
            return Err(CorpusError::MissingField {
                line,
                field: "study_id",
            });
        }
        let split = parts.next().ok_or(CorpusError::MissingField {
            line,
            field: "split",
        })?;
        let text = parts.next().ok_or(CorpusError::MissingField {
            line,
            field: "text",
        })?;
        out.push((
            line,
            Record {
                study_id: study_id.to_string(),
                split: parse_split(split, line)?,
                text: text.to_string(),
                features: None,
            },
        ));
    }
    Ok(out)
}

fn parse_split(s: &str, line: usize) -> Result<Split, CorpusError> {
    Split::parse(s).ok_or_else(|| CorpusError::InvalidRecord {
        line,
        reason: format!("split must be `train` or `test`, got `{s}`"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, split: Split, text: &str) -> Record {
        Record {
            study_id: id.into(),
            split,
            text: text.into(),
            features: None,
        }
    }

    fn corpus(records: Vec<Record>) -> Corpus {
        Corpus::from_records(records, TokenizerConfig::default()).unwrap()
    }

    #[test]
    fn split_isolation() {
        let c = corpus(vec![
            rec("s1", Split::Train, "No acute disease."),
            rec("s2", Split::Test, "Lungs are clear."),
        ]);
        assert_eq!(c.train().count(), 1);
        assert_eq!(c.test().count(), 1);
        let expected: WordFreq = [("acute", 1), ("disease", 1), ("no", 1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        assert_eq!(c.word_freq(), &expected);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let err = Corpus::from_records(
            vec![rec("s1", Split::Train, "a."), rec("s1", Split::Test, "b.")],
            TokenizerConfig::default(),
        )
        .unwrap_err();
        assert!(
            matches!(err, CorpusError::DuplicateStudyId { line: 2, ref study_id } if study_id == "s1")
        );
    }

    #[test]
    fn empty_corpus_rejected() {
        assert!(matches!(
            Corpus::from_records(vec![], TokenizerConfig::default()),
            Err(CorpusError::EmptyCorpus)
        ));
    }

    #[test]
    fn sentence_and_word_tables() {
        let c = corpus(vec![
            rec("a", Split::Train, "Lungs are clear."),
            rec("b", Split::Train, "Lungs are clear."),
        ]);
        let (_, s) = frequency_tables(&c).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s["lungs are clear"], 2);

        let c = corpus(vec![
            rec("a", Split::Train, "a b."),
            rec("b", Split::Train, "a c."),
        ]);
        let (w, _) = frequency_tables(&c).unwrap();
        assert_eq!(w["a"], 2);
        assert_eq!(w["b"], 1);
        assert_eq!(w["c"], 1);
    }

    #[test]
    fn empty_train_split_is_an_error() {
        let c = corpus(vec![
            rec("a", Split::Test, "x."),
            rec("b", Split::Train, ""),
        ]);
        assert!(matches!(
            frequency_tables(&c),
            Err(CorpusError::EmptyTrainSplit)
        ));
        // empty reports are retained
        assert_eq!(c.len(), 2);
        assert!(c.get("b").unwrap().is_empty());
    }

    #[test]
    fn top_k_breaks_ties_lexicographically() {
        let c = corpus(vec![
            rec("1", Split::Train, "b. a. c. c."),
            rec("2", Split::Train, "b. a."),
        ]);
        assert_eq!(c.top_sentences(3), [("a", 2), ("b", 2), ("c", 2)]);
        let c = corpus(vec![rec("1", Split::Train, "z z y x x.")]);
        assert_eq!(c.top_words(2), [("x", 2), ("z", 2)]);
    }

    #[test]
    fn jsonl_errors_name_the_line() {
        let err = parse_jsonl("{\"study_id\":\"a\",\"split\":\"train\",\"text\":\"x\"}\n\n{\"study_id\":\"b\",\"split\":\"test\"}\n")
            .unwrap_err();
        assert!(matches!(
            err,
            CorpusError::MissingField {
                line: 3,
                field: "text"
            }
        ));
        let err = parse_jsonl("{\"study_id\":\"a\",\"split\":\"val\",\"text\":\"x\"}").unwrap_err();
        assert!(matches!(err, CorpusError::InvalidRecord { line: 1, .. }));
        let err = parse_jsonl("not json").unwrap_err();
        assert!(matches!(err, CorpusError::InvalidRecord { line: 1, .. }));
    }

    #[test]
    fn tsv_parsing() {
        let recs = parse_tsv(
            "study_id\tsplit\ttext\ns1\ttrain\tNo acute disease.\ns2\tTEST\tLungs\tclear.\n",
        )
        .unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[1].1.split, Split::Test);
        assert_eq!(recs[1].1.text, "Lungs\tclear.");
        assert!(matches!(
            parse_tsv("s1\ttrain").unwrap_err(),
            CorpusError::MissingField {
                line: 1,
                field: "text"
            }
        ));
    }

    #[test]
    fn unreadable_file() {
        let err = load_corpus(
            Path::new("/definitely/not/here.jsonl"),
            CorpusFormat::JsonLines,
            TokenizerConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, CorpusError::UnreadableFile { .. }));
    }
}
