//! Sentence-scope cue rules.
//!
//! A sentence is cut into clauses at reset words ("but", "however", ...).
//! Inside a clause every mention phrase occurrence is classified:
//!
//! 1. the nearest cue ending at or before the mention decides, if any:
//!    a negation cue gives Negative, an uncertainty cue gives Uncertain;
//! 2. otherwise an uncertainty cue after the mention gives Uncertain;
//! 3. otherwise a post-negation cue after the mention gives Negative;
//! 4. otherwise the mention is Positive.
//!
//! A negation cue therefore distributes over a coordinated list
//! ("no pneumothorax or pleural effusion"). A mention nested inside a longer
//! overlapping mention is ignored ("heart" inside "heart failure").

use super::lexicon::Phrase;
use super::{Disease, DiseaseLabel, LabelError, LabelVector, Lexicon};
use crate::corpus::{tokenize_sentences, Corpus, Report, TokenizerConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CueKind {
    Negation,
    NegationPost,
    Uncertainty,
}

#[derive(Clone, Copy, Debug)]
struct Span {
    start: usize,
    end: usize,
}

fn occurrences<'a>(tokens: &'a [String], phrase: &'a Phrase) -> impl Iterator<Item = Span> + 'a {
    tokens
        .windows(phrase.len())
        .enumerate()
        .filter(move |(_, w)| *w == phrase.as_slice())
        .map(move |(start, _)| Span {
            start,
            end: start + phrase.len(),
        })
}

fn clauses<'a>(tokens: &'a [String], resets: &[Phrase]) -> Vec<&'a [String]> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < tokens.len() {
        let hit = resets
            .iter()
            .filter(|r| tokens[i..].starts_with(r))
            .map(|r| r.len())
            .max();
        match hit {
            Some(len) => {
                out.push(&tokens[start..i]);
                i += len;
                start = i;
            }
            None => i += 1,
        }
    }
    out.push(&tokens[start..]);
    out
}

fn classify(mention: Span, cues: &[(Span, CueKind)]) -> DiseaseLabel {
    let preceding = cues
        .iter()
        .filter(|(s, k)| s.end <= mention.start && *k != CueKind::NegationPost)
        .max_by_key(|(s, _)| (s.end, s.end - s.start));
    if let Some((_, kind)) = preceding {
        return match kind {
            CueKind::Uncertainty => DiseaseLabel::Uncertain,
            _ => DiseaseLabel::Negative,
        };
    }
    let after = |kind: CueKind| {
        cues.iter()
            .any(|(s, k)| *k == kind && s.start >= mention.end)
    };
    if after(CueKind::Uncertainty) {
        DiseaseLabel::Uncertain
    } else if after(CueKind::NegationPost) {
        DiseaseLabel::Negative
    } else {
        DiseaseLabel::Positive
    }
}

fn label_clause(tokens: &[String], lexicon: &Lexicon, out: &mut LabelVector) {
    let mut cues = Vec::new();
    for (list, kind) in [
        (&lexicon.negation, CueKind::Negation),
        (&lexicon.negation_post, CueKind::NegationPost),
        (&lexicon.uncertainty, CueKind::Uncertainty),
    ] {
        for cue in list {
            cues.extend(occurrences(tokens, cue).map(|s| (s, kind)));
        }
    }

    let mut mentions: Vec<(Span, Disease)> = Vec::new();
    for (disease, phrases) in &lexicon.mentions {
        for phrase in phrases {
            mentions.extend(occurrences(tokens, phrase).map(|s| (s, *disease)));
        }
    }

    for &(span, disease) in &mentions {
        let nested = mentions.iter().any(|(other, _)| {
            other.start <= span.start
                && span.end <= other.end
                && other.end - other.start > span.end - span.start
        });
        if !nested {
            out.merge(disease, classify(span, &cues));
        }
    }
}

/// Labels of one tokenized sentence. "No Finding" is left NotMentioned.
pub fn label_sentence(tokens: &[String], lexicon: &Lexicon) -> LabelVector {
    let mut labels = LabelVector::default();
    for clause in clauses(tokens, &lexicon.resets) {
        label_clause(clause, lexicon, &mut labels);
    }
    labels
}

pub fn label_sentences(
    sentences: &[Vec<String>],
    lexicon: &Lexicon,
) -> Result<LabelVector, LabelError> {
    if lexicon.phrase_count() == 0 {
        return Err(LabelError::EmptyLexicon);
    }
    let mut labels = LabelVector::default();
    for sentence in sentences {
        let s = label_sentence(sentence, lexicon);
        for (disease, label) in s.iter() {
            labels.merge(disease, label);
        }
    }
    if !labels.has_finding() {
        labels.set(Disease::NoFinding, DiseaseLabel::Positive);
    }
    Ok(labels)
}

pub fn label_report(report: &Report, lexicon: &Lexicon) -> Result<LabelVector, LabelError> {
    label_sentences(&report.sentences, lexicon)
}

pub fn label_text(
    text: &str,
    tokenizer: &TokenizerConfig,
    lexicon: &Lexicon,
) -> Result<LabelVector, LabelError> {
    label_sentences(&tokenize_sentences(text, tokenizer), lexicon)
}

/// Share of sentences, over both splits, that carry no positive or uncertain
/// observation.
pub fn normal_sentence_fraction(corpus: &Corpus, lexicon: &Lexicon) -> Result<f64, LabelError> {
    if lexicon.phrase_count() == 0 {
        return Err(LabelError::EmptyLexicon);
    }
    let mut total = 0usize;
    let mut normal = 0usize;
    for sentence in corpus.reports().flat_map(|r| r.sentences.iter()) {
        total += 1;
        if !label_sentence(sentence, lexicon).has_finding() {
            normal += 1;
        }
    }
    if total == 0 {
        return Err(LabelError::EmptyCorpus);
    }
    Ok(normal as f64 / total as f64)
}
