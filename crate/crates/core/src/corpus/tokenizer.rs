use serde::{Deserialize, Serialize};

/// Text normalization settings. Recorded in every score table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TokenizerConfig {
    pub lowercase: bool,
    /// Replace punctuation with token boundaries. Sentence-terminal periods are
    /// consumed by [`split_sentences`] before tokenization; a period between two
    /// digits stays inside its token (`3.5`).
    pub strip_punct: bool,
    /// Keep the `xxxx` de-identification placeholder as an ordinary token.
    pub keep_deid_token: bool,
    /// Emit a `.` token after every sentence when building scoring tokens.
    /// Only affects metric inputs, never sentence tables or labels.
    pub period_tokens: bool,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            lowercase: true,
            strip_punct: true,
            keep_deid_token: true,
            period_tokens: false,
        }
    }
}

pub const PERIOD_TOKEN: &str = ".";

fn is_deid_token(token: &str) -> bool {
    token.len() >= 4 && token.chars().all(|c| c == 'x' || c == 'X')
}

/// Splits `text` into normalized tokens.
pub fn tokenize(text: &str, config: &TokenizerConfig) -> Vec<String> {
    let text = if config.lowercase {
        text.to_lowercase()
    } else {
        text.to_string()
    };

    let cleaned: String = if config.strip_punct {
        let chars: Vec<char> = text.chars().collect();
        chars
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let keep = c.is_alphanumeric()
                    || c.is_whitespace()
                    || (c == '.' && is_decimal_point(&chars, i));
                if keep {
                    c
                } else {
                    ' '
                }
            })
            .collect()
    } else {
        text
    };

    cleaned
        .split_whitespace()
        .filter(|t| config.keep_deid_token || !is_deid_token(t))
        .map(str::to_string)
        .collect()
}

fn is_decimal_point(chars: &[char], i: usize) -> bool {
    i > 0 && chars[i - 1].is_ascii_digit() && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit())
}

/// Splits raw report text on sentence-terminal periods.
///
/// No abbreviation handling. Decimal points (`1.5 cm`) do not end a sentence.
pub fn split_sentences(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c == '.' && !is_decimal_point(&chars, i) {
            push_trimmed(&mut sentences, &current);
            current.clear();
        } else {
            current.push(c);
        }
    }
    push_trimmed(&mut sentences, &current);
    sentences
}

fn push_trimmed(out: &mut Vec<String>, s: &str) {
    let trimmed = s.trim();
    if !trimmed.is_empty() {
        out.push(trimmed.to_string());
    }
}

/// Sentence-split then tokenize. Sentences that normalize to nothing are dropped.
pub fn tokenize_sentences(text: &str, config: &TokenizerConfig) -> Vec<Vec<String>> {
    split_sentences(text)
        .iter()
        .map(|s| tokenize(s, config))
        .filter(|t| !t.is_empty())
        .collect()
}

/// Flat token sequence fed to the metrics.
pub fn scoring_tokens(sentences: &[Vec<String>], config: &TokenizerConfig) -> Vec<String> {
    let mut out = Vec::new();
    for sentence in sentences {
        out.extend(sentence.iter().cloned());
        if config.period_tokens {
            out.push(PERIOD_TOKEN.to_string());
        }
    }
    out
}

/// Convenience: raw text straight to metric tokens.
pub fn text_to_scoring_tokens(text: &str, config: &TokenizerConfig) -> Vec<String> {
    scoring_tokens(&tokenize_sentences(text, config), config)
}
