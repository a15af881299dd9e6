//! Caption-style NLG metrics computed over token sequences.
//!
//! All corpus reductions run in input order so results are bit-stable.

mod bleu;
mod cider;
mod ngram;
mod rouge;

use thiserror::Error;

pub use bleu::{bleu, BleuScore};
pub use cider::{cider_d, CiderParams, CiderScore};
pub use ngram::{ngram_counts, NGramCounts, MAX_N};
pub use rouge::{lcs_length, rouge_l, rouge_l_pair, RougeLScore, DEFAULT_BETA};

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("n-gram order must be in 1..={MAX_N}, got {0}")]
    InvalidN(usize),
    #[error("{candidates} candidates but {references} references")]
    LengthMismatch {
        candidates: usize,
        references: usize,
    },
    #[error("no candidate/reference pairs")]
    EmptyInput,
}

pub type Tokens = Vec<String>;

fn check_pairs(candidates: &[Tokens], references: &[Tokens]) -> Result<(), MetricsError> {
    if candidates.len() != references.len() {
        return Err(MetricsError::LengthMismatch {
            candidates: candidates.len(),
            references: references.len(),
        });
    }
    if candidates.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    Ok(())
}
