use std::collections::BTreeMap;

use super::MetricsError;

pub const MAX_N: usize = 4;

/// Sliding-window n-gram counts borrowing from the token sequence.
///
/// Keys are ordered so that any reduction over them is deterministic.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NGramCounts<'a> {
    pub n: usize,
    pub counts: BTreeMap<&'a [String], usize>,
}

impl<'a> NGramCounts<'a> {
    pub fn get(&self, gram: &[String]) -> usize {
        self.counts.get(gram).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sum over keys of `min(self, reference)`.
    pub fn clipped_matches(&self, reference: &NGramCounts<'_>) -> usize {
        self.counts
            .iter()
            .map(|(gram, &c)| c.min(reference.get(gram)))
            .sum()
    }
}

pub fn ngram_counts(tokens: &[String], n: usize) -> Result<NGramCounts<'_>, MetricsError> {
    if !(1..=MAX_N).contains(&n) {
        return Err(MetricsError::InvalidN(n));
    }
    Ok(counts_unchecked(tokens, n))
}

pub(crate) fn counts_unchecked(tokens: &[String], n: usize) -> NGramCounts<'_> {
    let mut counts = BTreeMap::new();
    for gram in tokens.windows(n) {
        *counts.entry(gram).or_insert(0) += 1;
    }
    NGramCounts { n, counts }
}
