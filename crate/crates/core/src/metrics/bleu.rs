use serde::Serialize;

use super::ngram::{counts_unchecked, MAX_N};
use super::{check_pairs, MetricsError, Tokens};

/// Corpus-level BLEU with clipped counts and no smoothing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BleuScore {
    /// Cumulative BLEU-1..BLEU-max_n.
    pub per_n: Vec<f64>,
    /// Arithmetic mean of `per_n`: the combined "B" column.
    pub mean_b: f64,
    /// `exp(1 - r/c)` for `c <= r`, else 1. Zero when every candidate is empty.
    pub brevity_penalty: f64,
    /// Modified n-gram precisions p_1..p_max_n.
    pub precisions: Vec<f64>,
    pub matches: Vec<usize>,
    pub totals: Vec<usize>,
    pub candidate_length: usize,
    pub reference_length: usize,
}

pub fn bleu(
    candidates: &[Tokens],
    references: &[Tokens],
    max_n: usize,
) -> Result<BleuScore, MetricsError> {
    if !(1..=MAX_N).contains(&max_n) {
        return Err(MetricsError::InvalidN(max_n));
    }
    check_pairs(candidates, references)?;

    let mut matches = vec![0usize; max_n];
    let mut totals = vec![0usize; max_n];
    let mut candidate_length = 0;
    let mut reference_length = 0;
    for (cand, reference) in candidates.iter().zip(references) {
        candidate_length += cand.len();
        reference_length += reference.len();
        for n in 1..=max_n {
            let c = counts_unchecked(cand, n);
            let r = counts_unchecked(reference, n);
            matches[n - 1] += c.clipped_matches(&r);
            totals[n - 1] += cand.len().saturating_sub(n - 1);
        }
    }

    let brevity_penalty = if candidate_length == 0 {
        0.0
    } else if candidate_length > reference_length {
        1.0
    } else {
        (1.0 - reference_length as f64 / candidate_length as f64).exp()
    };

    let precisions: Vec<f64> = matches
        .iter()
        .zip(&totals)
        .map(|(&m, &t)| if t == 0 { 0.0 } else { m as f64 / t as f64 })
        .collect();

    let mut per_n = Vec::with_capacity(max_n);
    let mut log_sum = 0.0;
    let mut zeroed = false;
    for (k, &p) in precisions.iter().enumerate() {
        if p == 0.0 {
            zeroed = true;
        }
        if zeroed {
            per_n.push(0.0);
            continue;
        }
        log_sum += p.ln();
        let value = brevity_penalty * (log_sum / (k + 1) as f64).exp();
        per_n.push(value.min(1.0));
    }
    let mean_b = per_n.iter().sum::<f64>() / per_n.len() as f64;

    Ok(BleuScore {
        per_n,
        mean_b,
        brevity_penalty,
        precisions,
        matches,
        totals,
        candidate_length,
        reference_length,
    })
}
