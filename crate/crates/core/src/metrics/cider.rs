use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ngram::{counts_unchecked, NGramCounts, MAX_N};
use super::{check_pairs, MetricsError, Tokens};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CiderParams {
    /// Gaussian length-penalty width.
    pub sigma: f64,
    pub max_n: usize,
    pub scale: f64,
}

impl Default for CiderParams {
    fn default() -> Self {
        CiderParams {
            sigma: 6.0,
            max_n: MAX_N,
            scale: 10.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CiderScore {
    /// Corpus mean of the scaled per-order similarity, n = 1..max_n.
    pub per_n: Vec<f64>,
    /// Mean of `per_n`; bounded by `scale`.
    pub value: f64,
    pub pair_scores: Vec<f64>,
}

/// TF-IDF weighted n-gram vector with its L2 norm.
struct Weighted<'a> {
    weights: BTreeMap<&'a [String], f64>,
    norm: f64,
}

fn weigh<'a>(
    counts: &NGramCounts<'a>,
    df: &BTreeMap<&[String], usize>,
    log_docs: f64,
) -> Weighted<'a> {
    let weights: BTreeMap<&[String], f64> = counts
        .counts
        .iter()
        .map(|(&gram, &tf)| {
            let df = df.get(gram).copied().unwrap_or(0).max(1) as f64;
            (gram, tf as f64 * (log_docs - df.ln()))
        })
        .collect();
    let norm = weights.values().map(|w| w * w).sum::<f64>().sqrt();
    Weighted { weights, norm }
}

/// Clipped cosine: the candidate weight is capped at the reference weight.
fn clipped_cosine(cand: &Weighted<'_>, reference: &Weighted<'_>) -> f64 {
    if cand.norm == 0.0 || reference.norm == 0.0 {
        return 0.0;
    }
    let dot: f64 = cand
        .weights
        .iter()
        .filter_map(|(gram, &w)| reference.weights.get(gram).map(|&rw| w.min(rw) * rw))
        .sum();
    dot / (cand.norm * reference.norm)
}

/// CIDEr-D with one reference per candidate; document frequencies come from
/// the reference side of the evaluated pairs.
pub fn cider_d(
    candidates: &[Tokens],
    references: &[Tokens],
    params: &CiderParams,
) -> Result<CiderScore, MetricsError> {
    if !(1..=MAX_N).contains(&params.max_n) {
        return Err(MetricsError::InvalidN(params.max_n));
    }
    check_pairs(candidates, references)?;
    let max_n = params.max_n;

    let ref_counts: Vec<Vec<NGramCounts<'_>>> = references
        .iter()
        .map(|r| (1..=max_n).map(|n| counts_unchecked(r, n)).collect())
        .collect();

    let mut df: Vec<BTreeMap<&[String], usize>> = vec![BTreeMap::new(); max_n];
    for counts in &ref_counts {
        for (n, c) in counts.iter().enumerate() {
            for &gram in c.counts.keys() {
                *df[n].entry(gram).or_insert(0) += 1;
            }
        }
    }
    let log_docs = (references.len() as f64).ln();
    let two_sigma_sq = 2.0 * params.sigma * params.sigma;

    let mut per_n_sum = vec![0.0; max_n];
    let mut pair_scores = Vec::with_capacity(candidates.len());
    for ((cand, reference), r_counts) in candidates.iter().zip(references).zip(&ref_counts) {
        let delta = cand.len() as f64 - reference.len() as f64;
        let penalty = (-(delta * delta) / two_sigma_sq).exp();
        let mut pair = 0.0;
        for n in 0..max_n {
            let c_vec = weigh(&counts_unchecked(cand, n + 1), &df[n], log_docs);
            let r_vec = weigh(&r_counts[n], &df[n], log_docs);
            let sim = clipped_cosine(&c_vec, &r_vec) * penalty * params.scale;
            per_n_sum[n] += sim;
            pair += sim;
        }
        pair_scores.push(pair / max_n as f64);
    }

    let pairs = candidates.len() as f64;
    let per_n: Vec<f64> = per_n_sum.iter().map(|s| s / pairs).collect();
    let value = pair_scores.iter().sum::<f64>() / pairs;
    Ok(CiderScore {
        per_n,
        value,
        pair_scores,
    })
}
