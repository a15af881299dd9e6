use serde::Serialize;

use super::{check_pairs, MetricsError, Tokens};

pub const DEFAULT_BETA: f64 = 1.2;

/// Corpus ROUGE-L: per-pair values averaged over pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RougeLScore {
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
    pub beta: f64,
}

/// Length of a longest common subsequence. Two-row DP, O(|a|·|b|) time.
pub fn lcs_length<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut curr = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            curr[j + 1] = if x == y {
                prev[j] + 1
            } else {
                prev[j + 1].max(curr[j])
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// `(precision, recall, f)` for one pair. Empty sides score 0.
pub fn rouge_l_pair(candidate: &[String], reference: &[String], beta: f64) -> (f64, f64, f64) {
    let lcs = lcs_length(candidate, reference);
    if lcs == 0 {
        return (0.0, 0.0, 0.0);
    }
    let p = lcs as f64 / candidate.len() as f64;
    let r = lcs as f64 / reference.len() as f64;
    let b2 = beta * beta;
    let f = (1.0 + b2) * p * r / (r + b2 * p);
    (p, r, f)
}

pub fn rouge_l(
    candidates: &[Tokens],
    references: &[Tokens],
    beta: f64,
) -> Result<RougeLScore, MetricsError> {
    check_pairs(candidates, references)?;
    let (mut p_sum, mut r_sum, mut f_sum) = (0.0, 0.0, 0.0);
    for (c, r) in candidates.iter().zip(references) {
        let (p, r, f) = rouge_l_pair(c, r, beta);
        p_sum += p;
        r_sum += r;
        f_sum += f;
    }
    let n = candidates.len() as f64;
    Ok(RougeLScore {
        precision: p_sum / n,
        recall: r_sum / n,
        f: f_sum / n,
        beta,
    })
}
