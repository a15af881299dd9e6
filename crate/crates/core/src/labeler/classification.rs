use serde::Serialize;
use thiserror::Error;

use super::{BinaryLabels, Disease, DISEASE_COUNT};

#[derive(Debug, Error, PartialEq)]
pub enum ClassificationError {
    #[error("{pred} predictions but {gold} gold vectors")]
    LengthMismatch { pred: usize, gold: usize },
    #[error("no reports to evaluate")]
    EmptyInput,
    #[error("every observation column has a single gold class")]
    AllDiseasesDegenerate,
}

fn check(pred: usize, gold: usize) -> Result<(), ClassificationError> {
    if pred != gold {
        return Err(ClassificationError::LengthMismatch { pred, gold });
    }
    if pred == 0 {
        return Err(ClassificationError::EmptyInput);
    }
    Ok(())
}

pub fn accuracy_per_disease(
    pred: &[BinaryLabels],
    gold: &[BinaryLabels],
) -> Result<[f64; DISEASE_COUNT], ClassificationError> {
    check(pred.len(), gold.len())?;
    let mut correct = [0usize; DISEASE_COUNT];
    for (p, g) in pred.iter().zip(gold) {
        for d in 0..DISEASE_COUNT {
            if p[d] == g[d] {
                correct[d] += 1;
            }
        }
    }
    Ok(correct.map(|c| c as f64 / pred.len() as f64))
}

/// Per-observation accuracy, then the unweighted mean over all 14.
pub fn accuracy_macro(
    pred: &[BinaryLabels],
    gold: &[BinaryLabels],
) -> Result<f64, ClassificationError> {
    let per = accuracy_per_disease(pred, gold)?;
    Ok(per.iter().sum::<f64>() / DISEASE_COUNT as f64)
}

/// ROC-AUC of one column via the Mann–Whitney rank statistic, ties counted ½.
/// `None` when the gold column has a single class.
pub fn auc_column(scores: &[f64], gold: &[bool]) -> Option<f64> {
    let positives = gold.iter().filter(|&&g| g).count();
    let negatives = gold.len() - positives;
    if positives == 0 || negatives == 0 {
        return None;
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));

    // average 1-based ranks over tie groups
    let mut rank_sum_pos = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && scores[order[j]].total_cmp(&scores[order[i]]).is_eq() {
            j += 1;
        }
        let avg_rank = (i + 1 + j) as f64 / 2.0;
        let pos_in_group = order[i..j].iter().filter(|&&k| gold[k]).count();
        rank_sum_pos += avg_rank * pos_in_group as f64;
        i = j;
    }

    let p = positives as f64;
    let n = negatives as f64;
    Some((rank_sum_pos - p * (p + 1.0) / 2.0) / (p * n))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AucReport {
    pub macro_auc: f64,
    pub per_disease: [Option<f64>; DISEASE_COUNT],
    /// One entry per observation left out of the macro mean.
    pub warnings: Vec<String>,
}

/// Macro ROC-AUC over the observations whose gold column has both classes.
pub fn auc_macro(
    scores: &[[f64; DISEASE_COUNT]],
    gold: &[BinaryLabels],
) -> Result<AucReport, ClassificationError> {
    check(scores.len(), gold.len())?;
    let mut per_disease = [None; DISEASE_COUNT];
    let mut warnings = Vec::new();
    for disease in Disease::ALL {
        let d = disease.index();
        let column: Vec<f64> = scores.iter().map(|s| s[d]).collect();
        let truth: Vec<bool> = gold.iter().map(|g| g[d] == 1).collect();
        per_disease[d] = auc_column(&column, &truth);
        if per_disease[d].is_none() {
            warnings.push(format!(
                "{}: single-class gold column, excluded from macro AUC",
                disease.name()
            ));
        }
    }
    let valid: Vec<f64> = per_disease.iter().flatten().copied().collect();
    if valid.is_empty() {
        return Err(ClassificationError::AllDiseasesDegenerate);
    }
    Ok(AucReport {
        macro_auc: valid.iter().sum::<f64>() / valid.len() as f64,
        per_disease,
        warnings,
    })
}
