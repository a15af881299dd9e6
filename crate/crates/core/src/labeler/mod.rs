//! Rule-based 14-observation labeler and the classification metrics built on it.
//!
//! Labels are produced per sentence by phrase spotting plus cue scope rules
//! (see [`rules`]), then merged per report. Predictions and gold labels are
//! compared after [`binarize`] with [`accuracy_macro`] and [`auc_macro`].

mod classification;
mod lexicon;
mod rules;

use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classification::{
    accuracy_macro, accuracy_per_disease, auc_column, auc_macro, AucReport, ClassificationError,
};
pub use lexicon::{Lexicon, LexiconError, DEFAULT_LEXICON};
pub use rules::{
    label_report, label_sentence, label_sentences, label_text, normal_sentence_fraction,
};

pub const DISEASE_COUNT: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Disease {
    NoFinding,
    EnlargedCardiomediastinum,
    Cardiomegaly,
    LungOpacity,
    LungLesion,
    Edema,
    Consolidation,
    Pneumonia,
    Atelectasis,
    Pneumothorax,
    PleuralEffusion,
    PleuralOther,
    Fracture,
    SupportDevices,
}

impl Disease {
    pub const ALL: [Disease; DISEASE_COUNT] = [
        Disease::NoFinding,
        Disease::EnlargedCardiomediastinum,
        Disease::Cardiomegaly,
        Disease::LungOpacity,
        Disease::LungLesion,
        Disease::Edema,
        Disease::Consolidation,
        Disease::Pneumonia,
        Disease::Atelectasis,
        Disease::Pneumothorax,
        Disease::PleuralEffusion,
        Disease::PleuralOther,
        Disease::Fracture,
        Disease::SupportDevices,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Disease::NoFinding => "No Finding",
            Disease::EnlargedCardiomediastinum => "Enlarged Cardiomediastinum",
            Disease::Cardiomegaly => "Cardiomegaly",
            Disease::LungOpacity => "Lung Opacity",
            Disease::LungLesion => "Lung Lesion",
            Disease::Edema => "Edema",
            Disease::Consolidation => "Consolidation",
            Disease::Pneumonia => "Pneumonia",
            Disease::Atelectasis => "Atelectasis",
            Disease::Pneumothorax => "Pneumothorax",
            Disease::PleuralEffusion => "Pleural Effusion",
            Disease::PleuralOther => "Pleural Other",
            Disease::Fracture => "Fracture",
            Disease::SupportDevices => "Support Devices",
        }
    }

    pub fn from_name(name: &str) -> Option<Disease> {
        Disease::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(name.trim()))
    }
}

impl fmt::Display for Disease {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered by precedence when merging mentions: the larger value wins.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum DiseaseLabel {
    #[default]
    NotMentioned,
    Negative,
    Uncertain,
    Positive,
}

impl DiseaseLabel {
    pub fn is_finding(self) -> bool {
        matches!(self, DiseaseLabel::Positive | DiseaseLabel::Uncertain)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum UncertainPolicy {
    #[default]
    #[serde(rename = "positive", alias = "pos")]
    UncertainAsPositive,
    #[serde(rename = "negative", alias = "neg")]
    UncertainAsNegative,
}

impl UncertainPolicy {
    pub fn parse(s: &str) -> Option<UncertainPolicy> {
        match s.to_ascii_lowercase().as_str() {
            "pos" | "positive" => Some(UncertainPolicy::UncertainAsPositive),
            "neg" | "negative" => Some(UncertainPolicy::UncertainAsNegative),
            _ => None,
        }
    }
}

pub type BinaryLabels = [u8; DISEASE_COUNT];

/// Fixed-order labels for the 14 observations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LabelVector {
    pub labels: [DiseaseLabel; DISEASE_COUNT],
}

impl LabelVector {
    pub fn get(&self, disease: Disease) -> DiseaseLabel {
        self.labels[disease.index()]
    }

    pub fn set(&mut self, disease: Disease, label: DiseaseLabel) {
        self.labels[disease.index()] = label;
    }

    /// Keeps the higher-precedence label.
    pub fn merge(&mut self, disease: Disease, label: DiseaseLabel) {
        let slot = &mut self.labels[disease.index()];
        *slot = (*slot).max(label);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Disease, DiseaseLabel)> + '_ {
        Disease::ALL.into_iter().zip(self.labels.iter().copied())
    }

    /// True when any observation other than "No Finding" is positive or uncertain.
    pub fn has_finding(&self) -> bool {
        self.iter()
            .any(|(d, l)| d != Disease::NoFinding && l.is_finding())
    }
}

impl Serialize for LabelVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(DISEASE_COUNT))?;
        for (disease, label) in self.iter() {
            map.serialize_entry(disease.name(), &label)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LabelVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct LabelVisitor;

        impl<'de> Visitor<'de> for LabelVisitor {
            type Value = LabelVector;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map of the 14 observation names to labels")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LabelVector, A::Error> {
                let mut seen = [false; DISEASE_COUNT];
                let mut out = LabelVector::default();
                while let Some((name, label)) = access.next_entry::<String, DiseaseLabel>()? {
                    let disease = Disease::from_name(&name).ok_or_else(|| {
                        de::Error::custom(format!("unknown observation `{name}`"))
                    })?;
                    if std::mem::replace(&mut seen[disease.index()], true) {
                        return Err(de::Error::custom(format!("duplicate observation `{name}`")));
                    }
                    out.set(disease, label);
                }
                if let Some(missing) = Disease::ALL.iter().find(|d| !seen[d.index()]) {
                    return Err(de::Error::custom(format!(
                        "missing observation `{missing}`"
                    )));
                }
                Ok(out)
            }
        }

        deserializer.deserialize_map(LabelVisitor)
    }
}

/// Positive → 1, Negative / NotMentioned → 0, Uncertain per `policy`.
pub fn binarize(v: &LabelVector, policy: UncertainPolicy) -> BinaryLabels {
    v.labels.map(|l| match l {
        DiseaseLabel::Positive => 1,
        DiseaseLabel::Uncertain => match policy {
            UncertainPolicy::UncertainAsPositive => 1,
            UncertainPolicy::UncertainAsNegative => 0,
        },
        DiseaseLabel::Negative | DiseaseLabel::NotMentioned => 0,
    })
}

#[derive(Debug, Error, PartialEq)]
pub enum LabelError {
    #[error("lexicon has no mention phrases")]
    EmptyLexicon,
    #[error("corpus has no sentences")]
    EmptyCorpus,
}
