//! Seeded synthetic chest X-ray style corpus.
//!
//! Reports are assembled from template sentences. The share of no-finding
//! sentences is fixed by construction (`normal_fraction`), and every study also
//! gets a small synthetic image whose bright blobs mark the findings in its
//! report, so the nearest-neighbor baseline has a non-trivial feature space.

use std::fmt::Write as _;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::baselines::{
    extract_features, write_feature_csv, BaselineError, FeatureVector, GrayImage, DEFAULT_SIDE,
};
use crate::corpus::{Record, Split};
use crate::labeler::Disease;
use crate::rng::keyed_rng;

/// `(sentence, weight)`; all describe no abnormality.
const NORMAL_SENTENCES: &[(&str, u32)] = &[
    ("The lungs are clear", 20),
    ("No pneumothorax or pleural effusion", 18),
    ("Heart size is normal", 14),
    ("No acute cardiopulmonary abnormality", 12),
    ("No focal consolidation", 10),
    ("The mediastinum is unremarkable", 7),
    (
        "The cardiac silhouette is normal in size and configuration",
        6,
    ),
    ("Cardiomediastinal silhouette is within normal limits", 6),
    ("The osseous structures are intact", 6),
    ("No pleural effusion", 6),
    ("There is no pneumothorax", 5),
    ("Pulmonary vasculature is within normal limits", 5),
    ("No evidence of pneumonia", 4),
    ("Visualized XXXX of the chest are within normal limits", 3),
    ("No acute osseous abnormality", 3),
    ("The heart is normal in size", 3),
    ("Heart size and mediastinal contours are normal", 2),
    ("No pleural effusion or pneumothorax", 2),
    ("The lungs are clear bilaterally", 2),
];

/// `(template, observation, weight)`; each yields a positive or uncertain label.
/// `{slot}` placeholders are filled from [`SLOTS`].
const FINDING_SENTENCES: &[(&str, Disease, u32)] = &[
    (
        "The cardiac silhouette is enlarged",
        Disease::Cardiomegaly,
        6,
    ),
    ("There is {deg} cardiomegaly", Disease::Cardiomegaly, 5),
    (
        "There is a {size} {side} pleural effusion",
        Disease::PleuralEffusion,
        5,
    ),
    (
        "{Size} bilateral pleural effusions",
        Disease::PleuralEffusion,
        3,
    ),
    (
        "There is a focal airspace opacity in the {lobe}",
        Disease::LungOpacity,
        5,
    ),
    ("Patchy opacities in the {zone}", Disease::LungOpacity, 3),
    ("Findings may represent pneumonia", Disease::Pneumonia, 3),
    ("{Lobe} pneumonia", Disease::Pneumonia, 2),
    (
        "There is {deg} atelectasis in the {zone}",
        Disease::Atelectasis,
        4,
    ),
    (
        "There is a {size} {side} apical pneumothorax",
        Disease::Pneumothorax,
        2,
    ),
    ("Calcified granuloma in the {lobe}", Disease::LungLesion, 4),
    (
        "There is a {cm} cm nodule in the {lobe}",
        Disease::LungLesion,
        2,
    ),
    ("{Deg} pulmonary edema", Disease::Edema, 3),
    (
        "There is an old healed {side} rib fracture",
        Disease::Fracture,
        3,
    ),
    (
        "{Side}-sided pacemaker in place",
        Disease::SupportDevices,
        3,
    ),
    ("Sternotomy wires are present", Disease::SupportDevices, 2),
    ("Consolidation in the {lobe}", Disease::Consolidation, 2),
    (
        "Pleural thickening at the {side} apex",
        Disease::PleuralOther,
        2,
    ),
    (
        "The mediastinum is widened",
        Disease::EnlargedCardiomediastinum,
        2,
    ),
    (
        "Stable {size} {side} pleural effusion",
        Disease::PleuralEffusion,
        2,
    ),
    ("{Deg} interstitial edema", Disease::Edema, 2),
    ("Streaky opacity in the {zone}", Disease::LungOpacity, 2),
    ("{Size} {side} upper lobe mass", Disease::LungLesion, 1),
    (
        "Healing fracture of the {side} clavicle",
        Disease::Fracture,
        1,
    ),
    (
        "Dual-lead {side} chest wall pacemaker",
        Disease::SupportDevices,
        1,
    ),
];

const SLOTS: &[(&str, &[&str])] = &[
    ("deg", &["mild", "moderate", "marked"]),
    ("size", &["small", "moderate", "large"]),
    ("side", &["left", "right"]),
    ("cm", &["0.8", "1.2", "1.5", "2.1"]),
    (
        "lobe",
        &[
            "right upper lobe",
            "right middle lobe",
            "right lower lobe",
            "left upper lobe",
            "left lower lobe",
        ],
    ),
    (
        "zone",
        &[
            "lung bases",
            "left lung base",
            "right lung base",
            "left perihilar region",
            "right perihilar region",
        ],
    ),
];

/// Fills every `{slot}`; a capitalized slot name capitalizes its value.
fn fill(template: &str, rng: &mut impl Rng) -> String {
    let mut out = String::with_capacity(template.len() + 16);
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = open + rest[open..].find('}').expect("closed slot");
        let key = &rest[open + 1..close];
        let lower = key.to_ascii_lowercase();
        let (_, values) = SLOTS
            .iter()
            .find(|(name, _)| *name == lower)
            .expect("known slot");
        let value = values[rng.gen_range(0..values.len())];
        if key.starts_with(|c: char| c.is_ascii_uppercase()) {
            let mut chars = value.chars();
            out.extend(chars.next().map(|c| c.to_ascii_uppercase()));
            out.push_str(chars.as_str());
        } else {
            out.push_str(value);
        }
        rest = &rest[close + 1..];
    }
    out.push_str(rest);
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SyntheticConfig {
    pub reports: usize,
    pub test_fraction: f64,
    /// Exact share of no-finding sentences over the whole corpus (up to rounding).
    pub normal_fraction: f64,
    pub min_sentences: usize,
    pub max_sentences: usize,
    pub image_size: usize,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            reports: 600,
            test_fraction: 0.2,
            normal_fraction: 0.76,
            min_sentences: 3,
            max_sentences: 6,
            image_size: 64,
            seed: 20201,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SyntheticCorpus {
    pub records: Vec<Record>,
    pub features: Vec<FeatureVector>,
    pub total_sentences: usize,
    pub normal_sentences: usize,
}

impl SyntheticCorpus {
    pub fn normal_fraction(&self) -> f64 {
        self.normal_sentences as f64 / self.total_sentences as f64
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn features_csv(&self) -> Result<String, BaselineError> {
        let mut buf = Vec::new();
        write_feature_csv(&mut buf, &self.features)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

fn study_id(i: usize) -> String {
    format!("syn{i:04}")
}

pub fn generate(config: &SyntheticConfig) -> Result<SyntheticCorpus, BaselineError> {
    let mut rng = keyed_rng(config.seed, "synthetic-corpus");
    let lengths: Vec<usize> = (0..config.reports)
        .map(|_| rng.gen_range(config.min_sentences..=config.max_sentences))
        .collect();
    let total: usize = lengths.iter().sum();
    let normal_total = (config.normal_fraction * total as f64).round() as usize;
    let mut is_normal: Vec<bool> = (0..total).map(|i| i < normal_total).collect();
    is_normal.shuffle(&mut rng);

    let normal_dist = WeightedIndex::new(NORMAL_SENTENCES.iter().map(|s| s.1)).expect("weights");
    let finding_dist = WeightedIndex::new(FINDING_SENTENCES.iter().map(|s| s.2)).expect("weights");

    let mut flags = is_normal.into_iter();
    let mut records = Vec::with_capacity(config.reports);
    let mut features = Vec::with_capacity(config.reports);
    for (i, &len) in lengths.iter().enumerate() {
        let id = study_id(i);
        let test = ((i + 1) as f64 * config.test_fraction).floor()
            > (i as f64 * config.test_fraction).floor();

        let mut sentences: Vec<String> = Vec::with_capacity(len);
        let mut findings: Vec<Disease> = Vec::new();
        for _ in 0..len {
            let normal = flags.next().expect("one flag per sentence");
            // a few redraws keep repeats within one report rare
            for attempt in 0..8 {
                let (text, disease) = if normal {
                    (
                        NORMAL_SENTENCES[normal_dist.sample(&mut rng)].0.to_string(),
                        None,
                    )
                } else {
                    let (t, d, _) = FINDING_SENTENCES[finding_dist.sample(&mut rng)];
                    (fill(t, &mut rng), Some(d))
                };
                if !sentences.contains(&text) || attempt == 7 {
                    sentences.push(text);
                    findings.extend(disease);
                    break;
                }
            }
        }

        let mut text = String::new();
        for s in &sentences {
            if !text.is_empty() {
                text.push(' ');
            }
            let _ = write!(text, "{s}.");
        }
        records.push(Record {
            study_id: id.clone(),
            split: if test { Split::Test } else { Split::Train },
            text,
            features: None,
        });

        let image = render_image(
            config.image_size,
            &findings,
            &mut keyed_rng(config.seed, &id),
        );
        features.push(FeatureVector::new(
            id,
            extract_features(&image, DEFAULT_SIDE)?,
        ));
    }

    Ok(SyntheticCorpus {
        records,
        features,
        total_sentences: total,
        normal_sentences: normal_total,
    })
}

/// Noisy gradient background plus one bright blob per finding, placed by observation.
fn render_image(size: usize, findings: &[Disease], rng: &mut impl Rng) -> GrayImage {
    let noise: Vec<f64> = (0..size * size).map(|_| rng.gen_range(0.0..0.15)).collect();
    let blobs: Vec<(f64, f64)> = findings
        .iter()
        .map(|d| {
            let k = d.index() as f64;
            (
                0.15 + 0.7 * ((k * 0.37) % 1.0),
                0.15 + 0.7 * ((k * 0.61) % 1.0),
            )
        })
        .collect();
    let s = size as f64;
    GrayImage::from_fn(size, size, |x, y| {
        let (fx, fy) = (x as f64 / s, y as f64 / s);
        let mut v = 0.2 + 0.3 * fy + noise[y * size + x];
        for (bx, by) in &blobs {
            let d2 = (fx - bx).powi(2) + (fy - by).powi(2);
            v += 0.5 * (-d2 / 0.01).exp();
        }
        v.clamp(0.0, 1.0)
    })
}
