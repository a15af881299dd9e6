//! Weak-baseline benchmark harness for chest X-ray report generation.
//!
//! The crate is split along the pipeline:
//!
//! - [`corpus`]: report ingestion, tokenization, sentence splitting and
//!   train-split frequency tables.
//! - [`metrics`]: BLEU-1..4 (plus the combined `B` column), ROUGE-L and
//!   CIDEr-D, all implemented from scratch.
//! - [`labeler`]: a rule-based 14-observation labeler and the macro
//!   accuracy / ROC-AUC computed from its outputs.
//! - [`baselines`]: the five weak report generators.
//! - [`harness`]: configuration, the end-to-end scoreboard and renderers.
//! - [`synth`]: a seeded synthetic corpus generator used for desk-scale runs.

pub mod baselines;
pub mod corpus;
pub mod harness;
pub mod labeler;
pub mod metrics;
pub mod synth;

mod rng;

pub use baselines::{FeatureVector, GeneratedSet};
pub use corpus::{Corpus, CorpusFormat, Report, Split, TokenizerConfig};
pub use harness::{BenchmarkConfig, ScoreTable};
pub use labeler::{Disease, DiseaseLabel, LabelVector, Lexicon};
