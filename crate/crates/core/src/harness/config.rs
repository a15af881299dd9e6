use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::corpus::{CorpusFormat, TokenizerConfig};
use crate::labeler::UncertainPolicy;
use crate::metrics::DEFAULT_BETA;

/// Environment variable that overrides every baseline seed.
pub const SEED_ENV: &str = "RRGBENCH_SEED";

pub const DEFAULT_SEED: u64 = 42;

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_top_sentences() -> usize {
    100
}

fn default_top_words() -> usize {
    50
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MetricConfig {
    pub beta: f64,
    pub sigma: f64,
}

impl Default for MetricConfig {
    fn default() -> Self {
        MetricConfig {
            beta: DEFAULT_BETA,
            sigma: 6.0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LabelerConfig {
    /// Lexicon file; the bundled lexicon when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lexicon: Option<String>,
    pub uncertain: UncertainPolicy,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl TableFormat {
    pub fn parse(s: &str) -> Option<TableFormat> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Some(TableFormat::Markdown),
            "csv" => Some(TableFormat::Csv),
            "json" => Some(TableFormat::Json),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputConfig {
    pub format: TableFormat,
    /// Append the published reference rows below the computed ones.
    pub reference_rows: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            format: TableFormat::Markdown,
            reference_rows: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BaselineSpec {
    Random {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default = "default_seed")]
        seed: u64,
    },
    Constant {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        /// Inline report text.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        text: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        text_file: Option<String>,
        /// Build the report from the k most common normal train sentences.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        from_corpus: Option<usize>,
    },
    NearestNeighbor {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        features: String,
    },
    TopSentences {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default = "default_top_sentences")]
        n: usize,
        #[serde(default = "default_seed")]
        seed: u64,
    },
    TopWords {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default = "default_top_words")]
        n: usize,
        #[serde(default = "default_seed")]
        seed: u64,
    },
}

impl BaselineSpec {
    pub fn display_name(&self) -> String {
        let custom = match self {
            BaselineSpec::Random { name, .. }
            | BaselineSpec::Constant { name, .. }
            | BaselineSpec::NearestNeighbor { name, .. }
            | BaselineSpec::TopSentences { name, .. }
            | BaselineSpec::TopWords { name, .. } => name.clone(),
        };
        custom.unwrap_or_else(|| match self {
            BaselineSpec::Random { .. } => "Random".into(),
            BaselineSpec::Constant { .. } => "Constant".into(),
            BaselineSpec::NearestNeighbor { .. } => "Nearest-neighbor".into(),
            BaselineSpec::TopSentences { n, .. } => format!("Top-sentences-{n}"),
            BaselineSpec::TopWords { n, .. } => format!("Top-words-{n}"),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkConfig {
    /// Corpus file, relative to the config file's directory.
    pub corpus: String,
    /// Inferred from the corpus extension when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<CorpusFormat>,
    /// Replaces every baseline seed; set from [`SEED_ENV`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_override: Option<u64>,
    #[serde(default)]
    pub tokenizer: TokenizerConfig,
    #[serde(default)]
    pub metrics: MetricConfig,
    #[serde(default)]
    pub labeler: LabelerConfig,
    #[serde(default)]
    pub output: OutputConfig,
    pub baselines: Vec<BaselineSpec>,
}

impl BenchmarkConfig {
    pub fn from_toml(text: &str) -> Result<BenchmarkConfig, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes to TOML")
    }

    pub fn load(path: &Path) -> Result<BenchmarkConfig, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        BenchmarkConfig::from_toml(&text)
    }

    /// Applies [`SEED_ENV`] if it is set. The override is kept in the config so
    /// it shows up in the table's provenance.
    pub fn apply_env(&mut self) -> Result<(), HarnessError> {
        match std::env::var(SEED_ENV) {
            Ok(v) => {
                let seed = v.trim().parse().map_err(|_| {
                    HarnessError::Config(format!("{SEED_ENV}={v} is not an unsigned integer"))
                })?;
                self.seed_override = Some(seed);
                Ok(())
            }
            Err(_) => Ok(()),
        }
    }

    pub fn effective_seed(&self, seed: u64) -> u64 {
        self.seed_override.unwrap_or(seed)
    }

    pub fn corpus_format(&self) -> CorpusFormat {
        self.format
            .unwrap_or_else(|| CorpusFormat::from_path(Path::new(&self.corpus)))
    }
}

pub(crate) fn resolve(base: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}
