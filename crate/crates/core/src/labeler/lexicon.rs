use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use thiserror::Error;

use super::Disease;
use crate::corpus::{tokenize, TokenizerConfig};

/// The lexicon shipped with the crate.
pub const DEFAULT_LEXICON: &str = include_str!("../../data/lexicon.txt");

#[derive(Debug, Error, PartialEq)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {reason}")]
    Unreadable { path: String, reason: String },
    #[error("line {line}: unknown section `{name}`")]
    UnknownSection { line: usize, name: String },
    #[error("line {line}: unknown observation `{name}`")]
    UnknownDisease { line: usize, name: String },
    #[error("line {line}: `No Finding` is derived and takes no phrases")]
    DerivedDisease { line: usize },
    #[error("line {line}: duplicate block for `{name}`")]
    DuplicateDisease { line: usize, name: String },
    #[error("line {line}: phrase outside of any section")]
    PhraseOutsideSection { line: usize },
    #[error("line {line}: phrase normalizes to nothing")]
    EmptyPhrase { line: usize },
    #[error("block `{name}` has no phrases")]
    EmptyBlock { name: String },
    #[error("cue `{cue}` appears in more than one cue list")]
    OverlappingCue { cue: String },
    #[error("mention `{phrase}` contains cue `{cue}`")]
    CueInsideMention { phrase: String, cue: String },
}

pub type Phrase = Vec<String>;

/// Mention phrases per observation plus the shared cue lists.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Lexicon {
    /// Negates the nearest following mention.
    pub negation: Vec<Phrase>,
    /// Negates a preceding mention.
    pub negation_post: Vec<Phrase>,
    pub uncertainty: Vec<Phrase>,
    /// Words that close the scope of every cue before them.
    pub resets: Vec<Phrase>,
    pub mentions: Vec<(Disease, Vec<Phrase>)>,
}

#[derive(Clone, Copy)]
enum Section {
    Negation,
    NegationPost,
    Uncertainty,
    Reset,
    Disease(usize),
}

impl Lexicon {
    pub fn builtin() -> Lexicon {
        Lexicon::parse(DEFAULT_LEXICON).expect("bundled lexicon is valid")
    }

    pub fn load(path: &Path) -> Result<Lexicon, LexiconError> {
        let text = fs::read_to_string(path).map_err(|e| LexiconError::Unreadable {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Lexicon::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let config = TokenizerConfig::default();
        let mut lex = Lexicon::default();
        let mut section: Option<Section> = None;
        let mut block_start = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if let Some(header) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let header = header.trim();
                section = Some(match header {
                    "negation" => Section::Negation,
                    "negation-post" => Section::NegationPost,
                    "uncertainty" => Section::Uncertainty,
                    "reset" => Section::Reset,
                    _ => {
                        let Some(name) = header.strip_prefix("disease ") else {
                            return Err(LexiconError::UnknownSection {
                                line,
                                name: header.to_string(),
                            });
                        };
                        let disease = Disease::from_name(name).ok_or_else(|| {
                            LexiconError::UnknownDisease {
                                line,
                                name: name.trim().to_string(),
                            }
                        })?;
                        if disease == Disease::NoFinding {
                            return Err(LexiconError::DerivedDisease { line });
                        }
                        if lex.mentions.iter().any(|(d, _)| *d == disease) {
                            return Err(LexiconError::DuplicateDisease {
                                line,
                                name: disease.name().to_string(),
                            });
                        }
                        lex.mentions.push((disease, Vec::new()));
                        block_start.push(line);
                        Section::Disease(lex.mentions.len() - 1)
                    }
                });
                continue;
            }

            let phrase = tokenize(trimmed, &config);
            if phrase.is_empty() {
                return Err(LexiconError::EmptyPhrase { line });
            }
            let target = match section {
                None => return Err(LexiconError::PhraseOutsideSection { line }),
                Some(Section::Negation) => &mut lex.negation,
                Some(Section::NegationPost) => &mut lex.negation_post,
                Some(Section::Uncertainty) => &mut lex.uncertainty,
                Some(Section::Reset) => &mut lex.resets,
                Some(Section::Disease(i)) => &mut lex.mentions[i].1,
            };
            if !target.contains(&phrase) {
                target.push(phrase);
            }
        }

        lex.validate()?;
        Ok(lex)
    }

    /// Checks the structural invariants: non-empty blocks, disjoint cue lists,
    /// and no cue inside a mention phrase.
    pub fn validate(&self) -> Result<(), LexiconError> {
        for (disease, phrases) in &self.mentions {
            if phrases.is_empty() {
                return Err(LexiconError::EmptyBlock {
                    name: disease.name().to_string(),
                });
            }
        }

        let lists = [
            &self.negation,
            &self.negation_post,
            &self.uncertainty,
            &self.resets,
        ];
        let mut seen: BTreeSet<&Phrase> = BTreeSet::new();
        for list in lists {
            let unique: BTreeSet<&Phrase> = list.iter().collect();
            for cue in unique {
                if !seen.insert(cue) {
                    return Err(LexiconError::OverlappingCue { cue: cue.join(" ") });
                }
            }
        }

        for (_, phrases) in &self.mentions {
            for phrase in phrases {
                for cue in lists.iter().flat_map(|l| l.iter()) {
                    if contains_seq(phrase, cue) {
                        return Err(LexiconError::CueInsideMention {
                            phrase: phrase.join(" "),
                            cue: cue.join(" "),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn phrase_count(&self) -> usize {
        self.mentions.iter().map(|(_, p)| p.len()).sum()
    }

    pub fn phrases_for(&self, disease: Disease) -> &[Phrase] {
        self.mentions
            .iter()
            .find(|(d, _)| *d == disease)
            .map(|(_, p)| p.as_slice())
            .unwrap_or(&[])
    }
}

fn contains_seq(haystack: &[String], needle: &[String]) -> bool {
    !needle.is_empty() && haystack.windows(needle.len()).any(|w| w == needle)
}
