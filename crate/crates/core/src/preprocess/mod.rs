//! Text cleaning: punctuation erasure, tokenization, number / length /
//! stop word filters, Snowball stemming and document-frequency term
//! filtering, applied in that order.

mod stemmer;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::corpus::Corpus;
use crate::error::{Error, Result};

pub use stemmer::stem;

const SNOWBALL_ENGLISH: &str = include_str!("stopwords_en.txt");

/// Which tokens the number filter removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumberFilter {
    /// Drop tokens made only of digits ("123"); keep "ev3".
    #[default]
    AllDigit,
    /// Drop any token containing a digit.
    AnyDigit,
}

impl std::str::FromStr for NumberFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-digit" => Ok(Self::AllDigit),
            "any-digit" => Ok(Self::AnyDigit),
            other => Err(Error::Config(format!(
                "number filter must be all-digit or any-digit, got {other:?}"
            ))),
        }
    }
}

/// A stop word set plus where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordList {
    source: String,
    words: HashSet<String>,
}

impl StopwordList {
    /// The embedded Snowball English list.
    pub fn snowball_english() -> Self {
        Self::parse("snowball-english", SNOWBALL_ENGLISH).expect("embedded list is valid")
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let body = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&path.display().to_string(), &body)
    }

    pub fn from_words<I, S>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let body: Vec<String> = words.into_iter().map(|w| w.as_ref().to_string()).collect();
        Self::parse("inline", &body.join("\n"))
    }

    pub fn empty() -> Self {
        Self {
            source: "none".into(),
            words: HashSet::new(),
        }
    }

    /// One term per line; `#` starts a comment.
    fn parse(source: &str, body: &str) -> Result<Self> {
        let mut words = HashSet::new();
        for line in body.lines() {
            let term = line.split('#').next().unwrap_or("").trim();
            if term.is_empty() {
                continue;
            }
            if term.chars().any(|c| !c.is_alphanumeric()) {
                return Err(Error::Config(format!(
                    "stop word {term:?} in {source} contains punctuation or whitespace"
                )));
            }
            words.insert(term.to_lowercase());
        }
        Ok(Self {
            source: source.to_string(),
            words,
        })
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl Serialize for StopwordList {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("StopwordList", 2)?;
        s.serialize_field("source", &self.source)?;
        s.serialize_field("count", &self.words.len())?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineConfig {
    pub min_token_chars: usize,
    pub min_doc_frequency: usize,
    pub number_filter: NumberFilter,
    pub stem_enabled: bool,
    pub stopwords: StopwordList,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            min_token_chars: 3,
            min_doc_frequency: 2,
            number_filter: NumberFilter::AllDigit,
            stem_enabled: true,
            stopwords: StopwordList::snowball_english(),
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_token_chars == 0 {
            return Err(Error::Config("min_token_chars must be at least 1".into()));
        }
        if self.min_doc_frequency == 0 {
            return Err(Error::Config("min_doc_frequency must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenizedDocument {
    pub id: String,
    pub tokens: Vec<String>,
}

/// Replaces every character that is neither alphanumeric nor whitespace
/// with a single space.
pub fn erase_punctuation(text: &str) -> String {
    text.chars()
        .map(|c| {
            if c.is_alphanumeric() || c.is_whitespace() {
                c
            } else {
                ' '
            }
        })
        .collect()
}

pub fn tokenize(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

/// Lowercases, then drops numeric, short and stop word tokens.
pub fn apply_token_filters<S: AsRef<str>>(tokens: &[S], config: &PipelineConfig) -> Vec<String> {
    tokens
        .iter()
        .map(|t| t.as_ref().to_lowercase())
        .filter(|t| match config.number_filter {
            NumberFilter::AllDigit => !t.chars().all(|c| c.is_numeric()),
            NumberFilter::AnyDigit => !t.chars().any(|c| c.is_numeric()),
        })
        .filter(|t| t.chars().count() >= config.min_token_chars)
        .filter(|t| !config.stopwords.contains(t))
        .collect()
}

/// Keeps terms occurring in at least `min_doc_frequency` distinct documents.
pub fn term_filter(
    docs: Vec<TokenizedDocument>,
    min_doc_frequency: usize,
) -> (Vec<TokenizedDocument>, BTreeSet<String>) {
    let mut df: HashMap<&str, usize> = HashMap::new();
    for doc in &docs {
        let distinct: HashSet<&str> = doc.tokens.iter().map(String::as_str).collect();
        for t in distinct {
            *df.entry(t).or_default() += 1;
        }
    }
    let retained: BTreeSet<String> = df
        .into_iter()
        .filter(|&(_, n)| n >= min_doc_frequency)
        .map(|(t, _)| t.to_string())
        .collect();
    let docs = docs
        .into_iter()
        .map(|mut d| {
            d.tokens.retain(|t| retained.contains(t));
            d
        })
        .collect();
    (docs, retained)
}

/// Cleans one document up to (and including) stemming.
pub fn clean_document(text: &str, config: &PipelineConfig) -> Vec<String> {
    let erased = erase_punctuation(text);
    let tokens = apply_token_filters(&tokenize(&erased), config);
    if config.stem_enabled {
        tokens.iter().map(|t| stem(t)).collect()
    } else {
        tokens
    }
}

/// Full cleaning pipeline. Document count and order are preserved.
pub fn run_pipeline(corpus: &Corpus, config: &PipelineConfig) -> Result<Vec<TokenizedDocument>> {
    config.validate()?;
    let docs: Vec<TokenizedDocument> = corpus
        .documents()
        .par_iter()
        .map(|d| TokenizedDocument {
            id: d.id.clone(),
            tokens: clean_document(&d.text, config),
        })
        .collect();
    Ok(term_filter(docs, config.min_doc_frequency).0)
}
