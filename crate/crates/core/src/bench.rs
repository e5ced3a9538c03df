//! Synthetic two-class corpora with planted class-specific signature words.

use rand::Rng;
use serde::Serialize;

use crate::corpus::{Corpus, Document};
use crate::error::{Error, Result};
use crate::lda::{random_topics, seeded_rng, Topic, TopicOrigin};
use crate::preprocess::{stem, StopwordList};
use crate::ranking::{rank_topics, Metric, RankRow, RankTable};
use crate::vectorspace::DocTermMatrix;

pub const POSITIVE_LABEL: &str = "planted_a";
pub const NEGATIVE_LABEL: &str = "planted_b";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlantSpec {
    pub docs_per_class: usize,
    pub signature_words_per_class: usize,
    pub background_vocab_size: usize,
    /// Chance that a document contains each of its class's signature words.
    pub signature_probability: f64,
    /// Background tokens per document.
    pub tokens_per_doc: usize,
    pub seed: u64,
}

impl Default for PlantSpec {
    fn default() -> Self {
        Self {
            docs_per_class: 200,
            signature_words_per_class: 5,
            background_vocab_size: 500,
            signature_probability: 0.9,
            tokens_per_doc: 20,
            seed: 0,
        }
    }
}

impl PlantSpec {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("docs_per_class", self.docs_per_class),
            ("signature_words_per_class", self.signature_words_per_class),
            ("background_vocab_size", self.background_vocab_size),
            ("tokens_per_doc", self.tokens_per_doc),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        if !(self.signature_probability > 0.0 && self.signature_probability <= 1.0) {
            return Err(Error::Config(format!(
                "signature probability must be in (0, 1], got {}",
                self.signature_probability
            )));
        }
        Ok(())
    }
}

/// Deterministic pseudo-words that pass the default preprocessing unchanged:
/// five letters, consonant-vowel alternation, fixed points of the stemmer,
/// never stop words.
pub fn pseudo_words(n: usize) -> Vec<String> {
    const CONS: &[u8] = b"bdfgkmprtvz";
    const VOWELS: &[u8] = b"aou";
    let stop = StopwordList::snowball_english();
    let mut out = Vec::with_capacity(n);
    'outer: for a in CONS {
        for b in VOWELS {
            for c in CONS {
                for d in VOWELS {
                    for e in CONS {
                        if out.len() == n {
                            break 'outer;
                        }
                        let w = String::from_utf8(vec![*a, *b, *c, *d, *e]).unwrap();
                        if stem(&w) == w && !stop.contains(&w) {
                            out.push(w);
                        }
                    }
                }
            }
        }
    }
    assert_eq!(out.len(), n, "pseudo-word space exhausted");
    out
}

/// Signature and background word lists of a spec.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedWords {
    pub positive: Vec<String>,
    pub negative: Vec<String>,
    pub background: Vec<String>,
}

impl PlantedWords {
    pub fn for_spec(spec: &PlantSpec) -> Self {
        let s = spec.signature_words_per_class;
        let mut all = pseudo_words(2 * s + spec.background_vocab_size);
        let background = all.split_off(2 * s);
        let negative = all.split_off(s);
        Self {
            positive: all,
            negative,
            background,
        }
    }

    /// Positive then negative signature words, truncated or padded with
    /// background words to `k`.
    pub fn topic(&self, topic_id: usize, k: usize) -> Topic {
        let words = self
            .positive
            .iter()
            .chain(&self.negative)
            .chain(&self.background)
            .take(k)
            .cloned()
            .collect();
        Topic::new(topic_id, words, TopicOrigin::Planted)
    }
}

/// Generates the corpus (classes interleaved) and the planted topic made
/// of both signature sets.
pub fn generate_planted_corpus(spec: &PlantSpec) -> Result<(Corpus, Topic)> {
    spec.validate()?;
    let words = PlantedWords::for_spec(spec);
    let mut rng = seeded_rng(spec.seed);
    let mut documents = Vec::with_capacity(2 * spec.docs_per_class);
    for i in 0..2 * spec.docs_per_class {
        let positive = i % 2 == 0;
        let signature = if positive {
            &words.positive
        } else {
            &words.negative
        };
        let mut tokens: Vec<&str> = Vec::with_capacity(signature.len() + spec.tokens_per_doc);
        for w in signature {
            if rng.gen::<f64>() < spec.signature_probability {
                tokens.push(w);
            }
        }
        for _ in 0..spec.tokens_per_doc {
            tokens.push(&words.background[rng.gen_range(0..words.background.len())]);
        }
        documents.push(Document {
            id: format!("doc{i:05}"),
            text: tokens.join(" "),
            label: if positive {
                POSITIVE_LABEL
            } else {
                NEGATIVE_LABEL
            }
            .to_string(),
        });
    }
    let corpus = Corpus::new(documents, Some(POSITIVE_LABEL))?;
    let planted = words.topic(0, 2 * spec.signature_words_per_class);
    Ok((corpus, planted))
}

/// Where the planted topic lands against a random baseline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlantedOutcome {
    pub planted: RankRow,
    /// 1-based rank of the planted topic among itself and the random topics.
    pub planted_rank: usize,
    pub random_mean: f64,
    /// Planted value over the mean random value, for `metric`.
    pub ratio: f64,
    pub metric: Metric,
    pub table: RankTable,
}

/// Ranks the planted topic together with `n_random` random topics of the
/// same size.
pub fn score_planted(
    matrix: &DocTermMatrix,
    planted: &Topic,
    n_random: usize,
    seed: u64,
    metric: Metric,
) -> Result<PlantedOutcome> {
    let mut topics = random_topics(matrix.vocabulary(), n_random, planted.len(), seed)?;
    let planted_id = n_random;
    topics.push(Topic::new(
        planted_id,
        planted.words.clone(),
        TopicOrigin::Planted,
    ));
    let table = rank_topics(matrix, &topics, metric)?;
    let planted_rank = table.rank_of(planted_id).expect("planted topic was ranked");
    let planted_row = table.rows[planted_rank - 1].clone();
    let random: Vec<f64> = table
        .rows
        .iter()
        .filter(|r| r.topic_id != planted_id)
        .map(|r| metric.of(&r.report))
        .collect();
    let random_mean = random.iter().sum::<f64>() / random.len().max(1) as f64;
    let ratio = metric.of(&planted_row.report) / random_mean;
    Ok(PlantedOutcome {
        planted: planted_row,
        planted_rank,
        random_mean,
        ratio,
        metric,
        table,
    })
}
