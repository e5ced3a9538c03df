//! Topic detection by collapsed Gibbs sampling for LDA, plus the
//! size-matched random topic baseline.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::preprocess::TokenizedDocument;
use crate::vectorspace::Vocabulary;

/// Seeded generator used by every stochastic stage.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TopicOrigin {
    Lda,
    Random,
    Planted,
}

/// An ordered list of distinct vocabulary words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Topic {
    pub topic_id: usize,
    pub words: Vec<String>,
    pub origin: TopicOrigin,
}

impl Topic {
    pub fn new(topic_id: usize, words: Vec<String>, origin: TopicOrigin) -> Self {
        Self {
            topic_id,
            words,
            origin,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `topic_<id>`
    pub fn label(&self) -> String {
        format!("topic_{}", self.topic_id)
    }

    /// Checks distinctness and vocabulary membership.
    pub fn validate(&self, vocab: &Vocabulary) -> Result<()> {
        let mut seen = HashSet::new();
        for w in &self.words {
            if vocab.index_of(w).is_none() {
                return Err(Error::VocabularyMismatch(w.clone()));
            }
            if !seen.insert(w.as_str()) {
                return Err(Error::Config(format!(
                    "{} repeats the word {w:?}",
                    self.label()
                )));
            }
        }
        Ok(())
    }

    /// The first `k` words as a new topic of the same id and origin.
    pub fn truncated(&self, k: usize) -> Topic {
        Topic::new(
            self.topic_id,
            self.words.iter().take(k).cloned().collect(),
            self.origin,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LdaConfig {
    pub n_topics: usize,
    pub words_per_topic: usize,
    /// Document-topic prior.
    pub alpha: f64,
    /// Topic-word prior.
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl LdaConfig {
    /// Defaults: alpha = 50 / n, beta = 0.01, 1000 sweeps, seed 0.
    pub fn new(n_topics: usize, words_per_topic: usize) -> Self {
        Self {
            n_topics,
            words_per_topic,
            alpha: 50.0 / n_topics.max(1) as f64,
            beta: 0.01,
            iterations: 1000,
            seed: 0,
        }
    }

    pub fn validate(&self, vocab_size: usize) -> Result<()> {
        if self.n_topics < 2 {
            return Err(Error::Config(format!(
                "need at least 2 topics, got {}",
                self.n_topics
            )));
        }
        if self.words_per_topic == 0 {
            return Err(Error::Config("words per topic must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::Config(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::Config(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if self.iterations == 0 {
            return Err(Error::Config("iterations must be at least 1".into()));
        }
        check_topic_size(self.words_per_topic, vocab_size)
    }
}

fn check_topic_size(k: usize, vocab_size: usize) -> Result<()> {
    if k > vocab_size {
        return Err(Error::Config(format!(
            "topic size {k} exceeds vocabulary size {vocab_size}"
        )));
    }
    Ok(())
}

/// Token-topic assignments and the count tables they induce.
#[derive(Debug, Clone)]
pub struct GibbsState {
    /// Topic of every token, per document.
    pub assignments: Vec<Vec<usize>>,
    /// `[doc][topic]`
    pub doc_topic_counts: Vec<Vec<u32>>,
    /// `[topic][word]`
    pub topic_word_counts: Vec<Vec<u32>>,
    pub topic_totals: Vec<u64>,
}

impl GibbsState {
    /// Recounts every table from the assignments and compares.
    pub fn check_invariants(&self, docs: &[Vec<usize>]) -> Result<()> {
        let n_topics = self.topic_totals.len();
        let vocab = self.topic_word_counts.first().map_or(0, Vec::len);
        let mut dt = vec![vec![0u32; n_topics]; docs.len()];
        let mut tw = vec![vec![0u32; vocab]; n_topics];
        for (d, (words, topics)) in docs.iter().zip(&self.assignments).enumerate() {
            if words.len() != topics.len() {
                return Err(Error::Internal(format!(
                    "document {d} has {} tokens but {} assignments",
                    words.len(),
                    topics.len()
                )));
            }
            for (&w, &t) in words.iter().zip(topics) {
                dt[d][t] += 1;
                tw[t][w] += 1;
            }
        }
        if dt != self.doc_topic_counts {
            return Err(Error::Internal("document-topic counts drifted".into()));
        }
        if tw != self.topic_word_counts {
            return Err(Error::Internal("topic-word counts drifted".into()));
        }
        for (t, row) in self.topic_word_counts.iter().enumerate() {
            let s: u64 = row.iter().map(|&c| c as u64).sum();
            if s != self.topic_totals[t] {
                return Err(Error::Internal(format!("topic {t} total drifted")));
            }
        }
        let tokens: usize = docs.iter().map(Vec::len).sum();
        if self.topic_totals.iter().sum::<u64>() != tokens as u64 {
            return Err(Error::Internal(
                "assignment count differs from token count".into(),
            ));
        }
        Ok(())
    }
}

/// Single-chain collapsed Gibbs sampler.
pub struct GibbsSampler {
    docs: Vec<Vec<usize>>,
    state: GibbsState,
    alpha: f64,
    beta: f64,
    rng: SeededRng,
    weights: Vec<f64>,
}

impl GibbsSampler {
    /// Maps tokens to vocabulary ids and draws a uniform initial assignment.
    pub fn new(docs: &[TokenizedDocument], vocab: &Vocabulary, config: &LdaConfig) -> Result<Self> {
        config.validate(vocab.len())?;
        let docs: Vec<Vec<usize>> = docs
            .iter()
            .map(|d| {
                d.tokens
                    .iter()
                    .map(|t| {
                        vocab
                            .index_of(t)
                            .ok_or_else(|| Error::VocabularyMismatch(t.clone()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        if docs.iter().all(Vec::is_empty) {
            return Err(Error::DegenerateCorpus("no tokens to fit topics on".into()));
        }
        let n = config.n_topics;
        let mut rng = seeded_rng(config.seed);
        let mut state = GibbsState {
            assignments: Vec::with_capacity(docs.len()),
            doc_topic_counts: vec![vec![0; n]; docs.len()],
            topic_word_counts: vec![vec![0; vocab.len()]; n],
            topic_totals: vec![0; n],
        };
        for (d, words) in docs.iter().enumerate() {
            let mut topics = Vec::with_capacity(words.len());
            for &w in words {
                let t = rng.gen_range(0..n);
                topics.push(t);
                state.doc_topic_counts[d][t] += 1;
                state.topic_word_counts[t][w] += 1;
                state.topic_totals[t] += 1;
            }
            state.assignments.push(topics);
        }
        Ok(Self {
            docs,
            state,
            alpha: config.alpha,
            beta: config.beta,
            rng,
            weights: vec![0.0; n],
        })
    }

    pub fn state(&self) -> &GibbsState {
        &self.state
    }

    /// Documents as vocabulary ids.
    pub fn word_ids(&self) -> &[Vec<usize>] {
        &self.docs
    }

    /// One full pass resampling every token.
    pub fn sweep(&mut self) {
        let vocab_beta = self.state.topic_word_counts[0].len() as f64 * self.beta;
        let st = &mut self.state;
        for (d, words) in self.docs.iter().enumerate() {
            for (i, &w) in words.iter().enumerate() {
                let old = st.assignments[d][i];
                st.doc_topic_counts[d][old] -= 1;
                st.topic_word_counts[old][w] -= 1;
                st.topic_totals[old] -= 1;

                let mut total = 0.0;
                for (t, slot) in self.weights.iter_mut().enumerate() {
                    let p = (st.doc_topic_counts[d][t] as f64 + self.alpha)
                        * (st.topic_word_counts[t][w] as f64 + self.beta)
                        / (st.topic_totals[t] as f64 + vocab_beta);
                    total += p;
                    *slot = total;
                }
                let u = self.rng.gen::<f64>() * total;
                let new = self
                    .weights
                    .iter()
                    .position(|&c| u < c)
                    .unwrap_or(self.weights.len() - 1);

                st.assignments[d][i] = new;
                st.doc_topic_counts[d][new] += 1;
                st.topic_word_counts[new][w] += 1;
                st.topic_totals[new] += 1;
            }
        }
    }

    /// Top-`k` words per topic by count; ties go to the lexicographically
    /// smaller word.
    pub fn topics(&self, vocab: &Vocabulary, k: usize) -> Vec<Topic> {
        self.state
            .topic_word_counts
            .iter()
            .enumerate()
            .map(|(t, counts)| {
                let mut order: Vec<usize> = (0..counts.len()).collect();
                // vocabulary ids are in lexicographic order
                order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
                let words = order[..k]
                    .iter()
                    .map(|&w| vocab.term(w).to_string())
                    .collect();
                Topic::new(t, words, TopicOrigin::Lda)
            })
            .collect()
    }
}

/// Fits LDA for `config.iterations` sweeps and returns the top-k topics.
pub fn lda_fit(
    docs: &[TokenizedDocument],
    vocab: &Vocabulary,
    config: &LdaConfig,
) -> Result<Vec<Topic>> {
    lda_fit_with(docs, vocab, config, |_, _| Ok(()))
}

/// As [`lda_fit`], calling `on_sweep(sweep_index, state)` after each sweep.
pub fn lda_fit_with<F>(
    docs: &[TokenizedDocument],
    vocab: &Vocabulary,
    config: &LdaConfig,
    mut on_sweep: F,
) -> Result<Vec<Topic>>
where
    F: FnMut(usize, &GibbsState) -> Result<()>,
{
    let mut sampler = GibbsSampler::new(docs, vocab, config)?;
    for it in 0..config.iterations {
        sampler.sweep();
        on_sweep(it, sampler.state())?;
    }
    Ok(sampler.topics(vocab, config.words_per_topic))
}

/// `n_topics` topics of `k` distinct words drawn uniformly without
/// replacement; topics are drawn independently of each other.
pub fn random_topics(
    vocab: &Vocabulary,
    n_topics: usize,
    k: usize,
    seed: u64,
) -> Result<Vec<Topic>> {
    check_topic_size(k, vocab.len())?;
    let mut rng = seeded_rng(seed);
    Ok((0..n_topics)
        .map(|t| {
            let words = index::sample(&mut rng, vocab.len(), k)
                .into_iter()
                .map(|i| vocab.term(i).to_string())
                .collect();
            Topic::new(t, words, TopicOrigin::Random)
        })
        .collect())
}
