mod common;

use std::collections::{BTreeMap, HashSet};

use proptest::prelude::*;

use topic_rank::bench::{generate_planted_corpus, PlantSpec};
use topic_rank::corpus::{load_delimited, write_delimited, DelimitedSource};
use topic_rank::distance::all_metrics;
use topic_rank::lda::{random_topics, Topic, TopicOrigin};
use topic_rank::preprocess::{
    apply_token_filters, erase_punctuation, run_pipeline, term_filter, tokenize, PipelineConfig,
    TokenizedDocument,
};
use topic_rank::ranking::{rank_topics, Metric};
use topic_rank::vectorspace::{project, vectorize, DocTermMatrix, Vocabulary, Weighting};

fn word() -> impl Strategy<Value = String> {
    "[a-e]{1,3}"
}

fn token_docs() -> impl Strategy<Value = Vec<TokenizedDocument>> {
    prop::collection::vec(prop::collection::vec(word(), 0..12), 2..12).prop_map(|docs| {
        docs.into_iter()
            .enumerate()
            .map(|(i, tokens)| TokenizedDocument {
                id: i.to_string(),
                tokens,
            })
            .collect()
    })
}

fn labels(n: usize) -> Vec<bool> {
    (0..n).map(|i| i % 2 == 0).collect()
}

fn build(docs: &[TokenizedDocument], w: Weighting) -> Option<DocTermMatrix> {
    let vocab = Vocabulary::build(docs).ok()?;
    Some(vectorize(docs, &vocab, w, &labels(docs.len())).unwrap())
}

proptest! {
    #[test]
    fn binary_is_indicator_of_tf(docs in token_docs()) {
        if let (Some(tf), Some(bin)) = (build(&docs, Weighting::Tf), build(&docs, Weighting::Binary)) {
            for r in 0..tf.rows() {
                for c in 0..tf.cols() {
                    prop_assert_eq!(bin.get(r, c), u32::from(tf.get(r, c) > 0));
                }
            }
        }
    }

    #[test]
    fn tf_counts_tokens(docs in token_docs()) {
        if let Some(tf) = build(&docs, Weighting::Tf) {
            for (r, d) in docs.iter().enumerate() {
                let mut counts: BTreeMap<&str, u32> = BTreeMap::new();
                for t in &d.tokens {
                    *counts.entry(t).or_default() += 1;
                }
                for (t, n) in counts {
                    let c = tf.vocabulary().index_of(t).unwrap();
                    prop_assert_eq!(tf.get(r, c), n);
                }
                prop_assert_eq!(tf.row(r).map(|(_, v)| v as usize).sum::<usize>(), d.tokens.len());
            }
        }
    }

    #[test]
    fn full_vocabulary_projection_is_the_matrix(docs in token_docs()) {
        if let Some(m) = build(&docs, Weighting::Tf) {
            let topic = Topic::new(0, m.vocabulary().terms().to_vec(), TopicOrigin::Random);
            let p = project(&m, &topic).unwrap();
            let (mut pos, mut neg) = (p.positive.iter(), p.negative.iter());
            for r in 0..m.rows() {
                let point = if m.labels()[r] { pos.next() } else { neg.next() }.unwrap();
                let dense: Vec<f64> = m.dense_row(r).into_iter().map(f64::from).collect();
                prop_assert_eq!(point, dense.as_slice());
            }
        }
    }

    #[test]
    fn term_filter_keeps_exactly_frequent_terms(docs in token_docs(), min_df in 1usize..4) {
        let (kept, vocab) = term_filter(docs.clone(), min_df);
        let mut df: BTreeMap<&str, usize> = BTreeMap::new();
        for d in &docs {
            let uniq: HashSet<&str> = d.tokens.iter().map(String::as_str).collect();
            for t in uniq {
                *df.entry(t).or_default() += 1;
            }
        }
        let expected: Vec<&str> = df.iter().filter(|(_, &n)| n >= min_df).map(|(t, _)| *t).collect();
        prop_assert_eq!(vocab.iter().map(String::as_str).collect::<Vec<_>>(), expected);
        for (before, after) in docs.iter().zip(&kept) {
            let want: Vec<&String> = before.tokens.iter().filter(|t| vocab.contains(*t)).collect();
            prop_assert_eq!(after.tokens.iter().collect::<Vec<_>>(), want);
        }
    }

    #[test]
    fn filtered_tokens_obey_length_and_stopwords(text in "[A-Za-z0-9 ,.!?']{0,80}") {
        let config = PipelineConfig::default();
        let erased = erase_punctuation(&text);
        prop_assert!(erased.chars().all(|c| c.is_alphanumeric() || c.is_whitespace()));
        for t in apply_token_filters(&tokenize(&erased), &config) {
            prop_assert!(t.chars().count() >= config.min_token_chars);
            prop_assert!(!config.stopwords.contains(&t));
            prop_assert!(!t.chars().all(|c| c.is_ascii_digit()));
            prop_assert_eq!(t.to_lowercase(), t.clone());
        }
    }
}

fn planted(seed: u64) -> DocTermMatrix {
    let spec = PlantSpec {
        docs_per_class: 80,
        seed,
        ..PlantSpec::default()
    };
    let (corpus, _) = generate_planted_corpus(&spec).unwrap();
    let docs = run_pipeline(&corpus, &PipelineConfig::default()).unwrap();
    let vocab = Vocabulary::build(&docs).unwrap();
    vectorize(&docs, &vocab, Weighting::Binary, &corpus.class_bits()).unwrap()
}

#[test]
fn nested_topics_grow_min_and_max() {
    let m = planted(5);
    for t in random_topics(m.vocabulary(), 30, 12, 8).unwrap() {
        let mut last: Option<(f64, f64)> = None;
        for k in 1..=t.len() {
            let p = project(&m, &t.truncated(k)).unwrap();
            let r = all_metrics(0, &p.positive, &p.negative).unwrap();
            if let Some((min, max)) = last {
                assert!(r.single_link >= min);
                assert!(r.complete_link >= max);
            }
            last = Some((r.single_link, r.complete_link));
        }
    }
}

#[test]
fn whole_vocabulary_topic_matches_the_matrix() {
    let m = planted(6);
    let topic = Topic::new(0, m.vocabulary().terms().to_vec(), TopicOrigin::Random);
    let table = rank_topics(&m, &[topic], Metric::MeanD).unwrap();
    let rows: Vec<Vec<f64>> = (0..m.rows())
        .map(|r| m.dense_row(r).into_iter().map(f64::from).collect())
        .collect();
    let pos: Vec<Vec<f64>> = rows
        .iter()
        .zip(m.labels())
        .filter(|(_, &l)| l)
        .map(|(r, _)| r.clone())
        .collect();
    let neg: Vec<Vec<f64>> = rows
        .iter()
        .zip(m.labels())
        .filter(|(_, &l)| !l)
        .map(|(r, _)| r.clone())
        .collect();
    let want = common::naive(&pos, &neg);
    let got = &table.rows[0].report;
    assert!((got.average_link - want.average).abs() <= 1e-9);
    assert!((got.single_link - want.single).abs() <= 1e-9);
    assert!((got.complete_link - want.complete).abs() <= 1e-9);
    assert!((got.centroid_link - want.centroid).abs() <= 1e-9);
}

#[test]
fn random_topics_are_uniform_over_the_vocabulary() {
    let vocab = Vocabulary::from_terms((0..10).map(|i| format!("w{i}")));
    let topics = random_topics(&vocab, 10_000, 1, 77).unwrap();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for t in &topics {
        *counts.entry(t.words[0].clone()).or_default() += 1;
    }
    assert_eq!(counts.len(), 10);
    for (w, n) in counts {
        assert!((850..=1150).contains(&n), "{w} drawn {n} times");
    }
}

#[test]
fn random_topic_words_are_distinct_and_seeded() {
    let m = planted(1);
    let a = random_topics(m.vocabulary(), 50, 20, 3).unwrap();
    for t in &a {
        let set: HashSet<&String> = t.words.iter().collect();
        assert_eq!(set.len(), 20);
        t.validate(m.vocabulary()).unwrap();
    }
    assert_eq!(a, random_topics(m.vocabulary(), 50, 20, 3).unwrap());
    assert_ne!(a, random_topics(m.vocabulary(), 50, 20, 4).unwrap());
}

#[test]
fn planted_corpus_round_trips_through_delimited_file() {
    let spec = PlantSpec {
        docs_per_class: 30,
        ..PlantSpec::default()
    };
    let (corpus, _) = generate_planted_corpus(&spec).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("bench.tsv");
    write_delimited(&corpus, &path, '\t').unwrap();
    let mut source = DelimitedSource::new(&path);
    source.id_column = Some("id".into());
    let loaded = load_delimited(&source).unwrap();
    assert_eq!(loaded.corpus, corpus);
    assert_eq!(loaded.raw_rows, 60);
}
