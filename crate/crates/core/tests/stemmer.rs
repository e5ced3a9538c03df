//! Snowball English reference vectors, generated with the reference
//! Snowball implementation and frozen in `data/snowball_english.tsv`.

use topic_rank::preprocess::stem;

const VECTORS: &str = include_str!("data/snowball_english.tsv");

#[test]
fn reference_vectors() {
    let mut failures = Vec::new();
    let mut n = 0;
    for line in VECTORS.lines() {
        let (word, expected) = line.split_once('\t').expect("word<TAB>stem");
        n += 1;
        let got = stem(word);
        if got != expected {
            failures.push(format!("{word}: expected {expected}, got {got}"));
        }
    }
    assert!(n > 1000);
    assert!(
        failures.is_empty(),
        "{} mismatches:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

#[test]
fn stems_seen_in_topic_lists() {
    for (word, expected) in [
        ("pieces", "piec"),
        ("battery", "batteri"),
        ("batteries", "batteri"),
        ("bricks", "brick"),
        ("accessories", "accessori"),
        ("opponent", "oppon"),
        ("assembly", "assembl"),
        ("display", "display"),
    ] {
        assert_eq!(stem(word), expected, "{word}");
    }
}
