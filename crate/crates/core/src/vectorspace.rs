//! Vocabulary, sparse document-term matrix and topic projection.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::distance::Points;
use crate::error::{Error, Result};
use crate::lda::Topic;
use crate::preprocess::TokenizedDocument;

/// Lexicographically sorted distinct terms with their ordinal index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn from_terms<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let sorted: BTreeSet<String> = terms.into_iter().map(Into::into).collect();
        let terms: Vec<String> = sorted.into_iter().collect();
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Self { terms, index }
    }

    /// Distinct tokens across all documents.
    pub fn build(docs: &[TokenizedDocument]) -> Result<Self> {
        let vocab = Self::from_terms(docs.iter().flat_map(|d| d.tokens.iter().cloned()));
        if vocab.is_empty() {
            return Err(Error::DegenerateCorpus(
                "every document is empty after preprocessing".into(),
            ));
        }
        Ok(vocab)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> &str {
        &self.terms[i]
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Weighting {
    /// Raw term counts.
    Tf,
    /// Term presence.
    #[default]
    Binary,
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weighting::Tf => "TF",
            Weighting::Binary => "BINARY",
        })
    }
}

impl std::str::FromStr for Weighting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tf" => Ok(Weighting::Tf),
            "binary" => Ok(Weighting::Binary),
            _ => Err(Error::Config(format!(
                "weighting must be tf or binary, got {s:?}"
            ))),
        }
    }
}

/// Compressed-row document × term matrix with one class bit per row.
#[derive(Debug, Clone, PartialEq)]
pub struct DocTermMatrix {
    vocab: Vocabulary,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<u32>,
    weighting: Weighting,
    labels: Vec<bool>,
}

impl DocTermMatrix {
    pub fn rows(&self) -> usize {
        self.labels.len()
    }

    pub fn cols(&self) -> usize {
        self.vocab.len()
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }

    /// `true` marks the positive class.
    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    /// Nonzero `(column, value)` entries of a row, by ascending column.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.cols[span.clone()].binary_search(&c) {
            Ok(i) => self.values[span.start + i],
            Err(_) => 0,
        }
    }

    pub fn dense_row(&self, r: usize) -> Vec<u32> {
        let mut out = vec![0; self.cols()];
        for (c, v) in self.row(r) {
            out[c] = v;
        }
        out
    }

    /// Header of vocabulary terms plus `label`, then one row per document.
    pub fn to_delimited(
        &self,
        delimiter: char,
        positive_label: &str,
        negative_label: &str,
    ) -> String {
        let sep = delimiter.to_string();
        let mut out = String::new();
        out.push_str(&self.vocab.terms().join(&sep));
        out.push_str(&sep);
        out.push_str("label\n");
        for r in 0..self.rows() {
            for v in self.dense_row(r) {
                out.push_str(&v.to_string());
                out.push_str(&sep);
            }
            out.push_str(if self.labels[r] {
                positive_label
            } else {
                negative_label
            });
            out.push('\n');
        }
        out
    }

    pub fn write_delimited(
        &self,
        path: &Path,
        delimiter: char,
        positive_label: &str,
        negative_label: &str,
    ) -> Result<()> {
        fs::write(
            path,
            self.to_delimited(delimiter, positive_label, negative_label),
        )
        .map_err(|e| Error::io(path, e))
    }
}

pub fn vectorize(
    docs: &[TokenizedDocument],
    vocab: &Vocabulary,
    weighting: Weighting,
    labels: &[bool],
) -> Result<DocTermMatrix> {
    if docs.len() != labels.len() {
        return Err(Error::Internal(format!(
            "{} documents but {} labels",
            docs.len(),
            labels.len()
        )));
    }
    let mut row_ptr = Vec::with_capacity(docs.len() + 1);
    let mut cols = Vec::new();
    let mut values = Vec::new();
    row_ptr.push(0);
    for doc in docs {
        let mut counts: Vec<(usize, u32)> = Vec::with_capacity(doc.tokens.len());
        let mut ids = doc
            .tokens
            .iter()
            .map(|t| {
                vocab
                    .index_of(t)
                    .ok_or_else(|| Error::Internal(format!("token {t:?} missing from vocabulary")))
            })
            .collect::<Result<Vec<_>>>()?;
        ids.sort_unstable();
        for id in ids {
            match counts.last_mut() {
                Some((c, n)) if *c == id => *n += 1,
                _ => counts.push((id, 1)),
            }
        }
        for (c, n) in counts {
            cols.push(c);
            values.push(match weighting {
                Weighting::Tf => n,
                Weighting::Binary => 1,
            });
        }
        row_ptr.push(cols.len());
    }
    Ok(DocTermMatrix {
        vocab: vocab.clone(),
        row_ptr,
        cols,
        values,
        weighting,
        labels: labels.to_vec(),
    })
}

/// A topic's documents as k-dimensional points, split by class.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedClusters {
    pub topic_id: usize,
    pub dims: usize,
    pub positive: Points,
    pub negative: Points,
}

/// Column selection of the matrix at the topic's words, in topic order.
pub fn project(matrix: &DocTermMatrix, topic: &Topic) -> Result<ProjectedClusters> {
    let columns = topic
        .words
        .iter()
        .map(|w| {
            matrix
                .vocab
                .index_of(w)
                .ok_or_else(|| Error::VocabularyMismatch(w.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let dims = columns.len();
    let n_pos = matrix.labels.iter().filter(|&&b| b).count();
    let mut positive = Points::with_capacity(dims, n_pos);
    let mut negative = Points::with_capacity(dims, matrix.rows() - n_pos);
    let mut point = vec![0.0; dims];
    for r in 0..matrix.rows() {
        for (slot, &c) in point.iter_mut().zip(&columns) {
            *slot = matrix.get(r, c) as f64;
        }
        if matrix.labels[r] {
            positive.push(&point)?;
        } else {
            negative.push(&point)?;
        }
    }
    Ok(ProjectedClusters {
        topic_id: topic.topic_id,
        dims,
        positive,
        negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lda::TopicOrigin;

    fn docs(raw: &[&[&str]]) -> Vec<TokenizedDocument> {
        raw.iter()
            .enumerate()
            .map(|(i, toks)| TokenizedDocument {
                id: i.to_string(),
                tokens: toks.iter().map(|s| s.to_string()).collect(),
            })
            .collect()
    }

    fn topic(words: &[&str]) -> Topic {
        Topic::new(
            0,
            words.iter().map(|s| s.to_string()).collect(),
            TopicOrigin::Lda,
        )
    }

    #[test]
    fn vocabulary_sorted_and_deduplicated() {
        let v = Vocabulary::build(&docs(&[&["lego", "brick"], &["set"]])).unwrap();
        assert_eq!(v.terms(), ["brick", "lego", "set"]);
        for (i, t) in v.terms().iter().enumerate() {
            assert_eq!(v.index_of(t), Some(i));
        }
        let v = Vocabulary::build(&docs(&[&["a", "a"]])).unwrap();
        assert_eq!(v.terms(), ["a"]);
        assert!(matches!(
            Vocabulary::build(&docs(&[&[], &[]])),
            Err(Error::DegenerateCorpus(_))
        ));
    }

    #[test]
    fn tf_and_binary_rows() {
        let d = docs(&[&["lego", "brick"], &["lego", "lego", "set"], &[]]);
        let v = Vocabulary::build(&d).unwrap();
        let labels = [true, false, false];
        let tf = vectorize(&d, &v, Weighting::Tf, &labels).unwrap();
        assert_eq!(tf.dense_row(0), [1, 1, 0]);
        assert_eq!(tf.dense_row(1), [0, 2, 1]);
        assert_eq!(tf.dense_row(2), [0, 0, 0]);
        let bin = vectorize(&d, &v, Weighting::Binary, &labels).unwrap();
        assert_eq!(bin.dense_row(1), [0, 1, 1]);
        assert_eq!(bin.labels(), labels);
    }

    #[test]
    fn unknown_token_is_internal_error() {
        let d = docs(&[&["lego"]]);
        let v = Vocabulary::from_terms(["brick"]);
        assert!(matches!(
            vectorize(&d, &v, Weighting::Tf, &[true]),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn projection_selects_topic_columns() {
        let d = docs(&[&["lego", "brick"], &["lego", "lego", "set"]]);
        let v = Vocabulary::build(&d).unwrap();
        let m = vectorize(&d, &v, Weighting::Binary, &[true, false]).unwrap();
        let p = project(&m, &topic(&["lego", "set"])).unwrap();
        assert_eq!(p.dims, 2);
        assert_eq!(p.positive.get(0), [1.0, 0.0]);
        assert_eq!(p.negative.get(0), [1.0, 1.0]);
        assert!(matches!(
            project(&m, &topic(&["duplo"])),
            Err(Error::VocabularyMismatch(_))
        ));
    }

    #[test]
    fn absent_topic_words_give_zero_points() {
        let d = docs(&[&["lego"], &["brick"], &["set", "stud"], &["stud"]]);
        let v = Vocabulary::build(&d).unwrap();
        let m = vectorize(&d, &v, Weighting::Tf, &[true, true, false, false]).unwrap();
        // "set" and "stud" only appear in negatives; positives project to zero
        let p = project(&m, &topic(&["set", "stud"])).unwrap();
        assert!(p.positive.iter().all(|x| x.iter().all(|&c| c == 0.0)));
        assert_eq!(p.positive.len() + p.negative.len(), 4);
    }

    #[test]
    fn matrix_dump() {
        let d = docs(&[&["lego", "brick"], &["set"]]);
        let v = Vocabulary::build(&d).unwrap();
        let m = vectorize(&d, &v, Weighting::Tf, &[true, false]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.tsv");
        m.write_delimited(&path, '\t', "t", "u").unwrap();
        assert_eq!(
            fs::read_to_string(&path).unwrap(),
            "brick\tlego\tset\tlabel\n1\t1\t0\tt\n0\t0\t1\tu\n"
        );
    }
}
