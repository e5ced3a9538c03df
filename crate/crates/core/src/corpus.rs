//! Two-class corpus ingestion from delimited files or directory pairs.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub label: String,
}

/// Labeled documents carrying exactly two distinct labels.
///
/// Document order is the input order. Seeded stages depend on it, so the
/// run drivers work on [`Corpus::canonical`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<Document>,
    positive_label: String,
    negative_label: String,
}

impl Corpus {
    /// Validates label cardinality and id uniqueness.
    pub fn new(documents: Vec<Document>, override_positive: Option<&str>) -> Result<Self> {
        let observed: BTreeSet<String> = documents.iter().map(|d| d.label.clone()).collect();
        let (positive_label, negative_label) = resolve_labels(&observed, override_positive)?;
        let mut seen = HashSet::with_capacity(documents.len());
        for doc in &documents {
            if !seen.insert(doc.id.as_str()) {
                return Err(Error::Config(format!("duplicate document id {:?}", doc.id)));
            }
        }
        Ok(Self {
            documents,
            positive_label,
            negative_label,
        })
    }

    /// Same documents sorted by text, then label, then id.
    pub fn canonical(&self) -> Corpus {
        let mut documents = self.documents.clone();
        documents.sort_by(|a, b| (&a.text, &a.label, &a.id).cmp(&(&b.text, &b.label, &b.id)));
        Corpus {
            documents,
            positive_label: self.positive_label.clone(),
            negative_label: self.negative_label.clone(),
        }
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn positive_label(&self) -> &str {
        &self.positive_label
    }

    pub fn negative_label(&self) -> &str {
        &self.negative_label
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Per-document class bit, `true` for the positive class.
    pub fn class_bits(&self) -> Vec<bool> {
        self.documents
            .iter()
            .map(|d| d.label == self.positive_label)
            .collect()
    }

    /// (positive, negative) document counts.
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self
            .documents
            .iter()
            .filter(|d| d.label == self.positive_label)
            .count();
        (pos, self.documents.len() - pos)
    }
}

/// Picks the positive and negative label from the observed label set.
///
/// The override wins when given; otherwise the lexicographically smaller
/// label is positive.
pub fn resolve_labels(
    observed: &BTreeSet<String>,
    override_positive: Option<&str>,
) -> Result<(String, String)> {
    if observed.len() != 2 {
        return Err(Error::LabelCardinality {
            found: observed.iter().cloned().collect(),
        });
    }
    let mut it = observed.iter();
    let (first, second) = (it.next().unwrap().clone(), it.next().unwrap().clone());
    match override_positive {
        None => Ok((first, second)),
        Some(p) if p == first => Ok((first, second)),
        Some(p) if p == second => Ok((second, first)),
        Some(p) => Err(Error::Config(format!(
            "positive label {p:?} is not one of the observed labels {observed:?}"
        ))),
    }
}

/// Where and how to read a delimited corpus file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelimitedSource {
    pub path: PathBuf,
    pub text_column: String,
    pub label_column: String,
    pub id_column: Option<String>,
    pub delimiter: char,
    /// Rows whose label is outside this set are skipped and counted.
    pub keep_labels: Option<Vec<String>>,
    pub positive_label: Option<String>,
}

impl DelimitedSource {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            text_column: "text".into(),
            label_column: "label".into(),
            id_column: None,
            delimiter: '\t',
            keep_labels: None,
            positive_label: None,
        }
    }
}

/// A loaded corpus together with raw and retained row counts.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub corpus: Corpus,
    pub raw_rows: usize,
    pub retained_rows: usize,
}

fn delimiter_byte(delimiter: char) -> Result<u8> {
    match delimiter {
        '\t' | ',' => Ok(delimiter as u8),
        other => Err(Error::Config(format!(
            "delimiter must be tab or comma, got {other:?}"
        ))),
    }
}

pub fn load_delimited(source: &DelimitedSource) -> Result<Ingested> {
    let delim = delimiter_byte(source.delimiter)?;
    let file = fs::File::open(&source.path).map_err(|e| Error::io(&source.path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delim)
        .has_headers(true)
        .from_reader(file);
    let headers = reader.headers()?.clone();
    let column = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            Error::Config(format!(
                "missing column {name:?} in {}",
                source.path.display()
            ))
        })
    };
    let text_idx = column(&source.text_column)?;
    let label_idx = column(&source.label_column)?;
    let id_idx = source.id_column.as_deref().map(column).transpose()?;

    let keep: Option<HashSet<&str>> = source
        .keep_labels
        .as_ref()
        .map(|ls| ls.iter().map(String::as_str).collect());

    let mut documents = Vec::new();
    let mut raw_rows = 0;
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        raw_rows += 1;
        let field = |i: usize| record.get(i).unwrap_or("").to_string();
        let label = field(label_idx);
        if keep.as_ref().is_some_and(|k| !k.contains(label.as_str())) {
            continue;
        }
        let id = match id_idx {
            Some(i) => field(i),
            None => row.to_string(),
        };
        documents.push(Document {
            id,
            text: field(text_idx),
            label,
        });
    }
    let retained_rows = documents.len();
    let corpus = Corpus::new(documents, source.positive_label.as_deref())?;
    Ok(Ingested {
        corpus,
        raw_rows,
        retained_rows,
    })
}

fn sorted_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let ty = entry.file_type().map_err(|e| Error::io(entry.path(), e))?;
        if ty.is_file() {
            files.push(entry.path());
        }
    }
    files.sort();
    Ok(files)
}

fn dir_label(dir: &Path) -> Result<String> {
    dir.file_name()
        .and_then(|n| n.to_str())
        .map(str::to_string)
        .ok_or_else(|| Error::Config(format!("cannot derive a label from {}", dir.display())))
}

/// Loads one document per plain file; the label is the directory name and
/// the positive class is `pos_dir`.
pub fn load_directory(pos_dir: &Path, neg_dir: &Path) -> Result<Corpus> {
    let pos_label = dir_label(pos_dir)?;
    let neg_label = dir_label(neg_dir)?;
    if pos_label == neg_label {
        return Err(Error::Config(format!(
            "class directories must have distinct names, both are {pos_label:?}"
        )));
    }
    let mut documents = Vec::new();
    for (dir, label) in [(pos_dir, &pos_label), (neg_dir, &neg_label)] {
        for path in sorted_files(dir)? {
            let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let rel = path.strip_prefix(dir).unwrap_or(&path);
            documents.push(Document {
                id: format!("{label}/{}", rel.display()),
                text,
                label: label.clone(),
            });
        }
    }
    Corpus::new(documents, Some(&pos_label))
}

/// Writes `id`, `label`, `text` columns readable by [`load_delimited`].
pub fn write_delimited(corpus: &Corpus, path: &Path, delimiter: char) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_delimited_to(corpus, file, delimiter)
}

pub fn write_delimited_to<W: std::io::Write>(
    corpus: &Corpus,
    out: W,
    delimiter: char,
) -> Result<()> {
    let delim = delimiter_byte(delimiter)?;
    let mut writer = csv::WriterBuilder::new().delimiter(delim).from_writer(out);
    writer.write_record(["id", "label", "text"])?;
    for doc in corpus.documents() {
        writer.write_record([&doc.id, &doc.label, &doc.text])?;
    }
    writer
        .flush()
        .map_err(|e| Error::io("<delimited output>", e))?;
    Ok(())
}
