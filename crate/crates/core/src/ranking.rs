//! Topic ranking by class separation, LDA-to-random ratios and topic size
//! sweeps.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distance::{all_metrics, DistanceReport};
use crate::error::{Error, Result};
use crate::lda::{lda_fit, LdaConfig, Topic, TopicOrigin};
use crate::preprocess::TokenizedDocument;
use crate::vectorspace::{project, DocTermMatrix, Vocabulary, Weighting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Metric {
    CentroidD,
    MinD,
    MaxD,
    MeanD,
}

impl Metric {
    /// Column order of the rank table.
    pub const ALL: [Metric; 4] = [Metric::CentroidD, Metric::MinD, Metric::MaxD, Metric::MeanD];

    pub fn of(self, r: &DistanceReport) -> f64 {
        match self {
            Metric::CentroidD => r.centroid_link,
            Metric::MinD => r.single_link,
            Metric::MaxD => r.complete_link,
            Metric::MeanD => r.average_link,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::CentroidD => "CentroidD",
            Metric::MinD => "MinD",
            Metric::MaxD => "MaxD",
            Metric::MeanD => "MeanD",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Config(format!(
                    "metric must be one of CentroidD, MinD, MaxD, MeanD; got {s:?}"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRow {
    pub topic_id: usize,
    pub words: Vec<String>,
    pub origin: TopicOrigin,
    pub report: DistanceReport,
}

impl RankRow {
    pub fn label(&self) -> String {
        format!("topic_{}", self.topic_id)
    }
}

/// Topics sorted by descending `sort_metric`, ties by ascending topic id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankTable {
    pub rows: Vec<RankRow>,
    pub sort_metric: Metric,
    pub weighting: Weighting,
}

impl RankTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, metric: Metric) -> Vec<f64> {
        self.rows.iter().map(|r| metric.of(&r.report)).collect()
    }

    /// 1-based rank of a topic id.
    pub fn rank_of(&self, topic_id: usize) -> Option<usize> {
        self.rows
            .iter()
            .position(|r| r.topic_id == topic_id)
            .map(|p| p + 1)
    }
}

fn sort_rows(rows: &mut [RankRow], metric: Metric) {
    rows.sort_by(|a, b| {
        metric
            .of(&b.report)
            .total_cmp(&metric.of(&a.report))
            .then(a.topic_id.cmp(&b.topic_id))
    });
}

/// Projects the matrix onto each topic and scores the two class clusters.
pub fn rank_topics(
    matrix: &DocTermMatrix,
    topics: &[Topic],
    sort_metric: Metric,
) -> Result<RankTable> {
    if topics.is_empty() {
        return Err(Error::Config("no topics to rank".into()));
    }
    let mut rows = topics
        .par_iter()
        .map(|topic| {
            let clusters = project(matrix, topic)?;
            let report = all_metrics(topic.topic_id, &clusters.positive, &clusters.negative)?;
            Ok(RankRow {
                topic_id: topic.topic_id,
                words: topic.words.clone(),
                origin: topic.origin,
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sort_rows(&mut rows, sort_metric);
    Ok(RankTable {
        rows,
        sort_metric,
        weighting: matrix.weighting(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DropReason {
    /// Every denominator in the column is zero.
    AllZero,
    /// Some denominator is zero under a nonzero numerator.
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DroppedMetric {
    pub metric: Metric,
    pub reason: DropReason,
}

/// LDA / random ratios paired by rank position.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioTable {
    pub sort_metric: Metric,
    /// Retained metrics, in rank table column order.
    pub metrics: Vec<Metric>,
    /// `rows[p][j]` is the ratio for rank position `p` and `metrics[j]`.
    pub rows: Vec<Vec<f64>>,
    pub dropped: Vec<DroppedMetric>,
}

impl RatioTable {
    pub fn is_dropped(&self, metric: Metric) -> bool {
        self.dropped.iter().any(|d| d.metric == metric)
    }

    pub fn column(&self, metric: Metric) -> Option<Vec<f64>> {
        let j = self.metrics.iter().position(|&m| m == metric)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

/// Divides LDA values by random values at the same rank position.
///
/// 0/0 counts as a ratio of 1; a metric with any nonzero value over a zero
/// denominator, or an all-zero denominator column, is dropped.
pub fn ratio_table(lda: &RankTable, random: &RankTable) -> Result<RatioTable> {
    if lda.len() != random.len() {
        return Err(Error::Config(format!(
            "ratio needs equal table sizes, got {} LDA and {} random rows",
            lda.len(),
            random.len()
        )));
    }
    if lda.sort_metric != random.sort_metric {
        return Err(Error::Config(format!(
            "tables are sorted by different metrics ({} vs {})",
            lda.sort_metric, random.sort_metric
        )));
    }
    let mut metrics = Vec::new();
    let mut columns = Vec::new();
    let mut dropped = Vec::new();
    for metric in Metric::ALL {
        let num = lda.column(metric);
        let den = random.column(metric);
        if den.iter().all(|&d| d == 0.0) {
            dropped.push(DroppedMetric {
                metric,
                reason: DropReason::AllZero,
            });
            continue;
        }
        if num.iter().zip(&den).any(|(&n, &d)| d == 0.0 && n != 0.0) {
            dropped.push(DroppedMetric {
                metric,
                reason: DropReason::ZeroDenominator,
            });
            continue;
        }
        metrics.push(metric);
        columns.push(
            num.iter()
                .zip(&den)
                .map(|(&n, &d)| if d == 0.0 { 1.0 } else { n / d })
                .collect::<Vec<_>>(),
        );
    }
    let rows = (0..lda.len())
        .map(|p| columns.iter().map(|c| c[p]).collect())
        .collect();
    Ok(RatioTable {
        sort_metric: lda.sort_metric,
        metrics,
        rows,
        dropped,
    })
}

/// Five-number summary of a metric over the topics of one table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Distribution {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl Distribution {
    /// Quartiles by linear interpolation between order statistics.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let h = p * (v.len() - 1) as f64;
            let lo = h.floor() as usize;
            let hi = h.ceil() as usize;
            v[lo] + (h - lo as f64) * (v[hi] - v[lo])
        };
        Some(Self {
            min: v[0],
            q1: q(0.25),
            median: q(0.5),
            q3: q(0.75),
            max: v[v.len() - 1],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    /// Fit LDA separately for every size.
    #[default]
    Refit,
    /// Fit once at the largest size and truncate the word lists.
    Truncate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry {
    pub words_per_topic: usize,
    pub table: RankTable,
    /// One entry per metric, in [`Metric::ALL`] order.
    pub distributions: Vec<(Metric, Distribution)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub n_topics: usize,
    pub mode: SweepMode,
    pub entries: Vec<SweepEntry>,
}

fn entry(k: usize, table: RankTable) -> SweepEntry {
    let distributions = Metric::ALL
        .into_iter()
        .map(|m| {
            (
                m,
                Distribution::of(&table.column(m)).expect("table is nonempty"),
            )
        })
        .collect();
    SweepEntry {
        words_per_topic: k,
        table,
        distributions,
    }
}

/// Ranks LDA topics at each topic size in `sizes`.
pub fn sweep_topic_sizes(
    docs: &[TokenizedDocument],
    vocab: &Vocabulary,
    matrix: &DocTermMatrix,
    lda_config: &LdaConfig,
    sizes: &[usize],
    mode: SweepMode,
    sort_metric: Metric,
) -> Result<SweepResult> {
    if sizes.is_empty() {
        return Err(Error::Config("sweep needs at least one topic size".into()));
    }
    for &k in sizes {
        LdaConfig {
            words_per_topic: k,
            ..lda_config.clone()
        }
        .validate(vocab.len())?;
    }
    let entries = match mode {
        SweepMode::Refit => sizes
            .par_iter()
            .map(|&k| {
                let config = LdaConfig {
                    words_per_topic: k,
                    ..lda_config.clone()
                };
                let topics = lda_fit(docs, vocab, &config)?;
                Ok(entry(k, rank_topics(matrix, &topics, sort_metric)?))
            })
            .collect::<Result<Vec<_>>>()?,
        SweepMode::Truncate => {
            let max_k = *sizes.iter().max().unwrap();
            let config = LdaConfig {
                words_per_topic: max_k,
                ..lda_config.clone()
            };
            let full = lda_fit(docs, vocab, &config)?;
            sizes
                .par_iter()
                .map(|&k| {
                    let topics: Vec<Topic> = full.iter().map(|t| t.truncated(k)).collect();
                    Ok(entry(k, rank_topics(matrix, &topics, sort_metric)?))
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(SweepResult {
        n_topics: lda_config.n_topics,
        mode,
        entries,
    })
}
