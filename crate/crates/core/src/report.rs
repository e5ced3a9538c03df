//! Text renderings of topics, rank tables, ratio tables and sweep summaries.
//!
//! Human-readable tables are tab-delimited with values rounded to two
//! decimals. Every file starts with `#` comment lines carrying the run
//! configuration.

use std::fmt::Write;

use crate::lda::Topic;
use crate::ranking::{Metric, RankTable, RatioTable, SweepResult};

pub const RANK_HEADER: &str = "cluster\tTopic Terms\tCentroidD\tMinD\tMaxD\tMeanD";

/// `# key: value` lines.
pub fn comment_header(lines: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in lines {
        writeln!(out, "# {k}: {v}").unwrap();
    }
    out
}

/// `topic_<id>\t<word>, <word>, ...` per topic.
pub fn format_topics(topics: &[Topic], header: &str) -> String {
    let mut out = header.to_string();
    for t in topics {
        writeln!(out, "{}\t{}", t.label(), t.words.join(", ")).unwrap();
    }
    out
}

pub fn format_rank_table(table: &RankTable, header: &str) -> String {
    let mut out = header.to_string();
    writeln!(out, "# sort: {} descending", table.sort_metric).unwrap();
    writeln!(out, "# weighting: {}", table.weighting).unwrap();
    writeln!(out, "{RANK_HEADER}").unwrap();
    for row in &table.rows {
        let r = &row.report;
        writeln!(
            out,
            "{}\t{}\t{:.2}\t{:.2}\t{:.2}\t{:.2}",
            row.label(),
            row.words.join(", "),
            r.centroid_link,
            r.single_link,
            r.complete_link,
            r.average_link
        )
        .unwrap();
    }
    out
}

pub fn format_ratio_table(ratio: &RatioTable, header: &str) -> String {
    let mut out = header.to_string();
    writeln!(
        out,
        "# pairing: rank position, both tables sorted by {} descending",
        ratio.sort_metric
    )
    .unwrap();
    let dropped: Vec<String> = ratio
        .dropped
        .iter()
        .map(|d| {
            let reason = serde_json::to_value(d.reason).unwrap();
            format!("{} ({})", d.metric, reason.as_str().unwrap_or_default())
        })
        .collect();
    writeln!(
        out,
        "# dropped: {}",
        if dropped.is_empty() {
            "none".to_string()
        } else {
            dropped.join(", ")
        }
    )
    .unwrap();
    let names: Vec<&str> = ratio.metrics.iter().map(|m| m.name()).collect();
    writeln!(out, "rank\t{}", names.join("\t")).unwrap();
    for (p, row) in ratio.rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.2}")).collect();
        writeln!(out, "{}\t{}", p + 1, cells.join("\t")).unwrap();
    }
    out
}

/// Per-size five-number summary of one metric, full precision.
pub fn format_distribution(sweep: &SweepResult, metric: Metric, header: &str) -> String {
    let mut out = header.to_string();
    writeln!(out, "# metric: {metric}").unwrap();
    writeln!(out, "words\tmin\tq1\tmedian\tq3\tmax").unwrap();
    for e in &sweep.entries {
        let (_, d) = e
            .distributions
            .iter()
            .find(|(m, _)| *m == metric)
            .expect("every metric is summarized");
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            e.words_per_topic, d.min, d.q1, d.median, d.q3, d.max
        )
        .unwrap();
    }
    out
}
