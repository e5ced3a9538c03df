//! Ranks the topics of a two-class corpus by how well each topic's words
//! separate the classes.
//!
//! Pipeline: [`corpus`] ingestion, [`preprocess`] cleaning, [`vectorspace`]
//! bag-of-words matrices, [`lda`] topic detection, [`distance`] linkage
//! metrics, [`ranking`] tables and ratios, and the [`run`] drivers behind
//! the command-line tool. [`bench`] generates planted corpora.

pub mod bench;
pub mod corpus;
pub mod distance;
pub mod error;
pub mod lda;
pub mod preprocess;
pub mod ranking;
pub mod vectorspace;

pub use error::{Error, Result};
pub mod report;
pub mod run;
