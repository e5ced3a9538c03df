//! `topic-rank`: rank LDA topics of a two-class corpus by class separation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use topic_rank::bench::PlantSpec;
use topic_rank::corpus::DelimitedSource;
use topic_rank::lda::LdaConfig;
use topic_rank::preprocess::{NumberFilter, PipelineConfig, StopwordList};
use topic_rank::ranking::{Metric, SweepMode};
use topic_rank::run::{self, InputSpec, RunConfig, StageSeeds};
use topic_rank::vectorspace::Weighting;
use topic_rank::{Error, Result};

#[derive(Parser)]
#[command(
    name = "topic-rank",
    version,
    about = "Rank topics by how well they separate two document classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit LDA, rank its topics and a random baseline, write the ratio table
    Rank(RankArgs),
    /// Rank LDA topics at several topic sizes
    Sweep(SweepArgs),
    /// Run the pipeline on a generated corpus with planted signature words
    Bench(BenchArgs),
    /// Dump cleaned tokens and the vocabulary
    Preprocess(PipelineOnlyArgs),
    /// Dump the document-term matrix
    Vectorize(VectorizeArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Delimited corpus file with a header row
    #[arg(long, conflicts_with_all = ["pos_dir", "neg_dir"])]
    input: Option<PathBuf>,
    /// Directory of positive-class documents, one per file
    #[arg(long, requires = "neg_dir")]
    pos_dir: Option<PathBuf>,
    /// Directory of negative-class documents, one per file
    #[arg(long, requires = "pos_dir")]
    neg_dir: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    text_col: String,
    #[arg(long, default_value = "label")]
    label_col: String,
    /// Column of document ids; row ordinals when absent
    #[arg(long)]
    id_col: Option<String>,
    /// `tab` or `comma`
    #[arg(long, default_value = "tab")]
    delimiter: String,
    /// Keep only rows with these labels (comma separated)
    #[arg(long, value_delimiter = ',')]
    keep_labels: Option<Vec<String>>,
    /// Label treated as the positive class
    #[arg(long)]
    positive_label: Option<String>,
}

impl InputArgs {
    fn spec(&self) -> Result<InputSpec> {
        match (&self.input, &self.pos_dir, &self.neg_dir) {
            (Some(path), None, None) => {
                let delimiter = match self.delimiter.as_str() {
                    "tab" | "\t" | "\\t" => '\t',
                    "comma" | "," => ',',
                    other => {
                        return Err(Error::Config(format!(
                            "delimiter must be tab or comma, got {other:?}"
                        )))
                    }
                };
                Ok(InputSpec::Delimited(DelimitedSource {
                    path: path.clone(),
                    text_column: self.text_col.clone(),
                    label_column: self.label_col.clone(),
                    id_column: self.id_col.clone(),
                    delimiter,
                    keep_labels: self.keep_labels.clone(),
                    positive_label: self.positive_label.clone(),
                }))
            }
            (None, Some(pos), Some(neg)) => Ok(InputSpec::Directories {
                positive: pos.clone(),
                negative: neg.clone(),
            }),
            _ => Err(Error::Config(
                "give either --input FILE or both --pos-dir and --neg-dir".into(),
            )),
        }
    }
}

#[derive(Args)]
struct PipelineArgs {
    /// Minimum token length (N-chars filter)
    #[arg(long, default_value_t = 3)]
    min_chars: usize,
    /// Minimum number of documents a term must occur in
    #[arg(long, default_value_t = 2)]
    min_df: usize,
    /// Stop word file (one term per line, `#` comments); Snowball English by default
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// `all-digit` or `any-digit`
    #[arg(long, default_value = "all-digit")]
    number_filter: String,
    /// Disable stemming
    #[arg(long)]
    no_stem: bool,
}

impl PipelineArgs {
    fn config(&self) -> Result<PipelineConfig> {
        let stopwords = match &self.stopwords {
            Some(path) => StopwordList::from_file(path)?,
            None => StopwordList::snowball_english(),
        };
        let config = PipelineConfig {
            min_token_chars: self.min_chars,
            min_doc_frequency: self.min_df,
            number_filter: self.number_filter.parse::<NumberFilter>()?,
            stem_enabled: !self.no_stem,
            stopwords,
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Args)]
struct ModelArgs {
    /// Number of topics
    #[arg(long, default_value_t = 10)]
    topics: usize,
    /// Words per topic
    #[arg(long, default_value_t = 5)]
    words: usize,
    /// Document-topic prior; 50 / topics when omitted
    #[arg(long)]
    alpha: Option<f64>,
    /// Topic-word prior
    #[arg(long, default_value_t = 0.01)]
    beta: f64,
    /// Gibbs sweeps
    #[arg(long, default_value_t = 1000)]
    iterations: usize,
    /// `binary` or `tf`
    #[arg(long, default_value = "binary")]
    weighting: String,
    /// Sort metric: MeanD, CentroidD, MaxD or MinD
    #[arg(long, default_value = "MeanD")]
    sort_metric: String,
    /// Global seed; stage seeds are derived from it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

impl ModelArgs {
    fn apply(&self, input: InputSpec, pipeline: PipelineConfig) -> Result<RunConfig> {
        let mut config = RunConfig::new(input, &self.out);
        config.pipeline = pipeline;
        let mut lda = LdaConfig::new(self.topics, self.words);
        if let Some(alpha) = self.alpha {
            lda.alpha = alpha;
        }
        lda.beta = self.beta;
        lda.iterations = self.iterations;
        config.lda = lda;
        config.weighting = self.weighting.parse()?;
        config.sort_metric = self.sort_metric.parse::<Metric>()?;
        config.seed = self.seed;
        config.lda.seed = config.stage_seeds().lda;
        Ok(config)
    }
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// Topic sizes (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "5,10,20,40")]
    sizes: Vec<usize>,
    /// `refit` LDA per size, or `truncate` one fit at the largest size
    #[arg(long, default_value = "refit")]
    sweep_mode: String,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 200)]
    docs_per_class: usize,
    /// Signature words per class
    #[arg(long, default_value_t = 5)]
    signature_words: usize,
    #[arg(long, default_value_t = 500)]
    background_words: usize,
    /// Chance a document contains each of its class's signature words
    #[arg(long, default_value_t = 0.9)]
    signature_probability: f64,
    /// Background tokens per document
    #[arg(long, default_value_t = 20)]
    tokens_per_doc: usize,
    /// Random topics the planted topic is compared against
    #[arg(long, default_value_t = 100)]
    random_topics: usize,
}

#[derive(Args)]
struct PipelineOnlyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct VectorizeArgs {
    #[command(flatten)]
    common: PipelineOnlyArgs,
    /// `binary` or `tf`
    #[arg(long, default_value = "binary")]
    weighting: String,
}

fn pipeline_only(args: &PipelineOnlyArgs) -> Result<RunConfig> {
    let mut config = RunConfig::new(args.input.spec()?, &args.out);
    config.pipeline = args.pipeline.config()?;
    Ok(config)
}

fn report_files(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Rank(args) => {
            let config = args
                .model
                .apply(args.input.spec()?, args.pipeline.config()?)?;
            let run = run::cmd_rank(&config)?;
            report_files(&run.files);
        }
        Command::Sweep(args) => {
            let mut config = args
                .model
                .apply(args.input.spec()?, args.pipeline.config()?)?;
            config.sizes = args.sizes;
            config.sweep_mode = match args.sweep_mode.as_str() {
                "refit" => SweepMode::Refit,
                "truncate" => SweepMode::Truncate,
                other => {
                    return Err(Error::Config(format!(
                        "sweep mode must be refit or truncate, got {other:?}"
                    )))
                }
            };
            let run = run::cmd_sweep(&config)?;
            report_files(&run.files);
        }
        Command::Bench(args) => {
            let spec = PlantSpec {
                docs_per_class: args.docs_per_class,
                signature_words_per_class: args.signature_words,
                background_vocab_size: args.background_words,
                signature_probability: args.signature_probability,
                tokens_per_doc: args.tokens_per_doc,
                seed: StageSeeds::from_global(args.model.seed).bench,
            };
            let config = args
                .model
                .apply(InputSpec::Planted(spec.clone()), args.pipeline.config()?)?;
            let run = run::cmd_bench(&spec, args.random_topics, &config)?;
            report_files(&run.files);
            let p = &run.outcome.planted;
            println!(
                "planted topic rank {} of {}; {} ratio to random mean {:.2}; best LDA topic overlap with signatures {:?}",
                p.planted_rank,
                p.table.len(),
                p.metric,
                p.ratio,
                run.outcome.lda_signature_overlap
            );
        }
        Command::Preprocess(args) => {
            let files = run::cmd_preprocess(&pipeline_only(&args)?)?;
            report_files(&files);
        }
        Command::Vectorize(args) => {
            let mut config = pipeline_only(&args.common)?;
            config.weighting = args.weighting.parse::<Weighting>()?;
            let file = run::cmd_vectorize(&config)?;
            report_files(&[file]);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.class());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
