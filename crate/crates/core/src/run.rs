//! End-to-end drivers behind the command-line subcommands.
//!
//! Each command computes everything first and writes its files only once
//! all results are available. Every file embeds the configuration echo.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::bench::{
    generate_planted_corpus, score_planted, PlantSpec, PlantedOutcome, PlantedWords,
};
use crate::corpus::{load_delimited, load_directory, write_delimited_to, Corpus, DelimitedSource};
use crate::error::{Error, Result};
use crate::lda::{lda_fit, random_topics, LdaConfig, Topic};
use crate::preprocess::{run_pipeline, PipelineConfig, TokenizedDocument};
use crate::ranking::{
    rank_topics, ratio_table, sweep_topic_sizes, Metric, RankTable, RatioTable, SweepMode,
    SweepResult,
};
use crate::report::{
    comment_header, format_distribution, format_rank_table, format_ratio_table, format_topics,
};
use crate::vectorspace::{vectorize, DocTermMatrix, Vocabulary, Weighting};

/// Offsets added to the global seed for each stochastic stage.
pub const LDA_SEED_OFFSET: u64 = 0;
pub const RANDOM_TOPICS_SEED_OFFSET: u64 = 0x5EED_0001;
pub const BENCH_SEED_OFFSET: u64 = 0x5EED_0002;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StageSeeds {
    pub lda: u64,
    pub random_topics: u64,
    pub bench: u64,
}

impl StageSeeds {
    pub fn from_global(seed: u64) -> Self {
        Self {
            lda: seed.wrapping_add(LDA_SEED_OFFSET),
            random_topics: seed.wrapping_add(RANDOM_TOPICS_SEED_OFFSET),
            bench: seed.wrapping_add(BENCH_SEED_OFFSET),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputSpec {
    Delimited(DelimitedSource),
    Directories {
        positive: PathBuf,
        negative: PathBuf,
    },
    /// A generated planted corpus.
    Planted(PlantSpec),
}

/// Everything a run needs. The LDA seed inside `lda` is replaced by the
/// one derived from `seed`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub input: InputSpec,
    pub pipeline: PipelineConfig,
    pub lda: LdaConfig,
    pub weighting: Weighting,
    pub sort_metric: Metric,
    pub sizes: Vec<usize>,
    pub sweep_mode: SweepMode,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(input: InputSpec, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            input,
            pipeline: PipelineConfig::default(),
            lda: LdaConfig::new(10, 5),
            weighting: Weighting::Binary,
            sort_metric: Metric::MeanD,
            sizes: vec![5, 10, 20, 40],
            sweep_mode: SweepMode::Refit,
            output_dir: output_dir.into(),
            seed: 0,
        }
    }

    pub fn stage_seeds(&self) -> StageSeeds {
        StageSeeds::from_global(self.seed)
    }

    pub fn lda_config(&self) -> LdaConfig {
        LdaConfig {
            seed: self.stage_seeds().lda,
            ..self.lda.clone()
        }
    }

    /// Single-line JSON of the configuration and derived seeds.
    pub fn echo(&self) -> String {
        #[derive(Serialize)]
        struct Echo<'a> {
            config: &'a RunConfig,
            stage_seeds: StageSeeds,
        }
        serde_json::to_string(&Echo {
            config: self,
            stage_seeds: self.stage_seeds(),
        })
        .expect("config serializes")
    }

    fn header(&self, kind: &str) -> String {
        comment_header(&[("output", kind.to_string()), ("config", self.echo())])
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub documents: usize,
    pub positive_label: String,
    pub negative_label: String,
    pub positive_documents: usize,
    pub negative_documents: usize,
    pub raw_rows: usize,
    pub retained_rows: usize,
    pub vocabulary_size: usize,
}

/// Corpus through to document-term matrix.
pub struct Prepared {
    pub corpus: Corpus,
    pub docs: Vec<TokenizedDocument>,
    pub vocab: Vocabulary,
    pub matrix: DocTermMatrix,
    pub summary: CorpusSummary,
}

pub fn load_input(input: &InputSpec) -> Result<(Corpus, usize, usize)> {
    match input {
        InputSpec::Delimited(src) => {
            let ing = load_delimited(src)?;
            Ok((ing.corpus, ing.raw_rows, ing.retained_rows))
        }
        InputSpec::Directories { positive, negative } => {
            let c = load_directory(positive, negative)?;
            let n = c.len();
            Ok((c, n, n))
        }
        InputSpec::Planted(spec) => {
            let (c, _) = generate_planted_corpus(spec)?;
            let n = c.len();
            Ok((c, n, n))
        }
    }
}

pub fn prepare(config: &RunConfig) -> Result<Prepared> {
    let (corpus, raw_rows, retained_rows) = load_input(&config.input)?;
    let corpus = corpus.canonical();
    let docs = run_pipeline(&corpus, &config.pipeline)?;
    let vocab = Vocabulary::build(&docs)?;
    let matrix = vectorize(&docs, &vocab, config.weighting, &corpus.class_bits())?;
    let (pos, neg) = corpus.class_counts();
    let summary = CorpusSummary {
        documents: corpus.len(),
        positive_label: corpus.positive_label().to_string(),
        negative_label: corpus.negative_label().to_string(),
        positive_documents: pos,
        negative_documents: neg,
        raw_rows,
        retained_rows,
        vocabulary_size: vocab.len(),
    };
    Ok(Prepared {
        corpus,
        docs,
        vocab,
        matrix,
        summary,
    })
}

/// Results of the two-stage ranking on one corpus.
#[derive(Debug, Clone, Serialize)]
pub struct RankOutcome {
    pub corpus: CorpusSummary,
    pub lda_topics: Vec<Topic>,
    pub random_topics: Vec<Topic>,
    pub lda_table: RankTable,
    pub random_table: RankTable,
    pub ratio_table: RatioTable,
}

/// Fits LDA, draws the random baseline and ranks both.
pub fn rank_prepared(config: &RunConfig, prep: &Prepared) -> Result<RankOutcome> {
    let lda_config = config.lda_config();
    let lda_topics = lda_fit(&prep.docs, &prep.vocab, &lda_config)?;
    let random = random_topics(
        &prep.vocab,
        lda_config.n_topics,
        lda_config.words_per_topic,
        config.stage_seeds().random_topics,
    )?;
    let lda_table = rank_topics(&prep.matrix, &lda_topics, config.sort_metric)?;
    let random_table = rank_topics(&prep.matrix, &random, config.sort_metric)?;
    let ratio = ratio_table(&lda_table, &random_table)?;
    Ok(RankOutcome {
        corpus: prep.summary.clone(),
        lda_topics,
        random_topics: random,
        lda_table,
        random_table,
        ratio_table: ratio,
    })
}

/// Files are staged in memory and written together.
struct Outputs<'a> {
    dir: &'a Path,
    files: Vec<(String, String)>,
}

impl<'a> Outputs<'a> {
    fn new(dir: &'a Path) -> Self {
        Self {
            dir,
            files: Vec::new(),
        }
    }

    fn add(&mut self, name: &str, body: String) {
        self.files.push((name.to_string(), body));
    }

    fn json<T: Serialize>(&mut self, name: &str, config: &RunConfig, body: &T) -> Result<()> {
        #[derive(Serialize)]
        struct Doc<'b, T> {
            config: &'b RunConfig,
            stage_seeds: StageSeeds,
            #[serde(flatten)]
            body: &'b T,
        }
        let text = serde_json::to_string_pretty(&Doc {
            config,
            stage_seeds: config.stage_seeds(),
            body,
        })?;
        self.add(name, text + "\n");
        Ok(())
    }

    fn write(self) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(self.dir).map_err(|e| Error::io(self.dir, e))?;
        let mut written = Vec::with_capacity(self.files.len());
        for (name, body) in self.files {
            let path = self.dir.join(name);
            fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn add_rank_files(out: &mut Outputs<'_>, config: &RunConfig, outcome: &RankOutcome) -> Result<()> {
    out.add(
        "lda_topics.tsv",
        format_topics(&outcome.lda_topics, &config.header("lda topics")),
    );
    out.add(
        "lda_rank.tsv",
        format_rank_table(&outcome.lda_table, &config.header("lda rank table")),
    );
    out.add(
        "random_rank.tsv",
        format_rank_table(
            &outcome.random_table,
            &config.header("random topic rank table"),
        ),
    );
    out.add(
        "ratio.tsv",
        format_ratio_table(
            &outcome.ratio_table,
            &config.header("lda / random ratio table"),
        ),
    );
    out.json("rank.json", config, outcome)
}

#[derive(Debug, Clone)]
pub struct RankRun {
    pub outcome: RankOutcome,
    pub files: Vec<PathBuf>,
}

pub fn cmd_rank(config: &RunConfig) -> Result<RankRun> {
    let prep = prepare(config)?;
    let outcome = rank_prepared(config, &prep)?;
    let mut out = Outputs::new(&config.output_dir);
    add_rank_files(&mut out, config, &outcome)?;
    let files = out.write()?;
    Ok(RankRun { outcome, files })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub corpus: CorpusSummary,
    pub sweep: SweepResult,
}

#[derive(Debug, Clone)]
pub struct SweepRun {
    pub outcome: SweepOutcome,
    pub files: Vec<PathBuf>,
}

pub fn cmd_sweep(config: &RunConfig) -> Result<SweepRun> {
    if config.sizes.is_empty() {
        return Err(Error::Config("sweep needs at least one topic size".into()));
    }
    let prep = prepare(config)?;
    let sweep = sweep_topic_sizes(
        &prep.docs,
        &prep.vocab,
        &prep.matrix,
        &config.lda_config(),
        &config.sizes,
        config.sweep_mode,
        config.sort_metric,
    )?;
    let mut out = Outputs::new(&config.output_dir);
    for e in &sweep.entries {
        let kind = format!("lda rank table, {} words per topic", e.words_per_topic);
        out.add(
            &format!("sweep_k{}.tsv", e.words_per_topic),
            format_rank_table(&e.table, &config.header(&kind)),
        );
    }
    for m in Metric::ALL {
        let kind = format!("{m} distribution by topic size");
        out.add(
            &format!("sweep_{m}.tsv"),
            format_distribution(&sweep, m, &config.header(&kind)),
        );
    }
    let outcome = SweepOutcome {
        corpus: prep.summary,
        sweep,
    };
    out.json("sweep.json", config, &outcome)?;
    let files = out.write()?;
    Ok(SweepRun { outcome, files })
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchOutcome {
    pub rank: RankOutcome,
    pub planted_topic: Topic,
    pub planted: PlantedOutcome,
    /// Best overlap of an LDA topic with each signature set (positive, negative).
    pub lda_signature_overlap: (usize, usize),
    /// Rank of the LDA topic holding the most signature words.
    pub lda_signature_topic_rank: usize,
}

#[derive(Debug, Clone)]
pub struct BenchRun {
    pub outcome: BenchOutcome,
    pub files: Vec<PathBuf>,
}

/// Generates a planted corpus from `spec`, runs the full ranking and
/// scores the planted topic against `n_random` random topics.
pub fn cmd_bench(spec: &PlantSpec, n_random: usize, config: &RunConfig) -> Result<BenchRun> {
    if n_random == 0 {
        return Err(Error::Config(
            "bench needs at least one random topic".into(),
        ));
    }
    let config = RunConfig {
        input: InputSpec::Planted(spec.clone()),
        ..config.clone()
    };
    let prep = prepare(&config)?;
    let (generated, planted_topic) = generate_planted_corpus(spec)?;
    let rank = rank_prepared(&config, &prep)?;
    let planted = score_planted(
        &prep.matrix,
        &planted_topic,
        n_random,
        config.stage_seeds().random_topics,
        config.sort_metric,
    )?;

    let words = PlantedWords::for_spec(spec);
    let overlap = |t: &Topic, set: &[String]| t.words.iter().filter(|w| set.contains(w)).count();
    let best = |set: &[String]| {
        rank.lda_topics
            .iter()
            .map(|t| overlap(t, set))
            .max()
            .unwrap_or(0)
    };
    let lda_signature_overlap = (best(&words.positive), best(&words.negative));
    let signature_topic = rank
        .lda_table
        .rows
        .iter()
        .max_by_key(|r| {
            let t = Topic::new(r.topic_id, r.words.clone(), r.origin);
            (
                overlap(&t, &words.positive) + overlap(&t, &words.negative),
                std::cmp::Reverse(r.topic_id),
            )
        })
        .map(|r| r.topic_id)
        .expect("at least two topics");
    let lda_signature_topic_rank = rank.lda_table.rank_of(signature_topic).unwrap();

    let mut out = Outputs::new(&config.output_dir);
    let mut corpus_file = Vec::new();
    write_delimited_to(&generated, &mut corpus_file, '\t')?;
    let corpus_file = String::from_utf8(corpus_file).expect("corpus text is UTF-8");
    out.add("bench_corpus.tsv", corpus_file);
    add_rank_files(&mut out, &config, &rank)?;
    out.add(
        "bench_planted.tsv",
        format_rank_table(
            &planted.table,
            &config.header("planted topic against random topics"),
        ),
    );
    let outcome = BenchOutcome {
        rank,
        planted_topic,
        planted,
        lda_signature_overlap,
        lda_signature_topic_rank,
    };
    out.json("bench.json", &config, &outcome)?;
    let files = out.write()?;
    Ok(BenchRun { outcome, files })
}

/// Writes cleaned tokens (`id`, space-joined tokens) and the vocabulary.
pub fn cmd_preprocess(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let prep = prepare(config)?;
    let mut tokens = config.header("tokens");
    tokens.push_str("id\ttokens\n");
    for d in &prep.docs {
        tokens.push_str(&format!("{}\t{}\n", d.id, d.tokens.join(" ")));
    }
    let mut vocab = config.header("vocabulary");
    for t in prep.vocab.terms() {
        vocab.push_str(t);
        vocab.push('\n');
    }
    let mut out = Outputs::new(&config.output_dir);
    out.add("tokens.tsv", tokens);
    out.add("vocabulary.txt", vocab);
    out.write()
}

/// Writes the document-term matrix with a trailing label column.
pub fn cmd_vectorize(config: &RunConfig) -> Result<PathBuf> {
    let prep = prepare(config)?;
    let body = prep.matrix.to_delimited(
        '\t',
        prep.corpus.positive_label(),
        prep.corpus.negative_label(),
    );
    let mut out = Outputs::new(&config.output_dir);
    out.add("matrix.tsv", config.header("document-term matrix") + &body);
    let mut files = out.write()?;
    Ok(files.remove(0))
}
