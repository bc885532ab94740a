use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use termweaver::acronyms::AcronymMode;
use termweaver::extract::DEFAULT_PATTERN;
use termweaver::pipeline::{
    bench_scaling, fit_quadratic, read_timings, run_pipeline, timings_tsv, write_timings,
    PipelineConfig,
};
use termweaver::preprocess::InputFormat;

/// Unsupervised multi-word term recognition over a document corpus.
#[derive(Parser)]
#[command(name = "termweaver", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write the term dictionary, standoff
    /// annotations, HTML visualization and concordances.
    Run(RunArgs),
    /// Run the pipeline on cumulative corpus subsets, recording
    /// per-module execution times.
    Bench(BenchArgs),
    /// Fit a quadratic to recorded timings and predict the runtime for
    /// a larger corpus.
    Extrapolate(ExtrapolateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Raw,
    Pretagged,
}

#[derive(Clone, Copy, ValueEnum)]
enum AcronymsArg {
    Explicit,
    Implicit,
    Off,
}

#[derive(Args)]
struct PipelineArgs {
    /// Input corpus: a directory of documents or a single file.
    #[arg(long)]
    input: PathBuf,

    /// Input format.
    #[arg(long, value_enum, default_value = "raw")]
    format: FormatArg,

    /// Tag pattern for candidate extraction.
    #[arg(long, default_value = DEFAULT_PATTERN)]
    pattern: String,

    /// Acronym recognition method.
    #[arg(long, value_enum, default_value = "explicit")]
    acronyms: AcronymsArg,

    /// Jaro-Winkler threshold for merging key elements.
    #[arg(long = "token-sim", default_value_t = 0.94)]
    token_sim: f64,

    /// Jaro-Winkler threshold for merging phrase tokenizations.
    #[arg(long = "phrase-sim", default_value_t = 0.95)]
    phrase_sim: f64,

    /// C-value threshold: candidates scoring strictly above it become
    /// terms.
    #[arg(long, default_value_t = 2.0)]
    threshold: f64,

    /// Scale scores by inverse document frequency.
    #[arg(long)]
    idf: bool,

    /// Replacement stopword list, one lowercase word per line.
    #[arg(long)]
    stopwords: Option<PathBuf>,

    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Seed for the highlight color scheme.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Concordance context width in characters.
    #[arg(long, default_value_t = 40)]
    window: usize,
}

impl PipelineArgs {
    fn to_config(&self) -> PipelineConfig {
        let mut config = PipelineConfig::new(&self.input, &self.out);
        config.format = match self.format {
            FormatArg::Raw => InputFormat::Raw,
            FormatArg::Pretagged => InputFormat::Pretagged,
        };
        config.pattern = self.pattern.clone();
        config.acronym_mode = match self.acronyms {
            AcronymsArg::Explicit => AcronymMode::Explicit,
            AcronymsArg::Implicit => AcronymMode::Implicit,
            AcronymsArg::Off => AcronymMode::Off,
        };
        config.similarity.token_threshold = self.token_sim;
        config.similarity.phrase_threshold = self.phrase_sim;
        config.threshold = self.threshold;
        config.idf = self.idf;
        config.stopwords_path = self.stopwords.clone();
        config.seed = self.seed;
        config.window = self.window;
        config
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,

    /// Also write per-module timings to timings.json.
    #[arg(long)]
    bench: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,

    /// Number of cumulative corpus subsets.
    #[arg(long)]
    steps: usize,

    /// Also write timings as TSV for external plotting.
    #[arg(long)]
    plot: bool,
}

#[derive(Args)]
struct ExtrapolateArgs {
    /// timings.json produced by `run --bench` or `bench`.
    #[arg(long)]
    timings: PathBuf,

    /// Corpus size to predict the total runtime for.
    #[arg(long)]
    predict: u64,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("termweaver: {err}");
            ExitCode::FAILURE
        }
    }
}

fn execute(cli: Cli) -> termweaver::Result<()> {
    match cli.command {
        Command::Run(args) => {
            let mut config = args.pipeline.to_config();
            config.bench = args.bench;
            let result = run_pipeline(&config)?;
            println!(
                "{} documents, {} concepts, {} terms, {} annotations -> {}",
                result.corpus.len(),
                result.table.len(),
                result.dictionary.len(),
                result.annotations.len(),
                config.out_dir.display()
            );
            Ok(())
        }
        Command::Bench(args) => {
            let config = args.pipeline.to_config();
            let records = bench_scaling(&config, args.steps)?;
            std::fs::create_dir_all(&config.out_dir).map_err(|e| termweaver::Error::Write {
                path: config.out_dir.clone(),
                source: e,
            })?;
            let json_path = config.out_dir.join("timings.json");
            write_timings(&json_path, &records)?;
            if args.plot {
                let tsv_path = config.out_dir.join("timings.tsv");
                std::fs::write(&tsv_path, timings_tsv(&records)).map_err(|e| {
                    termweaver::Error::Write { path: tsv_path, source: e }
                })?;
            }
            println!("{} timing records -> {}", records.len(), json_path.display());
            Ok(())
        }
        Command::Extrapolate(args) => {
            let records = read_timings(&args.timings)?;
            // Total pipeline seconds per corpus size.
            let mut totals: std::collections::BTreeMap<usize, f64> = std::collections::BTreeMap::new();
            for r in &records {
                *totals.entry(r.docs).or_insert(0.0) += r.seconds;
            }
            let points: Vec<(f64, f64)> =
                totals.iter().map(|(&docs, &secs)| (docs as f64, secs)).collect();
            let fit = fit_quadratic(&points)?;
            println!(
                "fit: seconds = {:.6e}*n^2 + {:.6e}*n + {:.6e} (residual {:.3e})",
                fit.a, fit.b, fit.c, fit.residual
            );
            println!("predicted seconds for {} documents: {:.3}", args.predict, fit.predict(args.predict as f64));
            Ok(())
        }
    }
}
