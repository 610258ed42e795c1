//! `phlgen`: builds premise pools, generates labelled triplets, filters
//! model predictions and writes review sheets and count tables.

use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::{info, warn};

use phl_core::composer::{read_jsonl, write_jsonl, Corpus, GenerationConfig, PhlTriplet};
use phl_core::conllu::{parse_conllu, ParseOptions, ParsedSentence};
use phl_core::lexicon::Lexicon;
use phl_core::pool::{input_hash, PremisePool};
use phl_core::pseudo::{augment_with_tp, maxprob_filter, Prediction, DEFAULT_THRESHOLD};
use phl_core::report;
use phl_core::transform::{ParaphraseTable, ParseCache, Resources, Transform};

#[derive(Parser)]
#[command(name = "phlgen", version, about = "Generate premise/hypothesis/label triplets from parsed text")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Index CoNLL-U premises into a pool snapshot.
    PoolBuild(PoolBuildArgs),
    /// Run the transforms over CoNLL-U premises.
    Generate(GenerateArgs),
    /// Keep confident model predictions as pseudo-labelled triplets.
    Filter(FilterArgs),
    /// Write a per-transform review sheet.
    Validate(ValidateArgs),
    /// Count triplets per transform and label.
    Stats(StatsArgs),
}

#[derive(Args)]
struct PoolBuildArgs {
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    strict_parse: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// CoNLL-U premise files; each is one source in the stats.
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    /// Directory with `*.lexicon.tsv`, and optionally `paraphrases.tsv`
    /// and `reparse.conllu`.
    #[arg(long, env = "PHL_RESOURCES")]
    resources: Option<PathBuf>,
    /// Pool snapshot. Rebuilt from `--pool-input` when stale.
    #[arg(long)]
    pool: Option<PathBuf>,
    /// CoNLL-U files for the retrieval pool; defaults to the premises.
    #[arg(long, num_args = 1..)]
    pool_input: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// JSON stats file.
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long, default_value_t = 13)]
    seed: u64,
    /// Downsample every label to the size of the smallest.
    #[arg(long)]
    balance: bool,
    /// Upper bound on the per-label size when balancing.
    #[arg(long, requires = "balance")]
    balance_target: Option<usize>,
    /// Comma-separated tags to run; all when omitted.
    #[arg(long, value_delimiter = ',')]
    enable: Vec<String>,
    /// Comma-separated tags to skip.
    #[arg(long, value_delimiter = ',')]
    disable: Vec<String>,
    #[arg(long, default_value_t = 10)]
    max_per_transform: usize,
    /// Do not add premise/hypothesis-swapped pairs.
    #[arg(long)]
    no_swap: bool,
    #[arg(long)]
    strict_parse: bool,
}

#[derive(Args)]
struct FilterArgs {
    /// JSON lines with premise, hypothesis and probs (E, C, N).
    #[arg(long)]
    predictions: PathBuf,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    #[arg(long)]
    out: PathBuf,
    /// Generated triplets to append after the filtered ones.
    #[arg(long)]
    augment: Option<PathBuf>,
    /// JSON filter report.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = report::DEFAULT_SAMPLE)]
    n: usize,
    #[arg(long, default_value_t = 13)]
    seed: u64,
    /// TSV sheet.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    input: PathBuf,
    /// JSON matrix.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker threads")?;
    }
    match cli.command {
        Command::PoolBuild(a) => pool_build(a),
        Command::Generate(a) => generate(a),
        Command::Filter(a) => filter(a),
        Command::Validate(a) => validate(a),
        Command::Stats(a) => stats(a),
    }
}

fn read_conllu(path: &Path, strict: bool) -> Result<Vec<ParsedSentence>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let name = path.display().to_string();
    let opts = if strict {
        ParseOptions::strict(&name)
    } else {
        ParseOptions::lenient(&name)
    };
    let out = parse_conllu(BufReader::new(file), &opts).with_context(|| format!("parsing {name}"))?;
    for e in &out.dropped {
        warn!("{name}: dropped block: {e}");
    }
    Ok(out.sentences)
}

fn read_all(paths: &[PathBuf], strict: bool) -> Result<Vec<ParsedSentence>> {
    let mut out = Vec::new();
    for p in paths {
        out.extend(read_conllu(p, strict)?);
    }
    Ok(out)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn read_triplets(path: &Path) -> Result<Vec<PhlTriplet>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_jsonl(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn pool_build(a: PoolBuildArgs) -> Result<()> {
    let sentences = read_all(&a.input, a.strict_parse)?;
    let pool = PremisePool::build(sentences)?;
    pool.save_snapshot(&a.out, &input_hash(&a.input)?)?;
    println!("pool: {} sentences -> {}", pool.len(), a.out.display());
    Ok(())
}

/// Lexicon files, paraphrases and cached re-parses from a resource
/// directory. Without one the lexicon is empty and only structural
/// transforms produce output.
fn load_resources(dir: Option<&Path>, strict: bool) -> Result<Resources> {
    let Some(dir) = dir else {
        warn!("no resource directory given; lexicon-driven transforms will produce nothing");
        return Ok(Resources::new(Lexicon::new()));
    };
    if !dir.is_dir() {
        bail!("resource directory {} not found", dir.display());
    }
    let mut lexicon_files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    lexicon_files.retain(|p| p.to_string_lossy().ends_with(".lexicon.tsv"));
    lexicon_files.sort();
    let (lexicon, load) = Lexicon::load(&lexicon_files)?;
    for (relation, n) in &load.per_relation {
        info!("lexicon: {n} {relation} rows");
    }
    let mut res = Resources::new(lexicon);
    let paraphrases = dir.join("paraphrases.tsv");
    if paraphrases.is_file() {
        res = res.with_paraphrases(
            ParaphraseTable::load(&paraphrases).with_context(|| format!("reading {}", paraphrases.display()))?,
        );
    }
    let reparse = dir.join("reparse.conllu");
    if reparse.is_file() {
        res = res.with_reparse(Box::new(ParseCache::new(read_conllu(&reparse, strict)?)));
    }
    Ok(res)
}

fn load_pool(a: &GenerateArgs, premises: &[Corpus]) -> Result<PremisePool> {
    let rebuild = || -> Result<PremisePool> {
        if a.pool_input.is_empty() {
            let all = premises.iter().flat_map(|c| c.sentences.iter().cloned());
            return Ok(PremisePool::build(all)?);
        }
        Ok(PremisePool::build(read_all(&a.pool_input, a.strict_parse)?)?)
    };
    let Some(path) = &a.pool else {
        return rebuild();
    };
    let hash = if a.pool_input.is_empty() {
        None
    } else {
        Some(input_hash(&a.pool_input)?)
    };
    if path.exists() {
        if let Some(pool) = PremisePool::load_snapshot(path, hash.as_deref())? {
            return Ok(pool);
        }
        info!("pool snapshot {} is stale; rebuilding", path.display());
    }
    let Some(hash) = hash else {
        bail!("pool snapshot {} is missing or unusable and --pool-input is not given", path.display());
    };
    let pool = rebuild()?;
    pool.save_snapshot(path, &hash)?;
    Ok(pool)
}

fn parse_tags(tags: &[String]) -> Result<BTreeSet<Transform>> {
    tags.iter()
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse::<Transform>().map_err(anyhow::Error::from))
        .collect()
}

fn generate(a: GenerateArgs) -> Result<()> {
    let mut config = GenerationConfig {
        seed: a.seed,
        balance: a.balance,
        balance_target: a.balance_target,
        max_per_transform: a.max_per_transform,
        swap: !a.no_swap,
        ..GenerationConfig::default()
    };
    if !a.enable.is_empty() {
        config.enabled = parse_tags(&a.enable)?;
    }
    for t in parse_tags(&a.disable)? {
        config.disable(t);
    }

    let mut corpora = Vec::new();
    for path in &a.input {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        corpora.push(Corpus {
            name,
            sentences: read_conllu(path, a.strict_parse)?,
        });
    }
    let res = load_resources(a.resources.as_deref(), a.strict_parse)?;
    let pool = load_pool(&a, &corpora)?;
    let res = res.with_pool(pool);

    if config.enabled.is_empty() {
        warn!("no transforms enabled; output will be empty");
    }
    let (triplets, stats) = phl_core::generate_dataset(&corpora, &res, &config);

    let mut w = create(&a.out)?;
    write_jsonl(&mut w, &triplets)?;
    if let Some(path) = &a.stats {
        write_json(path, &stats)?;
    }
    println!(
        "{} premises -> {} triplets ({} duplicates, {} dropped by balancing)",
        stats.premises,
        triplets.len(),
        stats.dedup_dropped,
        stats.balance_dropped
    );
    print!("{}", report::render_matrix(&stats.per_transform));
    for (issue, n) in &stats.issues {
        info!("{issue}: {n}");
    }
    Ok(())
}

fn filter(a: FilterArgs) -> Result<()> {
    if !(0.0..=1.0).contains(&a.threshold) {
        bail!("threshold {} is outside [0, 1]", a.threshold);
    }
    let file = File::open(&a.predictions).with_context(|| format!("opening {}", a.predictions.display()))?;
    let records: Vec<Prediction<f64>> =
        read_jsonl(BufReader::new(file)).with_context(|| format!("reading {}", a.predictions.display()))?;
    let (kept, filter_report) = maxprob_filter(&records, a.threshold)
        .map_err(|(i, e)| anyhow::anyhow!("{}: record {}: {e}", a.predictions.display(), i + 1))?;
    let selected = kept.len();
    let rows = match &a.augment {
        Some(path) => augment_with_tp(kept, read_triplets(path)?),
        None => kept,
    };
    let mut w = create(&a.out)?;
    write_jsonl(&mut w, &rows)?;
    if let Some(path) = &a.report {
        write_json(path, &filter_report)?;
    }
    println!(
        "{selected} of {} predictions kept at threshold {}; {} triplets written",
        filter_report.input,
        a.threshold,
        rows.len()
    );
    Ok(())
}

fn validate(a: ValidateArgs) -> Result<()> {
    let triplets = read_triplets(&a.input)?;
    let sample = report::validation_sample(&triplets, a.n, a.seed);
    report::write_sheet(create(&a.out)?, &sample)?;
    println!("{} rows -> {}", sample.len(), a.out.display());
    Ok(())
}

fn stats(a: StatsArgs) -> Result<()> {
    let triplets = read_triplets(&a.input)?;
    let matrix = report::label_matrix(&triplets);
    print!("{}", report::render_matrix(&matrix));
    if let Some(path) = &a.out {
        write_json(path, &matrix)?;
    }
    Ok(())
}
