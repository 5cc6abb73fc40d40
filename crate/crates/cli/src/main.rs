//! Batch command-line front end: similarity queries, benchmark
//! correlation, noun-group sense confidence, and coordination bracketing.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use taxsim_core::coordination::{
    apply_default, default_strategy_order, load_number_lexicon, resolve_backoff, resolve_vote,
    Choice, CoordContext, CoordinationPhrase, Decision, Thresholds,
};
use taxsim_core::error::Error as CoreError;
use taxsim_core::evalharness::{eval_live, eval_published, load_gold_pairs, WordMeasure};
use taxsim_core::probmodel::{
    count_corpus, counted_tokens, load_lemma_map, load_probabilities_str, raw_tokens,
    to_probability, ProbabilityModel,
};
use taxsim_core::selection::{ingest_pairs, load_pairs, CoocModel};
use taxsim_core::sensegroup::{
    disambiguate_group, filter_senses, random_baseline, score_pooled, BaselineItem, NounGroup,
    Partition, SenseAnnotation, EVALUATION_FILTER, PRESENTATION_FILTER,
};
use taxsim_core::similarity::{wsim, wsim_edge, wsim_lc, ConceptMeasure, EdgeVariant};
use taxsim_core::taxonomy::{LoadOptions, Taxonomy};

const EXIT_INTERNAL: u8 = 1;
const EXIT_LOAD: u8 = 2;
const EXIT_VOCABULARY: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        let code = if e.is_load_error() {
            EXIT_LOAD
        } else if e.is_vocabulary_error() {
            EXIT_VOCABULARY
        } else {
            EXIT_INTERNAL
        };
        fail(code, e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "taxsim",
    about = "Taxonomic semantic similarity, sense confidence, and coordination bracketing",
    version
)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Taxonomy file (concept_id<TAB>parents<TAB>words)
    #[arg(long, global = true, env = "TAXSIM_TAXONOMY")]
    taxonomy: Option<PathBuf>,

    /// Corpus file to estimate probabilities from
    #[arg(long, global = true, env = "TAXSIM_CORPUS")]
    corpus: Option<PathBuf>,

    /// How to read the corpus file
    #[arg(long, global = true, env = "TAXSIM_CORPUS_MODE", value_enum)]
    corpus_mode: Option<CorpusMode>,

    /// Probability file (concept_id<TAB>p=<v> or ic=<v>)
    #[arg(long, global = true, env = "TAXSIM_PROBABILITIES")]
    probabilities: Option<PathBuf>,

    /// surface<TAB>lemma map applied to corpus tokens
    #[arg(long, global = true, env = "TAXSIM_LEMMA_MAP")]
    lemma_map: Option<PathBuf>,

    /// Logarithm base for information content
    #[arg(long, global = true, env = "TAXSIM_LOG_BASE")]
    log_base: Option<f64>,

    /// Insert a synthetic __TOP__ root above all roots
    #[arg(long, global = true, env = "TAXSIM_VIRTUAL_ROOT")]
    virtual_root: bool,

    /// Concept standing in for out-of-vocabulary words
    #[arg(long, global = true, env = "TAXSIM_FALLBACK")]
    fallback: Option<String>,

    /// Output format
    #[arg(long, global = true, env = "TAXSIM_FORMAT", value_enum)]
    format: Option<Format>,

    /// Optional TOML config file; flags override its values
    #[arg(long, global = true, env = "TAXSIM_CONFIG")]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorpusMode {
    /// Whitespace-tokenized text
    Raw,
    /// word<TAB>count lines
    Counts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    JsonLines,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Resnik,
    Edge,
    EdgeVtop,
    Prob,
    Lc,
    Lin,
    Wup,
}

impl MeasureArg {
    fn to_word_measure(self) -> WordMeasure {
        match self {
            MeasureArg::Resnik => WordMeasure::Resnik,
            MeasureArg::Edge => WordMeasure::Edge,
            MeasureArg::EdgeVtop => WordMeasure::EdgeVtop,
            MeasureArg::Prob => WordMeasure::Prob,
            MeasureArg::Lc => WordMeasure::Lc,
            MeasureArg::Lin => WordMeasure::Lin,
            MeasureArg::Wup => WordMeasure::Wup,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rate the similarity of a word pair (or stdin pairs in batch mode)
    Sim {
        word1: Option<String>,
        word2: Option<String>,
        #[arg(long, value_enum, default_value = "resnik")]
        measure: MeasureArg,
    },
    /// Correlate similarity ratings against benchmark means
    EvalMc {
        /// word1,word2,gold file rated live on the loaded taxonomy;
        /// without it the embedded published table is reported
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "resnik")]
        measure: MeasureArg,
    },
    /// Sense confidences for comma-separated noun groups, one per line
    Group {
        #[arg(long)]
        groups: PathBuf,
        /// item<TAB>word<TAB>sense<TAB>correct|incorrect plus
        /// item<TAB>known|unknown records; adds the metrics footer
        #[arg(long)]
        annotations: Option<PathBuf>,
        #[arg(long, env = "TAXSIM_PHI_THRESHOLD")]
        phi_threshold: Option<f64>,
        #[arg(long, env = "TAXSIM_MIN_LEVEL")]
        min_level: Option<u8>,
        /// Target average senses per item for the random baseline
        #[arg(long, default_value_t = 1.3)]
        target_avg: f64,
        #[arg(long, default_value_t = 10)]
        runs: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bracketing decisions for coordination phrase files
    Coord {
        #[arg(long)]
        phrases: PathBuf,
        #[arg(long, value_enum, default_value = "backoff")]
        combiner: Combiner,
        /// Fallback bracketing when every strategy is undecided
        #[arg(long, value_parser = parse_default_choice)]
        default: Option<Choice>,
        #[arg(long, env = "TAXSIM_TAU")]
        tau: Option<f64>,
        #[arg(long, env = "TAXSIM_SIGMA")]
        sigma: Option<f64>,
        /// Co-occurrence pairs file for the modification and weighted rules
        #[arg(long)]
        pairs: Option<PathBuf>,
        /// word<TAB>sg|pl lexicon consulted for unknown number tags
        #[arg(long)]
        number_lexicon: Option<PathBuf>,
        /// Guess plural from a final -s for still-unknown tags
        #[arg(long)]
        guess_number: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Combiner {
    Backoff,
    Vote,
}

fn parse_default_choice(s: &str) -> Result<Choice, String> {
    match s {
        "12" => Ok(Choice::Conjoin12),
        "13" => Ok(Choice::Conjoin13),
        _ => Err("expected 12 or 13".into()),
    }
}

/// Optional config file; any field may be omitted.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    taxonomy: Option<PathBuf>,
    corpus: Option<PathBuf>,
    corpus_mode: Option<String>,
    probabilities: Option<PathBuf>,
    lemma_map: Option<PathBuf>,
    log_base: Option<f64>,
    virtual_root: Option<bool>,
    fallback: Option<String>,
    format: Option<String>,
    tau: Option<f64>,
    sigma: Option<f64>,
    phi_threshold: Option<f64>,
    min_level: Option<u8>,
}

/// Fully resolved settings: flag/env over config file over defaults.
struct Settings {
    taxonomy: Option<PathBuf>,
    corpus: Option<PathBuf>,
    corpus_mode: CorpusMode,
    probabilities: Option<PathBuf>,
    lemma_map: Option<PathBuf>,
    log_base: f64,
    virtual_root: bool,
    fallback: Option<String>,
    format: Format,
    tau: Option<f64>,
    sigma: Option<f64>,
    phi_threshold: Option<f64>,
    min_level: Option<u8>,
}

fn read_file(path: &Path) -> CliResult<String> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| fail(EXIT_LOAD, format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn resolve_settings(common: &CommonArgs) -> CliResult<Settings> {
    let file: ConfigFile = match &common.config {
        Some(path) => toml::from_str(&read_file(path)?)
            .map_err(|e| fail(EXIT_LOAD, format!("{}: {e}", path.display())))?,
        None => ConfigFile::default(),
    };
    let corpus_mode = match &common.corpus_mode {
        Some(m) => *m,
        None => match file.corpus_mode.as_deref() {
            Some("counts") => CorpusMode::Counts,
            Some("raw") | None => CorpusMode::Raw,
            Some(other) => return Err(fail(EXIT_LOAD, format!("bad corpus_mode {other:?}"))),
        },
    };
    let format = match &common.format {
        Some(f) => *f,
        None => match file.format.as_deref() {
            Some("json-lines") => Format::JsonLines,
            Some("tsv") | None => Format::Tsv,
            Some(other) => return Err(fail(EXIT_LOAD, format!("bad format {other:?}"))),
        },
    };
    Ok(Settings {
        taxonomy: common.taxonomy.clone().or(file.taxonomy),
        corpus: common.corpus.clone().or(file.corpus),
        corpus_mode,
        probabilities: common.probabilities.clone().or(file.probabilities),
        lemma_map: common.lemma_map.clone().or(file.lemma_map),
        log_base: common.log_base.or(file.log_base).unwrap_or(2.0),
        virtual_root: common.virtual_root || file.virtual_root.unwrap_or(false),
        fallback: common.fallback.clone().or(file.fallback),
        format,
        tau: file.tau,
        sigma: file.sigma,
        phi_threshold: file.phi_threshold,
        min_level: file.min_level,
    })
}

impl Settings {
    fn load_taxonomy(&self) -> CliResult<Taxonomy> {
        let path = self
            .taxonomy
            .as_ref()
            .ok_or_else(|| fail(EXIT_LOAD, "no taxonomy given (--taxonomy)"))?;
        let options = LoadOptions {
            virtual_root: self.virtual_root,
            fallback: self.fallback.clone(),
        };
        Ok(Taxonomy::from_str(&read_file(path)?, &options)?)
    }

    /// Builds the probability model from exactly one configured source.
    fn load_model(&self, taxonomy: &Taxonomy) -> CliResult<ProbabilityModel> {
        match (&self.probabilities, &self.corpus) {
            (Some(_), Some(_)) => Err(fail(
                EXIT_LOAD,
                "both --probabilities and --corpus given; pick one",
            )),
            (Some(p), None) => {
                Ok(load_probabilities_str(taxonomy, &read_file(p)?, self.log_base)?)
            }
            (None, Some(c)) => {
                let text = read_file(c)?;
                let lemma = match &self.lemma_map {
                    Some(path) => Some(load_lemma_map(&read_file(path)?)?),
                    None => None,
                };
                let table = match self.corpus_mode {
                    CorpusMode::Raw => count_corpus(taxonomy, raw_tokens(&text), lemma.as_ref()),
                    CorpusMode::Counts => {
                        count_corpus(taxonomy, counted_tokens(&text)?, lemma.as_ref())
                    }
                };
                Ok(to_probability(&table, self.log_base)?)
            }
            (None, None) => Err(fail(
                EXIT_LOAD,
                "no probability source given (--probabilities or --corpus)",
            )),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("taxsim: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let settings = resolve_settings(&cli.common)?;
    match &cli.command {
        Command::Sim {
            word1,
            word2,
            measure,
        } => cmd_sim(&settings, word1.as_deref(), word2.as_deref(), *measure),
        Command::EvalMc { pairs, measure } => cmd_eval_mc(&settings, pairs.as_deref(), *measure),
        Command::Group {
            groups,
            annotations,
            phi_threshold,
            min_level,
            target_avg,
            runs,
            seed,
        } => cmd_group(
            &settings,
            groups,
            annotations.as_deref(),
            *phi_threshold,
            *min_level,
            *target_avg,
            *runs,
            *seed,
        ),
        Command::Coord {
            phrases,
            combiner,
            default,
            tau,
            sigma,
            pairs,
            number_lexicon,
            guess_number,
        } => cmd_coord(
            &settings,
            phrases,
            *combiner,
            *default,
            *tau,
            *sigma,
            pairs.as_deref(),
            number_lexicon.as_deref(),
            *guess_number,
        ),
    }
}

// ------------------------------------------------------------- sim ----

fn format_value(v: f64) -> String {
    format!("{v:.4}")
}

fn cmd_sim(
    settings: &Settings,
    word1: Option<&str>,
    word2: Option<&str>,
    measure: MeasureArg,
) -> CliResult<()> {
    let taxonomy = settings.load_taxonomy()?;
    let measure = measure.to_word_measure();
    let model = if measure.needs_probabilities() {
        Some(settings.load_model(&taxonomy)?)
    } else {
        None
    };
    let rate = |w1: &str, w2: &str| -> CliResult<()> {
        for w in [w1, w2] {
            if !taxonomy.word_in_vocabulary(w) && taxonomy.fallback_concept().is_none() {
                return Err(CoreError::UnknownWord(w.to_string()).into());
            }
        }
        let (value, subsumers, pair) = match measure {
            WordMeasure::Resnik | WordMeasure::Prob | WordMeasure::Lin | WordMeasure::Wup => {
                let concept_measure = match measure {
                    WordMeasure::Resnik => ConceptMeasure::Resnik,
                    WordMeasure::Prob => ConceptMeasure::Prob,
                    WordMeasure::Lin => ConceptMeasure::Lin,
                    _ => ConceptMeasure::WuPalmer,
                };
                let r = wsim(
                    &taxonomy,
                    model.as_ref().expect("model loaded"),
                    w1,
                    w2,
                    concept_measure,
                );
                (r.value, r.subsumers, r.sense_pair)
            }
            WordMeasure::Edge => (
                wsim_edge(&taxonomy, w1, w2, EdgeVariant::AssertZero),
                Vec::new(),
                None,
            ),
            WordMeasure::EdgeVtop => (
                wsim_edge(&taxonomy, w1, w2, EdgeVariant::VirtualTop),
                Vec::new(),
                None,
            ),
            WordMeasure::Lc => (
                wsim_lc(&taxonomy, w1, w2, settings.log_base)?,
                Vec::new(),
                None,
            ),
        };
        let mis = if subsumers.is_empty() {
            "-".to_string()
        } else {
            subsumers
                .iter()
                .map(|c| c.as_str())
                .collect::<Vec<_>>()
                .join(",")
        };
        let (s1, s2) = match &pair {
            Some((a, b)) => (a.as_str().to_string(), b.as_str().to_string()),
            None => ("-".to_string(), "-".to_string()),
        };
        match settings.format {
            Format::Tsv => println!("{}\t{mis}\t{s1}\t{s2}", format_value(value)),
            Format::JsonLines => println!(
                "{}",
                json!({
                    "word1": w1,
                    "word2": w2,
                    "value": value,
                    "subsumers": subsumers.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
                    "sense_pair": pair.as_ref().map(|(a, b)| vec![a.as_str(), b.as_str()]),
                })
            ),
        }
        Ok(())
    };

    match (word1, word2) {
        (Some(w1), Some(w2)) => rate(w1, w2),
        (None, None) => {
            let stdin = std::io::stdin();
            for line in stdin.lock().lines() {
                let line = line.map_err(|e| fail(EXIT_INTERNAL, e.to_string()))?;
                let mut it = line.split_whitespace();
                match (it.next(), it.next()) {
                    (Some(w1), Some(w2)) => rate(w1, w2)?,
                    (None, None) => continue,
                    _ => return Err(fail(EXIT_INTERNAL, format!("bad pair line {line:?}"))),
                }
            }
            Ok(())
        }
        _ => Err(fail(
            EXIT_INTERNAL,
            "give two words, or none to read pairs from stdin",
        )),
    }
}

// --------------------------------------------------------- eval-mc ----

fn cmd_eval_mc(
    settings: &Settings,
    pairs: Option<&Path>,
    measure: MeasureArg,
) -> CliResult<()> {
    let report = match pairs {
        None => eval_published()?,
        Some(path) => {
            let taxonomy = settings.load_taxonomy()?;
            let measure = measure.to_word_measure();
            // path- and edge-based measures run without a probability
            // source; an empty model still carries the log base
            let model = if measure.needs_probabilities() {
                settings.load_model(&taxonomy)?
            } else if settings.probabilities.is_some() || settings.corpus.is_some() {
                settings.load_model(&taxonomy)?
            } else {
                load_probabilities_str(&taxonomy, "", settings.log_base)?
            };
            let gold = load_gold_pairs(&read_file(path)?)?;
            eval_live(&taxonomy, &model, &gold, measure)?
        }
    };
    for e in &report.entries {
        match settings.format {
            Format::Tsv => println!("{}\t{}\t{}", e.measure, format_value(e.r), report.item_count),
            Format::JsonLines => println!(
                "{}",
                json!({ "measure": e.measure, "r": e.r, "items": report.item_count })
            ),
        }
    }
    for (w1, w2) in &report.excluded {
        eprintln!("taxsim: excluded pair with missing word: {w1} {w2}");
    }
    Ok(())
}

// ----------------------------------------------------------- group ----

/// Annotation records: `item<TAB>known|unknown` and
/// `item<TAB>word<TAB>sense<TAB>correct|incorrect`, items being 1-based
/// group-line numbers.
fn load_annotations(text: &str) -> CliResult<HashMap<usize, SenseAnnotation>> {
    let mut out: HashMap<usize, SenseAnnotation> = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let item: usize = fields[0]
            .parse()
            .map_err(|_| fail(EXIT_LOAD, format!("annotations line {lineno}: bad item id")))?;
        let entry = out.entry(item).or_insert_with(|| SenseAnnotation {
            known: true,
            ..Default::default()
        });
        match fields.len() {
            2 => match fields[1] {
                "known" => entry.known = true,
                "unknown" => entry.known = false,
                other => {
                    return Err(fail(
                        EXIT_LOAD,
                        format!("annotations line {lineno}: bad flag {other:?}"),
                    ))
                }
            },
            4 => {
                let key = (fields[1].to_string(), fields[2].to_string());
                match fields[3] {
                    "correct" => {
                        entry.correct.insert(key);
                    }
                    "incorrect" => {
                        entry.incorrect.insert(key);
                    }
                    other => {
                        return Err(fail(
                            EXIT_LOAD,
                            format!("annotations line {lineno}: bad label {other:?}"),
                        ))
                    }
                }
            }
            n => {
                return Err(fail(
                    EXIT_LOAD,
                    format!("annotations line {lineno}: expected 2 or 4 fields, got {n}"),
                ))
            }
        }
    }
    Ok(out)
}

fn format_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), format_value)
}

#[allow(clippy::too_many_arguments)]
fn cmd_group(
    settings: &Settings,
    groups_path: &Path,
    annotations: Option<&Path>,
    phi_threshold: Option<f64>,
    min_level: Option<u8>,
    target_avg: f64,
    runs: u32,
    seed: u64,
) -> CliResult<()> {
    let taxonomy = settings.load_taxonomy()?;
    let model = settings.load_model(&taxonomy)?;
    let annotations = match annotations {
        Some(path) => Some(load_annotations(&read_file(path)?)?),
        None => None,
    };
    // presentation defaults without annotations, evaluation defaults with
    let base = if annotations.is_some() {
        EVALUATION_FILTER
    } else {
        PRESENTATION_FILTER
    };
    let threshold = phi_threshold.or(settings.phi_threshold).unwrap_or(base.0);
    let min_level = min_level.or(settings.min_level).unwrap_or(base.1);

    let mut scored: Vec<(usize, Partition)> = Vec::new();
    for (lineno, line) in read_file(groups_path)?.lines().enumerate() {
        let item = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            eprintln!("taxsim: skipping empty group line {item}");
            continue;
        }
        let words: Vec<String> = line.split(',').map(str::to_string).collect();
        let group = match NounGroup::new(words) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("taxsim: skipping group line {item}: {e}");
                continue;
            }
        };
        if group.had_duplicates() {
            eprintln!("taxsim: group line {item}: duplicate words collapsed");
        }
        let result = disambiguate_group(&taxonomy, &model, &group);
        for w in &result.excluded_words {
            eprintln!("taxsim: group line {item}: no senses for {w:?}");
        }
        let partition = filter_senses(&result, threshold, min_level)?;
        for e in &partition.entries {
            match settings.format {
                Format::Tsv => println!(
                    "{item}\t{}\t{}\t{}\t{}\t{}",
                    e.word,
                    e.sense.as_str(),
                    format_value(e.phi),
                    e.level,
                    if e.included { "included" } else { "excluded" }
                ),
                Format::JsonLines => println!(
                    "{}",
                    json!({
                        "item": item,
                        "word": e.word,
                        "sense": e.sense.as_str(),
                        "phi": e.phi,
                        "level": e.level,
                        "included": e.included,
                    })
                ),
            }
        }
        scored.push((item, partition));
    }

    if let Some(ann) = annotations {
        let pool: Vec<(Partition, SenseAnnotation)> = scored
            .iter()
            .filter_map(|(item, p)| ann.get(item).map(|a| (p.clone(), a.clone())))
            .collect();
        let (sel, fil) = score_pooled(&pool)?;
        let items: Vec<BaselineItem> = pool
            .iter()
            .map(|(p, a)| BaselineItem {
                senses: p
                    .entries
                    .iter()
                    .map(|e| (e.word.clone(), e.sense.as_str().to_string()))
                    .collect(),
                ann: a.clone(),
            })
            .collect();
        let base = random_baseline(&items, target_avg, runs, seed)?;
        match settings.format {
            Format::Tsv => {
                println!(
                    "metrics\tselection\tP={}\tR={}",
                    format_opt(sel.precision),
                    format_opt(sel.recall)
                );
                println!(
                    "metrics\tfiltering\tP={}\tR={}",
                    format_opt(fil.precision),
                    format_opt(fil.recall)
                );
                println!(
                    "metrics\tbaseline-selection\tP={}\tR={}",
                    format_opt(base.selection.precision),
                    format_opt(base.selection.recall)
                );
                println!(
                    "metrics\tbaseline-filtering\tP={}\tR={}",
                    format_opt(base.filtering.precision),
                    format_opt(base.filtering.recall)
                );
            }
            Format::JsonLines => {
                println!(
                    "{}",
                    json!({
                        "metrics": {
                            "selection": { "precision": sel.precision, "recall": sel.recall },
                            "filtering": { "precision": fil.precision, "recall": fil.recall },
                            "baseline": {
                                "selection": {
                                    "precision": base.selection.precision,
                                    "recall": base.selection.recall,
                                },
                                "filtering": {
                                    "precision": base.filtering.precision,
                                    "recall": base.filtering.recall,
                                },
                                "avg_included": base.avg_included,
                                "q": base.q,
                            },
                        }
                    })
                );
            }
        }
    }
    Ok(())
}

// ----------------------------------------------------------- coord ----

fn decision_line(decision: &Decision) -> String {
    let fired = if decision.defaulted {
        "default".to_string()
    } else {
        match decision.fired_by {
            Some(s) => s.as_str().to_string(),
            None if decision.choice == Choice::Undecided => "-".to_string(),
            None => "vote".to_string(),
        }
    };
    let mut line = format!("{}\t{fired}", decision.choice.as_str());
    for ev in &decision.evidence {
        if !ev.evaluated {
            continue;
        }
        for (name, value) in &ev.scores {
            line.push('\t');
            line.push_str(name);
            line.push('=');
            line.push_str(&format_opt(*value));
        }
    }
    line
}

fn decision_json(decision: &Decision) -> serde_json::Value {
    json!({
        "choice": decision.choice.as_str(),
        "fired_by": decision.fired_by.map(|s| s.as_str()),
        "defaulted": decision.defaulted,
        "evidence": decision
            .evidence
            .iter()
            .map(|e| {
                json!({
                    "strategy": e.strategy.as_str(),
                    "evaluated": e.evaluated,
                    "choice": e.choice.as_str(),
                    "scores": e
                        .scores
                        .iter()
                        .map(|(k, v)| json!({ "name": k, "value": v }))
                        .collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_coord(
    settings: &Settings,
    phrases_path: &Path,
    combiner: Combiner,
    default: Option<Choice>,
    tau: Option<f64>,
    sigma: Option<f64>,
    pairs: Option<&Path>,
    number_lexicon: Option<&Path>,
    guess_number: bool,
) -> CliResult<()> {
    let taxonomy = settings.load_taxonomy()?;
    let model = settings.load_model(&taxonomy)?;
    let cooc: CoocModel = match pairs {
        Some(path) => ingest_pairs(&taxonomy, load_pairs(&read_file(path)?)?),
        None => ingest_pairs(&taxonomy, Vec::<(String, String, f64)>::new()),
    };
    let thresholds = Thresholds::new(
        tau.or(settings.tau).unwrap_or(2.0),
        sigma.or(settings.sigma).unwrap_or(0.0),
    )?;
    let lexicon = match number_lexicon {
        Some(path) => Some(load_number_lexicon(&read_file(path)?)?),
        None => None,
    };
    let ctx = CoordContext {
        taxonomy: &taxonomy,
        model: &model,
        cooc: &cooc,
        thresholds,
    };
    for (lineno, line) in read_file(phrases_path)?.lines().enumerate() {
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut phrase = match CoordinationPhrase::parse_line(line) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("taxsim: phrase line {lineno}: {e}");
                continue;
            }
        };
        phrase.resolve_numbers(lexicon.as_ref(), guess_number);
        let mut decision = match combiner {
            Combiner::Backoff => {
                resolve_backoff(&ctx, &phrase, &default_strategy_order(&phrase))
            }
            Combiner::Vote => resolve_vote(&ctx, &phrase),
        };
        if let Some(choice) = default {
            decision = apply_default(decision, choice);
        }
        match settings.format {
            Format::Tsv => println!("{}", decision_line(&decision)),
            Format::JsonLines => println!("{}", decision_json(&decision)),
        }
    }
    Ok(())
}
