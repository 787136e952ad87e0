//! Subcommand implementations behind the `ppattach` binary.
//!
//! Each runner reads its inputs from readers and writes to writers so the
//! same code serves files, standard streams and tests. Outputs depend only
//! on inputs: reruns are byte-identical.

use std::env;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use log::{debug, info};
use rayon::prelude::*;

use ppattach::eval::{classify_all, normalize_instance, parse_instances};
use ppattach::extractor::{decide_all, dedup_tuples, parse_tuples, Decision};
use ppattach::{
    changed_cases_test, chunk, evaluate, parse_tagged_line, Classifier, CountStore, Error, EvalReport,
    ExtractionReport, MorphLexicon, PairedComparison, Sentence, TagConfig, Variant,
};

pub const CONFIG_DIR_ENV: &str = "PPATTACH_CONFIG_DIR";
pub const CONFIG_FILE: &str = "tagconfig.txt";
pub const LEXICON_FILE: &str = "lexicon.tsv";

pub type Result<T> = std::result::Result<T, Error>;

pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const FORMAT_VERSION: i32 = 4;
    pub const INCOMPATIBLE_MODEL: i32 = 5;
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => exit::IO,
        Error::FormatVersion { .. } => exit::FORMAT_VERSION,
        Error::IncompatibleStores(_) | Error::NotTrained(_) => exit::INCOMPATIBLE_MODEL,
        Error::MalformedToken { .. }
        | Error::Parse { .. }
        | Error::Config(_)
        | Error::Checksum { .. }
        | Error::MissingGold { .. }
        | Error::LengthMismatch { .. }
        | Error::InvalidSpec(_) => exit::PARSE,
    }
}

/// `-` is standard input.
pub fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    if path == Path::new("-") {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

/// `-` is standard output.
pub fn open_output(path: &Path) -> Result<Box<dyn Write>> {
    if path == Path::new("-") {
        Ok(Box::new(BufWriter::new(io::stdout())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

fn default_dir_file(name: &str) -> Option<PathBuf> {
    let dir = env::var_os(CONFIG_DIR_ENV)?;
    let path = PathBuf::from(dir).join(name);
    path.exists().then_some(path)
}

/// Explicit path, else `$PPATTACH_CONFIG_DIR/tagconfig.txt`, else the
/// built-in English profile. `k` overrides the window.
pub fn resolve_config(path: Option<&Path>, k: Option<usize>) -> Result<TagConfig> {
    let mut config = match path.map(PathBuf::from).or_else(|| default_dir_file(CONFIG_FILE)) {
        Some(p) => {
            debug!("tag config: {}", p.display());
            TagConfig::load(p)?
        }
        None => TagConfig::english(),
    };
    if let Some(k) = k {
        config.window_k = k;
        config.validate()?;
    }
    Ok(config)
}

/// Explicit path, else `$PPATTACH_CONFIG_DIR/lexicon.tsv`, else empty.
pub fn resolve_lexicon(path: Option<&Path>) -> Result<MorphLexicon> {
    match path.map(PathBuf::from).or_else(|| default_dir_file(LEXICON_FILE)) {
        Some(p) => {
            debug!("lexicon: {}", p.display());
            ppattach::load_lexicon(p)
        }
        None => Ok(MorphLexicon::new()),
    }
}

fn read_lines<R: BufRead>(input: R) -> Result<Vec<(usize, String)>> {
    let mut lines = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if !line.trim().is_empty() {
            lines.push((i + 1, line));
        }
    }
    Ok(lines)
}

fn read_sentences<R: BufRead>(input: R) -> Result<Vec<Sentence>> {
    read_lines(input)?
        .par_iter()
        .map(|(no, line)| parse_tagged_line(line, *no))
        .collect()
}

pub fn run_chunk<R: BufRead, W: Write>(input: R, mut output: W, config: &TagConfig) -> Result<usize> {
    let chunked: Vec<String> = read_sentences(input)?
        .par_iter()
        .map(|s| chunk(s, config).into_sentence().to_string())
        .collect();
    for line in &chunked {
        writeln!(output, "{}", line)?;
    }
    output.flush()?;
    Ok(chunked.len())
}

pub fn run_extract<R: BufRead, W: Write>(
    input: R,
    mut output: W,
    config: &TagConfig,
    lexicon: &MorphLexicon,
    verbose: bool,
) -> Result<ExtractionReport> {
    let sentences = read_sentences(input)?;
    let decisions: Vec<_> = sentences
        .par_iter()
        .map(|s| decide_all(&s.tokens, config, lexicon))
        .collect();
    let mut report = ExtractionReport::default();
    for (no, (sentence, ds)) in sentences.iter().zip(&decisions).enumerate() {
        report.add_sentence(ds);
        for (pos, d) in ds {
            match d {
                Decision::Emit { tuple, .. } => writeln!(output, "{}", tuple)?,
                Decision::Skip(reason) if verbose => {
                    info!(
                        "sentence {}: `{}` at {} skipped: {}",
                        no + 1,
                        sentence.tokens[*pos].surface,
                        pos,
                        reason.as_str()
                    );
                }
                Decision::Skip(_) => {}
            }
        }
    }
    output.flush()?;
    Ok(report)
}

/// Counts a chunked corpus plus a tuple file into a store.
pub fn run_train<R: BufRead, T: Read>(
    corpus: R,
    mut tuples: T,
    config: &TagConfig,
    lexicon: &MorphLexicon,
    dedup: bool,
) -> Result<CountStore> {
    let sentences = read_sentences(corpus)?;
    let mut text = String::new();
    tuples.read_to_string(&mut text)?;
    let mut tuples = parse_tuples(&text)?;
    if dedup {
        tuples = dedup_tuples(tuples);
    }
    let shards: Vec<CountStore> = sentences
        .par_chunks(4096)
        .map(|shard| {
            let mut store = CountStore::for_config(config, dedup);
            store.accumulate_corpus(shard.iter().map(|s| s.tokens.as_slice()), config, lexicon);
            store
        })
        .collect();
    let mut store = CountStore::for_config(config, dedup);
    for shard in &shards {
        store.merge_from(shard)?;
    }
    store.accumulate_tuples(&tuples);
    Ok(store)
}

/// Loads the model a variant needs (none for the baseline) and checks that
/// it was trained under `config`.
pub fn load_model(path: Option<&Path>, variant: Variant, config: &TagConfig) -> Result<Option<CountStore>> {
    let path = match (variant, path) {
        (Variant::Baseline, _) => return Ok(None),
        (_, Some(p)) => p,
        (_, None) => return Err(Error::NotTrained(format!("variant {} needs --model", variant))),
    };
    let store = CountStore::load(path)?;
    if !store.meta.matches(config) {
        return Err(Error::IncompatibleStores(format!(
            "model was built under profile {} ({}), current profile is {} ({})",
            store.meta.fingerprint,
            store.meta.language_id,
            config.fingerprint(),
            config.language_id
        )));
    }
    Ok(Some(store))
}

fn read_instances<R: Read>(
    mut input: R,
    labeled: bool,
    config: &TagConfig,
    lexicon: &MorphLexicon,
) -> Result<Vec<ppattach::AttachmentInstance>> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    Ok(parse_instances(&text, labeled)?
        .iter()
        .map(|i| normalize_instance(i, config, lexicon))
        .collect())
}

/// Writes `v n p n2 label rule score_n score_v`, tab-separated, one row per
/// input instance.
pub fn run_classify<R: Read, W: Write>(
    store: Option<&CountStore>,
    variant: Variant,
    instances: R,
    mut output: W,
    config: &TagConfig,
    lexicon: &MorphLexicon,
) -> Result<()> {
    let classifier = Classifier::new(variant, store)?;
    let instances = read_instances(instances, false, config, lexicon)?;
    for (inst, r) in instances.iter().zip(classify_all(&instances, &classifier, config)) {
        writeln!(
            output,
            "{}\t{}\t{}\t{}\t{}\t{}\t{:.6e}\t{:.6e}",
            inst.v,
            inst.n,
            inst.p,
            inst.n2,
            r.label,
            r.rule.as_str(),
            r.score_n.to_f64(),
            r.score_v.to_f64()
        )?;
    }
    output.flush()?;
    Ok(())
}

pub fn run_eval<R: Read>(
    store: Option<&CountStore>,
    variant: Variant,
    test_set: R,
    config: &TagConfig,
    lexicon: &MorphLexicon,
) -> Result<EvalReport> {
    let classifier = Classifier::new(variant, store)?;
    let instances = read_instances(test_set, true, config, lexicon)?;
    evaluate(&instances, &classifier, config)
}

pub fn run_compare<R: Read>(
    store: Option<&CountStore>,
    variant_a: Variant,
    variant_b: Variant,
    test_set: R,
    config: &TagConfig,
    lexicon: &MorphLexicon,
) -> Result<PairedComparison> {
    let a = Classifier::new(variant_a, store)?;
    let b = Classifier::new(variant_b, store)?;
    let instances = read_instances(test_set, true, config, lexicon)?;
    let report_a = evaluate(&instances, &a, config)?;
    let report_b = evaluate(&instances, &b, config)?;
    let gold: Vec<_> = instances.iter().map(|i| i.gold.expect("checked by evaluate")).collect();
    changed_cases_test(&gold, &report_a.predictions, &report_b.predictions)
}
