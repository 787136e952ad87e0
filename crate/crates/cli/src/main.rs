use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{error, info};

use ppattach::{TagConfig, Variant};
use ppattach_cli::{
    exit, exit_code, load_model, open_input, open_output, resolve_config, resolve_lexicon, run_chunk, run_classify,
    run_compare, run_eval, run_extract, run_train, Result,
};

const LONG_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (model format 1, tuple format 1)");

/// Unsupervised prepositional-phrase attachment from tagged text.
#[derive(Debug, Parser)]
#[command(name = "ppattach", version = LONG_VERSION)]
struct Cli {
    /// Tag configuration file; defaults to $PPATTACH_CONFIG_DIR/tagconfig.txt,
    /// then the built-in English profile.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Morphology lexicon (TSV); defaults to $PPATTACH_CONFIG_DIR/lexicon.tsv.
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,

    /// Override the extraction window.
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Log progress and per-preposition skip reasons to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Baseline,
    Bigram,
    Interp,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Baseline => Variant::Baseline,
            VariantArg::Bigram => Variant::Bigram,
            VariantArg::Interp => Variant::Interp,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Tsv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce tagged sentences to head words.
    Chunk {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Read unambiguous attachment tuples off chunked sentences.
    Extract {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Count a chunked corpus and its tuples into a model file.
    Train {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        tuples: PathBuf,
        #[arg(long)]
        model: PathBuf,
        /// Count each distinct tuple once.
        #[arg(long)]
        dedup: bool,
    },
    /// Label `v n p n2` instances.
    Classify {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long, default_value = "-")]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "interp")]
        variant: VariantArg,
    },
    /// Score a variant on a labeled test set.
    Eval {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        test: PathBuf,
        #[arg(long, value_enum, default_value = "interp")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Paired sign test between two variants on a labeled test set.
    Compare {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        test: PathBuf,
        #[arg(long, value_enum)]
        variant_a: VariantArg,
        #[arg(long, value_enum)]
        variant_b: VariantArg,
    },
}

fn model_for(path: Option<&Path>, variants: &[Variant], config: &TagConfig) -> Result<Option<ppattach::CountStore>> {
    match variants.iter().find(|v| **v != Variant::Baseline) {
        Some(v) => load_model(path, *v, config),
        None => Ok(None),
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = resolve_config(cli.config.as_deref(), cli.k)?;
    let lexicon = resolve_lexicon(cli.lexicon.as_deref())?;
    info!(
        "profile {} ({}), k = {}",
        config.language_id,
        config.fingerprint(),
        config.window_k
    );
    match cli.command {
        Command::Chunk { input, output } => {
            let n = run_chunk(open_input(&input)?, open_output(&output)?, &config)?;
            info!("chunked {} sentences", n);
        }
        Command::Extract { input, output } => {
            let report = run_extract(
                open_input(&input)?,
                open_output(&output)?,
                &config,
                &lexicon,
                cli.verbose,
            )?;
            if cli.verbose {
                eprint!("{}", report);
            }
        }
        Command::Train {
            corpus,
            tuples,
            model,
            dedup,
        } => {
            let store = run_train(open_input(&corpus)?, open_input(&tuples)?, &config, &lexicon, dedup)?;
            store.save(&model)?;
            info!(
                "model: {} noun tuples, {} verb tuples, {} prepositions",
                store.site_total(ppattach::Site::N),
                store.site_total(ppattach::Site::V),
                store.prep_vocab().len()
            );
        }
        Command::Classify {
            model,
            input,
            output,
            variant,
        } => {
            let variant = variant.into();
            let store = model_for(model.as_deref(), &[variant], &config)?;
            let mut text = String::new();
            open_input(&input)?.read_to_string(&mut text)?;
            run_classify(
                store.as_ref(),
                variant,
                text.as_bytes(),
                open_output(&output)?,
                &config,
                &lexicon,
            )?;
        }
        Command::Eval {
            model,
            test,
            variant,
            report,
            output,
        } => {
            let variant = variant.into();
            let store = model_for(model.as_deref(), &[variant], &config)?;
            let result = run_eval(store.as_ref(), variant, open_input(&test)?, &config, &lexicon)?;
            let mut out = open_output(&output)?;
            match report {
                ReportFormat::Text => write!(out, "{}", result)?,
                ReportFormat::Tsv => write!(out, "{}", result.to_tsv())?,
            }
            out.flush()?;
        }
        Command::Compare {
            model,
            test,
            variant_a,
            variant_b,
        } => {
            let (a, b) = (variant_a.into(), variant_b.into());
            let store = model_for(model.as_deref(), &[a, b], &config)?;
            let result = run_compare(store.as_ref(), a, b, open_input(&test)?, &config, &lexicon)?;
            let mut out = open_output(Path::new("-"))?;
            writeln!(out, "a = {}, b = {}", a, b)?;
            write!(out, "{}", result)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE as u8
            } else {
                exit::OK as u8
            });
        }
    };
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error!("{}", e);
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
