//! The training pipeline end to end: chunk, extract, count.

use crate::chunker::chunk;
use crate::config::TagConfig;
use crate::corpus_io::{MorphLexicon, Sentence};
use crate::counts::CountStore;
use crate::extractor::{decide_all, dedup_tuples, Decision, ExtractionReport, HeadTuple};

#[derive(Clone, Debug)]
pub struct Trained {
    pub chunked: Vec<Sentence>,
    pub tuples: Vec<HeadTuple>,
    pub report: ExtractionReport,
    pub store: CountStore,
}

pub fn chunk_corpus(sentences: &[Sentence], config: &TagConfig) -> Vec<Sentence> {
    sentences.iter().map(|s| chunk(s, config).into_sentence()).collect()
}

/// Extracts tuples from already chunked sentences, in corpus order.
pub fn extract_corpus(
    chunked: &[Sentence],
    config: &TagConfig,
    lexicon: &MorphLexicon,
) -> (Vec<HeadTuple>, ExtractionReport) {
    let mut tuples = Vec::new();
    let mut report = ExtractionReport::default();
    for sentence in chunked {
        let decisions = decide_all(&sentence.tokens, config, lexicon);
        report.add_sentence(&decisions);
        tuples.extend(decisions.into_iter().filter_map(|(_, d)| match d {
            Decision::Emit { tuple, .. } => Some(tuple),
            Decision::Skip(_) => None,
        }));
    }
    (tuples, report)
}

/// Counts a chunked corpus and its tuples into a fresh store.
pub fn build_store(
    chunked: &[Sentence],
    tuples: &[HeadTuple],
    config: &TagConfig,
    lexicon: &MorphLexicon,
    dedup: bool,
) -> CountStore {
    let mut store = CountStore::for_config(config, dedup);
    store.accumulate_corpus(chunked.iter().map(|s| s.tokens.as_slice()), config, lexicon);
    if dedup {
        store.accumulate_tuples(&dedup_tuples(tuples.to_vec()));
    } else {
        store.accumulate_tuples(tuples);
    }
    store
}

/// Raw tagged sentences in, trained count store out.
pub fn train(sentences: &[Sentence], config: &TagConfig, lexicon: &MorphLexicon, dedup: bool) -> Trained {
    let chunked = chunk_corpus(sentences, config);
    let (tuples, report) = extract_corpus(&chunked, config, lexicon);
    let store = build_store(&chunked, &tuples, config, lexicon, dedup);
    Trained {
        chunked,
        tuples,
        report,
        store,
    }
}
