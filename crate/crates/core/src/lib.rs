//! Unsupervised prepositional-phrase attachment.
//!
//! Training needs only part-of-speech tagged text and a morphology lexicon:
//! the text is chunked down to head words, unambiguous attachments are read
//! off with a proximity heuristic, and the resulting counts drive
//! classifiers for ambiguous `(v, n, p, n2)` instances.
//!
//! ```
//! use ppattach::{pipeline, parse_tagged_line, Classifier, AttachmentInstance, MorphLexicon, TagConfig, Variant, Site};
//!
//! let config = TagConfig::english();
//! let corpus = vec![
//!     parse_tagged_line("they/PRP washed/VBD with/IN soap/NN ./.", 1)?,
//!     parse_tagged_line("the/DT shirt/NN with/IN pockets/NNS is/VBZ new/JJ ./.", 2)?,
//!     parse_tagged_line("we/PRP sold/VBD the/DT shirt/NN ./.", 3)?,
//! ];
//! let trained = pipeline::train(&corpus, &config, &MorphLexicon::new(), false);
//! let classifier = Classifier::new(Variant::Bigram, Some(&trained.store))?;
//! let result = classifier.classify(&AttachmentInstance::new("washed", "shirt", "with", "soap"), &config);
//! assert_eq!(result.label, Site::V);
//! # Ok::<(), ppattach::Error>(())
//! ```

pub mod chunker;
pub mod config;
pub mod corpus_io;
pub mod counts;
pub mod error;
pub mod eval;
pub mod extractor;
pub mod models;
pub mod pipeline;

pub use chunker::{chunk, normalize_numbers, ChunkedSentence};
pub use config::{Class, LemmaClass, TagConfig};
pub use corpus_io::{
    coarse_class, lemmatize, load_lexicon, parse_tagged_line, read_corpus, MorphLexicon, Sentence, TaggedToken,
};
pub use counts::{CountStore, StoreMeta, MODEL_FORMAT};
pub use error::{Error, Result};
pub use eval::{changed_cases_test, evaluate, load_test_set, EvalReport, PairedComparison};
pub use extractor::{extract_tuples, extraction_report, ExtractionReport, HeadTuple, Site, SkipReason};
pub use models::{
    classify_baseline, AttachmentInstance, ClassificationResult, Classifier, Estimator, PrepEstimator, Probability,
    Rule, Variant,
};

/// Version of the tuple file layout (`site TAB head TAB prep TAB n2`).
pub const TUPLE_FORMAT: u32 = 1;
