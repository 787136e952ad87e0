//! Scoring classifiers against labeled attachment sets.

mod synthetic;

pub use sign_test::{changed_cases_test, sign_test_p_value, PairedComparison};
pub use synthetic::{generate_synthetic_corpus, HeadPreference, SyntheticCorpus, SyntheticSpec};

use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use crate::chunker::is_numeric;
use crate::config::{LemmaClass, TagConfig};
use crate::corpus_io::{lemmatize, MorphLexicon};
use crate::error::{Error, Result};
use crate::extractor::Site;
use crate::models::{AttachmentInstance, ClassificationResult, Classifier};

/// Parses `v n p n2 label` rows; with `labeled = false` the label column is
/// optional. Blank and `#` lines are skipped.
pub fn parse_instances(text: &str, labeled: bool) -> Result<Vec<AttachmentInstance>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let row = i + 1;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let gold = match fields.len() {
            4 if !labeled => None,
            5 => Some(
                fields[4]
                    .parse::<Site>()
                    .map_err(|e| Error::parse("test set", row, format!("bad label: {}", e)))?,
            ),
            n => {
                return Err(Error::parse(
                    "test set",
                    row,
                    format!("expected `v n p n2 label`, found {} fields", n),
                ))
            }
        };
        let lower: Vec<String> = fields[..4].iter().map(|f| f.to_lowercase()).collect();
        out.push(AttachmentInstance {
            v: lower[0].clone(),
            n: lower[1].clone(),
            p: lower[2].clone(),
            n2: lower[3].clone(),
            gold,
        });
    }
    Ok(out)
}

pub fn load_test_set(path: impl AsRef<Path>) -> Result<Vec<AttachmentInstance>> {
    parse_instances(&fs::read_to_string(path)?, true)
}

/// Maps raw test words into the training vocabulary: numbers become the
/// number token and heads go through the lexicon.
pub fn normalize_instance(inst: &AttachmentInstance, config: &TagConfig, lexicon: &MorphLexicon) -> AttachmentInstance {
    let noun = |w: &str| {
        if is_numeric(w) {
            config.num_token.clone()
        } else {
            lemmatize(w, LemmaClass::Noun, lexicon)
        }
    };
    AttachmentInstance {
        v: lemmatize(&inst.v, LemmaClass::Verb, lexicon),
        n: noun(&inst.n),
        p: inst.p.to_lowercase(),
        n2: noun(&inst.n2),
        gold: inst.gold,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subset {
    Of,
    NonOf,
    Total,
}

impl Subset {
    pub fn as_str(self) -> &'static str {
        match self {
            Subset::Of => "of",
            Subset::NonOf => "non_of",
            Subset::Total => "total",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetRow {
    pub subset: Subset,
    pub events: u64,
    pub correct: u64,
}

impl SubsetRow {
    /// `None` for an empty subset.
    pub fn accuracy(&self) -> Option<f64> {
        (self.events > 0).then(|| self.correct as f64 / self.events as f64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub of: SubsetRow,
    pub non_of: SubsetRow,
    pub total: SubsetRow,
    /// Predicted label per instance, in input order.
    pub predictions: Vec<Site>,
}

impl EvalReport {
    pub fn rows(&self) -> [SubsetRow; 3] {
        [self.of, self.non_of, self.total]
    }

    pub fn accuracy(&self) -> Option<f64> {
        self.total.accuracy()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("subset\tevents\tcorrect\taccuracy\n");
        for row in self.rows() {
            let acc = row
                .accuracy()
                .map(|a| format!("{:.6}", a))
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "{}\t{}\t{}\t{}", row.subset.as_str(), row.events, row.correct, acc);
        }
        out
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<10} {:>8} {:>8} {:>9}", "subset", "events", "correct", "accuracy")?;
        for row in self.rows() {
            let acc = row
                .accuracy()
                .map(|a| format!("{:.2}%", 100.0 * a))
                .unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:<10} {:>8} {:>8} {:>9}",
                row.subset.as_str(),
                row.events,
                row.correct,
                acc
            )?;
        }
        Ok(())
    }
}

/// Scores `predict` on gold-labeled instances; subsets are split on the
/// profile's of-equivalents.
pub fn evaluate_with<F>(instances: &[AttachmentInstance], config: &TagConfig, mut predict: F) -> Result<EvalReport>
where
    F: FnMut(&AttachmentInstance) -> Site,
{
    let mut of = SubsetRow {
        subset: Subset::Of,
        events: 0,
        correct: 0,
    };
    let mut non_of = SubsetRow {
        subset: Subset::NonOf,
        events: 0,
        correct: 0,
    };
    let mut predictions = Vec::with_capacity(instances.len());
    for (index, inst) in instances.iter().enumerate() {
        let gold = inst.gold.ok_or(Error::MissingGold { index })?;
        let label = predict(inst);
        let row = if config.is_of_equivalent(&inst.p) {
            &mut of
        } else {
            &mut non_of
        };
        row.events += 1;
        row.correct += u64::from(label == gold);
        predictions.push(label);
    }
    let total = SubsetRow {
        subset: Subset::Total,
        events: of.events + non_of.events,
        correct: of.correct + non_of.correct,
    };
    Ok(EvalReport {
        of,
        non_of,
        total,
        predictions,
    })
}

pub fn evaluate(
    instances: &[AttachmentInstance],
    classifier: &Classifier<'_>,
    config: &TagConfig,
) -> Result<EvalReport> {
    evaluate_with(instances, config, |inst| classifier.classify(inst, config).label)
}

/// Classifies every instance.
pub fn classify_all(
    instances: &[AttachmentInstance],
    classifier: &Classifier<'_>,
    config: &TagConfig,
) -> Vec<ClassificationResult> {
    instances.iter().map(|i| classifier.classify(i, config)).collect()
}
