//! Unambiguous attachment extraction.
//!
//! For each preposition `p` in a chunked sentence the extractor looks at
//! most `K` tokens to the left for an attachment site and at most `K` tokens
//! to the right for its object:
//!
//! * a verb `v` within the left window yields `(v, p, n2)` when no noun sits
//!   between `v` and `p` and `v` is not a copula;
//! * with no verb in the left window, the nearest noun `n` yields
//!   `(n, p, n2)`;
//! * `n2` is the first noun to the right of `p` with no verb in between.
//!
//! Of-equivalent prepositions are never extracted. A verb in the left window
//! always rules out the noun case, even when the verb case fails.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::config::{Class, LemmaClass, TagConfig};
use crate::corpus_io::{lemmatize, MorphLexicon, TaggedToken};
use crate::error::{Error, Result};

/// Attachment site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    N,
    V,
}

impl Site {
    pub fn as_str(self) -> &'static str {
        match self {
            Site::N => "N",
            Site::V => "V",
        }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Site {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "N" => Ok(Site::N),
            "V" => Ok(Site::V),
            other => Err(format!("expected N or V, found `{}`", other)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeadTuple {
    pub site: Site,
    pub head: String,
    pub prep: String,
    pub n2: String,
}

impl HeadTuple {
    pub fn new(site: Site, head: &str, prep: &str, n2: &str) -> Self {
        HeadTuple {
            site,
            head: head.to_string(),
            prep: prep.to_string(),
            n2: n2.to_string(),
        }
    }

    /// Parses one `site TAB head TAB prep TAB n2` row.
    pub fn parse_row(line: &str, row: usize) -> Result<Self> {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                "tuple file",
                row,
                format!("expected 4 tab-separated columns, found {}", fields.len()),
            ));
        }
        let site = fields[0].parse().map_err(|e| Error::parse("tuple file", row, e))?;
        if fields[1..].iter().any(|f| f.is_empty()) {
            return Err(Error::parse("tuple file", row, "empty field"));
        }
        Ok(HeadTuple::new(site, fields[1], fields[2], fields[3]))
    }
}

impl fmt::Display for HeadTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}", self.site, self.head, self.prep, self.n2)
    }
}

pub fn parse_tuples(text: &str) -> Result<Vec<HeadTuple>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| HeadTuple::parse_row(l, i + 1))
        .collect()
}

/// Why a preposition produced no tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkipReason {
    OfEquivalent,
    CopulaVerb,
    InterveningNoun,
    NoSite,
    NoObject,
}

impl SkipReason {
    pub const ALL: [SkipReason; 5] = [
        SkipReason::OfEquivalent,
        SkipReason::CopulaVerb,
        SkipReason::InterveningNoun,
        SkipReason::NoSite,
        SkipReason::NoObject,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SkipReason::OfEquivalent => "of_equivalent",
            SkipReason::CopulaVerb => "copula_verb",
            SkipReason::InterveningNoun => "intervening_noun",
            SkipReason::NoSite => "no_site",
            SkipReason::NoObject => "no_object",
        }
    }
}

/// Outcome for one preposition occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Emit {
        tuple: HeadTuple,
        head_pos: usize,
        n2_pos: usize,
    },
    Skip(SkipReason),
}

/// One decision per preposition-class token, in sentence order, with the
/// token position of the preposition.
pub fn decide_all(tokens: &[TaggedToken], config: &TagConfig, lexicon: &MorphLexicon) -> Vec<(usize, Decision)> {
    let classes: Vec<Class> = tokens.iter().map(|t| config.class_of(&t.tag)).collect();
    let k = config.window_k;
    let mut out = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        if *class != Class::Prep {
            continue;
        }
        let prep = tokens[i].surface.to_lowercase();
        if config.is_of_equivalent(&prep) {
            out.push((i, Decision::Skip(SkipReason::OfEquivalent)));
            continue;
        }
        let left = i.saturating_sub(k)..i;
        let object = || {
            classes
                .iter()
                .enumerate()
                .take((i + k + 1).min(classes.len()))
                .skip(i + 1)
                .find(|(_, c)| matches!(c, Class::Noun | Class::Verb))
                .filter(|(_, c)| **c == Class::Noun)
                .map(|(pos, _)| pos)
        };
        let noun_lemma = |pos: usize| lemmatize(&tokens[pos].surface, LemmaClass::Noun, lexicon);

        let verb = left.clone().rev().find(|&j| classes[j] == Class::Verb);
        let decision = match verb {
            Some(j) => {
                let verb_lemma = lemmatize(&tokens[j].surface, LemmaClass::Verb, lexicon);
                if config.be_lemmas.contains(&verb_lemma) {
                    Decision::Skip(SkipReason::CopulaVerb)
                } else if classes[j + 1..i].contains(&Class::Noun) {
                    Decision::Skip(SkipReason::InterveningNoun)
                } else {
                    match object() {
                        Some(n2) => Decision::Emit {
                            tuple: HeadTuple {
                                site: Site::V,
                                head: verb_lemma,
                                prep,
                                n2: noun_lemma(n2),
                            },
                            head_pos: j,
                            n2_pos: n2,
                        },
                        None => Decision::Skip(SkipReason::NoObject),
                    }
                }
            }
            None => match left.rev().find(|&j| classes[j] == Class::Noun) {
                None => Decision::Skip(SkipReason::NoSite),
                Some(j) => match object() {
                    Some(n2) => Decision::Emit {
                        tuple: HeadTuple {
                            site: Site::N,
                            head: noun_lemma(j),
                            prep,
                            n2: noun_lemma(n2),
                        },
                        head_pos: j,
                        n2_pos: n2,
                    },
                    None => Decision::Skip(SkipReason::NoObject),
                },
            },
        };
        out.push((i, decision));
    }
    out
}

/// Tuples for one chunked, number-normalized sentence, in sentence order.
pub fn extract_tuples(tokens: &[TaggedToken], config: &TagConfig, lexicon: &MorphLexicon) -> Vec<HeadTuple> {
    decide_all(tokens, config, lexicon)
        .into_iter()
        .filter_map(|(_, d)| match d {
            Decision::Emit { tuple, .. } => Some(tuple),
            Decision::Skip(_) => None,
        })
        .collect()
}

/// Keeps the first occurrence of every distinct tuple.
pub fn dedup_tuples(tuples: Vec<HeadTuple>) -> Vec<HeadTuple> {
    let mut seen = HashSet::new();
    tuples.into_iter().filter(|t| seen.insert(t.clone())).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtractionReport {
    pub sentences: u64,
    pub prepositions: u64,
    pub noun_tuples: u64,
    pub verb_tuples: u64,
    pub skips: BTreeMap<SkipReason, u64>,
}

impl ExtractionReport {
    pub fn add_sentence(&mut self, decisions: &[(usize, Decision)]) {
        self.sentences += 1;
        for (_, d) in decisions {
            self.prepositions += 1;
            match d {
                Decision::Emit { tuple, .. } => match tuple.site {
                    Site::N => self.noun_tuples += 1,
                    Site::V => self.verb_tuples += 1,
                },
                Decision::Skip(reason) => *self.skips.entry(*reason).or_insert(0) += 1,
            }
        }
    }

    pub fn merge(&mut self, other: &ExtractionReport) {
        self.sentences += other.sentences;
        self.prepositions += other.prepositions;
        self.noun_tuples += other.noun_tuples;
        self.verb_tuples += other.verb_tuples;
        for (reason, n) in &other.skips {
            *self.skips.entry(*reason).or_insert(0) += n;
        }
    }

    pub fn tuples(&self) -> u64 {
        self.noun_tuples + self.verb_tuples
    }

    pub fn skipped(&self, reason: SkipReason) -> u64 {
        self.skips.get(&reason).copied().unwrap_or(0)
    }
}

impl fmt::Display for ExtractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sentences\t{}", self.sentences)?;
        writeln!(f, "prepositions\t{}", self.prepositions)?;
        writeln!(f, "noun_tuples\t{}", self.noun_tuples)?;
        writeln!(f, "verb_tuples\t{}", self.verb_tuples)?;
        for reason in SkipReason::ALL {
            writeln!(f, "skip_{}\t{}", reason.as_str(), self.skipped(reason))?;
        }
        Ok(())
    }
}

/// Builds the summary for a corpus of chunked sentences.
pub fn extraction_report<'a, I>(sentences: I, config: &TagConfig, lexicon: &MorphLexicon) -> ExtractionReport
where
    I: IntoIterator<Item = &'a [TaggedToken]>,
{
    let mut report = ExtractionReport::default();
    for tokens in sentences {
        report.add_sentence(&decide_all(tokens, config, lexicon));
    }
    report
}
