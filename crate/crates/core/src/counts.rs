//! Corpus and tuple counts.
//!
//! A [`CountStore`] holds the raw counts the estimators need: how often each
//! noun and verb lemma occurs in the chunked corpus, and how often each
//! `(head, preposition)` pair occurs in the extracted tuples. Marginals
//! (`c(n,true)`, `c_N(p)`, `c_N`, ...) are kept up to date incrementally.
//!
//! Stores form a commutative monoid under [`CountStore::merge`], so a corpus
//! can be counted in shards and combined.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::config::{Class, LemmaClass, TagConfig};
use crate::corpus_io::{lemmatize, MorphLexicon, TaggedToken};
use crate::error::{Error, Result};
use crate::extractor::{HeadTuple, Site};

pub const MODEL_FORMAT: u32 = 1;

const MAGIC: &str = "# ppattach count model";

/// What a store was built under. Stores only merge with equal metadata.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StoreMeta {
    pub language_id: String,
    pub fingerprint: String,
    pub window_k: usize,
    pub dedup: bool,
}

impl StoreMeta {
    pub fn new(config: &TagConfig, dedup: bool) -> Self {
        StoreMeta {
            language_id: config.language_id.clone(),
            fingerprint: config.fingerprint(),
            window_k: config.window_k,
            dedup,
        }
    }

    pub fn matches(&self, config: &TagConfig) -> bool {
        self.fingerprint == config.fingerprint()
    }
}

type PairMap = BTreeMap<(String, String), u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountStore {
    pub meta: StoreMeta,
    corpus_noun: BTreeMap<String, u64>,
    corpus_verb: BTreeMap<String, u64>,
    noun_prep: PairMap,
    verb_prep: PairMap,
    prep_vocab: BTreeSet<String>,
    // derived
    noun_true: BTreeMap<String, u64>,
    verb_true: BTreeMap<String, u64>,
    noun_prep_total: BTreeMap<String, u64>,
    verb_prep_total: BTreeMap<String, u64>,
    noun_total: u64,
    verb_total: u64,
}

fn bump<K: Ord>(map: &mut BTreeMap<K, u64>, key: K, by: u64) {
    *map.entry(key).or_insert(0) += by;
}

impl CountStore {
    pub fn new(meta: StoreMeta) -> Self {
        CountStore {
            meta,
            corpus_noun: BTreeMap::new(),
            corpus_verb: BTreeMap::new(),
            noun_prep: BTreeMap::new(),
            verb_prep: BTreeMap::new(),
            prep_vocab: BTreeSet::new(),
            noun_true: BTreeMap::new(),
            verb_true: BTreeMap::new(),
            noun_prep_total: BTreeMap::new(),
            verb_prep_total: BTreeMap::new(),
            noun_total: 0,
            verb_total: 0,
        }
    }

    pub fn for_config(config: &TagConfig, dedup: bool) -> Self {
        CountStore::new(StoreMeta::new(config, dedup))
    }

    pub fn is_empty(&self) -> bool {
        self.corpus_noun.is_empty()
            && self.corpus_verb.is_empty()
            && self.noun_prep.is_empty()
            && self.verb_prep.is_empty()
    }

    /// Adds a corpus occurrence of a noun or verb lemma.
    pub fn add_word(&mut self, site: Site, lemma: &str, by: u64) {
        match site {
            Site::N => bump(&mut self.corpus_noun, lemma.to_string(), by),
            Site::V => bump(&mut self.corpus_verb, lemma.to_string(), by),
        }
    }

    /// Adds `by` occurrences of an unambiguous `(head, prep)` attachment.
    pub fn add_pair(&mut self, site: Site, head: &str, prep: &str, by: u64) {
        self.prep_vocab.insert(prep.to_string());
        let (pairs, head_true, prep_total, total) = match site {
            Site::N => (
                &mut self.noun_prep,
                &mut self.noun_true,
                &mut self.noun_prep_total,
                &mut self.noun_total,
            ),
            Site::V => (
                &mut self.verb_prep,
                &mut self.verb_true,
                &mut self.verb_prep_total,
                &mut self.verb_total,
            ),
        };
        bump(pairs, (head.to_string(), prep.to_string()), by);
        bump(head_true, head.to_string(), by);
        bump(prep_total, prep.to_string(), by);
        *total += by;
    }

    /// Counts every noun- and verb-class token of one chunked sentence.
    pub fn accumulate_sentence(&mut self, tokens: &[TaggedToken], config: &TagConfig, lexicon: &MorphLexicon) {
        for token in tokens {
            match config.class_of(&token.tag) {
                Class::Noun => {
                    let lemma = lemmatize(&token.surface, LemmaClass::Noun, lexicon);
                    self.add_word(Site::N, &lemma, 1);
                }
                Class::Verb => {
                    let lemma = lemmatize(&token.surface, LemmaClass::Verb, lexicon);
                    self.add_word(Site::V, &lemma, 1);
                }
                Class::Prep | Class::Other => {}
            }
        }
    }

    pub fn accumulate_corpus<'a, I>(&mut self, sentences: I, config: &TagConfig, lexicon: &MorphLexicon)
    where
        I: IntoIterator<Item = &'a [TaggedToken]>,
    {
        for tokens in sentences {
            self.accumulate_sentence(tokens, config, lexicon);
        }
    }

    pub fn accumulate_tuples<'a, I>(&mut self, tuples: I)
    where
        I: IntoIterator<Item = &'a HeadTuple>,
    {
        for t in tuples {
            self.add_pair(t.site, &t.head, &t.prep, 1);
        }
    }

    /// Pointwise sum. Fails unless both stores carry the same metadata.
    pub fn merge(&self, other: &CountStore) -> Result<CountStore> {
        let mut out = self.clone();
        out.merge_from(other)?;
        Ok(out)
    }

    pub fn merge_from(&mut self, other: &CountStore) -> Result<()> {
        if self.meta != other.meta {
            return Err(Error::IncompatibleStores(format!(
                "{:?} vs {:?}",
                self.meta, other.meta
            )));
        }
        for (lemma, c) in &other.corpus_noun {
            self.add_word(Site::N, lemma, *c);
        }
        for (lemma, c) in &other.corpus_verb {
            self.add_word(Site::V, lemma, *c);
        }
        for ((head, prep), c) in &other.noun_prep {
            self.add_pair(Site::N, head, prep, *c);
        }
        for ((head, prep), c) in &other.verb_prep {
            self.add_pair(Site::V, head, prep, *c);
        }
        self.prep_vocab.extend(other.prep_vocab.iter().cloned());
        Ok(())
    }

    /// `c(n)` or `c(v)`: corpus occurrences of the lemma.
    pub fn corpus_count(&self, site: Site, lemma: &str) -> u64 {
        let map = match site {
            Site::N => &self.corpus_noun,
            Site::V => &self.corpus_verb,
        };
        map.get(lemma).copied().unwrap_or(0)
    }

    /// `c(n,true)` or `c(v,true)`: tuples headed by the lemma.
    pub fn attached_count(&self, site: Site, head: &str) -> u64 {
        let map = match site {
            Site::N => &self.noun_true,
            Site::V => &self.verb_true,
        };
        map.get(head).copied().unwrap_or(0)
    }

    /// `c(n,p,true)` or `c(v,p,true)`.
    pub fn pair_count(&self, site: Site, head: &str, prep: &str) -> u64 {
        let map = match site {
            Site::N => &self.noun_prep,
            Site::V => &self.verb_prep,
        };
        map.get(&(head.to_string(), prep.to_string())).copied().unwrap_or(0)
    }

    /// `c_N(p)` or `c_V(p)`.
    pub fn prep_total(&self, site: Site, prep: &str) -> u64 {
        let map = match site {
            Site::N => &self.noun_prep_total,
            Site::V => &self.verb_prep_total,
        };
        map.get(prep).copied().unwrap_or(0)
    }

    /// `c_N` or `c_V`.
    pub fn site_total(&self, site: Site) -> u64 {
        match site {
            Site::N => self.noun_total,
            Site::V => self.verb_total,
        }
    }

    pub fn prep_vocab(&self) -> &BTreeSet<String> {
        &self.prep_vocab
    }

    pub fn words(&self, site: Site) -> impl Iterator<Item = (&str, u64)> {
        let map = match site {
            Site::N => &self.corpus_noun,
            Site::V => &self.corpus_verb,
        };
        map.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn pairs(&self, site: Site) -> impl Iterator<Item = (&str, &str, u64)> {
        let map = match site {
            Site::N => &self.noun_prep,
            Site::V => &self.verb_prep,
        };
        map.iter().map(|((h, p), c)| (h.as_str(), p.as_str(), *c))
    }

    /// Recomputes every marginal from the raw pair maps and compares.
    pub fn check_consistency(&self) -> bool {
        let mut fresh = CountStore::new(self.meta.clone());
        for site in [Site::N, Site::V] {
            for (h, p, c) in self.pairs(site) {
                if c > 0 {
                    fresh.add_pair(site, h, p, c);
                }
            }
        }
        fresh.noun_true == self.noun_true
            && fresh.verb_true == self.verb_true
            && fresh.noun_prep_total == self.noun_prep_total
            && fresh.verb_prep_total == self.verb_prep_total
            && fresh.noun_total == self.noun_total
            && fresh.verb_total == self.verb_total
            && fresh.prep_vocab.is_subset(&self.prep_vocab)
    }

    /// Deterministic text form: equal stores give identical bytes.
    pub fn to_text(&self) -> String {
        let mut body = String::new();
        body.push_str("NOUN\n");
        for (lemma, c) in &self.corpus_noun {
            let _ = writeln!(body, "{}\t{}", lemma, c);
        }
        body.push_str("VERB\n");
        for (lemma, c) in &self.corpus_verb {
            let _ = writeln!(body, "{}\t{}", lemma, c);
        }
        body.push_str("NP\n");
        for ((h, p), c) in &self.noun_prep {
            let _ = writeln!(body, "{}\t{}\t{}", h, p, c);
        }
        body.push_str("VP\n");
        for ((h, p), c) in &self.verb_prep {
            let _ = writeln!(body, "{}\t{}\t{}", h, p, c);
        }
        body.push_str("PREPS\n");
        for p in &self.prep_vocab {
            let _ = writeln!(body, "{}", p);
        }

        let mut out = String::new();
        let _ = writeln!(out, "{}", MAGIC);
        let _ = writeln!(out, "# format={}", MODEL_FORMAT);
        let _ = writeln!(out, "# language_id={}", self.meta.language_id);
        let _ = writeln!(out, "# fingerprint={}", self.meta.fingerprint);
        let _ = writeln!(out, "# window_k={}", self.meta.window_k);
        let _ = writeln!(out, "# dedup={}", self.meta.dedup);
        let _ = writeln!(out, "# corpus_counts=chunked");
        let _ = writeln!(out, "# {}", self.totals_line());
        let _ = writeln!(
            out,
            "# checksum=sha256:{}",
            hex::encode(Sha256::digest(body.as_bytes()))
        );
        out.push_str(&body);
        out
    }

    fn totals_line(&self) -> String {
        format!(
            "totals=nouns:{},verbs:{},np:{},vp:{},preps:{}",
            self.corpus_noun.values().sum::<u64>(),
            self.corpus_verb.values().sum::<u64>(),
            self.noun_total,
            self.verb_total,
            self.prep_vocab.len()
        )
    }

    pub fn from_text(text: &str) -> Result<CountStore> {
        let mut header: BTreeMap<&str, &str> = BTreeMap::new();
        let mut body_start = 0;
        for line in text.split_inclusive('\n') {
            if !line.starts_with('#') {
                break;
            }
            body_start += line.len();
            if let Some((k, v)) = line[1..].trim().split_once('=') {
                header.insert(k.trim(), v.trim());
            }
        }
        let body = &text[body_start..];

        match header.get("format") {
            Some(v) if *v == MODEL_FORMAT.to_string() => {}
            Some(v) => {
                return Err(Error::FormatVersion {
                    found: v.to_string(),
                    expected: MODEL_FORMAT,
                })
            }
            None => {
                return Err(Error::FormatVersion {
                    found: "<missing>".into(),
                    expected: MODEL_FORMAT,
                })
            }
        }
        let found = format!("sha256:{}", hex::encode(Sha256::digest(body.as_bytes())));
        let expected = header.get("checksum").copied().unwrap_or("<missing>");
        if expected != found {
            return Err(Error::Checksum {
                expected: expected.to_string(),
                found,
            });
        }

        let field = |key: &'static str| {
            header
                .get(key)
                .copied()
                .ok_or_else(|| Error::parse("model header", 0, format!("missing `{}`", key)))
        };
        let meta = StoreMeta {
            language_id: field("language_id")?.to_string(),
            fingerprint: field("fingerprint")?.to_string(),
            window_k: field("window_k")?
                .parse()
                .map_err(|_| Error::parse("model header", 0, "bad window_k"))?,
            dedup: field("dedup")?
                .parse()
                .map_err(|_| Error::parse("model header", 0, "bad dedup flag"))?,
        };
        let mut store = CountStore::new(meta);

        let header_lines = text[..body_start].lines().count();
        let mut section = "";
        for (i, line) in body.lines().enumerate() {
            let row = header_lines + i + 1;
            if matches!(line, "NOUN" | "VERB" | "NP" | "VP" | "PREPS") {
                section = match line {
                    "NOUN" => "NOUN",
                    "VERB" => "VERB",
                    "NP" => "NP",
                    "VP" => "VP",
                    _ => "PREPS",
                };
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let count = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| Error::parse("model", row, format!("bad count `{}`", s)))
            };
            match (section, fields.as_slice()) {
                ("NOUN", [lemma, c]) => store.add_word(Site::N, lemma, count(c)?),
                ("VERB", [lemma, c]) => store.add_word(Site::V, lemma, count(c)?),
                ("NP", [h, p, c]) => store.add_pair(Site::N, h, p, count(c)?),
                ("VP", [h, p, c]) => store.add_pair(Site::V, h, p, count(c)?),
                ("PREPS", [p]) if !p.is_empty() => {
                    store.prep_vocab.insert(p.to_string());
                }
                ("", _) => return Err(Error::parse("model", row, "row before any section")),
                (s, _) => return Err(Error::parse("model", row, format!("malformed {} row", s))),
            }
        }
        let totals = store.totals_line();
        if header.get("totals").map(|t| format!("totals={}", t)) != Some(totals.clone()) {
            return Err(Error::parse(
                "model",
                0,
                format!("header totals disagree with body ({})", totals),
            ));
        }
        Ok(store)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<CountStore> {
        CountStore::from_text(&fs::read_to_string(path)?)
    }
}
