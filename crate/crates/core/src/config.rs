//! Language profiles.
//!
//! Everything language-specific about the pipeline lives in a [`TagConfig`]:
//! which tags count as nouns, verbs and prepositions, which prepositions are
//! attached deterministically to the noun (English *of*, Spanish *de*/*del*),
//! which verb lemmas are copulas, the extraction window and the tag sets the
//! chunker works with.
//!
//! Profiles are stored as `key = value` text files. Sets are comma-separated,
//! `#` starts a comment line, and keys that are not given keep the English
//! default.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Coarse word class used by the extraction heuristic and the counters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    Noun,
    Verb,
    Prep,
    Other,
}

/// The two classes the morphology lexicon distinguishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaClass {
    Noun,
    Verb,
}

impl LemmaClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LemmaClass::Noun => "noun",
            LemmaClass::Verb => "verb",
        }
    }
}

impl FromStr for LemmaClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "noun" => Ok(LemmaClass::Noun),
            "verb" => Ok(LemmaClass::Verb),
            other => Err(format!("unknown lexicon class `{}` (expected noun or verb)", other)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagConfig {
    pub language_id: String,
    pub noun_tags: BTreeSet<String>,
    pub verb_tags: BTreeSet<String>,
    pub prep_tags: BTreeSet<String>,
    pub of_equivalents: BTreeSet<String>,
    pub be_lemmas: BTreeSet<String>,
    pub window_k: usize,
    pub num_token: String,
    pub chunking_enabled: bool,
    /// Tag given to normalized numbers and quantifier-phrase heads. Tokens
    /// carrying it are nominal for extraction and counting.
    pub number_tag: String,
    /// Tags a quantifier phrase is made of.
    pub qp_tags: BTreeSet<String>,
    /// Tags that may precede the head noun inside a simple noun phrase.
    pub np_modifier_tags: BTreeSet<String>,
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

const KEYS: &[&str] = &[
    "language_id",
    "noun_tags",
    "verb_tags",
    "prep_tags",
    "of_equivalents",
    "be_lemmas",
    "window_k",
    "num_token",
    "chunking_enabled",
    "number_tag",
    "qp_tags",
    "np_modifier_tags",
];

impl Default for TagConfig {
    fn default() -> Self {
        TagConfig::english()
    }
}

impl TagConfig {
    /// Penn Treebank profile.
    pub fn english() -> Self {
        TagConfig {
            language_id: "en".to_string(),
            noun_tags: set(&["NN", "NNS", "NNP", "NNPS"]),
            verb_tags: set(&["VB", "VBD", "VBG", "VBN", "VBP", "VBZ"]),
            prep_tags: set(&["IN", "TO"]),
            of_equivalents: set(&["of"]),
            be_lemmas: set(&["be"]),
            window_k: 5,
            num_token: "num".to_string(),
            chunking_enabled: true,
            number_tag: "CD".to_string(),
            qp_tags: set(&["CD", "$"]),
            np_modifier_tags: set(&["DT", "PDT", "POS", "JJ", "JJR", "JJS"]),
        }
    }

    /// Spanish profile over a small EAGLES-style tagset (NC/NP nouns, VM/VA/VS
    /// verbs, SP prepositions, Z numbers). Chunking is off.
    pub fn spanish() -> Self {
        TagConfig {
            language_id: "es".to_string(),
            noun_tags: set(&["NC", "NP"]),
            verb_tags: set(&["VM", "VA", "VS"]),
            prep_tags: set(&["SP"]),
            of_equivalents: set(&["de", "del"]),
            be_lemmas: set(&["ser"]),
            window_k: 5,
            num_token: "num".to_string(),
            chunking_enabled: false,
            number_tag: "Z".to_string(),
            qp_tags: set(&["Z"]),
            np_modifier_tags: set(&["DA", "DI", "AQ"]),
        }
    }

    pub fn class_of(&self, tag: &str) -> Class {
        if self.noun_tags.contains(tag) || tag == self.number_tag {
            Class::Noun
        } else if self.verb_tags.contains(tag) {
            Class::Verb
        } else if self.prep_tags.contains(tag) {
            Class::Prep
        } else {
            Class::Other
        }
    }

    pub fn is_of_equivalent(&self, prep: &str) -> bool {
        self.of_equivalents.contains(prep)
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("noun_tags", &self.noun_tags),
            ("verb_tags", &self.verb_tags),
            ("prep_tags", &self.prep_tags),
        ];
        for (i, (a_name, a)) in named.iter().enumerate() {
            for (b_name, b) in &named[i + 1..] {
                if let Some(tag) = a.intersection(b).next() {
                    return Err(Error::Config(format!(
                        "tag `{}` is in both {} and {}",
                        tag, a_name, b_name
                    )));
                }
            }
        }
        if self.verb_tags.contains(&self.number_tag) || self.prep_tags.contains(&self.number_tag) {
            return Err(Error::Config(format!(
                "number_tag `{}` overlaps verb or preposition tags",
                self.number_tag
            )));
        }
        if self.window_k == 0 {
            return Err(Error::Config("window_k must be at least 1".into()));
        }
        if self.of_equivalents.is_empty() {
            return Err(Error::Config("of_equivalents must not be empty".into()));
        }
        if self.num_token.is_empty() {
            return Err(Error::Config("num_token must not be empty".into()));
        }
        if self.number_tag.is_empty() {
            return Err(Error::Config("number_tag must not be empty".into()));
        }
        Ok(())
    }

    /// Parses the `key = value` profile format. Keys not present keep their
    /// English defaults; unknown keys are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = TagConfig::english();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = lineno + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse("tag config", lineno, "expected `key = value`"))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "language_id" => config.language_id = value.to_string(),
                "noun_tags" => config.noun_tags = parse_set(value),
                "verb_tags" => config.verb_tags = parse_set(value),
                "prep_tags" => config.prep_tags = parse_set(value),
                "of_equivalents" => config.of_equivalents = parse_lemma_set(value),
                "be_lemmas" => config.be_lemmas = parse_lemma_set(value),
                "window_k" => {
                    config.window_k = value
                        .parse()
                        .map_err(|_| Error::parse("tag config", lineno, format!("bad window_k `{}`", value)))?
                }
                "num_token" => config.num_token = value.to_lowercase(),
                "chunking_enabled" => {
                    config.chunking_enabled = match value {
                        "true" | "yes" | "1" => true,
                        "false" | "no" | "0" => false,
                        _ => return Err(Error::parse("tag config", lineno, format!("bad boolean `{}`", value))),
                    }
                }
                "number_tag" => config.number_tag = value.to_string(),
                "qp_tags" => config.qp_tags = parse_set(value),
                "np_modifier_tags" => config.np_modifier_tags = parse_set(value),
                other => {
                    return Err(Error::parse(
                        "tag config",
                        lineno,
                        format!("unknown key `{}` (known: {})", other, KEYS.join(", ")),
                    ))
                }
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        TagConfig::parse(&fs::read_to_string(path)?)
    }

    /// Canonical text form; `parse(render())` gives back the same profile.
    pub fn render(&self) -> String {
        let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        let _ = writeln!(out, "language_id = {}", self.language_id);
        let _ = writeln!(out, "noun_tags = {}", join(&self.noun_tags));
        let _ = writeln!(out, "verb_tags = {}", join(&self.verb_tags));
        let _ = writeln!(out, "prep_tags = {}", join(&self.prep_tags));
        let _ = writeln!(out, "of_equivalents = {}", join(&self.of_equivalents));
        let _ = writeln!(out, "be_lemmas = {}", join(&self.be_lemmas));
        let _ = writeln!(out, "window_k = {}", self.window_k);
        let _ = writeln!(out, "num_token = {}", self.num_token);
        let _ = writeln!(out, "chunking_enabled = {}", self.chunking_enabled);
        let _ = writeln!(out, "number_tag = {}", self.number_tag);
        let _ = writeln!(out, "qp_tags = {}", join(&self.qp_tags));
        let _ = writeln!(out, "np_modifier_tags = {}", join(&self.np_modifier_tags));
        out
    }

    /// Short stable hash of the canonical form. Count stores built under
    /// different profiles refuse to merge.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.render().as_bytes());
        hex::encode(&digest[..8])
    }
}

fn parse_set(value: &str) -> BTreeSet<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn parse_lemma_set(value: &str) -> BTreeSet<String> {
    parse_set(value).into_iter().map(|s| s.to_lowercase()).collect()
}
