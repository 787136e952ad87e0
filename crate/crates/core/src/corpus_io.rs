//! Tagged corpus reading and morphology lookup.
//!
//! A tagged corpus holds one sentence per line, tokens written as
//! `surface/TAG` and separated by whitespace. Tokens are split at their last
//! slash, so surfaces may contain `/` themselves (`1/2/CD`).

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::BufRead;
use std::path::Path;

use log::warn;

use crate::config::{Class, LemmaClass, TagConfig};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TaggedToken {
    pub surface: String,
    pub tag: String,
}

impl TaggedToken {
    pub fn new(surface: impl Into<String>, tag: impl Into<String>) -> Self {
        TaggedToken {
            surface: surface.into(),
            tag: tag.into(),
        }
    }
}

impl fmt::Display for TaggedToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.surface, self.tag)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sentence {
    pub tokens: Vec<TaggedToken>,
}

impl Sentence {
    pub fn new(tokens: Vec<TaggedToken>) -> Self {
        Sentence { tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, token) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", token)?;
        }
        Ok(())
    }
}

/// Parses one corpus line. `line_no` is only used in error messages.
pub fn parse_tagged_line(line: &str, line_no: usize) -> Result<Sentence> {
    let mut tokens = Vec::new();
    for (index, raw) in line.split_whitespace().enumerate() {
        match raw.rsplit_once('/') {
            Some((surface, tag)) if !surface.is_empty() && !tag.is_empty() => {
                tokens.push(TaggedToken::new(surface, tag));
            }
            _ => {
                return Err(Error::MalformedToken {
                    line: line_no,
                    index,
                    token: raw.to_string(),
                })
            }
        }
    }
    Ok(Sentence { tokens })
}

/// Reads every non-blank line of a tagged corpus.
pub fn read_corpus<R: BufRead>(reader: R) -> Result<Vec<Sentence>> {
    let mut sentences = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        sentences.push(parse_tagged_line(&line, i + 1)?);
    }
    Ok(sentences)
}

pub fn coarse_class(tag: &str, config: &TagConfig) -> Class {
    config.class_of(tag)
}

/// Surface-to-lemma table keyed by lowercased surface and word class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphLexicon {
    entries: HashMap<(String, LemmaClass), String>,
}

impl MorphLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, surface: &str, class: LemmaClass, lemma: &str) {
        self.entries
            .insert((surface.to_lowercase(), class), lemma.to_lowercase());
    }

    pub fn get(&self, surface: &str, class: LemmaClass) -> Option<&str> {
        self.entries.get(&(surface.to_string(), class)).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses `surface TAB class TAB lemma` rows. Later rows win.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lexicon = MorphLexicon::new();
        for (i, line) in text.lines().enumerate() {
            let row = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::parse(
                    "lexicon",
                    row,
                    format!("expected 3 tab-separated columns, found {}", fields.len()),
                ));
            }
            let (surface, class, lemma) = (fields[0].trim(), fields[1].trim(), fields[2].trim());
            if surface.is_empty() || lemma.is_empty() {
                return Err(Error::parse("lexicon", row, "empty surface or lemma"));
            }
            let class: LemmaClass = class.parse().map_err(|e| Error::parse("lexicon", row, e))?;
            lexicon.insert(surface, class, lemma);
        }
        for ((surface, class), lemma) in &lexicon.entries {
            if let Some(other) = lexicon.get(lemma, *class) {
                if other != lemma {
                    warn!(
                        "lexicon lemma `{}` ({} of `{}`) is not a fixed point: it maps to `{}`",
                        lemma,
                        class.as_str(),
                        surface,
                        other
                    );
                }
            }
        }
        Ok(lexicon)
    }
}

pub fn load_lexicon(path: impl AsRef<Path>) -> Result<MorphLexicon> {
    MorphLexicon::parse(&fs::read_to_string(path)?)
}

/// Lowercases `surface` and looks it up; unknown words are their own lemma.
pub fn lemmatize(surface: &str, class: LemmaClass, lexicon: &MorphLexicon) -> String {
    let folded = surface.to_lowercase();
    match lexicon.get(&folded, class) {
        Some(lemma) => lemma.to_string(),
        None => folded,
    }
}
