//! Head-word chunking.
//!
//! Three passes, in order:
//!
//! 1. numeric surfaces become the number token (`46/CD` → `num/CD`);
//! 2. a maximal run of quantifier-phrase tags (`CD`, `$`) containing a
//!    number becomes its last alphabetic number word (`num million` →
//!    `million`), or the number token when there is none;
//! 3. a maximal run of noun-phrase modifiers and nouns that ends in a noun
//!    becomes that final noun (`The professional conduct` → `conduct`).
//!
//! Passes 2 and 3 only run when the profile enables chunking.

use std::ops::Range;
use std::sync::OnceLock;

use regex::Regex;

use crate::config::TagConfig;
use crate::corpus_io::{Sentence, TaggedToken};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChunkedSentence {
    pub tokens: Vec<TaggedToken>,
    /// Input span each output token replaced.
    pub provenance: Vec<Range<usize>>,
}

impl ChunkedSentence {
    pub fn into_sentence(self) -> Sentence {
        Sentence::new(self.tokens)
    }

    pub fn as_sentence(&self) -> Sentence {
        Sentence::new(self.tokens.clone())
    }
}

fn numeric_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[+-]?(?:\d+(?:[.,/\-]\d+)*|\.\d+)$").unwrap())
}

pub fn is_numeric(surface: &str) -> bool {
    numeric_re().is_match(surface)
}

/// Replaces every numeric token with the profile's number token.
pub fn normalize_numbers(sentence: &Sentence, config: &TagConfig) -> Sentence {
    let tokens = sentence
        .tokens
        .iter()
        .map(|t| {
            if is_numeric(&t.surface) {
                TaggedToken::new(config.num_token.clone(), config.number_tag.clone())
            } else {
                t.clone()
            }
        })
        .collect();
    Sentence::new(tokens)
}

pub fn chunk(sentence: &Sentence, config: &TagConfig) -> ChunkedSentence {
    let normalized = normalize_numbers(sentence, config);
    let identity = ChunkedSentence {
        provenance: (0..normalized.len()).map(|i| i..i + 1).collect(),
        tokens: normalized.tokens,
    };
    if !config.chunking_enabled {
        return identity;
    }
    let qp = compose(&identity, quantifier_pass(&identity.tokens, config));
    compose(&qp, noun_phrase_pass(&qp.tokens, config))
}

/// Re-expresses `step` (whose spans index into `prev.tokens`) in terms of
/// the original input positions.
fn compose(prev: &ChunkedSentence, step: ChunkedSentence) -> ChunkedSentence {
    let provenance = step
        .provenance
        .iter()
        .map(|r| prev.provenance[r.start].start..prev.provenance[r.end - 1].end)
        .collect();
    ChunkedSentence {
        tokens: step.tokens,
        provenance,
    }
}

fn quantifier_pass(tokens: &[TaggedToken], config: &TagConfig) -> ChunkedSentence {
    let mut out = Vec::with_capacity(tokens.len());
    let mut spans = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        let mut end = i;
        while end < tokens.len() && config.qp_tags.contains(&tokens[end].tag) {
            end += 1;
        }
        let run = &tokens[i..end];
        if run.iter().any(|t| t.tag == config.number_tag) {
            let head = run
                .iter()
                .rev()
                .find(|t| {
                    t.tag == config.number_tag
                        && t.surface != config.num_token
                        && t.surface.chars().all(char::is_alphabetic)
                })
                .cloned()
                .unwrap_or_else(|| TaggedToken::new(config.num_token.clone(), config.number_tag.clone()));
            out.push(head);
            spans.push(i..end);
            i = end;
        } else {
            // no quantity in this run (or no run at all): keep one token
            out.push(tokens[i].clone());
            spans.push(i..i + 1);
            i += 1;
        }
    }
    ChunkedSentence {
        tokens: out,
        provenance: spans,
    }
}

fn noun_phrase_pass(tokens: &[TaggedToken], config: &TagConfig) -> ChunkedSentence {
    let in_np = |t: &TaggedToken| config.np_modifier_tags.contains(&t.tag) || config.noun_tags.contains(&t.tag);
    let mut out = Vec::with_capacity(tokens.len());
    let mut spans = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        let mut last_noun = None;
        let mut j = i;
        while j < tokens.len() && in_np(&tokens[j]) {
            if config.noun_tags.contains(&tokens[j].tag) {
                last_noun = Some(j);
            }
            j += 1;
        }
        match last_noun {
            Some(head) => {
                out.push(tokens[head].clone());
                spans.push(i..head + 1);
                i = head + 1;
            }
            None => {
                out.push(tokens[i].clone());
                spans.push(i..i + 1);
                i += 1;
            }
        }
    }
    ChunkedSentence {
        tokens: out,
        provenance: spans,
    }
}
