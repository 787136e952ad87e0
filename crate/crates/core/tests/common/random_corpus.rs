//! Small random tagged corpora drawn from a fixed vocabulary.

use proptest::prelude::*;

use ppattach::{Sentence, TaggedToken};

const WORDS: &[(&str, &str)] = &[
    ("the", "DT"),
    ("a", "DT"),
    ("big", "JJ"),
    ("shirt", "NN"),
    ("cake", "NN"),
    ("pockets", "NNS"),
    ("Paris", "NNP"),
    ("washed", "VBD"),
    ("bought", "VBD"),
    ("is", "VBZ"),
    ("eat", "VB"),
    ("with", "IN"),
    ("of", "IN"),
    ("in", "IN"),
    ("to", "TO"),
    ("5", "CD"),
    ("$", "$"),
    ("they", "PRP"),
    (".", "."),
];

pub fn sentence() -> impl Strategy<Value = Sentence> {
    prop::collection::vec(prop::sample::select(WORDS), 1..14).prop_map(|ws| Sentence {
        tokens: ws.into_iter().map(|(s, t)| TaggedToken::new(s, t)).collect(),
    })
}

pub fn corpus(max: usize) -> impl Strategy<Value = Vec<Sentence>> {
    prop::collection::vec(sentence(), 0..max)
}
