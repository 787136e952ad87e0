//! Synthetic corpora with planted attachment preferences.
//!
//! Every sentence is built so the extractor reads exactly one unambiguous
//! attachment out of it (or none), following per-head preposition
//! distributions. Held-out ambiguous items are labeled by the planted
//! preference: the attachment `a` maximizing `rate(a) * dist(a)(p)`. Items
//! where neither side dominates by `min_dominance` are not emitted.
//!
//! Sentence shapes (Penn tags):
//!
//! ```text
//! the/DT <subject>/NN <verb>/VBD [<p>/IN the/DT <object>/NN] ./.
//! the/DT <noun>/NN [<p>/IN the/DT <object>/NN] appeared/VBD ./.
//! ```

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus_io::{Sentence, TaggedToken};
use crate::error::{Error, Result};
use crate::extractor::Site;
use crate::models::AttachmentInstance;

#[derive(Clone, Debug, PartialEq)]
pub struct HeadPreference {
    pub lemma: String,
    /// Probability that an occurrence carries an unambiguous attachment.
    pub attach_rate: f64,
    /// Preposition distribution of those attachments; must sum to 1.
    pub preps: Vec<(String, f64)>,
}

impl HeadPreference {
    pub fn new(lemma: &str, attach_rate: f64, preps: &[(&str, f64)]) -> Self {
        HeadPreference {
            lemma: lemma.to_string(),
            attach_rate,
            preps: preps.iter().map(|(p, w)| (p.to_string(), *w)).collect(),
        }
    }

    fn prob(&self, prep: &str) -> f64 {
        self.preps.iter().filter(|(p, _)| p == prep).map(|(_, w)| w).sum()
    }

    fn sample_prep<R: Rng>(&self, rng: &mut R) -> &str {
        let mut u: f64 = rng.gen();
        for (p, w) in &self.preps {
            if u < *w {
                return p;
            }
            u -= w;
        }
        &self.preps.last().expect("validated nonempty").0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticSpec {
    pub verbs: Vec<HeadPreference>,
    pub nouns: Vec<HeadPreference>,
    pub subjects: Vec<String>,
    pub objects: Vec<String>,
    pub sentences: usize,
    pub test_items: usize,
    /// Share of test items whose preposition is `of`.
    pub of_fraction: f64,
    pub min_dominance: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticCorpus {
    pub sentences: Vec<Sentence>,
    pub test: Vec<AttachmentInstance>,
}

const VERB_POOL: &[&str] = &[
    "wash", "close", "rise", "reach", "compare", "account", "value", "say", "buy", "sell", "carry", "drive", "send",
    "hold", "open", "move", "build", "cut", "pay", "fill",
];
const NOUN_POOL: &[&str] = &[
    "shirt", "share", "trading", "cake", "profit", "bank", "letter", "road", "house", "plan", "report", "talk",
    "market", "loan", "story", "car", "rate", "fund", "deal", "bill",
];
const SUBJECT_POOL: &[&str] = &["company", "analyst", "investor", "official", "group", "firm"];
const OBJECT_POOL: &[&str] = &[
    "soap",
    "pocket",
    "friend",
    "comment",
    "exchange",
    "interview",
    "month",
    "day",
    "city",
    "week",
];
const VERB_PREPS: &[&str] = &["with", "at", "for", "into", "by"];
const NOUN_PREPS: &[&str] = &["from", "on", "about", "in", "like"];

impl SyntheticSpec {
    /// A spec where verbs lean on one set of prepositions and nouns on a
    /// disjoint set, with randomized per-head strengths.
    pub fn planted(verbs: usize, nouns: usize, sentences: usize, test_items: usize, seed: u64) -> Result<Self> {
        if verbs > VERB_POOL.len() || nouns > NOUN_POOL.len() {
            return Err(Error::InvalidSpec(format!(
                "at most {} verbs and {} nouns",
                VERB_POOL.len(),
                NOUN_POOL.len()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut head = |lemma: &str, favored: &[&str]| {
            let mut preps: Vec<(String, f64)> = VERB_PREPS
                .iter()
                .chain(NOUN_PREPS)
                .map(|p| {
                    let w = if favored.contains(p) {
                        rng.gen_range(1.0..3.0)
                    } else {
                        rng.gen_range(0.02..0.15)
                    };
                    (p.to_string(), w)
                })
                .collect();
            let total: f64 = preps.iter().map(|(_, w)| w).sum();
            for (_, w) in &mut preps {
                *w /= total;
            }
            HeadPreference {
                lemma: lemma.to_string(),
                attach_rate: rng.gen_range(0.3..0.7),
                preps,
            }
        };
        let verbs = VERB_POOL[..verbs].iter().map(|v| head(v, VERB_PREPS)).collect();
        let nouns = NOUN_POOL[..nouns].iter().map(|n| head(n, NOUN_PREPS)).collect();
        Ok(SyntheticSpec {
            verbs,
            nouns,
            subjects: SUBJECT_POOL.iter().map(|s| s.to_string()).collect(),
            objects: OBJECT_POOL.iter().map(|s| s.to_string()).collect(),
            sentences,
            test_items,
            of_fraction: 0.1,
            min_dominance: 3.0,
            seed,
        })
    }

    pub fn validate(&self) -> Result<()> {
        for h in self.verbs.iter().chain(&self.nouns) {
            if !(0.0..=1.0).contains(&h.attach_rate) {
                return Err(Error::InvalidSpec(format!("{}: attach_rate outside [0, 1]", h.lemma)));
            }
            if h.preps.is_empty() {
                return Err(Error::InvalidSpec(format!(
                    "{}: empty preposition distribution",
                    h.lemma
                )));
            }
            if h.preps.iter().any(|(_, w)| w.is_nan() || *w < 0.0) {
                return Err(Error::InvalidSpec(format!("{}: negative preposition weight", h.lemma)));
            }
            let total: f64 = h.preps.iter().map(|(_, w)| w).sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidSpec(format!(
                    "{}: preposition distribution sums to {}",
                    h.lemma, total
                )));
            }
        }
        if self.sentences > 0
            && (self.verbs.is_empty() || self.nouns.is_empty() || self.subjects.is_empty() || self.objects.is_empty())
        {
            return Err(Error::InvalidSpec(
                "sentences need verbs, nouns, subjects and objects".into(),
            ));
        }
        if self.test_items > 0 && (self.verbs.is_empty() || self.nouns.is_empty() || self.objects.is_empty()) {
            return Err(Error::InvalidSpec("test items need verbs, nouns and objects".into()));
        }
        if !(0.0..=1.0).contains(&self.of_fraction) || self.min_dominance < 1.0 {
            return Err(Error::InvalidSpec(
                "of_fraction outside [0, 1] or min_dominance below 1".into(),
            ));
        }
        Ok(())
    }
}

fn tok(s: &str, t: &str) -> TaggedToken {
    TaggedToken::new(s, t)
}

pub fn generate_synthetic_corpus(spec: &SyntheticSpec) -> Result<SyntheticCorpus> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut sentences = Vec::with_capacity(spec.sentences);
    for _ in 0..spec.sentences {
        let mut tokens = vec![tok("the", "DT")];
        let verb_shape = rng.gen_bool(0.5);
        let head = if verb_shape {
            spec.verbs.choose(&mut rng)
        } else {
            spec.nouns.choose(&mut rng)
        }
        .expect("validated nonempty");
        if verb_shape {
            tokens.push(tok(spec.subjects.choose(&mut rng).expect("validated"), "NN"));
            tokens.push(tok(&head.lemma, "VBD"));
        } else {
            tokens.push(tok(&head.lemma, "NN"));
        }
        if rng.gen_bool(head.attach_rate) {
            let prep = head.sample_prep(&mut rng);
            tokens.push(tok(prep, "IN"));
            tokens.push(tok("the", "DT"));
            tokens.push(tok(spec.objects.choose(&mut rng).expect("validated"), "NN"));
        }
        if !verb_shape {
            tokens.push(tok("appeared", "VBD"));
        }
        tokens.push(tok(".", "."));
        sentences.push(Sentence::new(tokens));
    }

    let preps: Vec<&str> = spec
        .verbs
        .iter()
        .chain(&spec.nouns)
        .flat_map(|h| h.preps.iter().map(|(p, _)| p.as_str()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut test = Vec::with_capacity(spec.test_items);
    let max_attempts = 1000 * spec.test_items.max(1);
    let mut attempts = 0;
    while test.len() < spec.test_items {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::InvalidSpec(format!(
                "could only plant {} of {} test items at dominance {}",
                test.len(),
                spec.test_items,
                spec.min_dominance
            )));
        }
        let v = spec.verbs.choose(&mut rng).expect("validated");
        let n = spec.nouns.choose(&mut rng).expect("validated");
        let n2 = spec.objects.choose(&mut rng).expect("validated");
        if rng.gen_bool(spec.of_fraction) {
            test.push(AttachmentInstance::new(&v.lemma, &n.lemma, "of", n2).with_gold(Site::N));
            continue;
        }
        let p = *preps.choose(&mut rng).expect("validated");
        let score_n = n.attach_rate * n.prob(p);
        let score_v = v.attach_rate * v.prob(p);
        let (hi, lo, gold) = if score_n > score_v {
            (score_n, score_v, Site::N)
        } else {
            (score_v, score_n, Site::V)
        };
        if hi > 0.0 && hi >= spec.min_dominance * lo {
            test.push(AttachmentInstance::new(&v.lemma, &n.lemma, p, n2).with_gold(gold));
        }
    }
    Ok(SyntheticCorpus { sentences, test })
}
