//! Attachment estimators and classifiers.
//!
//! An ambiguous `(v, n, p, n2)` is scored per attachment `a` as
//! `Pr(a | v, n) * Pr(p | a, v, n)` with
//!
//! ```text
//! Pr(a=N | v,n) ≈ Pr(true|n) / Z      Pr(p | a=N) ≈ Pr(p | true, n)
//! Pr(a=V | v,n) ≈ Pr(true|v) / Z      Pr(p | a=V) ≈ Pr(p | true, v)
//! Z = Pr(true|n) + Pr(true|v)
//! ```
//!
//! `Pr(true|x)` is `c(x,true) / c(x)`, or 1/2 for a lemma absent from the
//! corpus. `Pr(p | true, x)` comes from either the bigram estimator
//! (uniform backoff over the trained prepositions) or the interpolation
//! estimator. Of-equivalent prepositions always attach to the noun. `n2` is
//! carried but never scored.
//!
//! All probabilities are exact rationals; floats are derived for display.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::config::TagConfig;
use crate::counts::CountStore;
use crate::error::{Error, Result};
use crate::extractor::Site;

/// An exact probability.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(BigRational);

impl Probability {
    pub fn ratio(num: u64, den: u64) -> Self {
        Probability(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Probability(BigRational::zero())
    }

    pub fn one() -> Self {
        Probability(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Probability(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn clamped(self) -> Self {
        if self.0 > BigRational::one() {
            Probability::one()
        } else {
            self
        }
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::ops::Mul for &Probability {
    type Output = Probability;

    fn mul(self, rhs: &Probability) -> Probability {
        Probability(&self.0 * &rhs.0)
    }
}

/// `Pr(true | head)` for a noun (`Site::N`) or verb (`Site::V`).
pub fn pr_true(site: Site, head: &str, store: &CountStore) -> Probability {
    let corpus = store.corpus_count(site, head);
    if corpus == 0 {
        return Probability::ratio(1, 2);
    }
    Probability::ratio(store.attached_count(site, head), corpus).clamped()
}

pub fn pr_true_given_noun(n: &str, store: &CountStore) -> Probability {
    pr_true(Site::N, n, store)
}

pub fn pr_true_given_verb(v: &str, store: &CountStore) -> Probability {
    pr_true(Site::V, v, store)
}

/// Bigram estimate of `Pr(p | true, head)`, uniform over the trained
/// prepositions when the head has no tuples.
pub fn pr_p_bigram(p: &str, site: Site, head: &str, store: &CountStore) -> Result<Probability> {
    let vocab = store.prep_vocab().len() as u64;
    if vocab == 0 {
        return Err(Error::NotTrained("no prepositions in the tuple counts".into()));
    }
    let attached = store.attached_count(site, head);
    Ok(if attached > 0 {
        Probability::ratio(store.pair_count(site, head, p), attached)
    } else {
        Probability::ratio(1, vocab)
    })
}

/// Interpolated estimate
/// `(c(head,p,true) + c_site(p)/c_site) / (c(head,true) + 1)`.
pub fn pr_p_interp(p: &str, site: Site, head: &str, store: &CountStore) -> Result<Probability> {
    let total = store.site_total(site);
    if total == 0 {
        return Err(Error::NotTrained(format!("no {}-attached tuples", site)));
    }
    Ok(interp_formula(
        store.pair_count(site, head, p),
        store.attached_count(site, head),
        store.prep_total(site, p),
        total,
    ))
}

/// `(pair + prep_total / site_total) / (head_total + 1)`; `site_total > 0`.
pub fn interp_formula(pair: u64, head_total: u64, prep_total: u64, site_total: u64) -> Probability {
    let prior = BigRational::new(prep_total.into(), site_total.into());
    let num = BigRational::from_integer(pair.into()) + prior;
    let den = BigRational::from_integer((head_total + 1).into());
    Probability(num / den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Baseline,
    Bigram,
    Interp,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Baseline => "baseline",
            Variant::Bigram => "bigram",
            Variant::Interp => "interp",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "baseline" | "base" => Ok(Variant::Baseline),
            "bigram" => Ok(Variant::Bigram),
            "interp" | "interpolation" => Ok(Variant::Interp),
            other => Err(format!("unknown variant `{}` (baseline, bigram, interp)", other)),
        }
    }
}

/// Which preposition estimator a trained model uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrepEstimator {
    Bigram,
    Interp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachmentInstance {
    pub v: String,
    pub n: String,
    pub p: String,
    pub n2: String,
    pub gold: Option<Site>,
}

impl AttachmentInstance {
    pub fn new(v: &str, n: &str, p: &str, n2: &str) -> Self {
        AttachmentInstance {
            v: v.to_string(),
            n: n.to_string(),
            p: p.to_string(),
            n2: n2.to_string(),
            gold: None,
        }
    }

    pub fn with_gold(mut self, gold: Site) -> Self {
        self.gold = Some(gold);
        self
    }
}

/// Which branch of the decision produced a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    OfRule,
    Model,
    ZeroFallback,
    TieFallback,
    Baseline,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::OfRule => "of_rule",
            Rule::Model => "model",
            Rule::ZeroFallback => "zero_fallback",
            Rule::TieFallback => "tie_fallback",
            Rule::Baseline => "baseline",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub label: Site,
    pub score_n: Probability,
    pub score_v: Probability,
    pub rule: Rule,
}

/// Multiplies each attachment probability by its preposition probability.
pub fn score_products(
    attach_n: &Probability,
    prep_n: &Probability,
    attach_v: &Probability,
    prep_v: &Probability,
) -> (Probability, Probability) {
    (attach_n * prep_n, attach_v * prep_v)
}

/// Argmax over the two scores; exact ties go to the noun.
pub fn decide(score_n: &Probability, score_v: &Probability) -> (Site, Rule) {
    match score_n.cmp(score_v) {
        Ordering::Greater => (Site::N, Rule::Model),
        Ordering::Less => (Site::V, Rule::Model),
        Ordering::Equal => (Site::N, Rule::TieFallback),
    }
}

/// A trained model: the shared `Pr(true|x)` estimate plus one preposition
/// estimator, over a borrowed count store.
#[derive(Clone, Copy, Debug)]
pub struct Estimator<'a> {
    variant: PrepEstimator,
    store: &'a CountStore,
}

impl<'a> Estimator<'a> {
    /// Fails when the store cannot support the estimator: no prepositions
    /// for the bigram estimator, or an empty attachment type for
    /// interpolation.
    pub fn new(variant: PrepEstimator, store: &'a CountStore) -> Result<Self> {
        if store.prep_vocab().is_empty() {
            return Err(Error::NotTrained("no prepositions in the tuple counts".into()));
        }
        if variant == PrepEstimator::Interp {
            for site in [Site::N, Site::V] {
                if store.site_total(site) == 0 {
                    return Err(Error::NotTrained(format!("no {}-attached tuples", site)));
                }
            }
        }
        Ok(Estimator { variant, store })
    }

    pub fn variant(&self) -> PrepEstimator {
        self.variant
    }

    pub fn store(&self) -> &'a CountStore {
        self.store
    }

    pub fn pr_p(&self, p: &str, site: Site, head: &str) -> Probability {
        let r = match self.variant {
            PrepEstimator::Bigram => pr_p_bigram(p, site, head, self.store),
            PrepEstimator::Interp => pr_p_interp(p, site, head, self.store),
        };
        r.expect("checked at construction")
    }

    /// Normalized scores `(score_n, score_v)`; both zero when `Z` is zero.
    pub fn attachment_scores(&self, inst: &AttachmentInstance) -> (Probability, Probability) {
        let phi_n = pr_true(Site::N, &inst.n, self.store);
        let phi_v = pr_true(Site::V, &inst.v, self.store);
        let z = phi_n.as_rational() + phi_v.as_rational();
        if z.is_zero() {
            return (Probability::zero(), Probability::zero());
        }
        let attach_n = Probability(phi_n.as_rational() / &z);
        let attach_v = Probability(phi_v.as_rational() / &z);
        score_products(
            &attach_n,
            &self.pr_p(&inst.p, Site::N, &inst.n),
            &attach_v,
            &self.pr_p(&inst.p, Site::V, &inst.v),
        )
    }

    pub fn classify(&self, inst: &AttachmentInstance, config: &TagConfig) -> ClassificationResult {
        if config.is_of_equivalent(&inst.p) {
            return ClassificationResult {
                label: Site::N,
                score_n: Probability::zero(),
                score_v: Probability::zero(),
                rule: Rule::OfRule,
            };
        }
        let phi_n = pr_true(Site::N, &inst.n, self.store);
        let phi_v = pr_true(Site::V, &inst.v, self.store);
        if phi_n.is_zero() && phi_v.is_zero() {
            return ClassificationResult {
                label: Site::V,
                score_n: Probability::zero(),
                score_v: Probability::zero(),
                rule: Rule::ZeroFallback,
            };
        }
        let (score_n, score_v) = self.attachment_scores(inst);
        let (label, rule) = decide(&score_n, &score_v);
        ClassificationResult {
            label,
            score_n,
            score_v,
            rule,
        }
    }
}

/// Noun for of-equivalents, verb otherwise.
pub fn classify_baseline(inst: &AttachmentInstance, config: &TagConfig) -> ClassificationResult {
    let (label, rule) = if config.is_of_equivalent(&inst.p) {
        (Site::N, Rule::OfRule)
    } else {
        (Site::V, Rule::Baseline)
    };
    ClassificationResult {
        label,
        score_n: Probability::zero(),
        score_v: Probability::zero(),
        rule,
    }
}

/// Any of the three classifiers behind one interface.
#[derive(Clone, Copy, Debug)]
pub enum Classifier<'a> {
    Baseline,
    Model(Estimator<'a>),
}

impl<'a> Classifier<'a> {
    /// `store` may be `None` only for the baseline.
    pub fn new(variant: Variant, store: Option<&'a CountStore>) -> Result<Self> {
        let estimator = match variant {
            Variant::Baseline => return Ok(Classifier::Baseline),
            Variant::Bigram => PrepEstimator::Bigram,
            Variant::Interp => PrepEstimator::Interp,
        };
        let store = store.ok_or_else(|| Error::NotTrained(format!("variant {} needs a model", variant)))?;
        Ok(Classifier::Model(Estimator::new(estimator, store)?))
    }

    pub fn classify(&self, inst: &AttachmentInstance, config: &TagConfig) -> ClassificationResult {
        match self {
            Classifier::Baseline => classify_baseline(inst, config),
            Classifier::Model(e) => e.classify(inst, config),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn en() -> TagConfig {
        TagConfig::english()
    }

    fn store() -> CountStore {
        CountStore::for_config(&en(), false)
    }

    fn p(n: u64, d: u64) -> Probability {
        Probability::ratio(n, d)
    }

    #[test]
    fn phi_estimates() {
        let mut s = store();
        s.add_word(Site::N, "shirt", 4);
        s.add_pair(Site::N, "shirt", "with", 2);
        s.add_word(Site::N, "cake", 7);
        assert_eq!(pr_true_given_noun("shirt", &s), p(1, 2));
        assert_eq!(pr_true_given_noun("unseen", &s), p(1, 2));
        assert_eq!(pr_true_given_verb("unseen", &s), p(1, 2));
        assert_eq!(pr_true_given_noun("cake", &s), p(0, 1));
    }

    #[test]
    fn phi_is_clamped() {
        let mut s = store();
        s.add_word(Site::V, "run", 1);
        s.add_pair(Site::V, "run", "to", 3);
        assert_eq!(pr_true_given_verb("run", &s), Probability::one());
    }

    #[test]
    fn bigram_estimates() {
        let mut s = store();
        s.add_pair(Site::V, "rise", "to", 3);
        s.add_pair(Site::V, "rise", "in", 1);
        s.add_pair(Site::N, "share", "on", 1);
        assert_eq!(pr_p_bigram("to", Site::V, "rise", &s).unwrap(), p(3, 4));
        assert_eq!(pr_p_bigram("on", Site::N, "share", &s).unwrap(), Probability::one());
        for i in 0..22 {
            s.add_pair(Site::N, "x", &format!("p{}", i), 1);
        }
        assert_eq!(s.prep_vocab().len(), 25);
        assert_eq!(pr_p_bigram("to", Site::N, "unseen", &s).unwrap(), p(1, 25));
        assert_eq!(pr_p_bigram("to", Site::N, "unseen", &s).unwrap().to_f64(), 0.04);
        assert!(matches!(
            pr_p_bigram("to", Site::N, "x", &store()),
            Err(Error::NotTrained(_))
        ));
    }

    #[test]
    fn interp_estimates() {
        let mut s = store();
        s.add_pair(Site::N, "n", "p", 2);
        s.add_pair(Site::N, "n", "q", 1);
        s.add_pair(Site::N, "m", "p", 8);
        s.add_pair(Site::N, "m", "r", 29);
        assert_eq!(s.prep_total(Site::N, "p"), 10);
        assert_eq!(s.site_total(Site::N), 40);
        assert_eq!(pr_p_interp("p", Site::N, "n", &s).unwrap(), p(9, 16));
        assert_eq!(pr_p_interp("p", Site::N, "unseen", &s).unwrap(), p(10, 40));
        assert_eq!(pr_p_interp("zzz", Site::N, "unseen", &s).unwrap(), Probability::zero());
        assert!(pr_p_interp("p", Site::V, "v", &s).is_err());
    }

    #[test]
    fn rise_table_arithmetic() {
        let (n, v) = score_products(&p(2, 100), &p(24, 100), &p(30, 100), &p(44, 100));
        assert_eq!(n, p(48, 10000));
        assert_eq!(v, p(132, 1000));
        assert_eq!(decide(&n, &v), (Site::V, Rule::Model));
    }

    #[test]
    fn symmetric_store_ties_to_noun() {
        let mut s = store();
        s.add_word(Site::N, "x", 3);
        s.add_word(Site::V, "x", 3);
        s.add_pair(Site::N, "x", "with", 1);
        s.add_pair(Site::V, "x", "with", 1);
        let e = Estimator::new(PrepEstimator::Bigram, &s).unwrap();
        let inst = AttachmentInstance::new("x", "x", "with", "y");
        let (sn, sv) = e.attachment_scores(&inst);
        assert_eq!(sn, sv);
        let r = e.classify(&inst, &en());
        assert_eq!((r.label, r.rule), (Site::N, Rule::TieFallback));
    }

    #[test]
    fn zero_z_falls_back_to_verb() {
        let mut s = store();
        s.add_word(Site::N, "shirt", 2);
        s.add_word(Site::V, "buy", 2);
        s.add_pair(Site::V, "wash", "with", 1);
        let e = Estimator::new(PrepEstimator::Bigram, &s).unwrap();
        let inst = AttachmentInstance::new("buy", "shirt", "with", "x");
        assert_eq!(e.attachment_scores(&inst), (Probability::zero(), Probability::zero()));
        let r = e.classify(&inst, &en());
        assert_eq!((r.label, r.rule), (Site::V, Rule::ZeroFallback));
    }

    #[test]
    fn of_rule_on_empty_store() {
        let s = store();
        let inst = AttachmentInstance::new("eat", "cake", "of", "chocolate");
        assert_eq!(classify_baseline(&inst, &en()).label, Site::N);
        // an untrained store cannot build an estimator at all
        assert!(Estimator::new(PrepEstimator::Bigram, &s).is_err());
        assert!(Classifier::new(Variant::Bigram, None).is_err());
        assert!(Classifier::new(Variant::Baseline, None).is_ok());
    }

    #[test]
    fn baseline() {
        let r = classify_baseline(&AttachmentInstance::new("bought", "shirt", "with", "pockets"), &en());
        assert_eq!(r.label, Site::V);
        let es = TagConfig::spanish();
        let r = classify_baseline(&AttachmentInstance::new("comer", "plato", "del", "dia"), &es);
        assert_eq!((r.label, r.rule), (Site::N, Rule::OfRule));
    }

    #[test]
    fn variant_names() {
        for v in [Variant::Baseline, Variant::Bigram, Variant::Interp] {
            assert_eq!(v.as_str().parse::<Variant>().unwrap(), v);
        }
        assert!("trigram".parse::<Variant>().is_err());
    }

    fn arb_store() -> impl Strategy<Value = CountStore> {
        let heads = prop::sample::select(vec!["a", "b", "c"]);
        let preps = prop::sample::select(vec!["in", "on", "to"]);
        let pairs = prop::collection::vec((any::<bool>(), heads.clone(), preps, 1u64..5), 2..12);
        let words = prop::collection::vec((any::<bool>(), heads, 0u64..6), 0..8);
        (pairs, words).prop_map(|(pairs, words)| {
            let mut s = CountStore::for_config(&TagConfig::english(), false);
            s.add_pair(Site::N, "a", "in", 1);
            s.add_pair(Site::V, "a", "in", 1);
            for (noun, h, p, c) in pairs {
                s.add_pair(if noun { Site::N } else { Site::V }, h, p, c);
            }
            for (noun, h, c) in words {
                s.add_word(if noun { Site::N } else { Site::V }, h, c);
            }
            s
        })
    }

    proptest! {
        #[test]
        fn bigram_sums_to_one(s in arb_store(), head in "[abcz]") {
            for site in [Site::N, Site::V] {
                let total = s
                    .prep_vocab()
                    .iter()
                    .map(|p| pr_p_bigram(p, site, &head, &s).unwrap().as_rational().clone())
                    .fold(BigRational::zero(), |a, b| a + b);
                prop_assert_eq!(total, BigRational::one());
            }
        }

        #[test]
        fn dropping_z_keeps_label(s in arb_store(), v in "[abcz]", n in "[abcz]", p in "in|on|to|at") {
            for variant in [PrepEstimator::Bigram, PrepEstimator::Interp] {
                let e = Estimator::new(variant, &s).unwrap();
                let inst = AttachmentInstance::new(&v, &n, &p, "x");
                let r = e.classify(&inst, &en());
                if r.rule == Rule::Model || r.rule == Rule::TieFallback {
                    let raw_n = &pr_true(Site::N, &n, &s) * &e.pr_p(&p, Site::N, &n);
                    let raw_v = &pr_true(Site::V, &v, &s) * &e.pr_p(&p, Site::V, &v);
                    prop_assert_eq!(decide(&raw_n, &raw_v).0, r.label);
                }
            }
        }

        #[test]
        fn interp_strictly_increasing(pair in 0u64..50, extra in 0u64..50, prep in 0u64..50, more in 1u64..50) {
            let head_total = pair + extra;
            let site_total = prep + more;
            let before = interp_formula(pair, head_total, prep, site_total);
            let after = interp_formula(pair + 1, head_total, prep, site_total);
            prop_assert!(after > before);
        }

        #[test]
        fn of_rule_total(s in arb_store(), v in "[abcz]", n in "[abcz]") {
            let inst = AttachmentInstance::new(&v, &n, "of", "x");
            for variant in [PrepEstimator::Bigram, PrepEstimator::Interp] {
                let r = Estimator::new(variant, &s).unwrap().classify(&inst, &en());
                prop_assert_eq!((r.label, r.rule), (Site::N, Rule::OfRule));
            }
        }
    }
}
