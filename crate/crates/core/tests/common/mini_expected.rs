//! Hand-counted values for `data/en/mini_corpus.txt` under the English
//! profile, K = 5, token counts.
//!
//! Extracted tuples (chunked sentence -> decision):
//!   2  I washed with soap            V wash with soap
//!   3  she washed in river           V wash in river
//!   5  shirt with pockets is new     N shirt with pocket
//!   6  cake with cream tasted good   N cake with cream
//!   7  they ate cake with forks      skipped, noun between verb and p
//!   8  they ate with friends         V eat with friend
//!   9  price of cake rose to num..   `of` skipped; V rise to num
//!  10  shirt from Paris              N shirt from paris
//!  11  soap is in box                skipped, copula
//!  12  he bought cake for num ..     skipped, noun between verb and p
//!
//! Corpus counts after chunking:
//!   verbs  wash 3, buy 2, be 2, eat 2, taste 1, rise 1
//!   nouns  shirt 4, cake 4, soap 2, num 2, dollar 2, and 1 each for
//!          river pocket cream fork friend price paris box
//! Tuple marginals: c_N(with)=2 c_N(from)=1 c_N=3;
//!   c_V(with)=2 c_V(in)=1 c_V(to)=1 c_V=4; |P| = 4.
//!
//! Pr(true|x) = c(x,true)/c(x):
//!   shirt 2/4, cake 1/4, soap 0/2, paris 0/1, wash 2/3, buy 0/2,
//!   eat 1/2, rise 1/1; unseen 1/2.
//! Bigram c(x,p,true)/c(x,true), or 1/|P| when c(x,true)=0:
//!   with|shirt 1/2, from|shirt 1/2, in|shirt 0/2, with|cake 1/1,
//!   with|wash 1/2, in|wash 1/2, to|rise 1/1, with|buy 1/4 (backoff).
//! Interpolation (c(x,p,true) + c_a(p)/c_a) / (c(x,true) + 1):
//!   with|shirt (1+2/3)/3 = 5/9     from|shirt (1+1/3)/3 = 4/9
//!   in|shirt   (0+0/3)/3 = 0       with|cake  (1+2/3)/2 = 5/6
//!   with|wash  (1+2/4)/3 = 1/2     in|wash    (1+1/4)/3 = 5/12
//!   to|wash    (0+1/4)/3 = 1/12    with|buy   (0+2/4)/1 = 1/2
//!   to|rise    (1+1/4)/2 = 5/8
//! (wash, shirt, with): Z = 1/2 + 2/3 = 7/6, so Pr(N) = 3/7, Pr(V) = 4/7.
//!   bigram  3/7 * 1/2 = 3/14  vs  4/7 * 1/2 = 2/7    -> V
//!   interp  3/7 * 5/9 = 5/21  vs  4/7 * 1/2 = 6/21   -> V

use ppattach::models::{pr_p_bigram, pr_p_interp, pr_true};
use ppattach::{AttachmentInstance, Classifier, CountStore, Probability, Site, TagConfig, Variant};

pub const CORPUS: &str = include_str!("../../../../data/en/mini_corpus.txt");
pub const LEXICON: &str = include_str!("../../../../data/en/lexicon.tsv");

pub const TUPLES: &[(Site, &str, &str, &str)] = &[
    (Site::V, "wash", "with", "soap"),
    (Site::V, "wash", "in", "river"),
    (Site::N, "shirt", "with", "pocket"),
    (Site::N, "cake", "with", "cream"),
    (Site::V, "eat", "with", "friend"),
    (Site::V, "rise", "to", "num"),
    (Site::N, "shirt", "from", "paris"),
];

pub const PHI: &[(Site, &str, u64, u64)] = &[
    (Site::N, "shirt", 1, 2),
    (Site::N, "cake", 1, 4),
    (Site::N, "soap", 0, 1),
    (Site::N, "paris", 0, 1),
    (Site::N, "unseen", 1, 2),
    (Site::V, "wash", 2, 3),
    (Site::V, "buy", 0, 1),
    (Site::V, "eat", 1, 2),
    (Site::V, "rise", 1, 1),
    (Site::V, "unseen", 1, 2),
];

/// (p, site, head, numerator, denominator)
pub type PrepRow = (&'static str, Site, &'static str, u64, u64);

pub const BIGRAM: &[PrepRow] = &[
    ("with", Site::N, "shirt", 1, 2),
    ("from", Site::N, "shirt", 1, 2),
    ("in", Site::N, "shirt", 0, 1),
    ("with", Site::N, "cake", 1, 1),
    ("with", Site::V, "wash", 1, 2),
    ("in", Site::V, "wash", 1, 2),
    ("to", Site::V, "rise", 1, 1),
    ("with", Site::V, "buy", 1, 4),
];

pub const INTERP: &[PrepRow] = &[
    ("with", Site::N, "shirt", 5, 9),
    ("from", Site::N, "shirt", 4, 9),
    ("in", Site::N, "shirt", 0, 1),
    ("with", Site::N, "cake", 5, 6),
    ("with", Site::V, "wash", 1, 2),
    ("in", Site::V, "wash", 5, 12),
    ("to", Site::V, "wash", 1, 12),
    ("with", Site::V, "buy", 1, 2),
    ("to", Site::V, "rise", 5, 8),
];

/// (variant, score_n, score_v)
pub type Scores = (Variant, (u64, u64), (u64, u64));

/// Scores for (wash, shirt, with).
pub const WASH_SHIRT_WITH: &[Scores] = &[(Variant::Bigram, (3, 14), (2, 7)), (Variant::Interp, (5, 21), (6, 21))];

/// Every hand-derived value that disagrees with `store`; empty when all match.
pub fn mismatches(store: &CountStore, config: &TagConfig) -> Vec<String> {
    let mut bad = Vec::new();
    for &(site, head, n, d) in PHI {
        let got = pr_true(site, head, store);
        if got != Probability::ratio(n, d) {
            bad.push(format!("Pr(true|{} {}) = {}, expected {}/{}", site, head, got, n, d));
        }
    }
    let tables: [(&str, &[PrepRow]); 2] = [("bigram", BIGRAM), ("interp", INTERP)];
    for (name, table) in tables {
        for &(p, site, head, n, d) in table {
            let got = match name {
                "bigram" => pr_p_bigram(p, site, head, store),
                _ => pr_p_interp(p, site, head, store),
            };
            match got {
                Ok(got) if got == Probability::ratio(n, d) => {}
                other => bad.push(format!(
                    "{} Pr({}|{} {}) = {:?}, expected {}/{}",
                    name, p, site, head, other, n, d
                )),
            }
        }
    }
    let inst = AttachmentInstance::new("wash", "shirt", "with", "soap");
    for &(variant, (nn, nd), (vn, vd)) in WASH_SHIRT_WITH {
        match Classifier::new(variant, Some(store)) {
            Ok(c) => {
                let r = c.classify(&inst, config);
                if r.label != Site::V
                    || r.score_n != Probability::ratio(nn, nd)
                    || r.score_v != Probability::ratio(vn, vd)
                {
                    bad.push(format!("{} on wash/shirt/with: {:?}", variant, r));
                }
            }
            Err(e) => bad.push(format!("{}: {}", variant, e)),
        }
    }
    bad
}
