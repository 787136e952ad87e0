//! The worked example: one tagged sentence, its chunked form, and the only
//! two tuples it yields.

use ppattach::{Site, TagConfig};

pub const TAGGED: &str = "The/DT professional/JJ conduct/NN of/IN lawyers/NNS in/IN other/JJ jurisdictions/NNS \
is/VBZ guided/VBN by/IN American/NNP Bar/NNP Association/NNP rules/NNS or/CC by/IN state/NN bar/NN ethics/NNS \
codes/NNS ,/, none/NN of/IN which/WDT permit/VBP non-lawyers/NNS to/TO be/VB partners/NNS in/IN law/NN firms/NNS ./.";

pub const CHUNKED: &str = "conduct/NN of/IN lawyers/NNS in/IN jurisdictions/NNS is/VBZ guided/VBN by/IN rules/NNS \
or/CC by/IN codes/NNS ,/, none/NN of/IN which/WDT permit/VBP non-lawyers/NNS to/TO be/VB partners/NNS in/IN firms/NNS ./.";

pub const TUPLES: &[(Site, &str, &str, &str)] = &[
    (Site::N, "lawyer", "in", "jurisdiction"),
    (Site::V, "guide", "by", "rule"),
];

pub fn config() -> TagConfig {
    TagConfig::english()
}
