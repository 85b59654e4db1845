//! Seed data compiled into the library.

use crate::lexicon::LexiconSources;

pub const ALPHABET: &str = include_str!("../data/alphabet.txt");
pub const RULES: &str = include_str!("../data/rules.tsv");
pub const MANIFEST: &str = include_str!("../data/manifest.tsv");

pub const CSE: &str = include_str!("../data/cse.tsv");
pub const EXCEPTIONAL_STEMS: &str = include_str!("../data/exceptional_stems.txt");
pub const NON_AFFIXED: &str = include_str!("../data/non_affixed.txt");
pub const NUMBERS: &str = include_str!("../data/numbers.txt");
pub const SHORT_STEMS: &str = include_str!("../data/short_stems.txt");
pub const LEMMA_EXCEPTIONS: &str = include_str!("../data/lemma_exceptions.tsv");

pub fn seed_sources() -> LexiconSources {
    LexiconSources {
        cse: CSE.to_string(),
        exceptional_stems: EXCEPTIONAL_STEMS.to_string(),
        non_affixed: NON_AFFIXED.to_string(),
        numbers: NUMBERS.to_string(),
        short_stems: SHORT_STEMS.to_string(),
        lemma_exceptions: LEMMA_EXCEPTIONS.to_string(),
    }
}
