//! Rule-based morphological analysis for Uzbek (Latin script).
//!
//! Tokens are split into stem and inflectional ending by matching against a
//! closed inventory of ending patterns, filtered by phonological conditions
//! and junction rules, and mapped back to a dictionary lemma.
//!
//! ```
//! use uzmorph::Analyzer;
//!
//! let analyzer = Analyzer::seed();
//! let set = analyzer.analyze("daftarimdan", None).unwrap();
//! assert_eq!(set.best().render(), "daftar[NOUN] + im[Poss=1Sg] + dan[Case=Abl] | lemma: daftar");
//! ```

pub mod alphabet;
pub mod analyzer;
pub mod data;
pub mod evaluation;
pub mod lexicon;
pub mod morphophonology;

pub use alphabet::{AlphabetSpec, NormalizeError, Token};
pub use analyzer::{
    Analysis, AnalysisRecord, AnalysisSet, Analyzer, LoadError, Source, TokenError,
};
pub use lexicon::{Feature, LexiconBundle, LexiconError, Pos};
