//! Stem/ending junction checks and lemma restoration.
//!
//! Rules are data (`rules.tsv`). A `Junction` rule describes a change that
//! generation applies to a lemma-final grapheme; analysis rejects surface
//! stems that should have undergone it. `LemmaRestore` rules map a changed
//! surface stem back to its dictionary form.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::alphabet::AlphabetSpec;
use crate::data;
use crate::lexicon::{Condition, EndingVariant, LexiconBundle, SHORT_STEM_MAX};

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("rules.tsv:{line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("cannot read rules: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Junction,
    LemmaRestore,
}

impl FromStr for Direction {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "Junction" => Ok(Direction::Junction),
            "LemmaRestore" => Ok(Direction::LemmaRestore),
            _ => Err(()),
        }
    }
}

/// Condition on the last grapheme of the stem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemFinal {
    pub graphemes: Condition,
    /// Minimum number of vowels (syllables) in the stem.
    pub min_vowels: usize,
}

/// Condition on the first grapheme of the ending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndingInitial {
    pub graphemes: Condition,
    /// Feature key the ending's first morpheme must carry.
    pub feature_key: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhonRule {
    pub id: String,
    pub direction: Direction,
    pub stem_final: StemFinal,
    pub ending_initial: Option<EndingInitial>,
    pub rewrite: String,
    pub note: String,
}

impl PhonRule {
    fn matches(
        &self,
        stem: &str,
        variant: &EndingVariant,
        bundle: &LexiconBundle,
        spec: &AlphabetSpec,
    ) -> bool {
        let Ok(graphemes) = spec.graphemes_of(stem) else {
            return false;
        };
        let Some(last) = graphemes.last() else {
            return false;
        };
        if !self.stem_final.graphemes.holds(last, spec) {
            return false;
        }
        if graphemes.iter().filter(|g| spec.is_vowel(g)).count() < self.stem_final.min_vowels {
            return false;
        }
        match &self.ending_initial {
            None => true,
            Some(cond) => {
                let first = spec
                    .graphemes_of(&variant.surface)
                    .ok()
                    .and_then(|g| g.first().copied());
                let Some(first) = first else { return false };
                let key_ok = cond
                    .feature_key
                    .as_deref()
                    .is_none_or(|k| bundle.entry(variant.entry).leading_feature().key() == k);
                key_ok && cond.graphemes.holds(first, spec)
            }
        }
    }

    fn rewrite(&self, stem: &str, spec: &AlphabetSpec) -> String {
        let last = spec.last_grapheme(stem).unwrap_or("");
        format!("{}{}", &stem[..stem.len() - last.len()], self.rewrite)
    }
}

/// Ordered junction and lemma-restoration rules.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleSet {
    junction: Vec<PhonRule>,
    restore: Vec<PhonRule>,
}

impl RuleSet {
    /// The embedded default rules.
    pub fn uzbek() -> Self {
        Self::parse(data::RULES).expect("embedded rules are valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, RuleError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self, RuleError> {
        let mut set = RuleSet::default();
        let mut ids = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let err = |msg: String| RuleError::Syntax { line, msg };
            let cols: Vec<&str> = raw.split('\t').map(str::trim).collect();
            if cols.len() != 6 {
                return Err(err(format!("expected 6 columns, found {}", cols.len())));
            }
            let id = cols[0].to_string();
            if id.is_empty() || !ids.insert(id.clone()) {
                return Err(err(format!("rule id {id:?} is empty or repeated")));
            }
            let direction: Direction = cols[1]
                .parse()
                .map_err(|_| err(format!("unknown direction {:?}", cols[1])))?;
            let stem_final = parse_stem_final(cols[2])
                .ok_or_else(|| err(format!("bad stem_final {:?}", cols[2])))?;
            if stem_final.graphemes == Condition::Any {
                return Err(err("stem_final must not match everything".into()));
            }
            let ending_initial = match cols[3] {
                "" | "-" | "*" => None,
                text => Some(
                    parse_ending_initial(text)
                        .ok_or_else(|| err(format!("bad ending_initial {text:?}")))?,
                ),
            };
            let rewrite = cols[4].to_string();
            if rewrite.is_empty() {
                return Err(err("empty rewrite".into()));
            }
            if let Condition::StemFinalIn(s) = &stem_final.graphemes {
                if s.contains(&rewrite) {
                    return Err(err(format!(
                        "rewrite {rewrite:?} does not change the matched grapheme"
                    )));
                }
            }
            let rule = PhonRule {
                id,
                direction,
                stem_final,
                ending_initial,
                rewrite,
                note: cols[5].to_string(),
            };
            match direction {
                Direction::Junction => set.junction.push(rule),
                Direction::LemmaRestore => set.restore.push(rule),
            }
        }
        Ok(set)
    }

    pub fn junction_rules(&self) -> &[PhonRule] {
        &self.junction
    }

    pub fn restore_rules(&self) -> &[PhonRule] {
        &self.restore
    }

    /// Applies the first matching junction rule to a lemma, giving the
    /// surface stem that precedes `variant`.
    pub fn surface_stem(
        &self,
        lemma: &str,
        variant: &EndingVariant,
        bundle: &LexiconBundle,
        spec: &AlphabetSpec,
    ) -> String {
        match self
            .junction
            .iter()
            .find(|r| r.matches(lemma, variant, bundle, spec))
        {
            Some(rule) => rule.rewrite(lemma, spec),
            None => lemma.to_string(),
        }
    }
}

fn parse_stem_final(text: &str) -> Option<StemFinal> {
    let (class, min_vowels) = match text.rsplit_once('/') {
        Some((class, n)) => (class, n.parse().ok()?),
        None => (text, 0),
    };
    Some(StemFinal {
        graphemes: Condition::parse(class)?,
        min_vowels,
    })
}

fn parse_ending_initial(text: &str) -> Option<EndingInitial> {
    let (class, key) = match text.split_once('@') {
        Some((class, key)) if !key.is_empty() => (class, Some(key.to_string())),
        Some(_) => return None,
        None => (text, None),
    };
    let graphemes = if class.is_empty() {
        Condition::Any
    } else {
        Condition::parse(class)?
    };
    Some(EndingInitial {
        graphemes,
        feature_key: key,
    })
}

/// Why a stem + ending junction was refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    ConditionFailed,
    RuleForbidden(String),
    ShortStemUnknown,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::ConditionFailed => f.write_str("allomorph condition fails for the stem"),
            Rejection::RuleForbidden(id) => write!(f, "junction forbidden by rule {id}"),
            Rejection::ShortStemUnknown => f.write_str("short stem is not on the short-stem list"),
        }
    }
}

/// Validates a predicted `stem + variant` split.
pub fn check_affixation(
    stem: &str,
    variant: &EndingVariant,
    bundle: &LexiconBundle,
    rules: &RuleSet,
    spec: &AlphabetSpec,
) -> Result<(), Rejection> {
    let graphemes = spec
        .graphemes_of(stem)
        .map_err(|_| Rejection::ConditionFailed)?;
    let Some(last) = graphemes.last() else {
        return Err(Rejection::ConditionFailed);
    };
    if !variant.condition.holds(last, spec) {
        return Err(Rejection::ConditionFailed);
    }
    check_junction(stem, variant, bundle, rules, spec)?;
    if graphemes.len() <= SHORT_STEM_MAX && !bundle.is_short_stem(stem) {
        return Err(Rejection::ShortStemUnknown);
    }
    Ok(())
}

/// Only the junction-rule part of [`check_affixation`].
pub fn check_junction(
    stem: &str,
    variant: &EndingVariant,
    bundle: &LexiconBundle,
    rules: &RuleSet,
    spec: &AlphabetSpec,
) -> Result<(), Rejection> {
    match rules
        .junction
        .iter()
        .find(|r| r.matches(stem, variant, bundle, spec))
    {
        Some(rule) => Err(Rejection::RuleForbidden(rule.id.clone())),
        None => Ok(()),
    }
}

/// Recovers the dictionary form of an accepted surface stem.
pub fn restore_lemma(
    stem: &str,
    variant: &EndingVariant,
    bundle: &LexiconBundle,
    rules: &RuleSet,
    spec: &AlphabetSpec,
) -> String {
    let word = format!("{stem}{}", variant.surface);
    if let Some(exc) = bundle.lemma_exceptions().get(&word) {
        if exc.ending == variant.surface {
            return exc.lemma.clone();
        }
    }
    match rules
        .restore
        .iter()
        .find(|r| r.matches(stem, variant, bundle, spec))
    {
        Some(rule) => rule.rewrite(stem, spec),
        None => stem.to_string(),
    }
}
