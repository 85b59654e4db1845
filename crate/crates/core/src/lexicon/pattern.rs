//! Ending pattern grammar and allomorph expansion.
//!
//! A pattern is a flat sequence of literal text, optional epenthetic
//! segments `(x)` and alternations `{a|b|c}`. Nesting is not allowed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::alphabet::{AlphabetSpec, SoundClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed pattern {pattern:?}: {reason}")]
pub struct MalformedPattern {
    pub pattern: String,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternElement {
    Literal(String),
    Optional(String),
    Alternation(Vec<String>),
}

impl PatternElement {
    /// Surface choices this element can contribute.
    pub fn choices(&self) -> Vec<&str> {
        match self {
            PatternElement::Literal(s) => vec![s],
            PatternElement::Optional(s) => vec![s, ""],
            PatternElement::Alternation(branches) => branches.iter().map(String::as_str).collect(),
        }
    }
}

/// Parses a pattern into its elements.
pub fn parse_pattern(text: &str) -> Result<Vec<PatternElement>, MalformedPattern> {
    let err = |reason| MalformedPattern {
        pattern: text.to_string(),
        reason,
    };
    if text.is_empty() {
        return Err(err("empty pattern"));
    }

    let mut elements = Vec::new();
    let mut literal = String::new();
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        match c {
            '(' | '{' => {
                if !literal.is_empty() {
                    elements.push(PatternElement::Literal(std::mem::take(&mut literal)));
                }
                let close = if c == '(' { ')' } else { '}' };
                let mut body = String::new();
                loop {
                    match chars.next() {
                        None => return Err(err("unbalanced bracket")),
                        Some(x) if x == close => break,
                        Some('(' | '{') => return Err(err("nested group")),
                        Some(')' | '}') => return Err(err("mismatched closing bracket")),
                        Some('|') if c == '(' => {
                            return Err(err("alternation inside optional group"))
                        }
                        Some(x) => body.push(x),
                    }
                }
                if c == '(' {
                    if body.is_empty() {
                        return Err(err("empty optional group"));
                    }
                    elements.push(PatternElement::Optional(body));
                } else {
                    let branches: Vec<String> = body.split('|').map(str::to_string).collect();
                    if branches.iter().any(String::is_empty) {
                        return Err(err("empty alternation branch"));
                    }
                    elements.push(PatternElement::Alternation(branches));
                }
            }
            ')' | '}' => return Err(err("unbalanced bracket")),
            '|' => return Err(err("alternation bar outside braces")),
            _ => literal.push(c),
        }
    }
    if !literal.is_empty() {
        elements.push(PatternElement::Literal(literal));
    }
    Ok(elements)
}

/// Condition an ending variant places on the final grapheme before it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Any,
    StemFinalVowel,
    StemFinalConsonant,
    StemFinalIn(BTreeSet<String>),
    StemFinalNotIn(BTreeSet<String>),
}

impl Condition {
    pub fn holds(&self, final_grapheme: &str, spec: &AlphabetSpec) -> bool {
        match self {
            Condition::Any => true,
            Condition::StemFinalVowel => spec.sound_class(final_grapheme) == SoundClass::Vowel,
            Condition::StemFinalConsonant => {
                spec.sound_class(final_grapheme) == SoundClass::Consonant
            }
            Condition::StemFinalIn(set) => set.contains(final_grapheme),
            Condition::StemFinalNotIn(set) => !set.contains(final_grapheme),
        }
    }

    /// Conjunction of two conditions; `None` when nothing satisfies both.
    pub fn conjoin(&self, other: &Condition, spec: &AlphabetSpec) -> Option<Condition> {
        match (self, other) {
            (Condition::Any, c) | (c, Condition::Any) => return Some(c.clone()),
            (a, b) if a == b => return Some(a.clone()),
            _ => {}
        }
        let both: BTreeSet<String> = spec
            .letters()
            .filter(|g| self.holds(g, spec) && other.holds(g, spec))
            .map(str::to_string)
            .collect();
        if both.is_empty() {
            return None;
        }
        let vowels: BTreeSet<String> = spec.vowels().map(str::to_string).collect();
        let consonants: BTreeSet<String> = spec
            .letters()
            .filter(|g| !spec.is_vowel(g))
            .map(str::to_string)
            .collect();
        Some(if both == vowels {
            Condition::StemFinalVowel
        } else if both == consonants {
            Condition::StemFinalConsonant
        } else {
            Condition::StemFinalIn(both)
        })
    }

    /// Parses the condition column notation: `V`, `C`, `*`, `k,q` or `!k,q`.
    pub fn parse(text: &str) -> Option<Condition> {
        let text = text.trim();
        let set = |s: &str| -> Option<BTreeSet<String>> {
            let set: BTreeSet<String> = s.split(',').map(|g| g.trim().to_string()).collect();
            (!set.iter().any(String::is_empty)).then_some(set)
        };
        match text {
            "*" => Some(Condition::Any),
            "V" => Some(Condition::StemFinalVowel),
            "C" => Some(Condition::StemFinalConsonant),
            "" => None,
            _ => match text.strip_prefix('!') {
                Some(rest) => set(rest).map(Condition::StemFinalNotIn),
                None => set(text).map(Condition::StemFinalIn),
            },
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
        match self {
            Condition::Any => f.write_str("*"),
            Condition::StemFinalVowel => f.write_str("V"),
            Condition::StemFinalConsonant => f.write_str("C"),
            Condition::StemFinalIn(s) => f.write_str(&join(s)),
            Condition::StemFinalNotIn(s) => write!(f, "!{}", join(s)),
        }
    }
}

/// One parsed morpheme of an ending: its elements plus any branch guards
/// taken from the condition column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentPattern {
    pub elements: Vec<PatternElement>,
    pub guards: BTreeMap<String, Condition>,
}

/// One allomorph produced by [`expand`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub surface: String,
    pub condition: Condition,
    pub spans: Vec<Range<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("no allomorph of the ending satisfies its conditions")]
pub struct ConflictingConditions;

/// Expands segment patterns into every surface allomorph.
///
/// A guard on an element constrains the grapheme immediately before it. When
/// that grapheme lies inside the ending the guard is decided on the spot and
/// failing branches are pruned; otherwise it becomes part of the stem
/// condition. Optional segments surface after consonants and drop after
/// vowels.
pub fn expand(
    segments: &[SegmentPattern],
    spec: &AlphabetSpec,
) -> Result<Vec<Expansion>, ConflictingConditions> {
    let mut partial = vec![Expansion {
        surface: String::new(),
        condition: Condition::Any,
        spans: Vec::new(),
    }];

    for segment in segments {
        let starts: Vec<usize> = partial.iter().map(|p| p.surface.len()).collect();
        let mut tagged: Vec<(usize, Expansion)> = partial
            .into_iter()
            .zip(starts)
            .map(|(p, s)| (s, p))
            .collect();
        for element in &segment.elements {
            let mut next = Vec::with_capacity(tagged.len() * 2);
            for (start, state) in &tagged {
                for (choice, guard) in element_choices(element, &segment.guards) {
                    let condition = match spec.last_grapheme(&state.surface) {
                        Some(prev) if guard.holds(prev, spec) => state.condition.clone(),
                        Some(_) => continue,
                        None => match state.condition.conjoin(&guard, spec) {
                            Some(c) => c,
                            None => continue,
                        },
                    };
                    let mut surface = state.surface.clone();
                    surface.push_str(choice);
                    next.push((
                        *start,
                        Expansion {
                            surface,
                            condition,
                            spans: state.spans.clone(),
                        },
                    ));
                }
            }
            tagged = next;
        }
        partial = tagged
            .into_iter()
            .map(|(start, mut e)| {
                e.spans.push(start..e.surface.len());
                e
            })
            .collect();
    }

    if partial.is_empty() {
        Err(ConflictingConditions)
    } else {
        Ok(partial)
    }
}

fn element_choices<'a>(
    element: &'a PatternElement,
    guards: &BTreeMap<String, Condition>,
) -> Vec<(&'a str, Condition)> {
    let guard = |s: &str| guards.get(s).cloned().unwrap_or(Condition::Any);
    match element {
        PatternElement::Literal(s) => vec![(s.as_str(), guard(s))],
        PatternElement::Optional(s) => vec![
            (s.as_str(), Condition::StemFinalConsonant),
            ("", Condition::StemFinalVowel),
        ],
        PatternElement::Alternation(branches) => {
            branches.iter().map(|b| (b.as_str(), guard(b))).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PatternElement::*;

    fn seg(p: &str) -> SegmentPattern {
        SegmentPattern {
            elements: parse_pattern(p).unwrap(),
            guards: BTreeMap::new(),
        }
    }

    fn guarded(p: &str, guards: &[(&str, &str)]) -> SegmentPattern {
        SegmentPattern {
            elements: parse_pattern(p).unwrap(),
            guards: guards
                .iter()
                .map(|(k, v)| (k.to_string(), Condition::parse(v).unwrap()))
                .collect(),
        }
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_optional_and_literal() {
        assert_eq!(
            parse_pattern("(i)m").unwrap(),
            vec![Optional("i".into()), Literal("m".into())]
        );
        assert_eq!(parse_pattern("lar").unwrap(), vec![Literal("lar".into())]);
        assert_eq!(
            parse_pattern("{ga|ka|qa}").unwrap(),
            vec![Alternation(vec!["ga".into(), "ka".into(), "qa".into()])]
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "((i)m", "(i", "i)", "{a|}", "{|a}", "{a{b}}", "(a|b)", "a|b", "()", "",
        ] {
            assert!(parse_pattern(bad).is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn optional_then_literal() {
        let spec = AlphabetSpec::uzbek_latin();
        let out = expand(&[seg("(i)m"), seg("dan")], &spec).unwrap();
        let got: Vec<_> = out
            .iter()
            .map(|e| (e.surface.as_str(), e.condition.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("imdan", Condition::StemFinalConsonant),
                ("mdan", Condition::StemFinalVowel)
            ]
        );
        assert_eq!(out[0].spans, vec![0..2, 2..5]);
        assert_eq!(out[1].spans, vec![0..1, 1..4]);
    }

    #[test]
    fn dative_alternation() {
        let spec = AlphabetSpec::uzbek_latin();
        let dat = guarded("{ga|ka|qa}", &[("ga", "!k,q"), ("ka", "k"), ("qa", "q")]);
        let out = expand(&[dat], &spec).unwrap();
        let got: Vec<_> = out
            .iter()
            .map(|e| (e.surface.as_str(), e.condition.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("ga", Condition::StemFinalNotIn(set(&["k", "q"]))),
                ("ka", Condition::StemFinalIn(set(&["k"]))),
                ("qa", Condition::StemFinalIn(set(&["q"]))),
            ]
        );
    }

    #[test]
    fn guards_inside_ending_prune() {
        let spec = AlphabetSpec::uzbek_latin();
        let dat = guarded("{ga|ka|qa}", &[("ga", "!k,q"), ("ka", "k"), ("qa", "q")]);
        let out = expand(&[seg("lar"), seg("(i)m"), dat], &spec).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].surface, "larimga");
        assert_eq!(out[0].condition, Condition::Any);
        assert_eq!(out[0].spans, vec![0..3, 3..5, 5..7]);
    }

    #[test]
    fn conflicting_stem_conditions() {
        let spec = AlphabetSpec::uzbek_latin();
        // "(y)" kept puts "y" before "{x}" (pruned); dropped leaves the stem
        // needing a vowel in {a, e}.
        let out = expand(&[seg("(y)"), guarded("{x}", &[("x", "a,e")])], &spec).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].surface, "x");
        assert_eq!(out[0].condition, Condition::StemFinalIn(set(&["a", "e"])));

        // Dropping "(u)" demands a vowel stem while "b" demands a consonant;
        // keeping "(u)" puts a vowel before "b".
        let c = SegmentPattern {
            elements: vec![Optional("u".into()), Alternation(vec!["b".into()])],
            guards: [("b".to_string(), Condition::StemFinalConsonant)].into(),
        };
        assert_eq!(expand(&[c], &spec), Err(ConflictingConditions));
    }

    #[test]
    fn conjunction() {
        let spec = AlphabetSpec::uzbek_latin();
        let v = Condition::StemFinalVowel;
        let c = Condition::StemFinalConsonant;
        assert_eq!(v.conjoin(&c, &spec), None);
        assert_eq!(v.conjoin(&Condition::Any, &spec), Some(v.clone()));
        assert_eq!(
            c.conjoin(&Condition::StemFinalNotIn(set(&["k", "q"])), &spec),
            Some(Condition::StemFinalIn(
                spec.letters()
                    .filter(|g| !spec.is_vowel(g) && *g != "k" && *g != "q")
                    .map(str::to_string)
                    .collect()
            ))
        );
        assert_eq!(
            v.conjoin(&Condition::StemFinalIn(set(&["a", "k"])), &spec),
            Some(Condition::StemFinalIn(set(&["a"])))
        );
    }

    #[test]
    fn condition_notation() {
        for text in ["*", "V", "C", "k,q", "!k,q"] {
            assert_eq!(Condition::parse(text).unwrap().to_string(), text);
        }
        assert_eq!(Condition::parse(""), None);
        assert_eq!(Condition::parse("k,,q"), None);
    }
}
