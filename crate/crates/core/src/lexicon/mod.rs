//! The complete set of inflectional endings (CSE) and the auxiliary word
//! lists, their file formats, allomorph expansion and the suffix index.

mod features;
mod index;
mod pattern;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;
use std::path::Path;

use thiserror::Error;

use crate::alphabet::AlphabetSpec;

pub use features::{Feature, Pos, UnknownFeature, UnknownPos, FEATURE_INVENTORY};
pub use index::{EndingIndex, EndingMatch};
pub use pattern::{
    parse_pattern, Condition, ConflictingConditions, MalformedPattern, PatternElement,
};

use pattern::SegmentPattern;

pub const CSE_FILE: &str = "cse.tsv";
pub const EXCEPTIONAL_STEMS_FILE: &str = "exceptional_stems.txt";
pub const NON_AFFIXED_FILE: &str = "non_affixed.txt";
pub const NUMBERS_FILE: &str = "numbers.txt";
pub const SHORT_STEMS_FILE: &str = "short_stems.txt";
pub const LEMMA_EXCEPTIONS_FILE: &str = "lemma_exceptions.tsv";
pub const MANIFEST_FILE: &str = "manifest.tsv";

/// Longest stem, in graphemes, that belongs on the short-stem list.
pub const SHORT_STEM_MAX: usize = 2;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{file}:{line}: ending {pattern:?} with POS {pos} is listed twice")]
    DuplicateEnding {
        file: &'static str,
        line: usize,
        pattern: String,
        pos: Pos,
    },
    #[error("{file}:{line}: {msg}")]
    SchemaError {
        file: &'static str,
        line: usize,
        msg: String,
    },
    #[error("{file}:{line}: {msg}")]
    InvariantViolation {
        file: &'static str,
        line: usize,
        msg: String,
    },
    #[error("{file}:{line}: {source}")]
    MalformedPattern {
        file: &'static str,
        line: usize,
        source: MalformedPattern,
    },
    #[error("{file}:{line}: ending {pattern:?}: {source}")]
    ConflictingConditions {
        file: &'static str,
        line: usize,
        pattern: String,
        source: ConflictingConditions,
    },
    #[error("manifest mismatch for {key}: manifest says {expected}, lexicon has {actual}")]
    ManifestMismatch {
        key: String,
        expected: usize,
        actual: usize,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Index of an entry in [`LexiconBundle::entries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntryId(pub u32);

/// Index of a variant in [`LexiconBundle::variants`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariantId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphemeSegment {
    pub pattern: String,
    pub feature: Feature,
    parsed: SegmentPattern,
}

impl MorphemeSegment {
    pub fn elements(&self) -> &[PatternElement] {
        &self.parsed.elements
    }
}

/// One composite ending row of the CSE table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndingEntry {
    /// Stable key: `<pattern>/<POS>`, unique within the table.
    pub key: String,
    pub pattern: String,
    pub pos: Pos,
    pub segments: Vec<MorphemeSegment>,
}

impl EndingEntry {
    pub fn features(&self) -> impl Iterator<Item = Feature> + '_ {
        self.segments.iter().map(|s| s.feature)
    }

    /// Feature of the first morpheme.
    pub fn leading_feature(&self) -> Feature {
        self.segments[0].feature
    }
}

/// A fully literal allomorph of an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndingVariant {
    pub surface: String,
    pub entry: EntryId,
    pub condition: Condition,
    /// Byte ranges of `surface`, one per entry segment, tiling it in order.
    pub spans: Vec<Range<usize>>,
}

impl EndingVariant {
    pub fn segment_surfaces(&self) -> impl Iterator<Item = &str> {
        self.spans.iter().map(|r| &self.surface[r.clone()])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaException {
    pub lemma: String,
    pub ending: String,
}

/// Raw contents of the six lexicon files.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexiconSources {
    pub cse: String,
    pub exceptional_stems: String,
    pub non_affixed: String,
    pub numbers: String,
    pub short_stems: String,
    pub lemma_exceptions: String,
}

impl LexiconSources {
    pub fn read_dir(dir: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let dir = dir.as_ref();
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|source| LexiconError::Io {
                path: path.display().to_string(),
                source,
            })
        };
        Ok(LexiconSources {
            cse: read(CSE_FILE)?,
            exceptional_stems: read(EXCEPTIONAL_STEMS_FILE)?,
            non_affixed: read(NON_AFFIXED_FILE)?,
            numbers: read(NUMBERS_FILE)?,
            short_stems: read(SHORT_STEMS_FILE)?,
            lemma_exceptions: read(LEMMA_EXCEPTIONS_FILE)?,
        })
    }

    /// `(file name, contents)` in canonical order.
    pub fn files(&self) -> [(&'static str, &str); 6] {
        [
            (CSE_FILE, &self.cse),
            (EXCEPTIONAL_STEMS_FILE, &self.exceptional_stems),
            (NON_AFFIXED_FILE, &self.non_affixed),
            (NUMBERS_FILE, &self.numbers),
            (SHORT_STEMS_FILE, &self.short_stems),
            (LEMMA_EXCEPTIONS_FILE, &self.lemma_exceptions),
        ]
    }
}

/// The CSE table, its expanded variants and the five auxiliary lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconBundle {
    entries: Vec<EndingEntry>,
    variants: Vec<EndingVariant>,
    exceptional_stems: BTreeMap<String, Pos>,
    non_affixed: BTreeMap<String, Pos>,
    number_stems: BTreeSet<String>,
    short_stems: BTreeSet<String>,
    lemma_exceptions: BTreeMap<String, LemmaException>,
}

impl LexiconBundle {
    pub fn load_dir(dir: impl AsRef<Path>, spec: &AlphabetSpec) -> Result<Self, LexiconError> {
        Self::from_sources(&LexiconSources::read_dir(dir)?, spec)
    }

    pub fn from_sources(src: &LexiconSources, spec: &AlphabetSpec) -> Result<Self, LexiconError> {
        let entries = parse_cse(&src.cse)?;
        let mut variants = Vec::new();
        for (i, (line, entry)) in entries.iter().enumerate() {
            let parsed: Vec<SegmentPattern> =
                entry.segments.iter().map(|s| s.parsed.clone()).collect();
            let expansions = pattern::expand(&parsed, spec).map_err(|source| {
                LexiconError::ConflictingConditions {
                    file: CSE_FILE,
                    line: *line,
                    pattern: entry.pattern.clone(),
                    source,
                }
            })?;
            for e in expansions {
                if e.spans.iter().any(|r| r.is_empty()) {
                    return Err(LexiconError::SchemaError {
                        file: CSE_FILE,
                        line: *line,
                        msg: format!(
                            "a morpheme of {:?} can surface as the empty string",
                            entry.pattern
                        ),
                    });
                }
                if let Err(err) = spec.graphemes_of(&e.surface) {
                    return Err(LexiconError::SchemaError {
                        file: CSE_FILE,
                        line: *line,
                        msg: err.to_string(),
                    });
                }
                variants.push(EndingVariant {
                    surface: e.surface,
                    entry: EntryId(i as u32),
                    condition: e.condition,
                    spans: e.spans,
                });
            }
        }
        let entries: Vec<EndingEntry> = entries.into_iter().map(|(_, e)| e).collect();

        let exceptional_stems =
            parse_word_pos(&src.exceptional_stems, EXCEPTIONAL_STEMS_FILE, spec)?;
        let non_affixed = parse_word_pos(&src.non_affixed, NON_AFFIXED_FILE, spec)?;
        let number_stems = parse_words(&src.numbers, NUMBERS_FILE, spec)?;
        let short_stems = parse_words(&src.short_stems, SHORT_STEMS_FILE, spec)?;
        for (line, word) in records(&src.short_stems) {
            let word = spec
                .normalize(word)
                .map(|t| t.as_str().to_string())
                .unwrap_or_default();
            if spec.grapheme_len(&word) > SHORT_STEM_MAX {
                return Err(LexiconError::InvariantViolation {
                    file: SHORT_STEMS_FILE,
                    line,
                    msg: format!("{word:?} is longer than {SHORT_STEM_MAX} graphemes"),
                });
            }
        }

        let surfaces: BTreeSet<&str> = variants.iter().map(|v| v.surface.as_str()).collect();
        let lemma_exceptions = parse_lemma_exceptions(&src.lemma_exceptions, &surfaces, spec)?;

        Ok(LexiconBundle {
            entries,
            variants,
            exceptional_stems,
            non_affixed,
            number_stems: number_stems.into_keys().collect(),
            short_stems: short_stems.into_keys().collect(),
            lemma_exceptions,
        })
    }

    pub fn entries(&self) -> &[EndingEntry] {
        &self.entries
    }

    pub fn entry(&self, id: EntryId) -> &EndingEntry {
        &self.entries[id.0 as usize]
    }

    pub fn variants(&self) -> &[EndingVariant] {
        &self.variants
    }

    pub fn variant(&self, id: VariantId) -> &EndingVariant {
        &self.variants[id.0 as usize]
    }

    pub fn variant_ids(&self) -> impl Iterator<Item = VariantId> {
        (0..self.variants.len() as u32).map(VariantId)
    }

    pub fn exceptional_stems(&self) -> &BTreeMap<String, Pos> {
        &self.exceptional_stems
    }

    pub fn non_affixed(&self) -> &BTreeMap<String, Pos> {
        &self.non_affixed
    }

    pub fn number_stems(&self) -> &BTreeSet<String> {
        &self.number_stems
    }

    pub fn short_stems(&self) -> &BTreeSet<String> {
        &self.short_stems
    }

    pub fn lemma_exceptions(&self) -> &BTreeMap<String, LemmaException> {
        &self.lemma_exceptions
    }

    pub fn is_short_stem(&self, stem: &str) -> bool {
        self.short_stems.contains(stem)
    }

    /// Entry counts per part of speech.
    pub fn counts(&self) -> BTreeMap<Pos, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.entries {
            *counts.entry(e.pos).or_insert(0) += 1;
        }
        counts
    }

    /// Checks entry and variant counts against a committed manifest.
    pub fn check_manifest(&self, manifest: &Manifest) -> Result<(), LexiconError> {
        let counts = self.counts();
        let mut actual: BTreeMap<String, usize> = Pos::INFLECTING
            .iter()
            .map(|p| (p.to_string(), counts.get(p).copied().unwrap_or(0)))
            .collect();
        actual.insert("entries".into(), self.entries.len());
        actual.insert("variants".into(), self.variants.len());
        for (key, &expected) in &manifest.counts {
            let actual = actual.get(key).copied().unwrap_or(0);
            if actual != expected {
                return Err(LexiconError::ManifestMismatch {
                    key: key.clone(),
                    expected,
                    actual,
                });
            }
        }
        Ok(())
    }
}

/// Expected counts committed next to the seed data (`key<TAB>count`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub counts: BTreeMap<String, usize>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut counts = BTreeMap::new();
        for (line, record) in records(text) {
            let schema = |msg: String| LexiconError::SchemaError {
                file: MANIFEST_FILE,
                line,
                msg,
            };
            let cols: Vec<&str> = record.split('\t').collect();
            let [key, count] = cols.as_slice() else {
                return Err(schema(format!("expected 2 columns, found {}", cols.len())));
            };
            let count = count
                .trim()
                .parse()
                .map_err(|_| schema(format!("bad count {count:?}")))?;
            counts.insert(key.trim().to_string(), count);
        }
        Ok(Manifest { counts })
    }
}

impl fmt::Display for Manifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.counts {
            writeln!(f, "{k}\t{v}")?;
        }
        Ok(())
    }
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(j) => &raw[..j],
            None => raw,
        };
        let line = line.trim_end();
        (!line.trim().is_empty()).then_some((i + 1, line))
    })
}

/// Splits on `|` outside of `{…}`.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            '|' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn parse_cse(text: &str) -> Result<Vec<(usize, EndingEntry)>, LexiconError> {
    let mut entries = Vec::new();
    let mut seen: BTreeSet<(String, Pos)> = BTreeSet::new();
    for (line, record) in records(text) {
        let schema = |msg: String| LexiconError::SchemaError {
            file: CSE_FILE,
            line,
            msg,
        };
        let cols: Vec<&str> = record.split('\t').map(str::trim).collect();
        if !(3..=4).contains(&cols.len()) {
            return Err(schema(format!(
                "expected 3 or 4 columns, found {}",
                cols.len()
            )));
        }
        let pattern = cols[0].to_string();
        let pos: Pos = cols[1]
            .parse()
            .map_err(|e: UnknownPos| schema(e.to_string()))?;
        if !pos.is_inflecting() {
            return Err(schema(format!("{pos} cannot carry inflectional endings")));
        }
        parse_pattern(&pattern).map_err(|source| LexiconError::MalformedPattern {
            file: CSE_FILE,
            line,
            source,
        })?;

        let mut guards: BTreeMap<String, Condition> = BTreeMap::new();
        if let Some(column) = cols.get(3).filter(|c| !c.is_empty()) {
            for item in column.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let (branch, cond) = item
                    .split_once('=')
                    .ok_or_else(|| schema(format!("bad condition {item:?}")))?;
                let cond = Condition::parse(cond)
                    .ok_or_else(|| schema(format!("bad condition {item:?}")))?;
                guards.insert(branch.trim().to_string(), cond);
            }
        }

        let mut segments = Vec::new();
        for part in split_top_level(cols[2]) {
            let (seg_pattern, tag) = part
                .split_once(':')
                .ok_or_else(|| schema(format!("segment {part:?} is not pattern:Tag=Value")))?;
            let feature: Feature = tag
                .parse()
                .map_err(|e: UnknownFeature| schema(e.to_string()))?;
            let elements =
                parse_pattern(seg_pattern).map_err(|source| LexiconError::MalformedPattern {
                    file: CSE_FILE,
                    line,
                    source,
                })?;
            if elements
                .iter()
                .all(|e| matches!(e, PatternElement::Optional(_)))
            {
                return Err(schema(format!(
                    "segment {seg_pattern:?} has no obligatory part"
                )));
            }
            let seg_guards = guards
                .iter()
                .filter(|(branch, _)| {
                    elements.iter().any(|e| match e {
                        PatternElement::Literal(s) => s == *branch,
                        PatternElement::Alternation(b) => b.contains(branch),
                        PatternElement::Optional(_) => false,
                    })
                })
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect();
            segments.push(MorphemeSegment {
                pattern: seg_pattern.to_string(),
                feature,
                parsed: SegmentPattern {
                    elements,
                    guards: seg_guards,
                },
            });
        }
        let joined: String = segments.iter().map(|s| s.pattern.as_str()).collect();
        if joined != pattern {
            return Err(schema(format!(
                "segments concatenate to {joined:?}, not the ending pattern {pattern:?}"
            )));
        }
        for branch in guards.keys() {
            if !segments
                .iter()
                .any(|s| s.parsed.guards.contains_key(branch))
            {
                return Err(schema(format!(
                    "condition names {branch:?}, which is not a branch of {pattern:?}"
                )));
            }
        }
        if !seen.insert((pattern.clone(), pos)) {
            return Err(LexiconError::DuplicateEnding {
                file: CSE_FILE,
                line,
                pattern,
                pos,
            });
        }
        entries.push((
            line,
            EndingEntry {
                key: format!("{pattern}/{pos}"),
                pattern,
                pos,
                segments,
            },
        ));
    }
    Ok(entries)
}

fn normalize_word(
    word: &str,
    file: &'static str,
    line: usize,
    spec: &AlphabetSpec,
) -> Result<String, LexiconError> {
    spec.normalize(word)
        .map(|t| t.as_str().to_string())
        .map_err(|e| LexiconError::SchemaError {
            file,
            line,
            msg: format!("{word:?}: {e}"),
        })
}

fn duplicate(file: &'static str, line: usize, word: &str) -> LexiconError {
    LexiconError::InvariantViolation {
        file,
        line,
        msg: format!("{word:?} is listed twice"),
    }
}

fn parse_words(
    text: &str,
    file: &'static str,
    spec: &AlphabetSpec,
) -> Result<BTreeMap<String, ()>, LexiconError> {
    let mut words = BTreeMap::new();
    for (line, record) in records(text) {
        let cols: Vec<&str> = record.split_whitespace().collect();
        if cols.len() != 1 {
            return Err(LexiconError::SchemaError {
                file,
                line,
                msg: format!("expected one word, found {}", cols.len()),
            });
        }
        let word = normalize_word(cols[0], file, line, spec)?;
        if words.insert(word.clone(), ()).is_some() {
            return Err(duplicate(file, line, &word));
        }
    }
    Ok(words)
}

fn parse_word_pos(
    text: &str,
    file: &'static str,
    spec: &AlphabetSpec,
) -> Result<BTreeMap<String, Pos>, LexiconError> {
    let mut words = BTreeMap::new();
    for (line, record) in records(text) {
        let schema = |msg: String| LexiconError::SchemaError { file, line, msg };
        let cols: Vec<&str> = record.split_whitespace().collect();
        let [word, pos] = cols.as_slice() else {
            return Err(schema(format!(
                "expected word and POS, found {} columns",
                cols.len()
            )));
        };
        let pos: Pos = pos.parse().map_err(|e: UnknownPos| schema(e.to_string()))?;
        let word = normalize_word(word, file, line, spec)?;
        if words.insert(word.clone(), pos).is_some() {
            return Err(duplicate(file, line, &word));
        }
    }
    Ok(words)
}

fn parse_lemma_exceptions(
    text: &str,
    surfaces: &BTreeSet<&str>,
    spec: &AlphabetSpec,
) -> Result<BTreeMap<String, LemmaException>, LexiconError> {
    let file = LEMMA_EXCEPTIONS_FILE;
    let mut out = BTreeMap::new();
    for (line, record) in records(text) {
        let cols: Vec<&str> = record.split('\t').map(str::trim).collect();
        let [word, lemma, ending] = cols.as_slice() else {
            return Err(LexiconError::SchemaError {
                file,
                line,
                msg: format!(
                    "expected word<TAB>lemma<TAB>ending, found {} columns",
                    cols.len()
                ),
            });
        };
        let word = normalize_word(word, file, line, spec)?;
        let lemma = normalize_word(lemma, file, line, spec)?;
        let ending = normalize_word(ending, file, line, spec)?;
        let violation = |msg: String| LexiconError::InvariantViolation { file, line, msg };
        if !surfaces.contains(ending.as_str()) {
            return Err(violation(format!(
                "ending {ending:?} of {word:?} is not a CSE surface"
            )));
        }
        if word.len() <= ending.len() || !word.ends_with(&ending) {
            return Err(violation(format!(
                "{ending:?} is not a proper suffix of {word:?}"
            )));
        }
        if out
            .insert(word.clone(), LemmaException { lemma, ending })
            .is_some()
        {
            return Err(duplicate(file, line, &word));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CSE: &str = "\
# pattern\tpos\tsegments\tconditions
lar\tNOUN\tlar:Number=Plur
(i)m\tNOUN\t(i)m:Poss=1Sg
(i)mdan\tNOUN\t(i)m:Poss=1Sg|dan:Case=Abl
dan\tNOUN\tdan:Case=Abl
{si|i}\tNOUN\t{si|i}:Poss=3Sg\tsi=V;i=C
{ga|ka|qa}\tNOUN\t{ga|ka|qa}:Case=Dat\tga=!k,q;ka=k;qa=q
ni\tNOUN\tni:Case=Acc
ta\tNUM\tta:NumType=Card
";

    fn sources() -> LexiconSources {
        LexiconSources {
            cse: CSE.into(),
            exceptional_stems: "muzqaymoq\tNOUN\n".into(),
            non_affixed: "yoki CONJ\nva CONJ\n".into(),
            numbers: "bir\n".into(),
            short_stems: "bu\not\n".into(),
            lemma_exceptions: "bitta\tbir\tta\nsingli\tsingil\ti\n".into(),
        }
    }

    fn load(src: &LexiconSources) -> Result<LexiconBundle, LexiconError> {
        LexiconBundle::from_sources(src, &AlphabetSpec::uzbek_latin())
    }

    #[test]
    fn loads_small_bundle() {
        let b = load(&sources()).unwrap();
        assert_eq!(b.entries().len(), 8);
        assert_eq!(b.counts()[&Pos::Noun], 7);
        assert_eq!(b.counts()[&Pos::Num], 1);
        let surfaces: Vec<&str> = b.variants().iter().map(|v| v.surface.as_str()).collect();
        assert_eq!(
            surfaces,
            ["lar", "im", "m", "imdan", "mdan", "dan", "si", "i", "ga", "ka", "qa", "ni", "ta"]
        );
        assert_eq!(b.lemma_exceptions()["singli"].lemma, "singil");
        assert_eq!(b.non_affixed()["yoki"], Pos::Conj);
    }

    #[test]
    fn duplicate_ending() {
        let mut src = sources();
        src.cse.push_str("lar\tNOUN\tlar:Number=Plur\n");
        assert!(matches!(
            load(&src),
            Err(LexiconError::DuplicateEnding { line: 10, .. })
        ));
        // same pattern with another POS is fine
        let mut src = sources();
        src.cse.push_str("lar\tVERB\tlar:Person=3Pl\n");
        assert!(load(&src).is_ok());
    }

    #[test]
    fn schema_errors() {
        for bad in [
            "lar\tNOUN\n",
            "lar\tNOUNS\tlar:Number=Plur\n",
            "lar\tCONJ\tlar:Number=Plur\n",
            "lar\tNOUN\tlar:Gender=Fem\n",
            "lar\tNOUN\tla:Number=Plur\n",
            "(i)\tNOUN\t(i):Poss=1Sg\n",
            "{ga|ka}\tNOUN\t{ga|ka}:Case=Dat\tqa=q\n",
        ] {
            let mut src = sources();
            src.cse.push_str(bad);
            assert!(
                matches!(load(&src), Err(LexiconError::SchemaError { .. })),
                "{bad:?} should be a schema error"
            );
        }
        let mut src = sources();
        src.cse.push_str("((i)m\tNOUN\t((i)m:Poss=1Sg\n");
        assert!(matches!(
            load(&src),
            Err(LexiconError::MalformedPattern { .. })
        ));
    }

    #[test]
    fn short_stem_too_long() {
        let mut src = sources();
        src.short_stems.push_str("daftar\n");
        assert!(matches!(
            load(&src),
            Err(LexiconError::InvariantViolation {
                file: SHORT_STEMS_FILE,
                ..
            })
        ));
        // digraphs count as one grapheme
        let mut src = sources();
        src.short_stems.push_str("o'g'\nuch\n");
        assert!(load(&src).is_ok());
    }

    #[test]
    fn lemma_exception_needs_known_ending() {
        let mut src = sources();
        src.lemma_exceptions.push_str("menga\tmen\tnga\n");
        assert!(matches!(
            load(&src),
            Err(LexiconError::InvariantViolation { .. })
        ));
        let mut src = sources();
        src.lemma_exceptions.push_str("ta\tta\tta\n");
        assert!(matches!(
            load(&src),
            Err(LexiconError::InvariantViolation { .. })
        ));
    }

    #[test]
    fn auxiliary_duplicates() {
        let mut src = sources();
        src.numbers.push_str("bir\n");
        assert!(matches!(
            load(&src),
            Err(LexiconError::InvariantViolation { .. })
        ));
    }

    #[test]
    fn manifest_check() {
        let b = load(&sources()).unwrap();
        let ok = Manifest::parse("NOUN\t7\nNUM\t1\nVERB\t0\nvariants\t13\n").unwrap();
        b.check_manifest(&ok).unwrap();
        let bad = Manifest::parse("NOUN\t8\n").unwrap();
        assert!(matches!(
            b.check_manifest(&bad),
            Err(LexiconError::ManifestMismatch { .. })
        ));
    }

    #[test]
    fn deterministic_load() {
        assert_eq!(load(&sources()).unwrap(), load(&sources()).unwrap());
    }
}
