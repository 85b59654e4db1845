//! Working alphabet, token normalization and grapheme segmentation.
//!
//! The default specification is Uzbek Latin: single letters, the digraphs
//! `o' g' sh ch ng`, the tutuq belgisi (`'`) and the interior hyphen. All
//! apostrophe look-alikes are folded onto U+0027 during normalization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::data;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("token is empty after normalization")]
    EmptyAfterNormalization,
    #[error("character {ch:?} in {token:?} is not part of the alphabet")]
    NonAlphabetGrapheme { token: String, ch: char },
}

#[derive(Debug, Error)]
pub enum AlphabetError {
    #[error("alphabet spec line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("alphabet spec invariant violated: {0}")]
    Invariant(String),
    #[error("cannot read alphabet spec: {0}")]
    Io(#[from] std::io::Error),
}

/// Whether a grapheme is a vowel or a consonant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SoundClass {
    Vowel,
    Consonant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphabetSpec {
    letters: BTreeSet<String>,
    digraphs: Vec<String>,
    vowels: BTreeSet<String>,
    apostrophe_map: BTreeMap<char, char>,
    separators: BTreeSet<char>,
}

impl AlphabetSpec {
    pub fn new(
        letters: impl IntoIterator<Item = String>,
        digraphs: Vec<String>,
        vowels: impl IntoIterator<Item = String>,
        apostrophe_map: BTreeMap<char, char>,
        separators: impl IntoIterator<Item = char>,
    ) -> Result<Self, AlphabetError> {
        let spec = AlphabetSpec {
            letters: letters.into_iter().collect(),
            digraphs,
            vowels: vowels.into_iter().collect(),
            apostrophe_map,
            separators: separators.into_iter().collect(),
        };
        spec.check()?;
        Ok(spec)
    }

    /// The embedded Uzbek Latin specification.
    pub fn uzbek_latin() -> Self {
        Self::parse(data::ALPHABET).expect("embedded alphabet spec is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, AlphabetError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Parses the sectioned text format (`[letters]`, `[digraphs]`,
    /// `[vowels]`, `[apostrophes]`, `[separators]`).
    pub fn parse(text: &str) -> Result<Self, AlphabetError> {
        let mut section: Option<&str> = None;
        let mut letters = Vec::new();
        let mut digraphs = Vec::new();
        let mut vowels = Vec::new();
        let mut apostrophe_map = BTreeMap::new();
        let mut separators = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = Some(match name.trim() {
                    s @ ("letters" | "digraphs" | "vowels" | "apostrophes" | "separators") => s,
                    other => {
                        return Err(AlphabetError::Syntax {
                            line: line_no,
                            msg: format!("unknown section [{other}]"),
                        })
                    }
                });
                continue;
            }
            let items = line
                .split_whitespace()
                .map(|item| {
                    decode_item(item).map_err(|msg| AlphabetError::Syntax { line: line_no, msg })
                })
                .collect::<Result<Vec<_>, _>>()?;
            match section {
                None => {
                    return Err(AlphabetError::Syntax {
                        line: line_no,
                        msg: "entry before any section header".into(),
                    })
                }
                Some("letters") => letters.extend(items),
                Some("digraphs") => digraphs.extend(items),
                Some("vowels") => vowels.extend(items),
                Some("apostrophes") => {
                    let pair = match items.as_slice() {
                        [from, to] => (single_char(from), single_char(to)),
                        _ => (None, None),
                    };
                    match pair {
                        (Some(from), Some(to)) => {
                            apostrophe_map.insert(from, to);
                        }
                        _ => {
                            return Err(AlphabetError::Syntax {
                                line: line_no,
                                msg: "apostrophe mapping needs exactly two single characters"
                                    .into(),
                            })
                        }
                    }
                }
                Some(_) => {
                    for item in items {
                        let ch = single_char(&item).ok_or_else(|| AlphabetError::Syntax {
                            line: line_no,
                            msg: format!("separator {item:?} must be a single character"),
                        })?;
                        separators.push(ch);
                    }
                }
            }
        }
        Self::new(letters, digraphs, vowels, apostrophe_map, separators)
    }

    fn check(&self) -> Result<(), AlphabetError> {
        let fail = |msg: String| Err(AlphabetError::Invariant(msg));
        let mut seen = BTreeSet::new();
        for digraph in &self.digraphs {
            if !seen.insert(digraph) {
                return fail(format!("digraph {digraph:?} listed twice"));
            }
            if digraph.chars().count() < 2 {
                return fail(format!("digraph {digraph:?} has fewer than two characters"));
            }
            for ch in digraph.chars() {
                if !self.letters.contains(ch.encode_utf8(&mut [0; 4]) as &str) {
                    return fail(format!(
                        "digraph {digraph:?} uses {ch:?} outside the base characters"
                    ));
                }
            }
        }
        for vowel in &self.vowels {
            if !self.letters.contains(vowel) {
                return fail(format!("vowel {vowel:?} is not a letter"));
            }
        }
        for letter in &self.letters {
            if letter.chars().count() > 1 && !self.digraphs.contains(letter) {
                return fail(format!(
                    "multi-character letter {letter:?} is not a declared digraph"
                ));
            }
        }
        for target in self.apostrophe_map.values() {
            if self.apostrophe_map.contains_key(target) {
                return fail(format!("apostrophe target {target:?} is itself remapped"));
            }
        }
        Ok(())
    }

    pub fn is_vowel(&self, grapheme: &str) -> bool {
        self.vowels.contains(grapheme)
    }

    pub fn is_letter(&self, grapheme: &str) -> bool {
        self.letters.contains(grapheme)
    }

    pub fn letters(&self) -> impl Iterator<Item = &str> {
        self.letters.iter().map(String::as_str)
    }

    pub fn digraphs(&self) -> &[String] {
        &self.digraphs
    }

    pub fn vowels(&self) -> impl Iterator<Item = &str> {
        self.vowels.iter().map(String::as_str)
    }

    pub fn sound_class(&self, grapheme: &str) -> SoundClass {
        if self.is_vowel(grapheme) {
            SoundClass::Vowel
        } else {
            SoundClass::Consonant
        }
    }

    /// Lowercases, folds apostrophe look-alikes, strips edge separators and
    /// validates the result against the alphabet.
    pub fn normalize(&self, raw: &str) -> Result<Token, NormalizeError> {
        let mapped: String = raw
            .to_lowercase()
            .chars()
            .map(|c| self.apostrophe_map.get(&c).copied().unwrap_or(c))
            .collect();
        let trimmed =
            mapped.trim_matches(|c: char| c.is_whitespace() || self.separators.contains(&c));
        if trimmed.is_empty() {
            return Err(NormalizeError::EmptyAfterNormalization);
        }
        let bounds = self.segment(trimmed)?;
        Ok(Token {
            text: trimmed.to_string(),
            bounds,
        })
    }

    /// Longest-match segmentation; returns grapheme start offsets followed by
    /// the text length.
    fn segment(&self, text: &str) -> Result<Vec<u32>, NormalizeError> {
        let mut bounds = Vec::with_capacity(text.len() + 1);
        let mut pos = 0;
        while pos < text.len() {
            bounds.push(pos as u32);
            let rest = &text[pos..];
            if let Some(d) = self.digraphs.iter().find(|d| rest.starts_with(d.as_str())) {
                pos += d.len();
                continue;
            }
            let ch = rest.chars().next().expect("non-empty remainder");
            let width = ch.len_utf8();
            if !self.letters.contains(&rest[..width]) {
                return Err(NormalizeError::NonAlphabetGrapheme {
                    token: text.to_string(),
                    ch,
                });
            }
            pos += width;
        }
        bounds.push(text.len() as u32);
        Ok(bounds)
    }

    /// Segments an arbitrary alphabet string (e.g. an ending surface).
    pub fn graphemes_of<'a>(&self, text: &'a str) -> Result<Vec<&'a str>, NormalizeError> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        let bounds = self.segment(text)?;
        Ok(bounds
            .windows(2)
            .map(|w| &text[w[0] as usize..w[1] as usize])
            .collect())
    }

    /// Final grapheme of a non-empty alphabet string.
    pub fn last_grapheme<'a>(&self, text: &'a str) -> Option<&'a str> {
        self.graphemes_of(text).ok()?.pop()
    }

    pub fn grapheme_len(&self, text: &str) -> usize {
        self.graphemes_of(text)
            .map(|g| g.len())
            .unwrap_or_else(|_| text.chars().count())
    }
}

impl Default for AlphabetSpec {
    fn default() -> Self {
        Self::uzbek_latin()
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn decode_item(item: &str) -> Result<String, String> {
    match item.strip_prefix("U+") {
        Some(hex) => u32::from_str_radix(hex, 16)
            .ok()
            .and_then(char::from_u32)
            .map(String::from)
            .ok_or_else(|| format!("bad code point {item:?}")),
        None => Ok(item.to_string()),
    }
}

fn single_char(s: &str) -> Option<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

/// A normalized, alphabet-valid token.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    text: String,
    bounds: Vec<u32>,
}

impl Token {
    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn graphemes(&self) -> impl Iterator<Item = &str> + '_ {
        self.bounds
            .windows(2)
            .map(move |w| &self.text[w[0] as usize..w[1] as usize])
    }

    pub fn grapheme_len(&self) -> usize {
        self.bounds.len() - 1
    }

    /// Byte offsets at which a split falls on a grapheme boundary,
    /// including 0 and the text length.
    pub fn boundaries(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.bounds.iter().map(|&b| b as usize)
    }

    pub fn is_boundary(&self, offset: usize) -> bool {
        self.bounds.binary_search(&(offset as u32)).is_ok()
    }

    pub fn final_grapheme(&self) -> &str {
        let n = self.bounds.len();
        &self.text[self.bounds[n - 2] as usize..]
    }

    pub fn final_sound_class(&self, spec: &AlphabetSpec) -> SoundClass {
        spec.sound_class(self.final_grapheme())
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.text
    }
}
