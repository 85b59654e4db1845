//! The analysis pipeline: normalize, consult the auxiliary lists, enumerate
//! and validate ending splits, rank the survivors and restore lemmas.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::alphabet::{AlphabetError, AlphabetSpec, NormalizeError, Token};
use crate::data;
use crate::lexicon::{
    EndingIndex, EntryId, Feature, LexiconBundle, LexiconError, LexiconSources, Manifest, Pos,
    VariantId, MANIFEST_FILE,
};
use crate::morphophonology::{check_affixation, restore_lemma, RuleError, RuleSet};

pub const ALPHABET_FILE: &str = "alphabet.txt";
pub const RULES_FILE: &str = "rules.tsv";

/// Where a candidate analysis came from, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    LemmaException,
    NonAffixed,
    ExceptionalStem,
    NumberStem,
    EndingMatch,
    UnknownFallback,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Rules(#[from] RuleError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("no candidates to rank")]
pub struct EmptyCandidateList;

/// A validated split of a token, before it is turned into an [`Analysis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub stem: String,
    pub lemma: String,
    pub variant: Option<VariantId>,
    pub pos: Option<Pos>,
    pub source: Source,
}

/// One morpheme of the ending with its feature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub surface: String,
    pub feature: Feature,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub token: String,
    pub stem: String,
    pub lemma: String,
    pub ending: String,
    pub pos: Option<Pos>,
    pub features: Vec<Feature>,
    pub segments: Vec<Segment>,
    pub source: Source,
}

impl Analysis {
    pub fn pos_tag(&self) -> &'static str {
        self.pos.map_or("UNK", Pos::as_str)
    }

    /// `stem[POS] + seg[Tag=Val]… | lemma: lemma`, or `token[UNK]`.
    pub fn render(&self) -> String {
        if self.source == Source::UnknownFallback {
            return format!("{}[UNK]", self.token);
        }
        let mut out = format!("{}[{}]", self.stem, self.pos_tag());
        for seg in &self.segments {
            let _ = write!(out, " + {}[{}]", seg.surface, seg.feature);
        }
        let _ = write!(out, " | lemma: {}", self.lemma);
        out
    }

    /// `token<TAB>stem<TAB>lemma<TAB>pos<TAB>ending<TAB>features`, with `_`
    /// for an empty ending or feature list.
    pub fn tsv_line(&self) -> String {
        let features = if self.features.is_empty() {
            "_".to_string()
        } else {
            self.features
                .iter()
                .map(Feature::to_string)
                .collect::<Vec<_>>()
                .join("|")
        };
        let ending = if self.ending.is_empty() {
            "_"
        } else {
            &self.ending
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.token,
            self.stem,
            self.lemma,
            self.pos_tag(),
            ending,
            features
        )
    }

    pub fn record(&self) -> AnalysisRecord {
        AnalysisRecord {
            token: self.token.clone(),
            stem: self.stem.clone(),
            lemma: self.lemma.clone(),
            pos: self.pos_tag().to_string(),
            ending: self.ending.clone(),
            features: self.features.iter().map(Feature::to_string).collect(),
            segments: self.segments.clone(),
            rendered: self.render(),
        }
    }
}

/// Serialized in place of an [`AnalysisRecord`] when a token cannot be
/// analyzed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenError {
    pub token: String,
    pub error: String,
}

/// Serialized form shared by the JSON service and the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisRecord {
    pub token: String,
    pub stem: String,
    pub lemma: String,
    pub pos: String,
    pub ending: String,
    pub features: Vec<String>,
    pub segments: Vec<Segment>,
    pub rendered: String,
}

/// Ranked, non-empty analyses of one token; the first is the best.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisSet {
    analyses: Vec<Analysis>,
}

impl AnalysisSet {
    pub fn best(&self) -> &Analysis {
        &self.analyses[0]
    }

    pub fn all(&self) -> &[Analysis] {
        &self.analyses
    }

    pub fn len(&self) -> usize {
        self.analyses.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Analysis> {
        self.analyses.iter()
    }
}

impl<'a> IntoIterator for &'a AnalysisSet {
    type Item = &'a Analysis;
    type IntoIter = std::slice::Iter<'a, Analysis>;

    fn into_iter(self) -> Self::IntoIter {
        self.analyses.iter()
    }
}

/// Entry counts and a content hash identifying the loaded data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub entries: BTreeMap<Pos, usize>,
    pub variants: usize,
    pub sha256: String,
}

/// Immutable analysis context: alphabet, lexicon, suffix index and rules.
#[derive(Debug, Clone)]
pub struct Analyzer {
    spec: AlphabetSpec,
    bundle: LexiconBundle,
    index: EndingIndex,
    rules: RuleSet,
    fingerprint: Fingerprint,
}

impl Analyzer {
    /// The analyzer over the embedded seed data.
    pub fn seed() -> Self {
        let spec = AlphabetSpec::uzbek_latin();
        let sources = data::seed_sources();
        let bundle = LexiconBundle::from_sources(&sources, &spec).expect("seed lexicon is valid");
        let manifest = Manifest::parse(data::MANIFEST).expect("seed manifest parses");
        bundle
            .check_manifest(&manifest)
            .expect("seed lexicon matches its manifest");
        let rules = RuleSet::uzbek();
        let hash = content_hash(data::ALPHABET, data::RULES, &sources);
        Self::assemble(spec, bundle, rules, hash)
    }

    /// Loads a data directory. `alphabet.txt` and `rules.tsv` fall back to
    /// the embedded defaults when absent; `manifest.tsv`, when present, must
    /// agree with the loaded counts.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self, LoadError> {
        let dir = dir.as_ref();
        let read_opt = |name: &str, default: &str| -> Result<String, std::io::Error> {
            match std::fs::read_to_string(dir.join(name)) {
                Ok(text) => Ok(text),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(default.to_string()),
                Err(e) => Err(e),
            }
        };
        let alphabet_text = read_opt(ALPHABET_FILE, data::ALPHABET).map_err(AlphabetError::Io)?;
        let rules_text = read_opt(RULES_FILE, data::RULES).map_err(RuleError::Io)?;
        let spec = AlphabetSpec::parse(&alphabet_text)?;
        let rules = RuleSet::parse(&rules_text)?;
        let sources = LexiconSources::read_dir(dir)?;
        let bundle = LexiconBundle::from_sources(&sources, &spec)?;
        let manifest_path = dir.join(MANIFEST_FILE);
        if manifest_path.exists() {
            let text =
                std::fs::read_to_string(&manifest_path).map_err(|source| LexiconError::Io {
                    path: manifest_path.display().to_string(),
                    source,
                })?;
            bundle.check_manifest(&Manifest::parse(&text)?)?;
        }
        let hash = content_hash(&alphabet_text, &rules_text, &sources);
        Ok(Self::assemble(spec, bundle, rules, hash))
    }

    pub fn from_parts(spec: AlphabetSpec, bundle: LexiconBundle, rules: RuleSet) -> Self {
        Self::assemble(spec, bundle, rules, String::new())
    }

    fn assemble(spec: AlphabetSpec, bundle: LexiconBundle, rules: RuleSet, sha256: String) -> Self {
        let index = EndingIndex::build(&bundle);
        let fingerprint = Fingerprint {
            entries: bundle.counts(),
            variants: bundle.variants().len(),
            sha256,
        };
        Analyzer {
            spec,
            bundle,
            index,
            rules,
            fingerprint,
        }
    }

    pub fn spec(&self) -> &AlphabetSpec {
        &self.spec
    }

    pub fn bundle(&self) -> &LexiconBundle {
        &self.bundle
    }

    pub fn index(&self) -> &EndingIndex {
        &self.index
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        &self.fingerprint
    }

    pub fn normalize(&self, raw: &str) -> Result<Token, NormalizeError> {
        self.spec.normalize(raw)
    }

    /// Every surviving analysis of `raw`, best first.
    pub fn analyze(&self, raw: &str, pos_hint: Option<Pos>) -> Result<AnalysisSet, NormalizeError> {
        let token = self.spec.normalize(raw)?;
        Ok(self.analyze_token(&token, pos_hint))
    }

    pub fn analyze_token(&self, token: &Token, pos_hint: Option<Pos>) -> AnalysisSet {
        let candidates = self.candidates(token);
        let ranked = self
            .select_best(candidates, pos_hint)
            .expect("candidate list is never empty");
        AnalysisSet {
            analyses: ranked
                .into_iter()
                .map(|c| self.to_analysis(token, c))
                .collect(),
        }
    }

    /// `(stem, lemma)` of the best analysis.
    pub fn stem_and_lemma(&self, raw: &str) -> Result<(String, String), NormalizeError> {
        let set = self.analyze(raw, None)?;
        let best = set.best();
        Ok((best.stem.clone(), best.lemma.clone()))
    }

    fn candidates(&self, token: &Token) -> Vec<Candidate> {
        let text = token.as_str();
        let bundle = &self.bundle;
        let mut out = Vec::new();

        if let Some(exc) = bundle.lemma_exceptions().get(text) {
            let stem = &text[..text.len() - exc.ending.len()];
            for &v in self.index.lookup(&exc.ending) {
                out.push(Candidate {
                    stem: stem.to_string(),
                    lemma: exc.lemma.clone(),
                    variant: Some(v),
                    pos: Some(bundle.entry(bundle.variant(v).entry).pos),
                    source: Source::LemmaException,
                });
            }
        }

        if let Some(&pos) = bundle.non_affixed().get(text) {
            out.push(Candidate {
                stem: text.to_string(),
                lemma: text.to_string(),
                variant: None,
                pos: Some(pos),
                source: Source::NonAffixed,
            });
        }

        self.listed_prefix(token, Source::ExceptionalStem, &mut out);
        self.listed_prefix(token, Source::NumberStem, &mut out);

        for m in self.index.match_endings(token) {
            let stem = &text[..m.split];
            let variant = bundle.variant(m.variant);
            if check_affixation(stem, variant, bundle, &self.rules, &self.spec).is_ok() {
                out.push(Candidate {
                    stem: stem.to_string(),
                    lemma: restore_lemma(stem, variant, bundle, &self.rules, &self.spec),
                    variant: Some(m.variant),
                    pos: Some(bundle.entry(variant.entry).pos),
                    source: Source::EndingMatch,
                });
            }
        }

        if out.is_empty() {
            out.push(Candidate {
                stem: text.to_string(),
                lemma: text.to_string(),
                variant: None,
                pos: None,
                source: Source::UnknownFallback,
            });
        }
        out
    }

    /// Longest listed stem that prefixes the token and leaves either nothing
    /// or a valid ending. Junction rules are not consulted for listed stems.
    fn listed_prefix(&self, token: &Token, source: Source, out: &mut Vec<Candidate>) {
        let text = token.as_str();
        let bundle = &self.bundle;
        for split in token.boundaries().skip(1).rev() {
            let prefix = &text[..split];
            let listed_pos = match source {
                Source::ExceptionalStem => bundle.exceptional_stems().get(prefix).copied(),
                _ => bundle.number_stems().contains(prefix).then_some(Pos::Num),
            };
            let Some(listed_pos) = listed_pos else {
                continue;
            };
            let before = out.len();
            if split == text.len() {
                out.push(Candidate {
                    stem: prefix.to_string(),
                    lemma: prefix.to_string(),
                    variant: None,
                    pos: Some(listed_pos),
                    source,
                });
            } else {
                let last = self.spec.last_grapheme(prefix).unwrap_or("");
                for &v in self.index.lookup(&text[split..]) {
                    let variant = bundle.variant(v);
                    if !variant.condition.holds(last, &self.spec) {
                        continue;
                    }
                    let pos = match source {
                        Source::NumberStem => Pos::Num,
                        _ => bundle.entry(variant.entry).pos,
                    };
                    out.push(Candidate {
                        stem: prefix.to_string(),
                        lemma: prefix.to_string(),
                        variant: Some(v),
                        pos: Some(pos),
                        source,
                    });
                }
            }
            if out.len() > before {
                return;
            }
        }
    }

    /// Orders candidates by source priority, agreement with the POS hint,
    /// ending length (longest first), POS rank and finally entry order.
    /// Exact duplicates are dropped.
    pub fn select_best(
        &self,
        mut candidates: Vec<Candidate>,
        pos_hint: Option<Pos>,
    ) -> Result<Vec<Candidate>, EmptyCandidateList> {
        if candidates.is_empty() {
            return Err(EmptyCandidateList);
        }
        let key = |c: &Candidate| {
            let ending_len = c
                .variant
                .map_or(0, |v| self.bundle.variant(v).surface.len());
            let entry = c.variant.map(|v| self.bundle.variant(v).entry);
            (
                c.source,
                pos_hint.is_some() && c.pos != pos_hint,
                Reverse(ending_len),
                c.pos.map_or(u8::MAX, Pos::rank),
                entry.unwrap_or(EntryId(u32::MAX)),
                c.variant,
            )
        };
        candidates.sort_by(|a, b| key(a).cmp(&key(b)).then_with(|| a.stem.cmp(&b.stem)));
        candidates.dedup_by(|a, b| a == b);
        Ok(candidates)
    }

    fn to_analysis(&self, token: &Token, c: Candidate) -> Analysis {
        let (ending, features, segments) = match c.variant {
            Some(v) => {
                let variant = self.bundle.variant(v);
                let entry = self.bundle.entry(variant.entry);
                let segments: Vec<Segment> = variant
                    .segment_surfaces()
                    .zip(entry.features())
                    .map(|(surface, feature)| Segment {
                        surface: surface.to_string(),
                        feature,
                    })
                    .collect();
                (
                    variant.surface.clone(),
                    segments.iter().map(|s| s.feature).collect(),
                    segments,
                )
            }
            None => (String::new(), Vec::new(), Vec::new()),
        };
        Analysis {
            token: token.as_str().to_string(),
            stem: c.stem,
            lemma: c.lemma,
            ending,
            pos: c.pos,
            features,
            segments,
            source: c.source,
        }
    }
}

fn content_hash(alphabet: &str, rules: &str, sources: &LexiconSources) -> String {
    let mut hasher = Sha256::new();
    let files = [(ALPHABET_FILE, alphabet), (RULES_FILE, rules)];
    for (name, text) in files.into_iter().chain(sources.files()) {
        hasher.update(name.as_bytes());
        hasher.update([0]);
        hasher.update(text.as_bytes());
        hasher.update([0]);
    }
    hasher
        .finalize()
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}
