#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use uzmorph::evaluation::{parse_gold, GoldRecord};
use uzmorph::lexicon::{EndingMatch, VariantId};
use uzmorph::morphophonology::check_affixation;
use uzmorph::{Analyzer, Pos};

pub const DIGRAPHS: [&str; 5] = ["o'", "g'", "sh", "ch", "ng"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn gold(analyzer: &Analyzer) -> Vec<GoldRecord> {
    parse_gold(&read_fixture("gold.tsv"), analyzer.spec()).expect("gold fixture parses")
}

pub fn bench_corpus() -> Vec<String> {
    read_fixture("bench_corpus.txt")
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

/// Greedy left-to-right segmentation, two-byte digraphs first.
pub fn greedy_graphemes(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if i + 1 < chars.len() {
            let pair: String = chars[i..i + 2].iter().collect();
            if DIGRAPHS.contains(&pair.as_str()) {
                out.push(pair);
                i += 2;
                continue;
            }
        }
        out.push(chars[i].to_string());
        i += 1;
    }
    out
}

/// Every (split, variant) whose surface equals a suffix starting on a
/// greedy grapheme boundary, with a non-empty stem. Linear scan of all
/// variants, no index.
pub fn brute_force_matches(analyzer: &Analyzer, token: &str) -> Vec<EndingMatch> {
    let graphemes = greedy_graphemes(token);
    let mut bounds = vec![0usize];
    for g in &graphemes {
        bounds.push(bounds.last().unwrap() + g.len());
    }
    let bundle = analyzer.bundle();
    let mut out = Vec::new();
    for &split in &bounds[1..bounds.len() - 1] {
        let suffix = &token[split..];
        for (i, v) in bundle.variants().iter().enumerate() {
            if v.surface == suffix {
                out.push(EndingMatch {
                    split,
                    variant: VariantId(i as u32),
                });
            }
        }
    }
    out.sort();
    out
}

pub fn lemmas() -> Vec<(String, Pos)> {
    read_fixture("lemmas.tsv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (lemma, pos) = l.split_once('\t').expect("lemma<TAB>POS");
            (lemma.to_string(), pos.trim().parse().expect("known POS"))
        })
        .collect()
}

/// Forms listed as known round-trip failures: form -> (stem, ending).
pub fn roundtrip_exceptions() -> BTreeMap<String, (String, String)> {
    read_fixture("roundtrip_exceptions.tsv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let cols: Vec<&str> = l.split('\t').collect();
            (
                cols[0].to_string(),
                (cols[1].to_string(), cols[2].to_string()),
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generated {
    pub form: String,
    pub lemma: String,
    pub stem: String,
    pub ending: String,
}

/// Lemma + every accepted variant of its POS, with forward junction rules.
pub fn generate_forms(analyzer: &Analyzer) -> Vec<Generated> {
    let bundle = analyzer.bundle();
    let mut out = BTreeSet::new();
    for (lemma, pos) in lemmas() {
        for v in bundle.variants() {
            if bundle.entry(v.entry).pos != pos {
                continue;
            }
            let stem = analyzer
                .rules()
                .surface_stem(&lemma, v, bundle, analyzer.spec());
            if check_affixation(&stem, v, bundle, analyzer.rules(), analyzer.spec()).is_ok() {
                out.insert(Generated {
                    form: format!("{stem}{}", v.surface),
                    lemma: lemma.clone(),
                    stem,
                    ending: v.surface.clone(),
                });
            }
        }
    }
    out.into_iter().collect()
}

/// Whether some analysis of the form reproduces the generated split and lemma.
pub fn round_trips(analyzer: &Analyzer, g: &Generated) -> bool {
    analyzer
        .analyze(&g.form, None)
        .map(|set| {
            set.iter()
                .any(|a| a.stem == g.stem && a.ending == g.ending && a.lemma == g.lemma)
        })
        .unwrap_or(false)
}
