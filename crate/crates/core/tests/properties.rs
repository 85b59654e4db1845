mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use uzmorph::{AlphabetSpec, Analyzer, Pos};

use common::greedy_graphemes;

fn raw_text() -> impl Strategy<Value = String> {
    let pieces = prop::sample::select(vec![
        "a", "b", "d", "e", "g", "h", "i", "k", "n", "o", "q", "s", "u", "y", "z", "A", "O", "SH",
        "Ch", "'", "\u{2018}", "\u{2019}", "\u{02BB}", "\u{02BC}", "`", "-", " ", ".", ",", "!",
        "\u{ab}", "\u{bb}", "1", "\u{44f}",
    ]);
    prop::collection::vec(pieces, 0..12).prop_map(|v| v.concat())
}

fn word() -> impl Strategy<Value = String> {
    let pieces = prop::sample::select(vec![
        "a", "b", "ch", "d", "e", "f", "g", "g'", "h", "i", "j", "k", "l", "m", "n", "ng", "o",
        "o'", "p", "q", "r", "s", "sh", "t", "u", "v", "x", "y", "z",
    ]);
    prop::collection::vec(pieces, 1..10).prop_map(|v| v.concat())
}

fn token(analyzer: &Analyzer) -> impl Strategy<Value = String> {
    let endings: Vec<String> = analyzer
        .bundle()
        .variants()
        .iter()
        .map(|v| v.surface.clone())
        .collect();
    let stems = prop::sample::select(vec![
        "kitob",
        "daftar",
        "bola",
        "ota",
        "yurag",
        "qishlog'",
        "bor",
        "kel",
        "o'qi",
        "bu",
        "u",
        "ikki",
        "uy",
        "muzqaymoq",
        "yok",
        "singl",
        "bit",
        "men",
        "ka",
    ]);
    (
        prop_oneof![stems.prop_map(str::to_string), word()],
        prop::sample::select(endings),
        any::<bool>(),
    )
        .prop_map(|(stem, ending, bare)| if bare { stem } else { stem + &ending })
}

proptest! {
    #[test]
    fn normalize_is_idempotent(raw in raw_text()) {
        let spec = AlphabetSpec::uzbek_latin();
        if let Ok(t) = spec.normalize(&raw) {
            let again = spec.normalize(t.as_str()).unwrap();
            prop_assert_eq!(again.as_str(), t.as_str());
            prop_assert_eq!(t.graphemes().collect::<Vec<_>>(), again.graphemes().collect::<Vec<_>>());
        }
    }

    #[test]
    fn graphemes_rebuild_the_token(raw in raw_text()) {
        let spec = AlphabetSpec::uzbek_latin();
        if let Ok(t) = spec.normalize(&raw) {
            prop_assert_eq!(t.graphemes().collect::<String>(), t.as_str());
            prop_assert_eq!(t.graphemes().collect::<Vec<_>>(), greedy_graphemes(t.as_str()));
            prop_assert_eq!(t.grapheme_len(), greedy_graphemes(t.as_str()).len());
        }
    }

    #[test]
    fn analyses_conserve_the_surface(raw in token(&Analyzer::seed())) {
        let analyzer = Analyzer::seed();
        let set = analyzer.analyze(&raw, None).unwrap();
        prop_assert!(!set.is_empty());
        for a in set.iter() {
            prop_assert_eq!(format!("{}{}", a.stem, a.ending), a.token.clone());
            prop_assert!(!a.stem.is_empty());
            prop_assert_eq!(a.pos.is_none(), a.source == uzmorph::Source::UnknownFallback);
            if a.source == uzmorph::Source::EndingMatch {
                prop_assert_eq!(a.features.len(), a.segments.len());
                prop_assert_eq!(a.segments.iter().map(|s| s.surface.as_str()).collect::<String>(), a.ending.clone());
            }
        }
    }

    #[test]
    fn pos_hint_only_reorders(raw in token(&Analyzer::seed()), hint in prop::sample::select(Pos::ALL.to_vec())) {
        let analyzer = Analyzer::seed();
        let plain = analyzer.analyze(&raw, None).unwrap();
        let hinted = analyzer.analyze(&raw, Some(hint)).unwrap();
        let key = |a: &uzmorph::Analysis| a.tsv_line() + a.render().as_str();
        let a: BTreeSet<String> = plain.iter().map(key).collect();
        let b: BTreeSet<String> = hinted.iter().map(key).collect();
        prop_assert_eq!(a, b);
        prop_assert_eq!(plain.len(), hinted.len());
    }

    #[test]
    fn analysis_is_deterministic(raw in token(&Analyzer::seed())) {
        let analyzer = Analyzer::seed();
        let a = analyzer.analyze(&raw, None).unwrap();
        let b = Analyzer::seed().analyze(&raw, None).unwrap();
        prop_assert_eq!(a.all(), b.all());
    }
}

#[test]
fn three_grapheme_strings_follow_the_greedy_oracle() {
    let spec = AlphabetSpec::uzbek_latin();
    let letters: Vec<&str> = spec.letters().collect();
    let mut checked = 0;
    for a in &letters {
        for b in &letters {
            for c in &letters {
                let text = format!("{a}{b}{c}");
                let got = spec.graphemes_of(&text).unwrap();
                assert_eq!(got, greedy_graphemes(&text), "{text}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, letters.len().pow(3));
}
