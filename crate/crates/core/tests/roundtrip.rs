mod common;

use uzmorph::lexicon::Condition;
use uzmorph::morphophonology::{check_affixation, restore_lemma};
use uzmorph::Analyzer;

use common::{generate_forms, round_trips, roundtrip_exceptions};

#[test]
fn generated_forms_reanalyze_to_their_source() {
    let analyzer = Analyzer::seed();
    let forms = generate_forms(&analyzer);
    assert!(forms.len() > 1000, "only {} forms", forms.len());
    let ledger = roundtrip_exceptions();
    let failures: Vec<_> = forms
        .iter()
        .filter(|g| !round_trips(&analyzer, g))
        .collect();
    let unlisted: Vec<String> = failures
        .iter()
        .filter(|f| ledger.get(&f.form) != Some(&(f.stem.clone(), f.ending.clone())))
        .map(|f| format!("{}\t{}\t{}", f.form, f.stem, f.ending))
        .collect();
    assert!(
        unlisted.is_empty(),
        "not in the exceptions ledger:\n{}",
        unlisted.join("\n")
    );
    let passed = forms.len() - failures.len();
    assert!(passed * 100 >= forms.len() * 99, "{passed}/{}", forms.len());
    println!("round trip: {passed}/{} forms", forms.len());
}

#[test]
fn restore_inverts_forward_rules() {
    let analyzer = Analyzer::seed();
    let (bundle, rules, spec) = (analyzer.bundle(), analyzer.rules(), analyzer.spec());
    for g in generate_forms(&analyzer) {
        if bundle.exceptional_stems().contains_key(&g.lemma)
            || bundle.lemma_exceptions().contains_key(&g.form)
        {
            continue;
        }
        let variant = bundle
            .variants()
            .iter()
            .find(|v| {
                v.surface == g.ending && rules.surface_stem(&g.lemma, v, bundle, spec) == g.stem
            })
            .unwrap();
        assert_eq!(
            restore_lemma(&g.stem, variant, bundle, rules, spec),
            g.lemma,
            "{}",
            g.form
        );
        // idempotent: restoring an unrewritten stem leaves it alone
        if g.stem == g.lemma {
            assert_eq!(
                restore_lemma(&g.lemma, variant, bundle, rules, spec),
                g.lemma
            );
        }
    }
}

#[test]
fn any_condition_long_stems_are_accepted() {
    let analyzer = Analyzer::seed();
    let (bundle, rules, spec) = (analyzer.bundle(), analyzer.rules(), analyzer.spec());
    let stems = [
        "daftar", "kitob", "maktab", "yurak", "qishloq", "bola", "o'qi", "shahar",
    ];
    for v in bundle
        .variants()
        .iter()
        .filter(|v| v.condition == Condition::Any)
    {
        for stem in stems {
            let ruled = rules.junction_rules().iter().any(|r| {
                r.stem_final
                    .graphemes
                    .holds(spec.last_grapheme(stem).unwrap(), spec)
            });
            if !ruled {
                assert_eq!(
                    check_affixation(stem, v, bundle, rules, spec),
                    Ok(()),
                    "{stem}+{}",
                    v.surface
                );
            }
        }
    }
}
