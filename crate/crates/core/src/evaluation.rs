//! Gold-set scoring with a five-way error taxonomy plus a lemma-only bin,
//! and a single-threaded throughput benchmark.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Instant;

use thiserror::Error;

use crate::alphabet::AlphabetSpec;
use crate::analyzer::Analyzer;

/// Smallest corpus accepted by [`bench_throughput`].
pub const MIN_BENCH_TOKENS: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("gold file has no records")]
    EmptyGoldFile,
    #[error("gold file line {line}: {msg}")]
    MalformedGoldRow { line: usize, msg: String },
    #[error("predicted stem {stem:?} is not a prefix of {token:?}")]
    NotAPrefix { token: String, stem: String },
    #[error("benchmark corpus has {0} tokens, at least {MIN_BENCH_TOKENS} are required")]
    CorpusTooSmall(usize),
}

/// Outcome of comparing one prediction with its gold record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EvalCase {
    Correct,
    NotStripped,
    OverStrippedWithAffixes,
    PartialStripped,
    OverStrippedNoAffixes,
    LemmaMismatch,
}

impl EvalCase {
    pub const ALL: [EvalCase; 6] = [
        EvalCase::Correct,
        EvalCase::NotStripped,
        EvalCase::OverStrippedWithAffixes,
        EvalCase::PartialStripped,
        EvalCase::OverStrippedNoAffixes,
        EvalCase::LemmaMismatch,
    ];

    /// Machine-readable name used in TSV reports.
    pub fn id(self) -> &'static str {
        match self {
            EvalCase::Correct => "correct",
            EvalCase::NotStripped => "not_stripped",
            EvalCase::OverStrippedWithAffixes => "over_stripped_with_affixes",
            EvalCase::PartialStripped => "partial_stripped",
            EvalCase::OverStrippedNoAffixes => "over_stripped_no_affixes",
            EvalCase::LemmaMismatch => "lemma_mismatch",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EvalCase::Correct => "correct stem and lemma",
            EvalCase::NotStripped => "ending left on the stem",
            EvalCase::OverStrippedWithAffixes => "stem cut short (token had an ending)",
            EvalCase::PartialStripped => "ending only partly removed",
            EvalCase::OverStrippedNoAffixes => "stem cut short (token had no ending)",
            EvalCase::LemmaMismatch => "stem correct, lemma wrong",
        }
    }
}

impl fmt::Display for EvalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GoldRecord {
    pub token: String,
    pub stem: String,
    pub lemma: String,
}

/// Parses `token<TAB>stem<TAB>lemma` rows; `#` starts a comment.
pub fn parse_gold(text: &str, spec: &AlphabetSpec) -> Result<Vec<GoldRecord>, EvalError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let bad = |msg: String| EvalError::MalformedGoldRow { line, msg };
        let cols: Vec<&str> = content.split('\t').map(str::trim).collect();
        let [token, stem, lemma] = cols.as_slice() else {
            return Err(bad(format!(
                "expected 3 tab-separated columns, found {}",
                cols.len()
            )));
        };
        let token = spec.normalize(token).map_err(|e| bad(e.to_string()))?;
        let stem = spec.normalize(stem).map_err(|e| bad(e.to_string()))?;
        let lemma = spec.normalize(lemma).map_err(|e| bad(e.to_string()))?;
        if !token.as_str().starts_with(stem.as_str()) || !token.is_boundary(stem.as_str().len()) {
            return Err(bad(format!(
                "stem {stem} is not a grapheme prefix of {token}"
            )));
        }
        out.push(GoldRecord {
            token: token.as_str().to_string(),
            stem: stem.as_str().to_string(),
            lemma: lemma.as_str().to_string(),
        });
    }
    if out.is_empty() {
        return Err(EvalError::EmptyGoldFile);
    }
    Ok(out)
}

/// Places one prediction into exactly one case.
pub fn classify(
    gold: &GoldRecord,
    predicted_stem: &str,
    predicted_lemma: &str,
) -> Result<EvalCase, EvalError> {
    let token = gold.token.as_str();
    if !token.starts_with(predicted_stem) {
        return Err(EvalError::NotAPrefix {
            token: gold.token.clone(),
            stem: predicted_stem.to_string(),
        });
    }
    let (p, g) = (predicted_stem, gold.stem.as_str());
    Ok(if p == g {
        if predicted_lemma == gold.lemma {
            EvalCase::Correct
        } else {
            EvalCase::LemmaMismatch
        }
    } else if p == token {
        EvalCase::NotStripped
    } else if g == token {
        EvalCase::OverStrippedNoAffixes
    } else if p.len() < g.len() {
        EvalCase::OverStrippedWithAffixes
    } else {
        EvalCase::PartialStripped
    })
}

/// One scored unique token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub gold: GoldRecord,
    pub stem: String,
    pub lemma: String,
    pub case: EvalCase,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    counts: BTreeMap<EvalCase, usize>,
    outcomes: Vec<Outcome>,
    pub unique_tokens: usize,
    pub running_tokens: usize,
    /// Tokens analysed per second during the scoring pass, when measured.
    pub throughput: Option<f64>,
}

impl EvalReport {
    /// Aggregates scored outcomes; order of the input does not matter.
    pub fn from_outcomes(mut outcomes: Vec<Outcome>, running_tokens: usize) -> Self {
        outcomes.sort_by(|a, b| a.gold.cmp(&b.gold).then_with(|| a.stem.cmp(&b.stem)));
        let mut counts: BTreeMap<EvalCase, usize> = EvalCase::ALL.iter().map(|&c| (c, 0)).collect();
        for o in &outcomes {
            *counts.get_mut(&o.case).expect("all cases present") += 1;
        }
        EvalReport {
            unique_tokens: outcomes.len(),
            counts,
            outcomes,
            running_tokens,
            throughput: None,
        }
    }

    pub fn count(&self, case: EvalCase) -> usize {
        self.counts[&case]
    }

    /// Share of unique tokens in tenths of a percent, rounded half up.
    pub fn percent_tenths(&self, case: EvalCase) -> u64 {
        if self.unique_tokens == 0 {
            return 0;
        }
        let (n, d) = (self.count(case) as u64, self.unique_tokens as u64);
        (2000 * n + d) / (2 * d)
    }

    pub fn percent(&self, case: EvalCase) -> String {
        let t = self.percent_tenths(case);
        format!("{}.{}", t / 10, t % 10)
    }

    pub fn accuracy(&self) -> f64 {
        if self.unique_tokens == 0 {
            0.0
        } else {
            self.count(EvalCase::Correct) as f64 / self.unique_tokens as f64
        }
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    /// Aligned plain-text report. Timing is left out so that repeated runs
    /// produce identical text.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<40} {:>8} {:>7}", "case", "tokens", "%");
        for case in EvalCase::ALL {
            let _ = writeln!(
                out,
                "{:<40} {:>8} {:>7}",
                case.label(),
                self.count(case),
                self.percent(case)
            );
        }
        let _ = writeln!(out, "{:<40} {:>8}", "unique tokens", self.unique_tokens);
        let _ = writeln!(out, "{:<40} {:>8}", "running tokens", self.running_tokens);
        let _ = writeln!(
            out,
            "{:<40} {:>7}%",
            "accuracy",
            self.percent(EvalCase::Correct)
        );
        out
    }

    /// `case<TAB>count<TAB>percent` rows with a header line.
    pub fn render_tsv(&self) -> String {
        let mut out = String::from("case\tcount\tpercent\n");
        for case in EvalCase::ALL {
            let _ = writeln!(
                out,
                "{}\t{}\t{}",
                case.id(),
                self.count(case),
                self.percent(case)
            );
        }
        out
    }

    /// Every token that was not scored correct, one per line.
    pub fn render_errors(&self) -> String {
        let mut out = String::new();
        for o in self.outcomes.iter().filter(|o| o.case != EvalCase::Correct) {
            let _ = writeln!(
                out,
                "{}\t{}\tgold={}/{}\tpredicted={}/{}",
                o.case, o.gold.token, o.gold.stem, o.gold.lemma, o.stem, o.lemma
            );
        }
        out
    }
}

/// Scores the analyzer's best analysis for every unique gold token.
pub fn evaluate(gold: &[GoldRecord], analyzer: &Analyzer) -> Result<EvalReport, EvalError> {
    if gold.is_empty() {
        return Err(EvalError::EmptyGoldFile);
    }
    let mut unique: BTreeMap<&str, &GoldRecord> = BTreeMap::new();
    for record in gold {
        unique.entry(record.token.as_str()).or_insert(record);
    }

    let start = Instant::now();
    let mut outcomes = Vec::with_capacity(unique.len());
    for record in unique.values() {
        let (stem, lemma) = analyzer
            .stem_and_lemma(&record.token)
            .unwrap_or_else(|_| (record.token.clone(), record.token.clone()));
        let case = classify(record, &stem, &lemma)?;
        outcomes.push(Outcome {
            gold: (*record).clone(),
            stem,
            lemma,
            case,
        });
    }
    let elapsed = start.elapsed().as_secs_f64();

    let mut report = EvalReport::from_outcomes(outcomes, gold.len());
    if elapsed > 0.0 {
        report.throughput = Some(report.unique_tokens as f64 / elapsed);
    }
    Ok(report)
}

/// Median tokens-per-second over `repetitions` timed passes, after one
/// untimed warm-up pass.
pub fn bench_throughput(
    corpus: &[String],
    analyzer: &Analyzer,
    repetitions: usize,
) -> Result<f64, EvalError> {
    if corpus.len() < MIN_BENCH_TOKENS {
        return Err(EvalError::CorpusTooSmall(corpus.len()));
    }
    let pass = || {
        let mut sink = 0usize;
        for token in corpus {
            if let Ok(set) = analyzer.analyze(token, None) {
                sink += set.best().stem.len();
            }
        }
        std::hint::black_box(sink);
    };
    pass();
    let mut rates: Vec<f64> = (0..repetitions.max(1))
        .map(|_| {
            let start = Instant::now();
            pass();
            corpus.len() as f64 / start.elapsed().as_secs_f64().max(f64::MIN_POSITIVE)
        })
        .collect();
    rates.sort_by(f64::total_cmp);
    let mid = rates.len() / 2;
    Ok(if rates.len() % 2 == 1 {
        rates[mid]
    } else {
        (rates[mid - 1] + rates[mid]) / 2.0
    })
}
