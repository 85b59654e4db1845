use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use uzmorph::evaluation::{bench_throughput, evaluate, parse_gold};
use uzmorph::{AnalysisSet, Analyzer, Pos, TokenError};

/// Morphological analysis for Uzbek.
#[derive(Debug, Parser)]
#[command(name = "uzmorph", version)]
struct Cli {
    /// Lexicon data directory; the embedded seed data is used when unset.
    #[arg(long, global = true, env = "UZMORPH_DATA")]
    data: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze tokens given on the command line.
    Analyze {
        #[arg(required = true)]
        tokens: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Analyze a file with one token per line (`-` reads standard input).
    Batch {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lexicon maintenance.
    Lexicon {
        #[command(subcommand)]
        command: LexiconCommand,
    },
    /// Score the analyzer against a gold file of token, stem, lemma rows.
    Eval {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Also list every token that was not scored correct.
        #[arg(long)]
        errors: bool,
    },
    /// Measure single-threaded throughput on a whitespace-separated corpus.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 5)]
        repetitions: usize,
    },
}

#[derive(Debug, Subcommand)]
enum LexiconCommand {
    /// Load and check a data directory, printing its counts.
    Validate { dir: PathBuf },
}

#[derive(Debug, clap::Args)]
struct OutputArgs {
    /// Rank readings of this part of speech first.
    #[arg(long)]
    pos: Option<Pos>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Print every reading, not only the best one.
    #[arg(long)]
    all: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Tsv,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Lexicon(String),
    #[error("{0}")]
    Output(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lexicon(_) => 2,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            let _ = out.flush();
            eprintln!("uzmorph: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, CliError> {
    if let Command::Lexicon {
        command: LexiconCommand::Validate { dir },
    } = &cli.command
    {
        return validate(dir, out);
    }
    let analyzer = load(cli.data.as_deref())?;
    match cli.command {
        Command::Analyze { tokens, output } => {
            let failed = analyze_all(&analyzer, tokens.iter().map(String::as_str), &output, out)?;
            Ok(u8::from(failed > 0))
        }
        Command::Batch { file, output } => {
            let lines = read_lines(&file)?;
            let tokens = lines.iter().map(|l| l.trim()).filter(|l| !l.is_empty());
            analyze_all(&analyzer, tokens, &output, out)?;
            Ok(0)
        }
        Command::Eval {
            gold,
            format,
            errors,
        } => {
            let text = read_input(&gold)?;
            let records = parse_gold(&text, analyzer.spec())
                .map_err(|e| CliError::Input(format!("{}: {e}", gold.display())))?;
            let report =
                evaluate(&records, &analyzer).map_err(|e| CliError::Input(e.to_string()))?;
            match format {
                ReportFormat::Text => out.write_all(report.render_text().as_bytes())?,
                ReportFormat::Tsv => out.write_all(report.render_tsv().as_bytes())?,
            }
            if errors {
                out.write_all(report.render_errors().as_bytes())?;
            }
            if let Some(rate) = report.throughput {
                eprintln!(
                    "scored {} tokens at {rate:.0} tokens/s",
                    report.unique_tokens
                );
            }
            Ok(0)
        }
        Command::Bench {
            corpus,
            repetitions,
        } => {
            let text = read_input(&corpus)?;
            let tokens: Vec<String> = text.split_whitespace().map(str::to_string).collect();
            let rate = bench_throughput(&tokens, &analyzer, repetitions)
                .map_err(|e| CliError::Input(e.to_string()))?;
            writeln!(
                out,
                "median {rate:.0} tokens/s over {} runs of {} tokens",
                repetitions.max(1),
                tokens.len()
            )?;
            Ok(0)
        }
        Command::Lexicon { .. } => unreachable!("handled above"),
    }
}

fn load(dir: Option<&Path>) -> Result<Analyzer, CliError> {
    match dir {
        None => Ok(Analyzer::seed()),
        Some(dir) => Analyzer::load_dir(dir)
            .map_err(|e| CliError::Lexicon(format!("{}: {e}", dir.display()))),
    }
}

fn validate(dir: &Path, out: &mut impl Write) -> Result<u8, CliError> {
    let analyzer = load(Some(dir))?;
    let fp = analyzer.fingerprint();
    for (pos, n) in &fp.entries {
        writeln!(out, "{pos}\t{n}")?;
    }
    writeln!(out, "entries\t{}", fp.entries.values().sum::<usize>())?;
    writeln!(out, "variants\t{}", fp.variants)?;
    writeln!(out, "sha256\t{}", fp.sha256)?;
    Ok(0)
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        return io::read_to_string(io::stdin()).map_err(|e| CliError::Input(format!("stdin: {e}")));
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_lines(path: &Path) -> Result<Vec<String>, CliError> {
    if path == Path::new("-") {
        return io::stdin()
            .lock()
            .lines()
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Input(format!("stdin: {e}")));
    }
    Ok(read_input(path)?.lines().map(str::to_string).collect())
}

/// Writes one block per token in input order; returns how many tokens
/// could not be analyzed.
fn analyze_all<'a>(
    analyzer: &Analyzer,
    tokens: impl Iterator<Item = &'a str>,
    args: &OutputArgs,
    out: &mut impl Write,
) -> Result<usize, CliError> {
    let mut failed = 0;
    for raw in tokens {
        match analyzer.analyze(raw, args.pos) {
            Ok(set) => write_set(&set, args, out)?,
            Err(err) => {
                failed += 1;
                write_error(raw, &err.to_string(), args.format, out)?;
            }
        }
    }
    Ok(failed)
}

fn write_set(set: &AnalysisSet, args: &OutputArgs, out: &mut impl Write) -> Result<(), CliError> {
    let shown = if args.all { set.all() } else { &set.all()[..1] };
    for a in shown {
        match args.format {
            Format::Human => writeln!(out, "{}", a.render())?,
            Format::Tsv => writeln!(out, "{}", a.tsv_line())?,
            Format::Json => {
                let line = serde_json::to_string(&a.record()).expect("records serialize");
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}

fn write_error(raw: &str, msg: &str, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    match format {
        Format::Human => writeln!(out, "{raw}: error: {msg}")?,
        Format::Tsv => writeln!(out, "{raw}\tERROR\t{msg}")?,
        Format::Json => {
            let record = TokenError {
                token: raw.to_string(),
                error: msg.to_string(),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&record).expect("records serialize")
            )?;
        }
    }
    Ok(())
}
