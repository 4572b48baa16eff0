//! `sentree` command line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 I/O or configuration
//! error. Errors and summaries go to stderr as JSON lines.

use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sentree::bleu::DEFAULT_MAX_ORDER;
use sentree::decay::DEFAULT_BASE;
use sentree::pipeline::{
    build_corpus, decode_outputs, encode_lines, target_sentence, CorpusOptions, LineError,
    PipelineError, TargetSource,
};
use sentree::sentence::parse_depth_line;
use sentree::{
    build_frequency_table, build_tree, corpus_bleu, decay_curve, layer_spectra, BleuError,
    FrequencyTable, Sentence,
};

#[derive(Parser, Debug)]
#[command(
    name = "sentree",
    version,
    about = "Sentence trees, tree sequences and their evaluation"
)]
struct Cli {
    /// Input file; standard input when omitted or "-".
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output when omitted or "-".
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Report bad lines and keep going instead of stopping at the first.
    #[arg(long, global = true)]
    skip_bad: bool,
    /// Decode malformed sequences from their longest complete layer prefix.
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Target sentences to tree sequences, one per line.
    Encode(TargetArgs),
    /// Tree sequences back to plain sentences.
    Decode,
    /// Source/target line pairs to `source<TAB>tree sequence` lines.
    BuildCorpus {
        /// Plain source-side text, line-aligned with --input.
        #[arg(long)]
        source: PathBuf,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Position spectra of one sentence's tree as TSV.
    Spectra {
        #[command(flatten)]
        target: TargetArgs,
        /// 1-based input line to analyze.
        #[arg(long, default_value_t = 1)]
        line: usize,
    },
    /// Rotary embedding decay curve as TSV.
    Decay {
        #[arg(long, default_value_t = 512)]
        dim: usize,
        #[arg(long, default_value_t = 256)]
        max_dist: usize,
        #[arg(long, default_value_t = DEFAULT_BASE)]
        base: f64,
    },
    /// Corpus BLEU of --input against one or more reference files.
    Bleu {
        #[arg(long = "reference", required = true)]
        references: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Check a depths file.
    Validate,
    /// Token frequency table of a whitespace-tokenized corpus, as JSON.
    Freq,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// JSON lines with tokens and depths.
    Depths,
    /// Whitespace-tokenized text scored by token frequency.
    Text,
}

#[derive(Args, Debug)]
struct TargetArgs {
    #[arg(long, value_enum, default_value_t = InputFormat::Depths)]
    format: InputFormat,
    /// Frequency table for --format text; built from the input when omitted.
    #[arg(long)]
    freq: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    /// Bad data; exit code 1.
    Invalid,
    /// Bad configuration or I/O; exit code 2.
    Config(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn report(value: Value) {
    eprintln!("{value}");
}

fn report_line_error(e: &LineError) {
    report(json!({
        "event": "error",
        "line": e.line(),
        "kind": e.kind(),
        "message": e.to_string(),
    }));
}

fn is_stdio(path: &Option<PathBuf>) -> bool {
    path.as_deref().is_none_or(|p| p == Path::new("-"))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn read_lines(path: &Option<PathBuf>) -> Result<Vec<String>, Failure> {
    let text = if is_stdio(path) {
        let mut buf = String::new();
        io::stdin().lock().read_to_string(&mut buf)?;
        buf
    } else {
        read_text(path.as_deref().unwrap())?
    };
    Ok(text.lines().map(str::to_string).collect())
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    if is_stdio(path) {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        let path = path.as_deref().unwrap();
        let file =
            File::create(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

fn load_table(args: &TargetArgs, lines: &[String]) -> Result<Option<FrequencyTable>, Failure> {
    if args.format != InputFormat::Text {
        if args.freq.is_some() {
            return Err(Failure::Config("--freq requires --format text".into()));
        }
        return Ok(None);
    }
    match &args.freq {
        Some(path) => FrequencyTable::from_json(&read_text(path)?)
            .map(Some)
            .map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => {
            let mut table = FrequencyTable::default();
            for (i, line) in lines.iter().enumerate() {
                match Sentence::from_whitespace(line) {
                    Ok(s) => table.add(&s),
                    Err(violation) => {
                        report_line_error(&LineError::Text {
                            line: i + 1,
                            violation,
                        });
                    }
                }
            }
            Ok(Some(table))
        }
    }
}

fn target_source(table: &Option<FrequencyTable>) -> TargetSource<'_> {
    match table {
        Some(t) => TargetSource::Heuristic(t),
        None => TargetSource::Depths,
    }
}

fn encode(cli: &Cli, args: &TargetArgs) -> Result<(), Failure> {
    let lines = read_lines(&cli.input)?;
    let table = load_table(args, &lines)?;
    let results = encode_lines(&lines, target_source(&table), cli.workers);
    let mut rendered = Vec::with_capacity(results.len());
    let mut skipped = 0;
    for result in &results {
        match result {
            Ok(seq) => rendered.push(seq.render().expect("encode_line checks rendering")),
            Err(e) => {
                report_line_error(e);
                if !cli.skip_bad {
                    return Err(Failure::Invalid);
                }
                skipped += 1;
                rendered.push(String::new());
            }
        }
    }
    let mut out = open_output(&cli.output)?;
    for line in &rendered {
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    report(json!({"event": "summary", "lines": lines.len(), "skipped": skipped}));
    Ok(())
}

fn decode(cli: &Cli) -> Result<(), Failure> {
    let lines = read_lines(&cli.input)?;
    let decoded = decode_outputs(&lines, cli.lenient, cli.workers);
    let mut errors = 0;
    for d in &decoded {
        if let Some(e) = &d.error {
            errors += 1;
            report_line_error(e);
        }
    }
    if errors > 0 && !cli.lenient && !cli.skip_bad {
        return Err(Failure::Invalid);
    }
    let mut out = open_output(&cli.output)?;
    for d in &decoded {
        let text = d.sentence.as_ref().map(Sentence::join).unwrap_or_default();
        writeln!(out, "{text}")?;
    }
    out.flush()?;
    report(json!({"event": "summary", "lines": lines.len(), "malformed": errors}));
    Ok(())
}

fn corpus(cli: &Cli, source: &Path, args: &TargetArgs) -> Result<(), Failure> {
    let source_lines: Vec<String> = read_text(source)?.lines().map(str::to_string).collect();
    let target_lines = read_lines(&cli.input)?;
    let table = load_table(args, &target_lines)?;
    let options = CorpusOptions {
        workers: cli.workers,
        skip_bad: cli.skip_bad,
    };
    let corpus = match build_corpus(&source_lines, &target_lines, target_source(&table), options) {
        Ok(c) => c,
        Err(PipelineError::Line(e)) => {
            report_line_error(&e);
            return Err(Failure::Invalid);
        }
        Err(e @ PipelineError::LineCountMismatch { .. }) => {
            report(
                json!({"event": "error", "kind": "LineCountMismatch", "message": e.to_string()}),
            );
            return Err(Failure::Invalid);
        }
    };
    for e in &corpus.errors {
        report_line_error(e);
    }
    let out = open_output(&cli.output)?;
    corpus.write_to(out)?;
    let mut summary = serde_json::to_value(&corpus.summary).expect("summary serializes");
    summary["event"] = json!("summary");
    report(summary);
    Ok(())
}

fn spectra(cli: &Cli, args: &TargetArgs, line: usize) -> Result<(), Failure> {
    let lines = read_lines(&cli.input)?;
    let table = load_table(args, &lines)?;
    let text = line
        .checked_sub(1)
        .and_then(|i| lines.get(i))
        .ok_or_else(|| Failure::Config(format!("input has no line {line}")))?;
    let sentence = target_sentence(text, line, target_source(&table)).map_err(|e| {
        report_line_error(&e);
        Failure::Invalid
    })?;
    let spectra = layer_spectra(&build_tree(&sentence)).map_err(|e| {
        report(
            json!({"event": "error", "line": line, "kind": "EmptyTree", "message": e.to_string()}),
        );
        Failure::Invalid
    })?;
    let mut out = open_output(&cli.output)?;
    writeln!(
        out,
        "layer\tin_order_rank\ttoken\trange_low\trange_high\tfinal_position"
    )?;
    for spectrum in &spectra {
        for (rank, node) in spectrum.revealed.iter().enumerate() {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                spectrum.layer,
                rank,
                node.token,
                node.range_low,
                node.range_high,
                node.final_position
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

fn decay(cli: &Cli, dim: usize, max_dist: usize, base: f64) -> Result<(), Failure> {
    let curve = decay_curve(dim, max_dist, base).map_err(|e| Failure::Config(e.to_string()))?;
    let mut out = open_output(&cli.output)?;
    writeln!(out, "m\tc")?;
    for (m, c) in curve.values.iter().enumerate() {
        writeln!(out, "{m}\t{c}")?;
    }
    out.flush()?;
    Ok(())
}

fn bleu(cli: &Cli, references: &[PathBuf], max_order: usize) -> Result<(), Failure> {
    let split = |lines: &[String]| -> Vec<Vec<String>> {
        lines
            .iter()
            .map(|l| l.split_whitespace().map(str::to_string).collect())
            .collect()
    };
    let candidates = split(&read_lines(&cli.input)?);
    let mut refs: Vec<Vec<Vec<String>>> = vec![Vec::new(); candidates.len()];
    for path in references {
        let lines: Vec<String> = read_text(path)?.lines().map(str::to_string).collect();
        if lines.len() != candidates.len() {
            report(json!({
                "event": "error",
                "kind": "LengthMismatch",
                "message": format!("{} has {} lines, candidates have {}", path.display(), lines.len(), candidates.len()),
            }));
            return Err(Failure::Invalid);
        }
        for (slot, sentence) in refs.iter_mut().zip(split(&lines)) {
            slot.push(sentence);
        }
    }
    let value = match corpus_bleu(&candidates, &refs, max_order) {
        Ok(r) => {
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["bleu"] = json!(r.scaled());
            v
        }
        Err(BleuError::AllEmptyCandidates) => json!({"score": 0.0, "bleu": 0.0}),
        Err(BleuError::InvalidOrder) => {
            return Err(Failure::Config("--max-order must be >= 1".into()))
        }
        Err(e) => {
            report(json!({"event": "error", "kind": "Bleu", "message": e.to_string()}));
            return Err(Failure::Invalid);
        }
    };
    let mut out = open_output(&cli.output)?;
    writeln!(out, "{value}")?;
    writeln!(out, "BLEU = {:.2}", value["bleu"].as_f64().unwrap_or(0.0))?;
    out.flush()?;
    Ok(())
}

fn validate(cli: &Cli) -> Result<(), Failure> {
    let lines = read_lines(&cli.input)?;
    let mut invalid = 0;
    for (i, line) in lines.iter().enumerate() {
        if let Err(e) = parse_depth_line(line, i + 1) {
            invalid += 1;
            report_line_error(&LineError::Depths(e));
        }
    }
    report(json!({"event": "summary", "lines": lines.len(), "invalid": invalid}));
    if invalid > 0 {
        Err(Failure::Invalid)
    } else {
        Ok(())
    }
}

fn freq(cli: &Cli) -> Result<(), Failure> {
    let lines = read_lines(&cli.input)?;
    let mut sentences = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        match Sentence::from_whitespace(line) {
            Ok(s) => sentences.push(s),
            Err(violation) => {
                report_line_error(&LineError::Text {
                    line: i + 1,
                    violation,
                });
                if !cli.skip_bad {
                    return Err(Failure::Invalid);
                }
            }
        }
    }
    let table = build_frequency_table(&sentences);
    let mut out = open_output(&cli.output)?;
    writeln!(out, "{}", table.to_json())?;
    out.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.workers == 0 {
        return Err(Failure::Config("--workers must be at least 1".into()));
    }
    match &cli.command {
        Command::Encode(args) => encode(cli, args),
        Command::Decode => decode(cli),
        Command::BuildCorpus { source, target } => corpus(cli, source, target),
        Command::Spectra { target, line } => spectra(cli, target, *line),
        Command::Decay {
            dim,
            max_dist,
            base,
        } => decay(cli, *dim, *max_dist, *base),
        Command::Bleu {
            references,
            max_order,
        } => bleu(cli, references, *max_order),
        Command::Validate => validate(cli),
        Command::Freq => freq(cli),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid) => ExitCode::from(1),
        Err(Failure::Config(message)) => {
            report(json!({"event": "error", "kind": "Config", "message": message}));
            ExitCode::from(2)
        }
    }
}
