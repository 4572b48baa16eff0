//! Line-aligned corpus tooling.
//!
//! Target sentences come either from a depths file or from plain text scored
//! with a [`FrequencyTable`]. Work is sharded into contiguous line ranges, one
//! per worker, and results are merged back in input order, so output is
//! independent of the worker count.

use std::io::{self, Write};
use std::thread;

use serde::Serialize;
use thiserror::Error;

use crate::heuristic::{assign_depths, FrequencyTable};
use crate::sentence::{parse_depth_line, DepthFileError, DepthedSentence, Sentence, Violation};
use crate::seq::{deserialize, deserialize_prefix, serialize, MalformedSequence, TreeSequence};
use crate::tree::{build_tree, linearize};

/// Where target depths come from.
#[derive(Clone, Copy, Debug)]
pub enum TargetSource<'a> {
    /// Lines of a depths file.
    Depths,
    /// Whitespace-tokenized text, depths from the frequency table.
    Heuristic(&'a FrequencyTable),
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusOptions {
    pub workers: usize,
    pub skip_bad: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            workers: 1,
            skip_bad: false,
        }
    }
}

/// A per-line failure. `line` is 1-based.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum LineError {
    #[error(transparent)]
    Depths(#[from] DepthFileError),
    #[error("line {line}: {violation}")]
    Text { line: usize, violation: Violation },
    #[error("line {line}: {source}")]
    Unrenderable {
        line: usize,
        source: crate::seq::UnescapableToken,
    },
    #[error("line {line}: {source}")]
    Malformed {
        line: usize,
        source: MalformedSequence,
    },
}

impl LineError {
    pub fn line(&self) -> usize {
        match self {
            LineError::Depths(e) => e.line(),
            LineError::Text { line, .. }
            | LineError::Unrenderable { line, .. }
            | LineError::Malformed { line, .. } => *line,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LineError::Depths(DepthFileError::Syntax { .. }) => "Syntax",
            LineError::Depths(DepthFileError::Invalid { .. }) | LineError::Text { .. } => {
                "InvalidSentence"
            }
            LineError::Unrenderable { .. } => "UnescapableToken",
            LineError::Malformed { source, .. } => source.reason.name(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum PipelineError {
    #[error("source has {source_lines} lines but target has {target_lines}")]
    LineCountMismatch {
        source_lines: usize,
        target_lines: usize,
    },
    #[error(transparent)]
    Line(#[from] LineError),
}

/// Maps `f` over `items` on up to `workers` threads, one contiguous chunk
/// each, returning results in input order. `f` receives the item index.
pub fn par_map<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || items.len() < 2 {
        return items.iter().enumerate().map(|(i, x)| f(i, x)).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let f = &f;
    thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                scope.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(i, x)| f(c * chunk + i, x))
                        .collect::<Vec<R>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Reads one target line into a depth-annotated sentence.
pub fn target_sentence(
    text: &str,
    line: usize,
    target: TargetSource<'_>,
) -> Result<DepthedSentence, LineError> {
    match target {
        TargetSource::Depths => Ok(parse_depth_line(text, line)?),
        TargetSource::Heuristic(table) => Sentence::from_whitespace(text)
            .map(|s| assign_depths(&s, table))
            .map_err(|violation| LineError::Text { line, violation }),
    }
}

/// Encodes one target line into its rendered-checkable tree sequence.
pub fn encode_line(
    text: &str,
    line: usize,
    target: TargetSource<'_>,
) -> Result<TreeSequence, LineError> {
    let sentence = target_sentence(text, line, target)?;
    let seq = serialize(&build_tree(&sentence));
    seq.render()
        .map_err(|source| LineError::Unrenderable { line, source })?;
    Ok(seq)
}

/// Encodes every line, in order.
pub fn encode_lines(
    lines: &[String],
    target: TargetSource<'_>,
    workers: usize,
) -> Vec<Result<TreeSequence, LineError>> {
    par_map(lines, workers, |i, text| encode_line(text, i + 1, target))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusPair {
    pub source: Sentence,
    pub target_tree: TreeSequence,
}

impl CorpusPair {
    /// `source<TAB>tree`, both sides space-joined.
    pub fn to_line(&self) -> String {
        let tree = self
            .target_tree
            .render()
            .expect("encode_line only admits renderable sequences");
        format!("{}\t{}", self.source.join(), tree)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub sentences: usize,
    pub tokens: usize,
    pub itn: usize,
    pub vac: usize,
    /// Largest number of tree layers over the corpus.
    pub max_layers: usize,
    pub skipped: usize,
}

impl CorpusSummary {
    fn record(&mut self, seq: &TreeSequence) {
        self.sentences += 1;
        self.tokens += seq.token_count();
        self.itn += seq.itn_count();
        self.vac += seq.vac_count();
        self.max_layers = self.max_layers.max(layer_count(seq));
    }
}

/// Number of layers of a grammatical sequence.
fn layer_count(seq: &TreeSequence) -> usize {
    deserialize(seq).map_or(0, |t| t.height())
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub pairs: Vec<CorpusPair>,
    pub summary: CorpusSummary,
    /// Lines dropped under `skip_bad`.
    pub errors: Vec<LineError>,
}

impl Corpus {
    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        for pair in &self.pairs {
            writeln!(out, "{}", pair.to_line())?;
        }
        out.flush()
    }
}

/// Pairs each source line with the tree sequence of its target line.
pub fn build_corpus(
    source: &[String],
    target: &[String],
    target_source: TargetSource<'_>,
    options: CorpusOptions,
) -> Result<Corpus, PipelineError> {
    if source.len() != target.len() {
        return Err(PipelineError::LineCountMismatch {
            source_lines: source.len(),
            target_lines: target.len(),
        });
    }
    let rows: Vec<(&String, &String)> = source.iter().zip(target).collect();
    let results = par_map(&rows, options.workers, |i, (src, tgt)| {
        let line = i + 1;
        let source = Sentence::from_whitespace(src)
            .map_err(|violation| LineError::Text { line, violation })?;
        let target_tree = encode_line(tgt, line, target_source)?;
        Ok(CorpusPair {
            source,
            target_tree,
        })
    });

    let mut corpus = Corpus::default();
    for result in results {
        match result {
            Ok(pair) => {
                corpus.summary.record(&pair.target_tree);
                corpus.pairs.push(pair);
            }
            Err(e) if options.skip_bad => {
                corpus.summary.skipped += 1;
                corpus.errors.push(e);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(corpus)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodedLine {
    pub line: usize,
    /// Decoded sentence; under lenient decoding also set for malformed lines.
    pub sentence: Option<Sentence>,
    pub error: Option<LineError>,
}

/// parse, deserialize and linearize each line. With `lenient`, malformed
/// lines decode their longest prefix of complete layers.
pub fn decode_outputs(lines: &[String], lenient: bool, workers: usize) -> Vec<DecodedLine> {
    par_map(lines, workers, |i, text| {
        let line = i + 1;
        let seq = TreeSequence::parse(text);
        if lenient {
            let (tree, err) = deserialize_prefix(&seq);
            DecodedLine {
                line,
                sentence: Some(linearize(&tree)),
                error: err.map(|source| LineError::Malformed { line, source }),
            }
        } else {
            match deserialize(&seq) {
                Ok(tree) => DecodedLine {
                    line,
                    sentence: Some(linearize(&tree)),
                    error: None,
                },
                Err(source) => DecodedLine {
                    line,
                    sentence: None,
                    error: Some(LineError::Malformed { line, source }),
                },
            }
        }
    })
}
