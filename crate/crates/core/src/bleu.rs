//! Corpus-level BLEU without smoothing.
//!
//! Modified n-gram precision clips each candidate n-gram count by its maximum
//! count in any single reference of that sentence. Counts are summed over the
//! corpus before the precisions are taken. The effective reference length of
//! a sentence is the reference length closest to the candidate (ties go to the
//! shorter one). If the corpus has no n-grams of some order, the order is
//! reduced to the largest one that has any.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_MAX_ORDER: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Precision {
    pub matches: u64,
    pub total: u64,
}

impl Precision {
    pub fn value(&self) -> f64 {
        self.matches as f64 / self.total as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BleuReport {
    /// `precisions[n - 1]` is the order-`n` precision, for `n` up to `max_order`.
    pub precisions: Vec<Precision>,
    pub brevity_penalty: f64,
    pub candidate_length: u64,
    pub reference_length: u64,
    pub score: f64,
    /// Order actually used after reduction.
    pub max_order: usize,
}

impl BleuReport {
    /// Score on the 0-100 scale tables usually report.
    pub fn scaled(&self) -> f64 {
        self.score * 100.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BleuError {
    #[error("{candidates} candidates but {references} reference sets")]
    LengthMismatch {
        candidates: usize,
        references: usize,
    },
    #[error("sentence {0} has no references")]
    EmptyReferences(usize),
    /// Every candidate is empty; the score is defined as 0.
    #[error("all candidates are empty")]
    AllEmptyCandidates,
    #[error("max order must be at least 1")]
    InvalidOrder,
}

/// Sufficient statistics of one or more sentences. Merging is commutative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BleuStats {
    pub matches: Vec<u64>,
    pub totals: Vec<u64>,
    pub candidate_length: u64,
    pub reference_length: u64,
}

impl BleuStats {
    fn zeros(max_order: usize) -> Self {
        BleuStats {
            matches: vec![0; max_order],
            totals: vec![0; max_order],
            ..Default::default()
        }
    }

    pub fn merge(&mut self, other: &BleuStats) {
        for (a, b) in self.matches.iter_mut().zip(&other.matches) {
            *a += b;
        }
        for (a, b) in self.totals.iter_mut().zip(&other.totals) {
            *a += b;
        }
        self.candidate_length += other.candidate_length;
        self.reference_length += other.reference_length;
    }
}

fn ngram_counts<S: AsRef<str>>(tokens: &[S], n: usize) -> HashMap<Vec<&str>, u64> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for window in tokens.windows(n) {
            let key: Vec<&str> = window.iter().map(AsRef::as_ref).collect();
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    counts
}

/// Statistics for one candidate against its references.
pub fn sentence_stats<S: AsRef<str>>(
    candidate: &[S],
    references: &[Vec<S>],
    max_order: usize,
) -> BleuStats {
    let mut stats = BleuStats::zeros(max_order);
    stats.candidate_length = candidate.len() as u64;
    let c = candidate.len() as i64;
    stats.reference_length = references
        .iter()
        .map(|r| r.len() as i64)
        .min_by_key(|&r| ((r - c).abs(), r))
        .unwrap_or(0) as u64;
    for n in 1..=max_order {
        let cand = ngram_counts(candidate, n);
        let mut max_ref: HashMap<&Vec<&str>, u64> = HashMap::new();
        for reference in references {
            for (gram, count) in ngram_counts(reference, n) {
                if let Some((key, _)) = cand.get_key_value(&gram) {
                    let slot = max_ref.entry(key).or_insert(0);
                    *slot = (*slot).max(count);
                }
            }
        }
        stats.totals[n - 1] = cand.values().sum();
        stats.matches[n - 1] = cand
            .iter()
            .map(|(gram, &count)| count.min(max_ref.get(gram).copied().unwrap_or(0)))
            .sum();
    }
    stats
}

/// Final score from aggregated statistics.
pub fn score_stats(stats: &BleuStats) -> Result<BleuReport, BleuError> {
    if stats.candidate_length == 0 {
        return Err(BleuError::AllEmptyCandidates);
    }
    // Totals never increase with n, so the nonzero ones form a prefix.
    let order = stats.totals.iter().take_while(|&&t| t > 0).count();
    let precisions: Vec<Precision> = (0..order)
        .map(|i| Precision {
            matches: stats.matches[i],
            total: stats.totals[i],
        })
        .collect();
    let (c, r) = (stats.candidate_length, stats.reference_length);
    let brevity_penalty = if c > r {
        1.0
    } else {
        (1.0 - r as f64 / c as f64).exp()
    };
    let score = if precisions.iter().any(|p| p.matches == 0) {
        0.0
    } else {
        let log_mean = precisions.iter().map(|p| p.value().ln()).sum::<f64>() / order as f64;
        brevity_penalty * log_mean.exp()
    };
    Ok(BleuReport {
        precisions,
        brevity_penalty,
        candidate_length: c,
        reference_length: r,
        score,
        max_order: order,
    })
}

pub fn corpus_bleu<S: AsRef<str>>(
    candidates: &[Vec<S>],
    references: &[Vec<Vec<S>>],
    max_order: usize,
) -> Result<BleuReport, BleuError> {
    if max_order == 0 {
        return Err(BleuError::InvalidOrder);
    }
    if candidates.len() != references.len() {
        return Err(BleuError::LengthMismatch {
            candidates: candidates.len(),
            references: references.len(),
        });
    }
    if let Some(i) = references.iter().position(Vec::is_empty) {
        return Err(BleuError::EmptyReferences(i));
    }
    let mut stats = BleuStats::zeros(max_order);
    for (candidate, refs) in candidates.iter().zip(references) {
        stats.merge(&sentence_stats(candidate, refs, max_order));
    }
    score_stats(&stats)
}
