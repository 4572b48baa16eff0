//! Frequency-based fallback depths for when no probe depths are available.
//!
//! `depth(w) = ln(1 + count(w))`: frequent function words sink deep in the
//! tree while rare words, including unseen ones at depth 0, rise to the top.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sentence::{DepthedSentence, Sentence, Token};

/// Token occurrence counts. Serializes as a JSON object `{token: count}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, u64>", into = "BTreeMap<String, u64>")]
pub struct FrequencyTable {
    counts: BTreeMap<String, u64>,
    total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("token {0:?} has count 0")]
pub struct ZeroCount(String);

impl TryFrom<BTreeMap<String, u64>> for FrequencyTable {
    type Error = ZeroCount;

    fn try_from(counts: BTreeMap<String, u64>) -> Result<Self, ZeroCount> {
        if let Some((token, _)) = counts.iter().find(|(_, &c)| c == 0) {
            return Err(ZeroCount(token.clone()));
        }
        let total = counts.values().sum();
        Ok(FrequencyTable { counts, total })
    }
}

impl From<FrequencyTable> for BTreeMap<String, u64> {
    fn from(table: FrequencyTable) -> Self {
        table.counts
    }
}

impl FrequencyTable {
    pub fn add(&mut self, sentence: &[Token]) {
        for token in sentence {
            *self.counts.entry(token.as_str().to_string()).or_insert(0) += 1;
            self.total += 1;
        }
    }

    /// Folds another table into this one.
    pub fn merge(&mut self, other: &FrequencyTable) {
        for (token, &count) in &other.counts {
            *self.counts.entry(token.clone()).or_insert(0) += count;
        }
        self.total += other.total;
    }

    pub fn count(&self, token: &str) -> u64 {
        self.counts.get(token).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string keys and integer counts always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub fn build_frequency_table<'a, I>(corpus: I) -> FrequencyTable
where
    I: IntoIterator<Item = &'a Sentence>,
{
    let mut table = FrequencyTable::default();
    for sentence in corpus {
        table.add(sentence);
    }
    table
}

pub fn token_depth(table: &FrequencyTable, token: &str) -> f64 {
    (table.count(token) as f64).ln_1p()
}

pub fn assign_depths(sentence: &Sentence, table: &FrequencyTable) -> DepthedSentence {
    let depths = sentence
        .iter()
        .map(|t| token_depth(table, t.as_str()))
        .collect();
    DepthedSentence::new(sentence.tokens().to_vec(), depths)
        .expect("log counts are finite and non-negative")
}
