//! Position spectra of a tree generated layer by layer.
//!
//! After layer `t` is generated every node at level `<= t` is known together
//! with its in-order relation to the other known nodes, but not its exact
//! position. With `N` known, a revealed node that has `b` revealed nodes
//! before it and `a` after can sit anywhere in `[b, N - 1 - a]`. Every range
//! is `N - revealed` wide, so neighbouring ranges overlap until the last layer
//! collapses them to exact positions.

use serde::Serialize;
use thiserror::Error;

use crate::sentence::Token;
use crate::tree::SenTree;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RevealedNode {
    pub token: Token,
    pub final_position: usize,
    pub range_low: usize,
    pub range_high: usize,
}

impl RevealedNode {
    pub fn width(&self) -> usize {
        self.range_high - self.range_low
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerSpectrum {
    pub layer: usize,
    /// Revealed nodes in in-order.
    pub revealed: Vec<RevealedNode>,
    pub total_n: usize,
    pub revealed_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("spectra of an empty tree are undefined")]
    EmptyTree,
}

/// One spectrum per tree level; layer `t` reveals all nodes at levels `<= t`.
pub fn layer_spectra(tree: &SenTree) -> Result<Vec<LayerSpectrum>, SpectraError> {
    if tree.is_empty() {
        return Err(SpectraError::EmptyTree);
    }
    let n = tree.len();
    let levels = tree.levels();
    let height = levels.iter().max().map_or(0, |m| m + 1);
    let spectra = (0..height)
        .map(|layer| {
            // Node ids are in-order positions, so scanning ids in order
            // visits revealed nodes in in-order.
            let positions: Vec<usize> = (0..n).filter(|&id| levels[id] <= layer).collect();
            let revealed_count = positions.len();
            let revealed = positions
                .iter()
                .enumerate()
                .map(|(rank, &pos)| RevealedNode {
                    token: tree.node(pos).token.clone(),
                    final_position: pos,
                    range_low: rank,
                    range_high: (n - 1) - (revealed_count - 1 - rank),
                })
                .collect();
            LayerSpectrum {
                layer,
                revealed,
                total_n: n,
                revealed_count,
            }
        })
        .collect();
    Ok(spectra)
}

/// Pass/fail of each spectrum law, with a description of every failure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    /// Every range is `N - revealed_count` wide.
    pub uniform_width: bool,
    /// Every final position lies inside its range.
    pub containment: bool,
    /// Consecutive ranges intersect iff some node is still unrevealed.
    pub overlap: bool,
    /// Width strictly shrinks whenever a layer reveals new nodes.
    pub shrinking: bool,
    pub failures: Vec<String>,
}

impl SpectrumReport {
    pub fn all_pass(&self) -> bool {
        self.uniform_width && self.containment && self.overlap && self.shrinking
    }
}

pub fn check_spectrum_laws(spectra: &[LayerSpectrum]) -> SpectrumReport {
    let mut report = SpectrumReport {
        uniform_width: true,
        containment: true,
        overlap: true,
        shrinking: true,
        failures: Vec::new(),
    };
    let mut previous: Option<(usize, usize)> = None; // (revealed_count, width)
    for spectrum in spectra {
        let layer = spectrum.layer;
        let expected_width = spectrum
            .total_n
            .checked_sub(spectrum.revealed_count)
            .unwrap_or_else(|| {
                report
                    .failures
                    .push(format!("layer {layer}: more revealed than N"));
                0
            });
        if spectrum.revealed.len() != spectrum.revealed_count {
            report.uniform_width = false;
            report.failures.push(format!(
                "layer {layer}: revealed_count {} but {} records",
                spectrum.revealed_count,
                spectrum.revealed.len()
            ));
        }
        for node in &spectrum.revealed {
            if node.range_high < node.range_low || node.width() != expected_width {
                report.uniform_width = false;
                report.failures.push(format!(
                    "layer {layer}: {} has range [{}, {}], expected width {expected_width}",
                    node.token, node.range_low, node.range_high
                ));
            }
            if !(node.range_low <= node.final_position && node.final_position <= node.range_high) {
                report.containment = false;
                report.failures.push(format!(
                    "layer {layer}: {} at {} outside [{}, {}]",
                    node.token, node.final_position, node.range_low, node.range_high
                ));
            }
        }
        let unrevealed = spectrum.total_n > spectrum.revealed_count;
        for pair in spectrum.revealed.windows(2) {
            let intersects = pair[0].range_high >= pair[1].range_low;
            if intersects != unrevealed {
                report.overlap = false;
                report.failures.push(format!(
                    "layer {layer}: ranges of {} and {} intersect={intersects} with unrevealed={unrevealed}",
                    pair[0].token, pair[1].token
                ));
            }
        }
        if let Some((prev_count, prev_width)) = previous {
            if spectrum.revealed_count > prev_count && expected_width >= prev_width {
                report.shrinking = false;
                report.failures.push(format!(
                    "layer {layer}: width {expected_width} did not shrink from {prev_width}"
                ));
            }
        }
        previous = Some((spectrum.revealed_count, expected_width));
    }
    report
}
