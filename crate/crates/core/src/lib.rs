//! Sentences as depth-driven binary trees.
//!
//! A sentence whose tokens carry depth scores is turned into a [`SenTree`]:
//! the shallowest token becomes the root, and the left and right subtrees are
//! built the same way from the tokens on either side. The tree is flattened
//! into a layer-order [`TreeSequence`] using the reserved entries `<ITN>`
//! (internal node) and `<VAC>` (vacant child slot), and either form converts
//! back into the original sentence.
//!
//! Around that conversion sit the analysis and corpus tools:
//!
//! - [`spectra`]: per-layer intervals of possible final positions,
//! - [`decay`]: the rotary position embedding decay envelope,
//! - [`bleu`]: corpus BLEU for scoring decoded outputs,
//! - [`heuristic`]: frequency-based fallback depths,
//! - [`pipeline`]: line-aligned corpus encoding and decoding.

pub mod bleu;
pub mod decay;
pub mod heuristic;
pub mod pipeline;
pub mod sentence;
pub mod seq;
pub mod spectra;
pub mod tree;

pub use bleu::{corpus_bleu, BleuError, BleuReport};
pub use decay::{check_decay, decay_curve, DecayCurve, DecayError};
pub use heuristic::{assign_depths, build_frequency_table, FrequencyTable};
pub use sentence::{
    validate_sentence, DepthedSentence, RawDepthedSentence, Sentence, Token, Violation,
    ITN_LITERAL, VAC_LITERAL,
};
pub use seq::{deserialize, serialize, Entry, MalformedReason, MalformedSequence, TreeSequence};
pub use spectra::{check_spectrum_laws, layer_spectra, LayerSpectrum, SpectrumReport};
pub use tree::{build_tree, linearize, NodeId, SenTree};
