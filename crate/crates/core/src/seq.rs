//! Layer-order encoding of a [`SenTree`].
//!
//! Layer 0 holds the root. A node entry is either `<ITN> token` (the node has
//! at least one child) or a bare `token` (leaf). Every internal node of layer
//! `k` owns two slots in layer `k + 1`, left then right, each holding a node
//! entry or `<VAC>`. Leaves own no slots, so layer boundaries follow from the
//! internal-node counts and need no separator.
//!
//! ```text
//! cat(the, sat)        ->  <ITN> cat the sat
//! a -> b -> c (right)  ->  <ITN> a <VAC> <ITN> b <VAC> c
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::sentence::{Token, ITN_LITERAL, VAC_LITERAL};
use crate::tree::{Node, NodeId, SenTree};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Itn,
    Vac,
    Token(Token),
}

impl Entry {
    pub fn as_str(&self) -> &str {
        match self {
            Entry::Itn => ITN_LITERAL,
            Entry::Vac => VAC_LITERAL,
            Entry::Token(t) => t.as_str(),
        }
    }

    fn from_word(word: &str) -> Self {
        match word {
            ITN_LITERAL => Entry::Itn,
            VAC_LITERAL => Entry::Vac,
            _ => Entry::Token(Token::new(word).expect("non-empty, non-reserved")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TreeSequence(Vec<Entry>);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("token {token:?} at entry {position} contains whitespace")]
pub struct UnescapableToken {
    pub position: usize,
    pub token: String,
}

impl TreeSequence {
    pub fn new(entries: Vec<Entry>) -> Self {
        TreeSequence(entries)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Entry> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn itn_count(&self) -> usize {
        self.0.iter().filter(|e| matches!(e, Entry::Itn)).count()
    }

    pub fn vac_count(&self) -> usize {
        self.0.iter().filter(|e| matches!(e, Entry::Vac)).count()
    }

    pub fn token_count(&self) -> usize {
        self.0
            .iter()
            .filter(|e| matches!(e, Entry::Token(_)))
            .count()
    }

    /// Joins entries with single spaces. Tokens containing whitespace cannot
    /// survive [`TreeSequence::parse`] and are rejected.
    pub fn render(&self) -> Result<String, UnescapableToken> {
        let mut out = String::new();
        for (position, entry) in self.0.iter().enumerate() {
            if let Entry::Token(t) = entry {
                if t.as_str().chars().any(char::is_whitespace) {
                    return Err(UnescapableToken {
                        position,
                        token: t.as_str().to_string(),
                    });
                }
            }
            if position > 0 {
                out.push(' ');
            }
            out.push_str(entry.as_str());
        }
        Ok(out)
    }

    /// Splits on runs of whitespace; the reserved literals become markers.
    pub fn parse(line: &str) -> Self {
        TreeSequence(line.split_whitespace().map(Entry::from_word).collect())
    }
}

impl FromStr for TreeSequence {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(TreeSequence::parse(s))
    }
}

impl FromIterator<Entry> for TreeSequence {
    fn from_iter<I: IntoIterator<Item = Entry>>(iter: I) -> Self {
        TreeSequence(iter.into_iter().collect())
    }
}

/// Emits the tree layer by layer.
pub fn serialize(tree: &SenTree) -> TreeSequence {
    let mut out = Vec::new();
    // Slots of the current layer: Some(node) or None for a vacancy.
    let mut slots: Vec<Option<NodeId>> = tree.root().into_iter().map(Some).collect();
    while !slots.is_empty() {
        let mut next = Vec::new();
        for slot in &slots {
            match *slot {
                None => out.push(Entry::Vac),
                Some(id) => {
                    let node = tree.node(id);
                    if node.left.is_some() || node.right.is_some() {
                        out.push(Entry::Itn);
                        next.push(node.left);
                        next.push(node.right);
                    }
                    out.push(Entry::Token(node.token.clone()));
                }
            }
        }
        slots = next;
    }
    TreeSequence(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason")]
pub enum MalformedReason {
    /// `<ITN>` not followed by a token.
    DanglingItn,
    /// A layer ended before all slots owned by the previous layer were filled.
    SlotCountMismatch {
        layer: usize,
        found: usize,
        expected: usize,
    },
    /// Entries remain after a layer with no internal nodes.
    TrailingEntries,
    /// The root slot holds `<VAC>`.
    VacantRoot,
    /// An `<ITN>` node whose two slots are both `<VAC>`.
    ChildlessInternal,
}

impl fmt::Display for MalformedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MalformedReason::DanglingItn => f.write_str("<ITN> not followed by a token"),
            MalformedReason::SlotCountMismatch {
                layer,
                found,
                expected,
            } => write!(f, "layer {layer} has {found} entries, expected {expected}"),
            MalformedReason::TrailingEntries => f.write_str("entries after the final layer"),
            MalformedReason::VacantRoot => f.write_str("root slot is <VAC>"),
            MalformedReason::ChildlessInternal => f.write_str("<ITN> node has no children"),
        }
    }
}

impl MalformedReason {
    pub fn name(&self) -> &'static str {
        match self {
            MalformedReason::DanglingItn => "DanglingITN",
            MalformedReason::SlotCountMismatch { .. } => "SlotCountMismatch",
            MalformedReason::TrailingEntries => "TrailingEntries",
            MalformedReason::VacantRoot => "VacantRoot",
            MalformedReason::ChildlessInternal => "ChildlessInternal",
        }
    }
}

/// Why and where (entry index) a sequence failed to decode.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("malformed sequence at entry {position}: {reason}")]
pub struct MalformedSequence {
    pub position: usize,
    pub reason: MalformedReason,
}

#[derive(Clone, Debug)]
enum Slot {
    Vacant,
    Node { token: Token, internal: bool },
}

/// Reads complete layers until the sequence ends or an error is found.
/// Returns the layers that decoded cleanly and the first error, if any.
fn read_layers(entries: &[Entry]) -> (Vec<Vec<Slot>>, Option<MalformedSequence>) {
    let mut layers: Vec<Vec<Slot>> = Vec::new();
    let mut pos = 0;
    let mut expected = usize::from(!entries.is_empty());
    while expected > 0 {
        let layer_index = layers.len();
        let mut layer = Vec::with_capacity(expected);
        let mut internal = 0;
        while layer.len() < expected {
            let fail = |position, reason| Some(MalformedSequence { position, reason });
            match entries.get(pos) {
                None => {
                    let reason = MalformedReason::SlotCountMismatch {
                        layer: layer_index,
                        found: layer.len(),
                        expected,
                    };
                    return (layers, fail(pos, reason));
                }
                Some(Entry::Vac) => {
                    if layer_index == 0 {
                        return (layers, fail(pos, MalformedReason::VacantRoot));
                    }
                    layer.push(Slot::Vacant);
                    pos += 1;
                }
                Some(Entry::Token(t)) => {
                    layer.push(Slot::Node {
                        token: t.clone(),
                        internal: false,
                    });
                    pos += 1;
                }
                Some(Entry::Itn) => match entries.get(pos + 1) {
                    Some(Entry::Token(t)) => {
                        layer.push(Slot::Node {
                            token: t.clone(),
                            internal: true,
                        });
                        internal += 1;
                        pos += 2;
                    }
                    _ => return (layers, fail(pos, MalformedReason::DanglingItn)),
                },
            }
        }
        if layer_index > 0 {
            // Each internal node of the previous layer needs a real child.
            for (pair, chunk) in layer.chunks(2).enumerate() {
                if chunk.iter().all(|s| matches!(s, Slot::Vacant)) {
                    let position = slot_position(entries, pos, &layer, 2 * pair);
                    let err = MalformedSequence {
                        position,
                        reason: MalformedReason::ChildlessInternal,
                    };
                    return (layers, Some(err));
                }
            }
        }
        layers.push(layer);
        expected = 2 * internal;
    }
    if pos < entries.len() {
        let err = MalformedSequence {
            position: pos,
            reason: MalformedReason::TrailingEntries,
        };
        return (layers, Some(err));
    }
    (layers, None)
}

/// Entry index of slot `slot` in a layer that ends at entry `end`.
fn slot_position(entries: &[Entry], end: usize, layer: &[Slot], slot: usize) -> usize {
    let width = |s: &Slot| match s {
        Slot::Node { internal: true, .. } => 2,
        _ => 1,
    };
    let layer_len: usize = layer.iter().map(width).sum();
    let start = end - layer_len;
    debug_assert!(start <= entries.len());
    start + layer[..slot].iter().map(width).sum::<usize>()
}

/// Assembles a tree from decoded layers. Internal nodes of the last layer
/// with no following layer become leaves. Depth is the node's level.
fn tree_from_layers(layers: Vec<Vec<Slot>>) -> SenTree {
    struct Pending {
        token: Token,
        level: usize,
        left: Option<usize>,
        right: Option<usize>,
    }
    let mut pending: Vec<Pending> = Vec::new();
    // Node indices (in breadth-first order) of the previous layer's internal nodes.
    let mut owners: Vec<usize> = Vec::new();
    for (level, layer) in layers.into_iter().enumerate() {
        let mut next_owners = Vec::new();
        for (slot_index, slot) in layer.into_iter().enumerate() {
            let Slot::Node { token, internal } = slot else {
                continue;
            };
            let bfs = pending.len();
            pending.push(Pending {
                token,
                level,
                left: None,
                right: None,
            });
            if level > 0 {
                let owner = owners[slot_index / 2];
                if slot_index % 2 == 0 {
                    pending[owner].left = Some(bfs);
                } else {
                    pending[owner].right = Some(bfs);
                }
            }
            if internal {
                next_owners.push(bfs);
            }
        }
        owners = next_owners;
    }
    if pending.is_empty() {
        return SenTree::default();
    }

    // Renumber breadth-first indices into in-order positions.
    let mut inorder = vec![0usize; pending.len()];
    let mut order = Vec::with_capacity(pending.len());
    let mut stack = Vec::new();
    let mut cursor = Some(0usize);
    loop {
        while let Some(id) = cursor {
            stack.push(id);
            cursor = pending[id].left;
        }
        match stack.pop() {
            Some(id) => {
                inorder[id] = order.len();
                order.push(id);
                cursor = pending[id].right;
            }
            None => break,
        }
    }
    let nodes = order
        .iter()
        .map(|&id| {
            let p = &pending[id];
            Node {
                token: p.token.clone(),
                depth: p.level as f64,
                left: p.left.map(|c| inorder[c]),
                right: p.right.map(|c| inorder[c]),
            }
        })
        .collect();
    SenTree::from_inorder_nodes(nodes, Some(inorder[0]))
}

/// Decodes a grammatical sequence back into its tree.
pub fn deserialize(seq: &TreeSequence) -> Result<SenTree, MalformedSequence> {
    match read_layers(&seq.0) {
        (layers, None) => Ok(tree_from_layers(layers)),
        (_, Some(err)) => Err(err),
    }
}

/// Decodes the longest prefix of complete layers. Internal nodes whose child
/// layer is missing or malformed are kept as leaves.
pub fn deserialize_prefix(seq: &TreeSequence) -> (SenTree, Option<MalformedSequence>) {
    let (layers, err) = read_layers(&seq.0);
    (tree_from_layers(layers), err)
}
