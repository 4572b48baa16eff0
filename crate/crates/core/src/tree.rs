//! The sentence tree: a Cartesian tree over token depths.
//!
//! The root is the shallowest token of the sentence; the left child is the
//! shallowest token to its left, the right child the shallowest to its right,
//! and so on recursively. Ties go to the leftmost token. In-order traversal
//! therefore reproduces the sentence, and depths never decrease along a path.

use crate::sentence::{DepthedSentence, Sentence, Token};

/// Index of a node. Nodes are stored in in-order, so a node's id is also its
/// position in the linearized sentence.
pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub token: Token,
    pub depth: f64,
    pub left: Option<NodeId>,
    pub right: Option<NodeId>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SenTree {
    nodes: Vec<Node>,
    root: Option<NodeId>,
}

impl SenTree {
    /// Builds a tree from nodes already stored in in-order, each with its
    /// children. Callers guarantee the links form a binary tree rooted at
    /// `root` whose in-order traversal is `0..nodes.len()`.
    pub(crate) fn from_inorder_nodes(nodes: Vec<Node>, root: Option<NodeId>) -> Self {
        debug_assert_eq!(nodes.is_empty(), root.is_none());
        SenTree { nodes, root }
    }

    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes with at least one child.
    pub fn internal_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.left.is_some() || n.right.is_some())
            .count()
    }

    /// Parent of every node, indexed by node id.
    pub fn parents(&self) -> Vec<Option<NodeId>> {
        let mut parents = vec![None; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            for child in [node.left, node.right].into_iter().flatten() {
                parents[child] = Some(id);
            }
        }
        parents
    }

    /// Level (distance from the root) of every node, indexed by node id.
    pub fn levels(&self) -> Vec<usize> {
        let mut levels = vec![0; self.nodes.len()];
        let mut stack: Vec<NodeId> = self.root.into_iter().collect();
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            for child in [node.left, node.right].into_iter().flatten() {
                levels[child] = levels[id] + 1;
                stack.push(child);
            }
        }
        levels
    }

    /// Number of levels; 0 for the empty tree.
    pub fn height(&self) -> usize {
        self.levels().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Equal tokens and links, ignoring depth values.
    pub fn same_structure(&self, other: &SenTree) -> bool {
        self.root == other.root
            && self.nodes.len() == other.nodes.len()
            && self
                .nodes
                .iter()
                .zip(&other.nodes)
                .all(|(a, b)| a.token == b.token && a.left == b.left && a.right == b.right)
    }
}

/// Builds the tree with the stack-based Cartesian tree construction.
///
/// A node pops every stacked node that is strictly deeper, so an equal-depth
/// predecessor stays above it and the leftmost minimum of each span wins.
pub fn build_tree(sentence: &DepthedSentence) -> SenTree {
    let depths = sentence.depths();
    let mut nodes: Vec<Node> = sentence
        .tokens()
        .iter()
        .zip(depths)
        .map(|(token, &depth)| Node {
            token: token.clone(),
            depth,
            left: None,
            right: None,
        })
        .collect();

    // Right spine of the tree built so far, root at the bottom.
    let mut spine: Vec<NodeId> = Vec::with_capacity(nodes.len());
    for id in 0..nodes.len() {
        let mut last_popped = None;
        while let Some(&top) = spine.last() {
            if depths[top] > depths[id] {
                last_popped = spine.pop();
            } else {
                break;
            }
        }
        nodes[id].left = last_popped;
        if let Some(&top) = spine.last() {
            nodes[top].right = Some(id);
        }
        spine.push(id);
    }

    let root = spine.first().copied();
    SenTree::from_inorder_nodes(nodes, root)
}

/// In-order traversal of the tree.
pub fn linearize(tree: &SenTree) -> Sentence {
    let mut out = Vec::with_capacity(tree.len());
    let mut stack = Vec::new();
    let mut cursor = tree.root;
    loop {
        while let Some(id) = cursor {
            stack.push(id);
            cursor = tree.nodes[id].left;
        }
        match stack.pop() {
            Some(id) => {
                out.push(tree.nodes[id].token.clone());
                cursor = tree.nodes[id].right;
            }
            None => break,
        }
    }
    Sentence::new(out)
}
