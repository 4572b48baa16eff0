//! Test-only oracles and generators, independent of the library's algorithms.
#![allow(dead_code)]

pub mod naive_bleu;

use rand::Rng;
use sentree::tree::{NodeId, SenTree};
use sentree::{DepthedSentence, Token};

/// Reference tree node from the recursive definition.
#[derive(Debug)]
pub struct OracleNode {
    pub index: usize,
    pub left: Option<Box<OracleNode>>,
    pub right: Option<Box<OracleNode>>,
}

/// Root = leftmost minimum of the span, children built recursively from the
/// two sides. Quadratic; only for small inputs.
pub fn oracle_tree(depths: &[f64], lo: usize, hi: usize) -> Option<Box<OracleNode>> {
    if lo >= hi {
        return None;
    }
    let mut best = lo;
    for i in lo + 1..hi {
        if depths[i] < depths[best] {
            best = i;
        }
    }
    Some(Box::new(OracleNode {
        index: best,
        left: oracle_tree(depths, lo, best),
        right: oracle_tree(depths, best + 1, hi),
    }))
}

pub fn matches_oracle(tree: &SenTree, id: Option<NodeId>, node: &Option<Box<OracleNode>>) -> bool {
    match (id, node) {
        (None, None) => true,
        (Some(id), Some(o)) => {
            let n = tree.node(id);
            id == o.index
                && matches_oracle(tree, n.left, &o.left)
                && matches_oracle(tree, n.right, &o.right)
        }
        _ => false,
    }
}

/// A binary tree shape without labels.
#[derive(Clone, Debug)]
pub struct Shape(pub Option<Box<(Shape, Shape)>>);

impl Shape {
    pub fn size(&self) -> usize {
        match &self.0 {
            None => 0,
            Some(b) => 1 + b.0.size() + b.1.size(),
        }
    }

    /// Levels of the nodes in in-order.
    pub fn inorder_levels(&self) -> Vec<usize> {
        let mut out = Vec::new();
        fn walk(s: &Shape, level: usize, out: &mut Vec<usize>) {
            if let Some(b) = &s.0 {
                walk(&b.0, level + 1, out);
                out.push(level);
                walk(&b.1, level + 1, out);
            }
        }
        walk(self, 0, &mut out);
        out
    }

    /// True iff the subtree of `tree` at `id` has exactly this shape.
    pub fn matches(&self, tree: &SenTree, id: Option<NodeId>) -> bool {
        match (&self.0, id) {
            (None, None) => true,
            (Some(b), Some(id)) => {
                let n = tree.node(id);
                b.0.matches(tree, n.left) && b.1.matches(tree, n.right)
            }
            _ => false,
        }
    }
}

/// Every shape with exactly `n` nodes (Catalan(n) of them).
pub fn all_shapes(n: usize) -> Vec<Shape> {
    if n == 0 {
        return vec![Shape(None)];
    }
    let mut out = Vec::new();
    for left in 0..n {
        let right = n - 1 - left;
        for l in all_shapes(left) {
            for r in all_shapes(right) {
                out.push(Shape(Some(Box::new((l.clone(), r)))));
            }
        }
    }
    out
}

/// A random shape with `n` nodes. Iterative so large `n` is safe.
pub fn random_shape_levels<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    // Assign levels by splitting spans at random roots.
    let mut levels = vec![0; n];
    let mut stack = vec![(0usize, n, 0usize)];
    while let Some((lo, hi, level)) = stack.pop() {
        if lo >= hi {
            continue;
        }
        let root = rng.gen_range(lo..hi);
        levels[root] = level;
        stack.push((lo, root, level + 1));
        stack.push((root + 1, hi, level + 1));
    }
    levels
}

pub fn token_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("t{i}")).collect()
}

pub fn sentence_from(tokens: &[String], depths: &[f64]) -> DepthedSentence {
    let tokens = tokens
        .iter()
        .map(|t| Token::new(t.as_str()).unwrap())
        .collect();
    DepthedSentence::new(tokens, depths.to_vec()).unwrap()
}

/// Sentence whose Cartesian tree has the given in-order levels.
pub fn sentence_with_levels(levels: &[usize]) -> DepthedSentence {
    let depths: Vec<f64> = levels.iter().map(|&l| l as f64).collect();
    sentence_from(&token_names(levels.len()), &depths)
}

/// A random sentence with depths drawn from a small set so ties are common.
pub fn random_sentence<R: Rng>(rng: &mut R, max_len: usize) -> DepthedSentence {
    let n = rng.gen_range(0..=max_len);
    let vocab = [
        "the", "cat", "sat", "on", "mat", "a", "of", "but", "über", "猫",
    ];
    let tokens: Vec<String> = (0..n)
        .map(|_| vocab[rng.gen_range(0..vocab.len())].to_string())
        .collect();
    let depths: Vec<f64> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                rng.gen_range(0..5) as f64
            } else {
                rng.gen_range(0.0..20.0)
            }
        })
        .collect();
    sentence_from(&tokens, &depths)
}

/// Counts taken directly from tree links: (nodes, internal nodes, absent
/// children of internal nodes).
pub fn link_counts(tree: &SenTree) -> (usize, usize, usize) {
    let mut internal = 0;
    let mut vacant = 0;
    for node in tree.nodes() {
        let children = node.left.is_some() as usize + node.right.is_some() as usize;
        if children > 0 {
            internal += 1;
            vacant += 2 - children;
        }
    }
    (tree.len(), internal, vacant)
}
