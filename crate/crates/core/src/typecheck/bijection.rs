//! Uniquely closable typable skeletons of size 3n+1 and binary trees with n
//! internal nodes.
//!
//! A typable uniquely closable skeleton ends every path in `l(v)`: two leaves
//! under one binder would force a type equal to an arrow over itself. So the
//! skeleton is a binary tree whose leaves have been replaced by `l(v)`.

use std::fmt;

use thiserror::Error;

use crate::term::{Skeleton, Tree};

/// A plain binary tree, printed with the skeleton syntax `v` / `a(X,Y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    /// All binary trees with `n` internal nodes, left subtree sizes ascending.
    pub fn all_with(n: usize) -> Vec<BinaryTree> {
        if n == 0 {
            return vec![BinaryTree::Leaf];
        }
        let mut out = Vec::new();
        for k in 0..n {
            let rights = Self::all_with(n - 1 - k);
            for l in Self::all_with(k) {
                for r in &rights {
                    out.push(BinaryTree::node(l.clone(), r.clone()));
                }
            }
        }
        out
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => f.write_str("v"),
            BinaryTree::Node(l, r) => write!(f, "a({l},{r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("skeleton {0} is not built from applications over l(v) leaves")]
    NotCatalanShape(String),
}

/// Replaces every terminal `l(v)` with a leaf. Rejects skeletons with any
/// other unary node or with a bare leaf.
pub fn to_binary_tree(skeleton: &Skeleton) -> Result<BinaryTree, BijectionError> {
    fn go(s: &Skeleton) -> Option<BinaryTree> {
        match s {
            Tree::Unary(c) if c.is_leaf() => Some(BinaryTree::Leaf),
            Tree::Binary(l, r) => Some(BinaryTree::node(go(l)?, go(r)?)),
            _ => None,
        }
    }
    go(skeleton).ok_or_else(|| BijectionError::NotCatalanShape(skeleton.to_string()))
}

/// Replaces every leaf with `l(v)`.
pub fn from_binary_tree(tree: &BinaryTree) -> Skeleton {
    match tree {
        BinaryTree::Leaf => Skeleton::unary(Skeleton::leaf()),
        BinaryTree::Node(l, r) => Skeleton::binary(from_binary_tree(l), from_binary_tree(r)),
    }
}
