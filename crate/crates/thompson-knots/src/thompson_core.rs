//! Elements of Thompson's group F as pairs of rooted binary trees.
//!
//! A tree pair `(top, bottom)` with equal leaf counts describes a piecewise
//! linear homeomorphism of `[0, 1]`: the leaves of the bottom tree cut the
//! domain into standard dyadic intervals, the leaves of the top tree cut the
//! range, and the i-th domain interval is mapped affinely onto the i-th range
//! interval.  Every slope is a power of two.
//!
//! Trees serialize as preorder bitstrings: `1` for an internal node, `0` for a
//! leaf.  `"0"` is the single-leaf tree and `"100"` a single caret.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or decoding tree pairs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThompsonError {
    /// A preorder bitstring could not be decoded.
    #[error("malformed tree code at index {index}: {reason}")]
    Parse { index: usize, reason: &'static str },
    /// The two trees of a pair have different numbers of leaves.
    #[error("leaf-count mismatch: top has {top} leaves, bottom has {bottom}")]
    LeafCountMismatch { top: usize, bottom: usize },
}

/// A finite rooted plane binary tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn leaf() -> Self {
        BinaryTree::Leaf
    }

    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    /// A single caret with two leaves.
    pub fn caret() -> Self {
        Self::node(Self::Leaf, Self::Leaf)
    }

    /// The tree whose every internal node is the left child of its parent,
    /// with `leaves` leaves (`leaves >= 1`).
    pub fn left_comb(leaves: usize) -> Self {
        (1..leaves).fold(Self::Leaf, |acc, _| Self::node(acc, Self::Leaf))
    }

    /// The tree whose every internal node is the right child of its parent.
    pub fn right_comb(leaves: usize) -> Self {
        (1..leaves).fold(Self::Leaf, |acc, _| Self::node(Self::Leaf, acc))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinaryTree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn internal_count(&self) -> usize {
        self.leaf_count() - 1
    }

    pub fn depth(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Decodes a preorder bitstring.
    pub fn from_code(code: &str) -> Result<Self, ThompsonError> {
        let bytes = code.as_bytes();
        if bytes.is_empty() {
            return Err(ThompsonError::Parse {
                index: 0,
                reason: "empty code",
            });
        }
        // Iterative decoding keeps deep combs off the call stack.
        enum Frame {
            NeedLeft,
            NeedRight(BinaryTree),
        }
        let mut stack: Vec<Frame> = Vec::new();
        let mut pos = 0;
        loop {
            let mut done = match bytes.get(pos) {
                Some(b'1') => {
                    stack.push(Frame::NeedLeft);
                    pos += 1;
                    continue;
                }
                Some(b'0') => BinaryTree::Leaf,
                Some(_) => {
                    return Err(ThompsonError::Parse {
                        index: pos,
                        reason: "expected '0' or '1'",
                    })
                }
                None => {
                    return Err(ThompsonError::Parse {
                        index: pos,
                        reason: "truncated code",
                    })
                }
            };
            pos += 1;
            loop {
                match stack.pop() {
                    None => {
                        if pos != bytes.len() {
                            return Err(ThompsonError::Parse {
                                index: pos,
                                reason: "trailing input after complete tree",
                            });
                        }
                        return Ok(done);
                    }
                    Some(Frame::NeedLeft) => {
                        stack.push(Frame::NeedRight(done));
                        break;
                    }
                    Some(Frame::NeedRight(left)) => done = BinaryTree::node(left, done),
                }
            }
        }
    }

    /// Encodes the tree as a preorder bitstring.
    pub fn to_code(&self) -> String {
        let mut out = String::with_capacity(2 * self.leaf_count());
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                BinaryTree::Leaf => out.push('0'),
                BinaryTree::Node(l, r) => {
                    out.push('1');
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }

    /// Indices `i` such that leaves `i` and `i + 1` are the two children of
    /// one caret.
    pub fn caret_positions(&self) -> Vec<usize> {
        fn walk(t: &BinaryTree, offset: usize, out: &mut Vec<usize>) -> usize {
            match t {
                BinaryTree::Leaf => 1,
                BinaryTree::Node(l, r) => {
                    if l.is_leaf() && r.is_leaf() {
                        out.push(offset);
                    }
                    let nl = walk(l, offset, out);
                    nl + walk(r, offset + nl, out)
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// Replaces the caret whose leaves are `i, i + 1` by a single leaf.
    fn collapse_caret(&self, i: usize) -> Self {
        fn walk(t: &BinaryTree, i: usize, offset: usize) -> BinaryTree {
            match t {
                BinaryTree::Leaf => BinaryTree::Leaf,
                BinaryTree::Node(l, r) => {
                    if offset == i && l.is_leaf() && r.is_leaf() {
                        return BinaryTree::Leaf;
                    }
                    let nl = l.leaf_count();
                    BinaryTree::node(walk(l, i, offset), walk(r, i, offset + nl))
                }
            }
        }
        walk(self, i, 0)
    }

    /// Replaces leaf `i` by `sub`.
    pub fn graft(&self, i: usize, sub: &BinaryTree) -> Self {
        let mut subs = vec![BinaryTree::Leaf; self.leaf_count()];
        subs[i] = sub.clone();
        self.expand_leaves(&subs)
    }

    /// Replaces every leaf `i` by `subs[i]`.
    pub fn expand_leaves(&self, subs: &[BinaryTree]) -> Self {
        fn walk(t: &BinaryTree, subs: &[BinaryTree], next: &mut usize) -> BinaryTree {
            match t {
                BinaryTree::Leaf => {
                    *next += 1;
                    subs[*next - 1].clone()
                }
                BinaryTree::Node(l, r) => {
                    let l = walk(l, subs, next);
                    BinaryTree::node(l, walk(r, subs, next))
                }
            }
        }
        assert_eq!(subs.len(), self.leaf_count(), "one subtree per leaf");
        walk(self, subs, &mut 0)
    }

    /// The smallest tree containing both trees as rooted subtrees.
    pub fn union(&self, other: &BinaryTree) -> Self {
        match (self, other) {
            (BinaryTree::Leaf, t) | (t, BinaryTree::Leaf) => t.clone(),
            (BinaryTree::Node(a, b), BinaryTree::Node(c, d)) => {
                BinaryTree::node(a.union(c), b.union(d))
            }
        }
    }

    /// For a tree `refined` that contains `self`, the subtree of `refined`
    /// hanging below each leaf of `self`.
    pub fn leaf_subtrees_in(&self, refined: &BinaryTree) -> Vec<BinaryTree> {
        fn walk(t: &BinaryTree, r: &BinaryTree, out: &mut Vec<BinaryTree>) {
            match (t, r) {
                (BinaryTree::Leaf, r) => out.push(r.clone()),
                (BinaryTree::Node(a, b), BinaryTree::Node(c, d)) => {
                    walk(a, c, out);
                    walk(b, d, out);
                }
                (BinaryTree::Node(..), BinaryTree::Leaf) => {
                    panic!("refinement does not contain the tree")
                }
            }
        }
        let mut out = Vec::with_capacity(self.leaf_count());
        walk(self, refined, &mut out);
        out
    }

    /// The left-to-right mirror image.
    pub fn mirror(&self) -> Self {
        match self {
            BinaryTree::Leaf => BinaryTree::Leaf,
            BinaryTree::Node(l, r) => BinaryTree::node(r.mirror(), l.mirror()),
        }
    }

    /// The standard dyadic interval `[k/2^m, (k+1)/2^m]` of every leaf, as
    /// `(k, m)`.
    pub fn leaf_intervals(&self) -> Vec<(u64, u32)> {
        fn walk(t: &BinaryTree, k: u64, m: u32, out: &mut Vec<(u64, u32)>) {
            match t {
                BinaryTree::Leaf => out.push((k, m)),
                BinaryTree::Node(l, r) => {
                    walk(l, 2 * k, m + 1, out);
                    walk(r, 2 * k + 1, m + 1, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, 0, &mut out);
        out
    }

    /// The breakpoints cut out by the leaves.
    pub fn partition(&self) -> DyadicPartition {
        let mut points: Vec<Dyadic> = self
            .leaf_intervals()
            .into_iter()
            .map(|(k, m)| Dyadic::new(k, m))
            .collect();
        points.push(Dyadic::new(1, 0));
        DyadicPartition(points)
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_code())
    }
}

/// An exact dyadic rational `num / 2^exp`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u64,
    exp: u32,
}

impl Dyadic {
    pub fn new(mut num: u64, mut exp: u32) -> Self {
        while exp > 0 && num.is_multiple_of(2) {
            num /= 2;
            exp -= 1;
        }
        Dyadic { num, exp }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// `self - other` as a dyadic, assuming `self >= other`.
    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let e = self.exp.max(other.exp);
        Dyadic::new(
            (self.num << (e - self.exp)) - (other.num << (e - other.exp)),
            e,
        )
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let e = self.exp.max(other.exp);
        (self.num << (e - self.exp)).cmp(&(other.num << (e - other.exp)))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.exp)
        }
    }
}

/// Breakpoints `0 = p_0 < p_1 < … < p_n = 1` of a standard dyadic partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicPartition(pub Vec<Dyadic>);

impl DyadicPartition {
    pub fn points(&self) -> &[Dyadic] {
        &self.0
    }

    /// Interval lengths, left to right.
    pub fn lengths(&self) -> Vec<Dyadic> {
        self.0.windows(2).map(|w| w[1].sub(&w[0])).collect()
    }
}

impl fmt::Display for DyadicPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A tree pair: `top` describes the range partition, `bottom` the domain.
///
/// Pairs built with [`ThompsonElement::from_trees`] keep every caret, which
/// matters for the skein map (it acts on diagrams, not on group elements);
/// [`make_element`] returns the reduced representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
pub struct ThompsonElement {
    top: BinaryTree,
    bottom: BinaryTree,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    top: String,
    bottom: String,
}

impl TryFrom<ElementJson> for ThompsonElement {
    type Error = ThompsonError;
    fn try_from(j: ElementJson) -> Result<Self, Self::Error> {
        ThompsonElement::from_trees(
            BinaryTree::from_code(&j.top)?,
            BinaryTree::from_code(&j.bottom)?,
        )
    }
}

impl From<ThompsonElement> for ElementJson {
    fn from(e: ThompsonElement) -> Self {
        ElementJson {
            top: e.top.to_code(),
            bottom: e.bottom.to_code(),
        }
    }
}

/// Validates and reduces a tree pair.
pub fn make_element(top: BinaryTree, bottom: BinaryTree) -> Result<ThompsonElement, ThompsonError> {
    Ok(ThompsonElement::from_trees(top, bottom)?.reduce())
}

/// Decodes a tree from its preorder bitstring.
pub fn tree_from_code(code: &str) -> Result<BinaryTree, ThompsonError> {
    BinaryTree::from_code(code)
}

impl ThompsonElement {
    /// Validates a tree pair without reducing it.
    pub fn from_trees(top: BinaryTree, bottom: BinaryTree) -> Result<Self, ThompsonError> {
        let (t, b) = (top.leaf_count(), bottom.leaf_count());
        if t != b {
            return Err(ThompsonError::LeafCountMismatch { top: t, bottom: b });
        }
        Ok(ThompsonElement { top, bottom })
    }

    pub fn identity() -> Self {
        ThompsonElement {
            top: BinaryTree::Leaf,
            bottom: BinaryTree::Leaf,
        }
    }

    pub fn top(&self) -> &BinaryTree {
        &self.top
    }

    pub fn bottom(&self) -> &BinaryTree {
        &self.bottom
    }

    pub fn leaf_count(&self) -> usize {
        self.top.leaf_count()
    }

    pub fn is_identity(&self) -> bool {
        self.top == self.bottom
    }

    /// Leaf indices `i` at which both trees carry the caret `(i, i+1)`.
    pub fn common_carets(&self) -> Vec<usize> {
        let b = self.bottom.caret_positions();
        self.top
            .caret_positions()
            .into_iter()
            .filter(|i| b.contains(i))
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.common_carets().is_empty()
    }

    /// Cancels common carets until none remain.
    pub fn reduce(&self) -> Self {
        let mut cur = self.clone();
        while let Some(&i) = cur.common_carets().first() {
            cur = ThompsonElement {
                top: cur.top.collapse_caret(i),
                bottom: cur.bottom.collapse_caret(i),
            };
        }
        cur
    }

    /// Swaps the two trees.
    pub fn inverse(&self) -> Self {
        ThompsonElement {
            top: self.bottom.clone(),
            bottom: self.top.clone(),
        }
    }

    /// The reduced composite `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ThompsonElement) -> Self {
        let common = other.top.union(&self.bottom);
        let other_bottom = other
            .bottom
            .expand_leaves(&other.top.leaf_subtrees_in(&common));
        let self_top = self
            .top
            .expand_leaves(&self.bottom.leaf_subtrees_in(&common));
        ThompsonElement {
            top: self_top,
            bottom: other_bottom,
        }
        .reduce()
    }

    /// `(domain, range)` partitions: bottom-tree leaves cut the domain,
    /// top-tree leaves the range.
    pub fn partitions(&self) -> (DyadicPartition, DyadicPartition) {
        (self.bottom.partition(), self.top.partition())
    }

    /// Base-two logarithm of the slope on each domain interval.
    pub fn log_slopes(&self) -> Vec<i64> {
        let dom = self.bottom.leaf_intervals();
        let ran = self.top.leaf_intervals();
        dom.iter()
            .zip(&ran)
            .map(|(&(_, md), &(_, mr))| md as i64 - mr as i64)
            .collect()
    }

    /// The reflection of the diagram across the leaf line, which exchanges the
    /// two trees.  As a group element this is the inverse.
    pub fn reflect(&self) -> Self {
        self.inverse()
    }
}

/// Alias for [`ThompsonElement::compose`].
pub fn compose(a: &ThompsonElement, b: &ThompsonElement) -> ThompsonElement {
    a.compose(b)
}

/// Alias for [`ThompsonElement::partitions`].
pub fn element_to_partitions(a: &ThompsonElement) -> (DyadicPartition, DyadicPartition) {
    a.partitions()
}

/// Every binary tree with exactly `leaves` leaves, in a fixed order.
pub fn all_trees(leaves: usize) -> Vec<BinaryTree> {
    if leaves <= 1 {
        return vec![BinaryTree::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..leaves {
        for l in all_trees(k) {
            for r in all_trees(leaves - k) {
                out.push(BinaryTree::node(l.clone(), r));
            }
        }
    }
    out
}
