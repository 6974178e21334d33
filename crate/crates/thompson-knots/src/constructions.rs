//! Chair diagrams: compact tree pairs built from blocks of parallel
//! "chairs", realising rational and pretzel-type links.
//!
//! A chair diagram is a small skeleton tree pair plus a list of blocks.  A
//! block sits in one region of the skeleton (region `r` lies between leaves
//! `r − 1` and `r`, and is bounded above by the `r`-th internal node of the
//! top tree in in-order and below by the `r`-th internal node of the bottom
//! tree) and holds some number of chairs with an orientation.  [`expand`]
//! substitutes each block's fixed caret pattern and yields an ordinary tree
//! pair; [`crate::jones_map::psi_prime`] instead turns each block directly
//! into a twist tangle.
//!
//! Two families are built:
//!
//! * the product family `T(x₁, …, xₙ)`, whose image is the closure of the
//!   rational tangle `x₁ x₂ … xₙ`;
//! * the concatenation family `U(x₁, …, xₙ)` (all `xᵢ ≥ 2`), whose image is
//!   the closure of `x₁, x₂, …, xₙ`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::thompson_core::{BinaryTree, ThompsonElement};

/// Errors from the chair-diagram builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("the parameter list is empty")]
    Empty,
    #[error("entry {index} is {value}; product entries must be at least 1")]
    NonPositive { index: usize, value: i64 },
    #[error("entry {index} is {value}; comma-list entries must be at least 2")]
    BelowTwo { index: usize, value: i64 },
}

/// Which construction produced a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Product,
    Concat,
}

/// How the chairs of a block are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Chairs hang from the right edge of the top node and sit on a left
    /// comb in the bottom tree.
    Normal,
    /// [`Orientation::Normal`] with the roles of the two trees exchanged.
    Reflected,
    /// Chairs mirrored left to right: they hang from the left edge of the
    /// top node, with a right comb in the bottom tree.
    FlippedReflected,
}

/// A run of parallel chairs in one region of the skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    /// Region index, `1 ≤ region < skeleton leaves`.
    pub region: usize,
    /// Number of chairs; zero is allowed.
    pub count: usize,
    pub orientation: Orientation,
    /// Which parameter `xᵢ` this block comes from (0-based).
    pub term: usize,
}

/// A chair-level diagram.  Serialises as `{"kind": …, "spec": […]}`; the
/// skeleton and blocks are recomputed from the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ChairJson", into = "ChairJson")]
pub struct ChairDiagram {
    kind: Family,
    spec: Vec<i64>,
    top: BinaryTree,
    bottom: BinaryTree,
    blocks: Vec<Block>,
}

#[derive(Serialize, Deserialize)]
struct ChairJson {
    kind: Family,
    spec: Vec<i64>,
}

impl TryFrom<ChairJson> for ChairDiagram {
    type Error = ConstructionError;
    fn try_from(j: ChairJson) -> Result<Self, Self::Error> {
        match j.kind {
            Family::Product => build_product_diagram(&j.spec),
            Family::Concat => build_concat_diagram(&j.spec),
        }
    }
}

impl From<ChairDiagram> for ChairJson {
    fn from(c: ChairDiagram) -> Self {
        ChairJson {
            kind: c.kind,
            spec: c.spec,
        }
    }
}

/// Skeleton plus blocks, before the family label is attached.
#[derive(Debug, Clone)]
struct Draft {
    top: BinaryTree,
    bottom: BinaryTree,
    blocks: Vec<Block>,
}

impl Draft {
    /// One caret over one caret.
    fn base() -> Self {
        Draft {
            top: BinaryTree::caret(),
            bottom: BinaryTree::caret(),
            blocks: Vec::new(),
        }
    }

    fn leaves(&self) -> usize {
        self.top.leaf_count()
    }

    /// Exchanges the two trees; normal and reflected blocks trade places.
    fn reflect(mut self) -> Self {
        std::mem::swap(&mut self.top, &mut self.bottom);
        for b in &mut self.blocks {
            b.orientation = match b.orientation {
                Orientation::Normal => Orientation::Reflected,
                Orientation::Reflected => Orientation::Normal,
                Orientation::FlippedReflected => {
                    unreachable!("the comma family is never reflected")
                }
            };
        }
        self
    }

    /// Places `b` to the lower right of `self`: the last leaf of the top
    /// tree receives `b`'s top tree and `b`'s bottom tree receives this
    /// bottom tree at its first leaf.
    fn join(self, b: Draft) -> Self {
        let shift = self.leaves() - 1;
        let top = self.top.graft(shift, &b.top);
        let bottom = b.bottom.graft(0, &self.bottom);
        let mut blocks = self.blocks;
        blocks.extend(b.blocks.into_iter().map(|mut blk| {
            blk.region += shift;
            blk
        }));
        Draft {
            top,
            bottom,
            blocks,
        }
    }
}

fn product_draft(xs: &[i64]) -> Draft {
    let n = xs.len();
    let mut d = Draft::base();
    let last = xs[n - 1] as usize;
    d.blocks.push(Block {
        region: 1,
        count: last,
        orientation: Orientation::Normal,
        term: n - 1,
    });
    if n == 1 {
        return d;
    }
    let mut prefix = xs[..n - 1].to_vec();
    prefix[n - 2] -= 1;
    d.join(product_draft(&prefix).reflect())
}

/// The diagram `T(x₁, …, xₙ)`.
///
/// The last entry contributes a block of `xₙ` chairs; every earlier entry a
/// block of `xᵢ − 1` chairs, alternating between normal and reflected.
///
/// ```
/// use thompson_knots::constructions::build_product_diagram;
/// let t = build_product_diagram(&[3, 4, 2, 5]).unwrap();
/// assert_eq!(t.block_sizes(), vec![2, 3, 1, 5]);
/// ```
pub fn build_product_diagram(xs: &[i64]) -> Result<ChairDiagram, ConstructionError> {
    if xs.is_empty() {
        return Err(ConstructionError::Empty);
    }
    if let Some((index, &value)) = xs.iter().enumerate().find(|(_, &x)| x < 1) {
        return Err(ConstructionError::NonPositive { index, value });
    }
    let d = product_draft(xs);
    Ok(ChairDiagram {
        kind: Family::Product,
        spec: xs.to_vec(),
        top: d.top,
        bottom: d.bottom,
        blocks: d.blocks,
    })
}

/// One story: a pillar followed by `x − 2` flipped reflected chairs.
fn story(x: i64, term: usize) -> Draft {
    let top = BinaryTree::node(BinaryTree::caret(), BinaryTree::leaf());
    let bottom = BinaryTree::node(BinaryTree::leaf(), BinaryTree::caret());
    let blocks = vec![Block {
        region: 2,
        count: (x - 2) as usize,
        orientation: Orientation::FlippedReflected,
        term,
    }];
    Draft {
        top,
        bottom,
        blocks,
    }
}

/// The diagram `U(x₁, …, xₙ)`: a base caret pair with one story per entry
/// appended below and to the right of the previous ones.
///
/// ```
/// use thompson_knots::constructions::build_concat_diagram;
/// let u = build_concat_diagram(&[2, 3, 7]).unwrap();
/// assert_eq!(u.block_sizes(), vec![0, 1, 5]);
/// ```
pub fn build_concat_diagram(xs: &[i64]) -> Result<ChairDiagram, ConstructionError> {
    if xs.is_empty() {
        return Err(ConstructionError::Empty);
    }
    if let Some((index, &value)) = xs.iter().enumerate().find(|(_, &x)| x < 2) {
        return Err(ConstructionError::BelowTwo { index, value });
    }
    let d = xs
        .iter()
        .enumerate()
        .fold(Draft::base(), |acc, (i, &x)| acc.join(story(x, i)));
    Ok(ChairDiagram {
        kind: Family::Concat,
        spec: xs.to_vec(),
        top: d.top,
        bottom: d.bottom,
        blocks: d.blocks,
    })
}

impl ChairDiagram {
    pub fn kind(&self) -> Family {
        self.kind
    }

    /// The parameters `x₁, …, xₙ`.
    pub fn spec(&self) -> &[i64] {
        &self.spec
    }

    /// The skeleton tree pair `(top, bottom)`, without any chairs.
    pub fn skeleton(&self) -> (&BinaryTree, &BinaryTree) {
        (&self.top, &self.bottom)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Chair counts in parameter order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut b = self.blocks.clone();
        b.sort_by_key(|b| b.term);
        b.iter().map(|b| b.count).collect()
    }

    pub fn chair_count(&self) -> usize {
        self.blocks.iter().map(|b| b.count).sum()
    }

    /// Number of pillars (one per story in the comma family).
    pub fn pillar_count(&self) -> usize {
        match self.kind {
            Family::Product => 0,
            Family::Concat => self.spec.len(),
        }
    }

    /// The block in region `r`, if any.
    pub fn block_at(&self, r: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.region == r)
    }
}

/// A chair `(ℓ, (ℓ, ℓ))` as it hangs off a node.
fn chair() -> BinaryTree {
    BinaryTree::node(BinaryTree::leaf(), BinaryTree::caret())
}

/// A left-right mirrored chair `((ℓ, ℓ), ℓ)`.
fn flipped_chair() -> BinaryTree {
    BinaryTree::node(BinaryTree::caret(), BinaryTree::leaf())
}

/// `P₁(C, P₂(C, … Pₖ(C, rest)))`.
fn chair_spine_right(k: usize, rest: BinaryTree) -> BinaryTree {
    (0..k).fold(rest, |acc, _| BinaryTree::node(chair(), acc))
}

/// `P₁(P₂(… Pₖ(rest, C′) …, C′), C′)`.
fn chair_spine_left(k: usize, rest: BinaryTree) -> BinaryTree {
    (0..k).fold(rest, |acc, _| BinaryTree::node(acc, flipped_chair()))
}

/// `m` nodes down the left side, each with a leaf on the right.
fn comb_left(m: usize, rest: BinaryTree) -> BinaryTree {
    (0..m).fold(rest, |acc, _| BinaryTree::node(acc, BinaryTree::leaf()))
}

/// `m` nodes down the right side, each with a leaf on the left.
fn comb_right(m: usize, rest: BinaryTree) -> BinaryTree {
    (0..m).fold(rest, |acc, _| BinaryTree::node(BinaryTree::leaf(), acc))
}

/// Rebuilds `t`, letting `f` rewrite the children of the internal node with
/// in-order index `r` (counted from 1).
fn rewrite_in_order(
    t: &BinaryTree,
    next: &mut usize,
    f: &dyn Fn(usize, BinaryTree, BinaryTree) -> (BinaryTree, BinaryTree),
) -> BinaryTree {
    match t {
        BinaryTree::Leaf => BinaryTree::Leaf,
        BinaryTree::Node(l, r) => {
            let l = rewrite_in_order(l, next, f);
            let index = *next;
            *next += 1;
            let r = rewrite_in_order(r, next, f);
            let (l, r) = f(index, l, r);
            BinaryTree::node(l, r)
        }
    }
}

/// Substitutes every block's caret pattern into the skeleton.  The result
/// is generally not reduced.
///
/// ```
/// use thompson_knots::constructions::{build_product_diagram, expand};
/// let e = expand(&build_product_diagram(&[1]).unwrap());
/// assert_eq!(e.top().to_code(), "101101000");
/// ```
pub fn expand(c: &ChairDiagram) -> ThompsonElement {
    let blocks = c.blocks.clone();
    let top = rewrite_in_order(&c.top, &mut 1, &|r, l, rt| match blocks
        .iter()
        .find(|b| b.region == r)
    {
        None => (l, rt),
        Some(b) => match b.orientation {
            Orientation::Normal => (l, chair_spine_right(b.count, rt)),
            Orientation::Reflected => (comb_left(3 * b.count, l), rt),
            Orientation::FlippedReflected => (chair_spine_left(b.count, l), rt),
        },
    });
    let bottom = rewrite_in_order(&c.bottom, &mut 1, &|r, l, rt| match blocks
        .iter()
        .find(|b| b.region == r)
    {
        None => (l, rt),
        Some(b) => match b.orientation {
            Orientation::Normal => (comb_left(3 * b.count, l), rt),
            Orientation::Reflected => (l, chair_spine_right(b.count, rt)),
            Orientation::FlippedReflected => (l, comb_right(3 * b.count, rt)),
        },
    });
    ThompsonElement::from_trees(top, bottom).expect("chair patterns keep leaf counts equal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chair_counts() {
        let t = build_product_diagram(&[3, 4, 2, 5]).unwrap();
        assert_eq!(t.block_sizes(), vec![2, 3, 1, 5]);
        assert_eq!(t.chair_count(), 14 - 3);
        assert_eq!(t.skeleton().0.leaf_count(), 5);
        assert_eq!(build_product_diagram(&[3]).unwrap().block_sizes(), vec![3]);
        assert_eq!(build_product_diagram(&[1]).unwrap().block_sizes(), vec![1]);
        let u = build_concat_diagram(&[4]).unwrap();
        assert_eq!((u.block_sizes(), u.pillar_count()), (vec![2], 1));
        assert_eq!(build_concat_diagram(&[2]).unwrap().chair_count(), 0);
    }

    #[test]
    fn orientations_alternate_in_products() {
        let t = build_product_diagram(&[3, 4, 2, 5]).unwrap();
        let mut b = t.blocks().to_vec();
        b.sort_by_key(|b| b.region);
        let o: Vec<Orientation> = b.iter().map(|b| b.orientation).collect();
        use Orientation::*;
        assert_eq!(o, vec![Normal, Reflected, Normal, Reflected]);
    }

    #[test]
    fn validation() {
        assert_eq!(build_product_diagram(&[]), Err(ConstructionError::Empty));
        assert!(matches!(
            build_product_diagram(&[2, 0]),
            Err(ConstructionError::NonPositive { index: 1, .. })
        ));
        assert!(matches!(
            build_concat_diagram(&[3, 1]),
            Err(ConstructionError::BelowTwo { index: 1, .. })
        ));
    }

    #[test]
    fn expansion_balances_leaves() {
        for xs in [vec![1], vec![3], vec![2, 1, 2], vec![3, 4, 2, 5]] {
            let c = build_product_diagram(&xs).unwrap();
            let e = expand(&c);
            let skel = c.skeleton().0.leaf_count();
            assert_eq!(e.leaf_count(), skel + 3 * c.chair_count());
        }
        let u = build_concat_diagram(&[2, 3, 7]).unwrap();
        assert_eq!(expand(&u).leaf_count(), 8 + 3 * 6);
    }

    #[test]
    fn json_is_kind_and_spec() {
        let t = build_product_diagram(&[2, 3]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"kind":"product","spec":[2,3]}"#);
        assert_eq!(serde_json::from_str::<ChairDiagram>(&s).unwrap(), t);
        assert!(serde_json::from_str::<ChairDiagram>(r#"{"kind":"concat","spec":[1]}"#).is_err());
    }
}
