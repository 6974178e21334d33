//! From tree pairs to link diagrams.
//!
//! [`psi`] draws the top tree above a horizontal line of leaves and the
//! bottom tree below it, replaces every caret by a crossing, and joins up the
//! loose ends.  Concretely:
//!
//! * a top-tree node becomes a crossing whose counterclockwise slots are
//!   (edge to parent, left child edge, downward vertical, right child edge);
//!   for the root the parent edge is an upward vertical;
//! * a bottom-tree node becomes a crossing with slots (edge to parent, right
//!   child edge, upward vertical, left child edge); for the root the parent
//!   edge is a downward vertical;
//! * the two edges meeting at leaf `i` are joined;
//! * in region `r` (between leaves `r − 1` and `r`) the downward vertical of
//!   the `r`-th top node (in in-order) is joined to the upward vertical of the
//!   `r`-th bottom node;
//! * the upward vertical of the top root is joined to the downward vertical
//!   of the bottom root around the outside.
//!
//! Every caret therefore yields exactly one crossing.  Crossing 0 of the
//! output is the top root and edge 1 its upward vertical, so the face at
//! quadrant 0 of crossing 0 is the region to the left of the whole picture.
//!
//! [`psi_prime`] does the same for the skeleton of a chair diagram, cutting
//! open one tree edge and one region vertical per block and inserting an
//! `n`-crossing tangle in the gap.

use std::collections::HashSet;

use crate::constructions::{ChairDiagram, Orientation};
use crate::planar_diagram::{End, PlanarDiagram, TangleDiagram, Wiring};
use crate::thompson_core::{BinaryTree, ThompsonElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Child {
    Node(usize),
    Leaf(usize),
}

/// A tree with internal nodes numbered in in-order, so node `r − 1` bounds
/// region `r`.
struct Flat {
    children: Vec<[Child; 2]>,
    root: Child,
    preorder: Vec<usize>,
    leaves: usize,
}

fn flatten(t: &BinaryTree) -> Flat {
    fn go(t: &BinaryTree, leaves: &mut usize, nodes: &mut Vec<[Child; 2]>) -> Child {
        match t {
            BinaryTree::Leaf => {
                *leaves += 1;
                Child::Leaf(*leaves - 1)
            }
            BinaryTree::Node(l, r) => {
                let lc = go(l, leaves, nodes);
                let idx = nodes.len();
                nodes.push([lc, lc]);
                let rc = go(r, leaves, nodes);
                nodes[idx] = [lc, rc];
                Child::Node(idx)
            }
        }
    }
    fn pre(c: Child, nodes: &[[Child; 2]], out: &mut Vec<usize>) {
        if let Child::Node(i) = c {
            out.push(i);
            pre(nodes[i][0], nodes, out);
            pre(nodes[i][1], nodes, out);
        }
    }
    let mut leaves = 0;
    let mut children = Vec::new();
    let root = go(t, &mut leaves, &mut children);
    let mut preorder = Vec::new();
    pre(root, &children, &mut preorder);
    Flat {
        children,
        root,
        preorder,
        leaves,
    }
}

/// Which tree a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Side {
    Top,
    Bottom,
}

/// A join of the ψ wiring that may be left open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Link {
    /// The edge from a node to its left (`false`) or right (`true`) child.
    /// An edge ending at a leaf continues into the other tree's leaf edge.
    Edge {
        side: Side,
        node: usize,
        right: bool,
    },
    /// The vertical through region `r`.
    Vertical(usize),
}

/// Slot ids of one node, by role.
#[derive(Debug, Clone, Copy)]
struct NodeIds {
    trunk: usize,
    left: usize,
    vert: usize,
    right: usize,
}

/// The ψ wiring of a tree pair with some joins left open.
pub(crate) struct PsiWiring {
    pub(crate) wiring: Wiring,
    top: Flat,
    bottom: Flat,
    top_ids: Vec<NodeIds>,
    bottom_ids: Vec<NodeIds>,
}

impl PsiWiring {
    fn ids(&self, side: Side) -> &[NodeIds] {
        match side {
            Side::Top => &self.top_ids,
            Side::Bottom => &self.bottom_ids,
        }
    }

    fn flat(&self, side: Side) -> &Flat {
        match side {
            Side::Top => &self.top,
            Side::Bottom => &self.bottom,
        }
    }

    /// The slot of the edge from a tree's parent node to leaf `i`.
    fn leaf_slot(&self, side: Side, leaf: usize) -> usize {
        let flat = self.flat(side);
        let ids = self.ids(side);
        for (j, ch) in flat.children.iter().enumerate() {
            if ch[0] == Child::Leaf(leaf) {
                return ids[j].left;
            }
            if ch[1] == Child::Leaf(leaf) {
                return ids[j].right;
            }
        }
        unreachable!("every leaf has a parent in a tree with carets")
    }

    /// The two ids a join would merge: `(parent side, child side)` for
    /// edges, `(top vertical, bottom vertical)` for verticals.
    pub(crate) fn ends(&self, link: Link) -> (usize, usize) {
        match link {
            Link::Edge { side, node, right } => {
                let ids = self.ids(side)[node];
                let parent = if right { ids.right } else { ids.left };
                let child = match self.flat(side).children[node][usize::from(right)] {
                    Child::Node(j) => self.ids(side)[j].trunk,
                    Child::Leaf(i) => {
                        let other = if side == Side::Top {
                            Side::Bottom
                        } else {
                            Side::Top
                        };
                        self.leaf_slot(other, i)
                    }
                };
                (parent, child)
            }
            Link::Vertical(r) => (self.top_ids[r - 1].vert, self.bottom_ids[r - 1].vert),
        }
    }

    /// Lays out the crossings of a tree pair with at least one caret and
    /// makes every join except those in `open`.
    pub(crate) fn new(top: &BinaryTree, bottom: &BinaryTree, open: &[Link]) -> Self {
        let top = flatten(top);
        let bottom = flatten(bottom);
        assert_eq!(top.leaves, bottom.leaves);
        assert!(top.leaves > 1, "the trivial pair has no carets");
        let mut wiring = Wiring::new();
        let fresh_ids = |n: usize, w: &mut Wiring| -> Vec<NodeIds> {
            (0..n)
                .map(|_| NodeIds {
                    trunk: w.fresh(),
                    left: w.fresh(),
                    vert: w.fresh(),
                    right: w.fresh(),
                })
                .collect()
        };
        let top_ids = fresh_ids(top.children.len(), &mut wiring);
        let bottom_ids = fresh_ids(bottom.children.len(), &mut wiring);
        for &j in &top.preorder {
            let n = top_ids[j];
            wiring.crossing([n.trunk, n.left, n.vert, n.right]);
        }
        for &j in &bottom.preorder {
            let n = bottom_ids[j];
            wiring.crossing([n.trunk, n.right, n.vert, n.left]);
        }
        let mut me = PsiWiring {
            wiring,
            top,
            bottom,
            top_ids,
            bottom_ids,
        };

        // Normalise leaf edges so a cut seen from either tree is the same
        // join.
        let key = |me: &PsiWiring, l: Link| -> (usize, usize) {
            let (a, b) = me.ends(l);
            (a.min(b), a.max(b))
        };
        let skip: HashSet<(usize, usize)> = open.iter().map(|&l| key(&me, l)).collect();
        let mut joins: Vec<(usize, usize)> = Vec::new();
        for side in [Side::Top, Side::Bottom] {
            for node in 0..me.flat(side).children.len() {
                for right in [false, true] {
                    let child = me.flat(side).children[node][usize::from(right)];
                    // Leaf joins are listed once, from the top tree.
                    if side == Side::Bottom && matches!(child, Child::Leaf(_)) {
                        continue;
                    }
                    joins.push(key(&me, Link::Edge { side, node, right }));
                }
            }
        }
        for r in 1..me.top.leaves {
            joins.push(key(&me, Link::Vertical(r)));
        }
        for (a, b) in joins {
            if !skip.contains(&(a, b)) {
                me.wiring.join(a, b);
            }
        }
        let (Child::Node(tr), Child::Node(br)) = (me.top.root, me.bottom.root) else {
            unreachable!("both trees have carets")
        };
        let (up, down) = (me.top_ids[tr].trunk, me.bottom_ids[br].trunk);
        me.wiring.join(up, down);
        me
    }

    /// The in-order index (0-based) of the node bounding region `r` from
    /// above or below.
    fn region_node(r: usize) -> usize {
        r - 1
    }
}

/// ψ of a tree pair.  Works on unreduced pairs too; a common caret adds a
/// split unknotted circle.
///
/// ```
/// use thompson_knots::jones_map::psi;
/// use thompson_knots::thompson_core::ThompsonElement;
/// assert_eq!(psi(&ThompsonElement::identity()).loops, 1);
/// ```
pub fn psi(e: &ThompsonElement) -> PlanarDiagram {
    psi_with_regions(e).0
}

/// ψ together with, for each region `r = 1, …, n − 1`, the corner
/// `(crossing, quadrant)` lying in the right half of that region, just below
/// the `r`-th top node.
pub(crate) fn psi_with_regions(e: &ThompsonElement) -> (PlanarDiagram, Vec<(usize, usize)>) {
    if e.leaf_count() == 1 {
        return (PlanarDiagram::unknot(), Vec::new());
    }
    let w = PsiWiring::new(e.top(), e.bottom(), &[]);
    let mut crossing_of = vec![0; w.top.children.len()];
    for (k, &node) in w.top.preorder.iter().enumerate() {
        crossing_of[node] = k;
    }
    let (crossings, _, loops, rotated) = w.wiring.finish_detailed(&[]);
    // Quadrant 2 of a top node lies between its vertical and its right
    // child edge.
    let corners = crossing_of
        .iter()
        .map(|&c| (c, if rotated[c] { 0 } else { 2 }))
        .collect();
    (PlanarDiagram { crossings, loops }, corners)
}

/// ψ′ of a chair diagram: the skeleton's ψ wiring with each block replaced
/// by a twist tangle of as many crossings as the block has chairs.
pub fn psi_prime(c: &ChairDiagram) -> PlanarDiagram {
    let (top, bottom) = c.skeleton();
    let mut opens = Vec::new();
    for b in c.blocks() {
        let node = PsiWiring::region_node(b.region);
        let edge = match b.orientation {
            Orientation::Normal => Link::Edge {
                side: Side::Top,
                node,
                right: true,
            },
            Orientation::Reflected => Link::Edge {
                side: Side::Bottom,
                node,
                right: true,
            },
            Orientation::FlippedReflected => Link::Edge {
                side: Side::Top,
                node,
                right: false,
            },
        };
        opens.push((b, edge));
    }
    let open: Vec<Link> = opens
        .iter()
        .flat_map(|&(b, e)| [e, Link::Vertical(b.region)])
        .collect();
    let mut w = PsiWiring::new(top, bottom, &open);
    for (b, edge) in opens {
        let (parent, child) = w.ends(edge);
        let (top_v, bottom_v) = w.ends(Link::Vertical(b.region));
        let twist = TangleDiagram::from_integer(b.count as i64);
        // Boundary assignment `[N, E, S, W]` of the inserted tangle.
        let (tangle, wiring) = match b.orientation {
            Orientation::Normal => (twist, [parent, child, bottom_v, top_v]),
            Orientation::Reflected => (twist.reflect(), [top_v, child, parent, bottom_v]),
            Orientation::FlippedReflected => {
                (twist.reflect_vertical(), [parent, top_v, bottom_v, child])
            }
        };
        let ends = w.wiring.add_tangle(&tangle);
        for side in [End::N, End::E, End::S, End::W] {
            w.wiring.join(ends[side as usize], wiring[side as usize]);
        }
    }
    let (crossings, _, loops) = w.wiring.finish(&[]);
    PlanarDiagram { crossings, loops }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thompson_core::make_element;

    fn tree(code: &str) -> BinaryTree {
        BinaryTree::from_code(code).unwrap()
    }

    #[test]
    fn one_crossing_per_caret() {
        let e = ThompsonElement::from_trees(tree("11000"), tree("10100")).unwrap();
        let d = psi(&e);
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.euler_characteristic().unwrap(), 2);
    }

    #[test]
    fn identity_pairs_give_unlinks() {
        let e = ThompsonElement::from_trees(tree("100"), tree("100")).unwrap();
        let d = psi(&e);
        assert_eq!(d.crossing_count(), 2);
        let j = crate::invariants::jones_set(&d).unwrap();
        assert!(
            j.iter().all(|p| p.terms().count() == 2),
            "two-component unlink: {j:?}"
        );
        assert_eq!(
            psi(&make_element(tree("0"), tree("0")).unwrap()),
            PlanarDiagram::unknot()
        );
    }
}
