//! From link diagrams back to tree pairs.
//!
//! The route is:
//!
//! 1. [`extract_signed_graph`]: shade the diagram with the exterior
//!    unshaded and take the planar graph whose vertices are the unshaded
//!    faces and whose edges are the crossings, each signed;
//! 2. [`linearize`]: place the vertices on a horizontal line, exterior
//!    first, and draw every edge as an arc above or below the line without
//!    crossings;
//! 3. [`normalize`]: rewrite by graph Reidemeister moves until every arc
//!    above is positive, every arc below is negative and every vertex but
//!    the first has exactly one incoming arc of each sign from the left;
//! 4. [`graph_to_element`]: read the positive arcs as the top tree and the
//!    negative arcs as the bottom tree.
//!
//! [`midline_to_diagram`] turns a midline graph back into a diagram and is
//! used to check that every step preserves the link.
//!
//! # Graph moves
//!
//! Two moves on signed plane graphs preserve the link of the associated
//! diagram: deleting a loop or a degree-one vertex (Reidemeister I), and
//! contracting a degree-two vertex whose two edges have opposite signs,
//! merging its neighbours (Reidemeister II).  [`normalize`] only ever applies
//! the inverses, each inserting a small gadget next to an existing vertex.

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::{goeritz, InvariantError};
use crate::jones_map::psi_with_regions;
use crate::planar_diagram::{PlanarDiagram, Wiring};
use crate::thompson_core::{BinaryTree, ThompsonElement};

/// Search-node budget for [`linearize`].
pub const LINEARIZE_BUDGET: usize = 2_000_000;

/// Errors raised by the reverse pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReverseError {
    #[error(transparent)]
    Diagram(#[from] InvariantError),
    /// No order of the vertices gives a crossing-free two-sided drawing.
    #[error("no midline layout exists for a graph with {vertices} vertices; subdivide an edge with a Reidemeister II move and retry")]
    NoEmbedding { vertices: usize },
    /// The layout search ran out of budget.
    #[error("midline layout search gave up after {nodes} steps")]
    SearchExhausted { nodes: usize },
    /// A midline graph is malformed.
    #[error("invalid midline graph: {0}")]
    InvalidGraph(String),
    /// A midline graph is not in Thompson form.
    #[error("vertex {vertex} violates Thompson form: {reason}")]
    NotThompsonForm { vertex: usize, reason: String },
}

/// Which side of the midline an arc is drawn on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcSide {
    Above,
    Below,
}

impl ArcSide {
    pub fn other(self) -> Self {
        match self {
            ArcSide::Above => ArcSide::Below,
            ArcSide::Below => ArcSide::Above,
        }
    }

    /// The sign an arc on this side carries in Thompson form.
    pub fn thompson_sign(self) -> i32 {
        match self {
            ArcSide::Above => 1,
            ArcSide::Below => -1,
        }
    }
}

/// One crossing, seen as an edge between two unshaded faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedEdge {
    /// Face at the quadrant between positions 0, 1 (positive crossing) or
    /// 1, 2 (negative crossing).
    pub u: usize,
    /// The opposite unshaded face.
    pub v: usize,
    /// `+1` or `-1`.
    pub sign: i32,
}

/// The signed plane graph of unshaded faces of a shaded diagram.
///
/// Vertex 0 is the exterior.  `rotation[v]` lists the edge ends at `v` in
/// counterclockwise order as `(edge, end)` with `end = 0` at `u` and
/// `end = 1` at `v`; `corner_face[v][t]` names the shaded face between
/// `rotation[v][t]` and `rotation[v][t + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPlanarGraph {
    pub vertices: usize,
    pub edges: Vec<SignedEdge>,
    pub rotation: Vec<Vec<(usize, usize)>>,
    pub corner_face: Vec<Vec<usize>>,
}

impl SignedPlanarGraph {
    pub fn positive_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.sign > 0).count()
    }

    pub fn negative_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.sign < 0).count()
    }

    fn endpoint(&self, edge: usize, end: usize) -> usize {
        if end == 0 {
            self.edges[edge].u
        } else {
            self.edges[edge].v
        }
    }

    /// Deletes every loop edge (a Reidemeister I move each).  The shaded
    /// faces on the two sides of a deleted loop merge.
    pub fn without_loops(&self) -> Self {
        let loops: Vec<bool> = self.edges.iter().map(|e| e.u == e.v).collect();
        if !loops.contains(&true) {
            return self.clone();
        }
        let face_count = self
            .corner_face
            .iter()
            .flatten()
            .copied()
            .max()
            .map_or(0, |m| m + 1);
        let mut uf = UnionFind::<usize>::new(face_count);
        for (v, rot) in self.rotation.iter().enumerate() {
            let n = rot.len();
            for t in 0..n {
                if loops[rot[t].0] {
                    uf.union(self.corner_face[v][(t + n - 1) % n], self.corner_face[v][t]);
                }
            }
        }
        let mut renumber: Vec<Option<usize>> = vec![None; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if !loops[i] {
                renumber[i] = Some(edges.len());
                edges.push(*e);
            }
        }
        let mut rotation = Vec::with_capacity(self.vertices);
        let mut corner_face = Vec::with_capacity(self.vertices);
        for (v, rot) in self.rotation.iter().enumerate() {
            let mut r = Vec::new();
            let mut f = Vec::new();
            for (t, &(e, end)) in rot.iter().enumerate() {
                if let Some(ne) = renumber[e] {
                    r.push((ne, end));
                    f.push(uf.find(self.corner_face[v][t]));
                }
            }
            rotation.push(r);
            corner_face.push(f);
        }
        SignedPlanarGraph {
            vertices: self.vertices,
            edges,
            rotation,
            corner_face,
        }
    }
}

/// Shades a connected diagram and extracts its signed graph of unshaded
/// faces.
///
/// A diagram without crossings gives a single vertex.
pub fn extract_signed_graph(d: &PlanarDiagram) -> Result<SignedPlanarGraph, ReverseError> {
    if d.crossings.is_empty() {
        d.validate().map_err(InvariantError::from)?;
        if d.loops > 1 {
            return Err(
                InvariantError::from(crate::planar_diagram::DiagramError::Disconnected(d.loops))
                    .into(),
            );
        }
        return Ok(SignedPlanarGraph {
            vertices: 1,
            edges: vec![],
            rotation: vec![vec![]],
            corner_face: vec![vec![]],
        });
    }
    let g = goeritz(d)?;
    let (_, faces) = d.corner_faces();
    let index: HashMap<usize, usize> = g
        .unshaded_faces
        .iter()
        .enumerate()
        .map(|(i, &f)| (f, i))
        .collect();
    let edges: Vec<SignedEdge> = g
        .edges
        .iter()
        .map(|&(u, v, sign)| SignedEdge { u, v, sign })
        .collect();
    let mut rotation = Vec::with_capacity(g.unshaded_faces.len());
    let mut corner_face = Vec::with_capacity(g.unshaded_faces.len());
    for &f in &g.unshaded_faces {
        // The corner walk keeps the face on its right, so it runs clockwise;
        // reverse it for the counterclockwise rotation.
        let walk = &faces[f];
        let n = walk.len();
        let step_face: Vec<usize> = walk
            .iter()
            .map(|&(c, i)| g.face_of[c][(i + 1) % 4])
            .collect();
        let mut rot = Vec::with_capacity(n);
        let mut cf = Vec::with_capacity(n);
        for s in 0..n {
            let k = n - 1 - s;
            let (c, i) = walk[k];
            let q = if g.edges[c].2 > 0 { 0 } else { 1 };
            rot.push((c, usize::from(i != q)));
            cf.push(step_face[(k + n - 1) % n]);
        }
        debug_assert!(rot.iter().all(|&(c, end)| index
            [&g.face_of[c][(if g.edges[c].2 > 0 { 0 } else { 1 }) + 2 * end]]
            == rotation.len()));
        rotation.push(rot);
        corner_face.push(cf);
    }
    Ok(SignedPlanarGraph {
        vertices: g.unshaded_faces.len(),
        edges,
        rotation,
        corner_face,
    })
}

/// One arc of a midline graph, from vertex `left` to vertex `right > left`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MidlineArc {
    pub left: usize,
    pub right: usize,
    /// `+1` or `-1`.
    pub sign: i32,
    pub side: ArcSide,
}

impl MidlineArc {
    pub fn new(left: usize, right: usize, sign: i32, side: ArcSide) -> Self {
        MidlineArc {
            left,
            right,
            sign,
            side,
        }
    }
}

/// Vertices `0, …, vertices − 1` on a horizontal line with signed arcs
/// above and below it; vertex 0 is the exterior face.
///
/// Arcs on the same side never cross.  Parallel arcs with equal endpoints
/// and side are nested in list order, the first innermost.
/// Vertices carry display names: originals are numbered, a vertex split
/// off to the right of `k` is shown as `k′`, and inserted gadget vertices
/// get fresh letters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "MidlineJson", into = "MidlineJson")]
pub struct SignedMidlineGraph {
    vertices: usize,
    arcs: Vec<MidlineArc>,
    names: Vec<String>,
}

impl PartialEq for SignedMidlineGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.sorted_arcs() == other.sorted_arcs()
    }
}

impl Eq for SignedMidlineGraph {}

#[derive(Serialize, Deserialize)]
struct MidlineJson {
    vertices: usize,
    arcs: Vec<(usize, usize, String, String)>,
}

impl TryFrom<MidlineJson> for SignedMidlineGraph {
    type Error = ReverseError;

    fn try_from(j: MidlineJson) -> Result<Self, ReverseError> {
        let mut arcs = Vec::with_capacity(j.arcs.len());
        for (i, k, sign, side) in j.arcs {
            let sign = match sign.as_str() {
                "+" => 1,
                "-" => -1,
                other => {
                    return Err(ReverseError::InvalidGraph(format!(
                        "unknown sign {other:?}"
                    )))
                }
            };
            let side = match side.as_str() {
                "above" => ArcSide::Above,
                "below" => ArcSide::Below,
                other => {
                    return Err(ReverseError::InvalidGraph(format!(
                        "unknown side {other:?}"
                    )))
                }
            };
            arcs.push(MidlineArc::new(i, k, sign, side));
        }
        SignedMidlineGraph::new(j.vertices, arcs)
    }
}

impl From<SignedMidlineGraph> for MidlineJson {
    fn from(g: SignedMidlineGraph) -> Self {
        let arcs = g
            .arcs
            .iter()
            .map(|a| {
                let sign = if a.sign > 0 { "+" } else { "-" };
                let side = match a.side {
                    ArcSide::Above => "above",
                    ArcSide::Below => "below",
                };
                (a.left, a.right, sign.to_string(), side.to_string())
            })
            .collect();
        MidlineJson {
            vertices: g.vertices,
            arcs,
        }
    }
}

impl fmt::Display for SignedMidlineGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.names.join(" "))?;
        for a in &self.arcs {
            let sign = if a.sign > 0 { '+' } else { '-' };
            let side = match a.side {
                ArcSide::Above => "above",
                ArcSide::Below => "below",
            };
            writeln!(
                f,
                "  {} -> {} {sign} {side}",
                self.names[a.left], self.names[a.right]
            )?;
        }
        Ok(())
    }
}

impl SignedMidlineGraph {
    /// Validates endpoints, signs and planarity.
    pub fn new(vertices: usize, arcs: Vec<MidlineArc>) -> Result<Self, ReverseError> {
        if vertices == 0 {
            return Err(ReverseError::InvalidGraph(
                "a midline graph needs at least the exterior vertex".into(),
            ));
        }
        for a in &arcs {
            if a.left >= a.right || a.right >= vertices {
                return Err(ReverseError::InvalidGraph(format!(
                    "arc ({}, {}) is not a left-to-right pair of vertices below {vertices}",
                    a.left, a.right
                )));
            }
            if a.sign != 1 && a.sign != -1 {
                return Err(ReverseError::InvalidGraph(format!(
                    "arc ({}, {}) has sign {}",
                    a.left, a.right, a.sign
                )));
            }
        }
        for (x, a) in arcs.iter().enumerate() {
            for b in &arcs[x + 1..] {
                if a.side == b.side && arcs_cross(a, b) {
                    return Err(ReverseError::InvalidGraph(format!(
                        "arcs ({}, {}) and ({}, {}) cross",
                        a.left, a.right, b.left, b.right
                    )));
                }
            }
        }
        Ok(SignedMidlineGraph {
            vertices,
            arcs,
            names: (0..vertices).map(|i| i.to_string()).collect(),
        })
    }

    /// The graph with one vertex and no arcs.
    pub fn single_vertex() -> Self {
        SignedMidlineGraph {
            vertices: 1,
            arcs: vec![],
            names: vec!["0".into()],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arcs(&self) -> &[MidlineArc] {
        &self.arcs
    }

    /// Display names of the vertices, left to right.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The arcs in a canonical order.
    pub fn sorted_arcs(&self) -> Vec<MidlineArc> {
        let mut a = self.arcs.clone();
        a.sort();
        a
    }

    /// Arcs into `v` from the left with the given sign.
    pub fn incoming(&self, v: usize, sign: i32) -> usize {
        self.arcs
            .iter()
            .filter(|a| a.right == v && a.sign == sign)
            .count()
    }

    /// The first violation of Thompson form, if any.
    pub fn thompson_violation(&self) -> Option<(usize, String)> {
        for a in &self.arcs {
            if a.sign != a.side.thompson_sign() {
                let (sign, side) = if a.sign > 0 {
                    ("positive", "below")
                } else {
                    ("negative", "above")
                };
                return Some((
                    a.left,
                    format!("{sign} arc to vertex {} lies {side} the midline", a.right),
                ));
            }
        }
        for v in 1..self.vertices {
            for (sign, word) in [(1, "positive"), (-1, "negative")] {
                let n = self.incoming(v, sign);
                if n != 1 {
                    return Some((
                        v,
                        format!("{n} {word} arcs come in from the left instead of one"),
                    ));
                }
            }
        }
        None
    }

    pub fn is_thompson_form(&self) -> bool {
        self.thompson_violation().is_none()
    }

    /// Arc indices at every vertex in counterclockwise order starting just
    /// above the eastward direction of the midline.
    pub fn rotation(&self) -> Vec<Vec<usize>> {
        let mut rot = vec![Vec::new(); self.vertices];
        for (v, r) in rot.iter_mut().enumerate() {
            let sel = |f: &dyn Fn(&MidlineArc) -> bool| -> Vec<usize> {
                (0..self.arcs.len()).filter(|&k| f(&self.arcs[k])).collect()
            };
            // Among parallel arcs the one listed first is innermost.
            let mut above_right = sel(&|a| a.left == v && a.side == ArcSide::Above);
            above_right.sort_by_key(|&k| (self.arcs[k].right, k));
            let mut above_left = sel(&|a| a.right == v && a.side == ArcSide::Above);
            above_left.sort_by_key(|&k| (self.arcs[k].left, std::cmp::Reverse(k)));
            let mut below_left = sel(&|a| a.right == v && a.side == ArcSide::Below);
            below_left.sort_by_key(|&k| (std::cmp::Reverse(self.arcs[k].left), k));
            let mut below_right = sel(&|a| a.left == v && a.side == ArcSide::Below);
            below_right
                .sort_by_key(|&k| (std::cmp::Reverse(self.arcs[k].right), std::cmp::Reverse(k)));
            r.extend(above_right);
            r.extend(above_left);
            r.extend(below_left);
            r.extend(below_right);
        }
        rot
    }

    /// Removes a vertex of degree one together with its arc (a
    /// Reidemeister I move).  Returns `None` if `v` is the exterior or does
    /// not have degree one.
    pub fn delete_leaf(&self, v: usize) -> Option<Self> {
        if v == 0 || v >= self.vertices {
            return None;
        }
        let touching: Vec<usize> = (0..self.arcs.len())
            .filter(|&k| self.arcs[k].left == v || self.arcs[k].right == v)
            .collect();
        if touching.len() != 1 {
            return None;
        }
        let mut g = self.clone();
        g.arcs.remove(touching[0]);
        g.remove_vertex(v);
        Some(g)
    }

    /// Repeatedly deletes degree-one vertices.
    pub fn prune_leaves(&self) -> Self {
        let mut g = self.clone();
        while let Some(v) = (1..g.vertices).find(|&v| g.degree(v) == 1) {
            g = g.delete_leaf(v).expect("degree checked");
        }
        g
    }

    fn degree(&self, v: usize) -> usize {
        self.arcs
            .iter()
            .filter(|a| a.left == v || a.right == v)
            .count()
    }

    fn remove_vertex(&mut self, v: usize) {
        for a in &mut self.arcs {
            if a.left > v {
                a.left -= 1;
            }
            if a.right > v {
                a.right -= 1;
            }
        }
        self.names.remove(v);
        self.vertices -= 1;
    }

    /// Inserts a vertex at position `pos`, shifting later vertices right.
    fn insert_vertex(&mut self, pos: usize, name: String) {
        for a in &mut self.arcs {
            if a.left >= pos {
                a.left += 1;
            }
            if a.right >= pos {
                a.right += 1;
            }
        }
        self.names.insert(pos, name);
        self.vertices += 1;
    }
}

fn arcs_cross(a: &MidlineArc, b: &MidlineArc) -> bool {
    (a.left < b.left && b.left < a.right && a.right < b.right)
        || (b.left < a.left && a.left < b.right && b.right < a.right)
}

/// Draws the link diagram of a midline graph: one crossing per arc, and
/// around every vertex the strands run from each arc to the next one
/// counterclockwise.
pub fn midline_to_diagram(g: &SignedMidlineGraph) -> PlanarDiagram {
    if g.arcs.is_empty() {
        return PlanarDiagram {
            crossings: vec![],
            loops: g.vertices,
        };
    }
    // Compass slots of the crossing sitting on each arc, seen with the arc
    // running west (left vertex) to east (right vertex).
    const NE: usize = 0;
    const NW: usize = 1;
    const SW: usize = 2;
    const SE: usize = 3;
    let mut w = Wiring::new();
    let slots: Vec<[usize; 4]> = g
        .arcs
        .iter()
        .map(|_| [w.fresh(), w.fresh(), w.fresh(), w.fresh()])
        .collect();
    for (k, a) in g.arcs.iter().enumerate() {
        let s = slots[k];
        // Positive: unshaded (vertex) quadrants between positions 0, 1 and
        // 2, 3; negative: between 1, 2 and 3, 0.
        let t = if a.sign > 0 {
            [s[NW], s[SW], s[SE], s[NE]]
        } else {
            [s[SW], s[SE], s[NE], s[NW]]
        };
        w.crossing(t);
    }
    // At a vertex an arc's counterclockwise-side strand meets the next
    // arc's clockwise-side strand.
    let ccw_slot = |k: usize, v: usize| {
        if g.arcs[k].left == v {
            slots[k][NW]
        } else {
            slots[k][SE]
        }
    };
    let cw_slot = |k: usize, v: usize| {
        if g.arcs[k].left == v {
            slots[k][SW]
        } else {
            slots[k][NE]
        }
    };
    let mut isolated = 0;
    for (v, rot) in g.rotation().iter().enumerate() {
        if rot.is_empty() {
            isolated += 1;
        }
        for t in 0..rot.len() {
            w.join(ccw_slot(rot[t], v), cw_slot(rot[(t + 1) % rot.len()], v));
        }
    }
    let (crossings, _, loops) = w.finish(&[]);
    PlanarDiagram {
        crossings,
        loops: loops + isolated,
    }
}

struct Layout<'a> {
    g: &'a SignedPlanarGraph,
    order: Vec<usize>,
    pos: Vec<Option<usize>>,
    side: Vec<Option<ArcSide>>,
    closing_face: usize,
    steps: usize,
    /// Only allow arcs on the side matching their sign.
    sided_only: bool,
    /// The corner each placed vertex is left through.
    leave: Vec<usize>,
    /// Position of every corner `(v, t)` along the boundary of its shaded
    /// face.
    boundary_index: Vec<Vec<usize>>,
    /// Midline segments drawn so far, as `(face, corner index, corner
    /// index)`.
    chords: Vec<(usize, usize, usize)>,
}

impl Layout<'_> {
    /// Tries every way to leave `v`, entered through corner `a`.
    fn place(&mut self, v: usize, a: usize) -> Result<bool, ReverseError> {
        self.steps += 1;
        if self.steps > LINEARIZE_BUDGET {
            return Err(ReverseError::SearchExhausted {
                nodes: LINEARIZE_BUDGET,
            });
        }
        let rot = &self.g.rotation[v];
        let n = rot.len();
        let here = self.order.len();
        self.pos[v] = Some(here);
        self.order.push(v);
        // Every way to leave: a corner b, and when b == a, which side the
        // whole rotation lies on.  Darts d_{b+1} ..= d_a (cyclically) lie
        // above.  Options putting fewer arcs on the wrong side for their
        // sign are tried first, which keeps normalization small.
        let mut options: Vec<(usize, usize, Vec<ArcSide>)> = Vec::new();
        for b in 0..n {
            let choices: &[Option<ArcSide>] = if a == b {
                &[Some(ArcSide::Above), Some(ArcSide::Below)]
            } else {
                &[None]
            };
            for &whole in choices {
                let sides: Vec<ArcSide> = (0..n)
                    .map(|t| match whole {
                        Some(s) => s,
                        None => {
                            let from_b = (t + n - b - 1) % n;
                            let a_from_b = (a + n - b - 1) % n;
                            if from_b <= a_from_b {
                                ArcSide::Above
                            } else {
                                ArcSide::Below
                            }
                        }
                    })
                    .collect();
                let wrong = (0..n)
                    .filter(|&t| self.g.edges[rot[t].0].sign != sides[t].thompson_sign())
                    .count();
                options.push((wrong, b, sides));
            }
        }
        options.retain(|o| !self.sided_only || o.0 == 0);
        options.sort_by_key(|o| o.0);
        for (_, b, sides) in options {
            {
                if !self.rotation_fits(v, b, &sides) {
                    continue;
                }
                if let Some(assigned) = self.assign(v, &sides) {
                    self.leave[v] = b;
                    let neighbours_fit = rot.iter().all(|&(e, end)| {
                        let w = self.g.endpoint(e, 1 - end);
                        w == v || self.pos[w].is_none() || self.still_fits(w)
                    });
                    if neighbours_fit && self.advance(v, b)? {
                        return Ok(true);
                    }
                    for e in assigned {
                        self.side[e] = None;
                    }
                }
            }
        }
        self.order.pop();
        self.pos[v] = None;
        Ok(false)
    }

    /// Checks the counterclockwise order of the darts at `v` against the
    /// layout: going round from the east, the arcs above run inner to outer
    /// to the right and then outer to inner to the left; below, inner to
    /// outer to the left and then outer to inner to the right.  Positions
    /// of unplaced vertices are unknown but larger than every placed one.
    fn rotation_fits(&self, v: usize, b: usize, sides: &[ArcSide]) -> bool {
        let rot = &self.g.rotation[v];
        let n = rot.len();
        let Some(here) = self.pos[v] else { return true };
        let key = |t: usize| -> (u8, usize) {
            let (e, end) = rot[t];
            let other = self.pos[self.g.endpoint(e, 1 - end)];
            match (sides[t], other) {
                (ArcSide::Above, None) => (0, usize::MAX),
                (ArcSide::Above, Some(p)) if p > here => (0, p),
                (ArcSide::Above, Some(p)) => (1, p),
                (ArcSide::Below, Some(p)) if p < here => (2, usize::MAX - p),
                (ArcSide::Below, None) => (3, 0),
                (ArcSide::Below, Some(p)) => (3, usize::MAX - p),
            }
        };
        let keys: Vec<(u8, usize)> = (0..n).map(|s| key((b + 1 + s) % n)).collect();
        keys.windows(2).all(|w| w[0] <= w[1])
    }

    /// [`Layout::rotation_fits`] for an already placed vertex.
    fn still_fits(&self, w: usize) -> bool {
        let sides: Vec<ArcSide> = self.g.rotation[w]
            .iter()
            .map(|&(e, _)| self.side[e].expect("sides fixed when placed"))
            .collect();
        self.rotation_fits(w, self.leave[w], &sides)
    }

    /// Records the sides of the edges at `v`; `None` if they clash with
    /// earlier choices or close an arc across an open one.
    fn assign(&mut self, v: usize, sides: &[ArcSide]) -> Option<Vec<usize>> {
        let here = self.order.len() - 1;
        let mut fresh = Vec::new();
        let mut closing: Vec<(usize, ArcSide)> = Vec::new();
        for (t, &(e, end)) in self.g.rotation[v].iter().enumerate() {
            let other = self.g.endpoint(e, 1 - end);
            let s = sides[t];
            match self.side[e] {
                Some(prev) if prev != s => {
                    for &f in &fresh {
                        self.side[f] = None;
                    }
                    return None;
                }
                Some(_) => {}
                None => {
                    self.side[e] = Some(s);
                    fresh.push(e);
                }
            }
            if let Some(p) = self.pos[other] {
                if p < here {
                    closing.push((p, s));
                }
            }
        }
        // An arc closing here from position p may not enclose the start of
        // an arc that is still open on the same side.
        for &(p, s) in &closing {
            let blocked = self.g.edges.iter().enumerate().any(|(e, edge)| {
                if self.side[e] != Some(s) {
                    return false;
                }
                let (pu, pv) = (self.pos[edge.u], self.pos[edge.v]);
                match (pu, pv) {
                    (Some(x), None) | (None, Some(x)) => p < x && x < here,
                    _ => false,
                }
            });
            if blocked {
                for &f in &fresh {
                    self.side[f] = None;
                }
                return None;
            }
        }
        Some(fresh)
    }

    fn advance(&mut self, v: usize, b: usize) -> Result<bool, ReverseError> {
        let face = self.g.corner_face[v][b];
        if self.order.len() == self.g.vertices {
            return Ok(face == self.closing_face && self.verify());
        }
        for u in 0..self.g.vertices {
            if self.pos[u].is_some() {
                continue;
            }
            for a2 in 0..self.g.rotation[u].len() {
                if self.g.corner_face[u][a2] != face {
                    continue;
                }
                // Segments of the midline inside one face may not cross.
                let (x, y) = (self.boundary_index[v][b], self.boundary_index[u][a2]);
                let (x, y) = (x.min(y), x.max(y));
                let crosses = self.chords.iter().any(|&(f, p, q)| {
                    f == face && ((p < x && x < q && q < y) || (x < p && p < y && y < q))
                });
                if crosses {
                    continue;
                }
                self.chords.push((face, x, y));
                let found = self.place(u, a2)?;
                self.chords.pop();
                if found {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn midline(&self) -> Option<SignedMidlineGraph> {
        let arcs = self
            .g
            .edges
            .iter()
            .enumerate()
            .map(|(e, edge)| {
                let (x, y) = (self.pos[edge.u].unwrap(), self.pos[edge.v].unwrap());
                MidlineArc::new(x.min(y), x.max(y), edge.sign, self.side[e].unwrap())
            })
            .collect();
        SignedMidlineGraph::new(self.g.vertices, arcs).ok()
    }

    /// Checks that the drawing has the rotation system of the graph.
    fn verify(&self) -> bool {
        let Some(m) = self.midline() else {
            return false;
        };
        let rot = m.rotation();
        for v in 0..self.g.vertices {
            let want: Vec<usize> = self.g.rotation[v].iter().map(|&(e, _)| e).collect();
            let have = &rot[self.pos[v].unwrap()];
            if want.len() != have.len() {
                return false;
            }
            if want.is_empty() {
                continue;
            }
            // Parallel arcs on one side bound an empty bigon and the drawing
            // cannot order them; compare by endpoints and side only.  (Two
            // parallel crossings of opposite sign cancel by Reidemeister II
            // in either order, so the link does not depend on it.)
            let key = |e: usize| {
                let edge = self.g.edges[e];
                (edge.u.min(edge.v), edge.u.max(edge.v), self.side[e])
            };
            let want: Vec<_> = want.into_iter().map(key).collect();
            let have: Vec<_> = have.iter().map(|&e| key(e)).collect();
            if !(0..want.len())
                .any(|s| (0..want.len()).all(|t| want[(t + s) % want.len()] == have[t]))
            {
                return false;
            }
        }
        true
    }
}

/// Places the vertices on a midline, exterior first, with every edge drawn
/// as a non-crossing arc above or below, matching the rotation system.
///
/// Loops are deleted first (Reidemeister I).  The search walks the midline
/// through the shaded faces: having left a vertex through one of its
/// corners, the next vertex must be entered through a corner of the same
/// shaded face.  Candidates are tried in vertex order, so the result is
/// deterministic.
pub fn linearize(g: &SignedPlanarGraph) -> Result<SignedMidlineGraph, ReverseError> {
    let g = g.without_loops();
    if g.vertices == 1 {
        return Ok(SignedMidlineGraph::single_vertex());
    }
    // Walk every shaded face: from corner (v, t), follow dart t + 1 to its
    // far end w; the next corner is the one just counterclockwise of the
    // arriving dart.
    let mut boundary_index: Vec<Vec<usize>> = g
        .rotation
        .iter()
        .map(|r| vec![usize::MAX; r.len()])
        .collect();
    let mut dart_slot: HashMap<(usize, usize), usize> = HashMap::new();
    for rot in &g.rotation {
        for (t, &d) in rot.iter().enumerate() {
            dart_slot.insert(d, t);
        }
    }
    for v in 0..g.vertices {
        for t in 0..g.rotation[v].len() {
            if boundary_index[v][t] != usize::MAX {
                continue;
            }
            let (mut cv, mut ct, mut k) = (v, t, 0);
            while boundary_index[cv][ct] == usize::MAX {
                boundary_index[cv][ct] = k;
                k += 1;
                let n = g.rotation[cv].len();
                let (e, end) = g.rotation[cv][(ct + 1) % n];
                let w = g.endpoint(e, 1 - end);
                (cv, ct) = (w, dart_slot[&(e, 1 - end)]);
            }
        }
    }
    let mut layout = Layout {
        g: &g,
        order: Vec::new(),
        pos: vec![None; g.vertices],
        side: vec![None; g.edges.len()],
        closing_face: 0,
        steps: 0,
        leave: vec![0; g.vertices],
        sided_only: true,
        boundary_index,
        chords: Vec::new(),
    };
    // First look for a layout with every arc on the side of its sign, then
    // for any layout.
    for sided_only in [true, false] {
        layout.sided_only = sided_only;
        for a in 0..g.rotation[0].len() {
            layout.closing_face = g.corner_face[0][a];
            if layout.place(0, a)? {
                return Ok(layout.midline().expect("verified layout"));
            }
        }
    }
    Err(ReverseError::NoEmbedding {
        vertices: g.vertices,
    })
}

/// Rewrites a midline graph into Thompson form by inverse graph
/// Reidemeister moves, preserving the link of [`midline_to_diagram`].
///
/// Phases run in order, each scanning violations left to right:
///
/// 1. *relocate*: an arc with the wrong sign for its side is replaced by a
///    three-arc path that crosses the midline twice next to its left end,
///    or next to its right end when that avoids enclosing other arcs;
/// 2. *split*: a vertex with several incoming arcs of one sign is split in
///    two, joined through a new vertex by a positive arc above and a
///    negative arc below;
/// 3. *supply*: a vertex missing an incoming arc gets a new vertex on its
///    left, joined to it by a pendant arc and to the previous vertex by a
///    double bond.
pub fn normalize(g: &SignedMidlineGraph) -> SignedMidlineGraph {
    let mut g = g.clone();
    let mut gadget = 0usize;
    let mut fresh_name = |prefix: char| {
        gadget += 1;
        format!("{prefix}{gadget}")
    };
    relocate(&mut g, &mut fresh_name);
    split(&mut g, &mut fresh_name);
    supply(&mut g, &mut fresh_name);
    debug_assert!(g.is_thompson_form(), "{g}");
    // Copies of a vertex are primed in left-to-right order: k, k′, k″, …
    let mut seen: HashMap<String, usize> = HashMap::new();
    for name in g.names.iter_mut() {
        let base = name.trim_end_matches(['′', '″', '‴']).to_string();
        let primes = seen.entry(base.clone()).or_insert(0);
        let mark = match *primes {
            0 => String::new(),
            1 => "′".to_string(),
            2 => "″".to_string(),
            3 => "‴".to_string(),
            n => "′".repeat(n),
        };
        *name = format!("{base}{mark}");
        *primes += 1;
    }
    g
}

fn relocate(g: &mut SignedMidlineGraph, fresh_name: &mut dyn FnMut(char) -> String) {
    loop {
        let wrong = (0..g.arcs.len())
            .filter(|&k| g.arcs[k].sign != g.arcs[k].side.thompson_sign())
            .min_by_key(|&k| (g.arcs[k].left, -g.arcs[k].sign, g.arcs[k].right));
        let Some(k) = wrong else { return };
        let d = g.arcs[k];
        let (v, mut u, s, side) = (d.left, d.right, d.sign, d.side);
        let other = side.other();
        // Arcs on this side nested inside d at v (resp. at u) would be cut
        // off by a detour next to v (resp. u).
        let inner_at = |g: &SignedMidlineGraph, at_left: bool| -> Vec<usize> {
            (0..g.arcs.len())
                .filter(|&j| {
                    let a = g.arcs[j];
                    let shares = if at_left {
                        a.left == v && a.right < u
                    } else {
                        a.right == u && a.left > v
                    };
                    j != k && a.side == side && (shares || (a.left == v && a.right == u && j < k))
                })
                .map(|j| if j > k { j - 1 } else { j })
                .collect()
        };
        let inner_v = inner_at(g, true);
        let inner_u = inner_at(g, false);
        g.arcs.remove(k);
        if !inner_v.is_empty() && inner_u.is_empty() {
            // Detour u ← c2 ← c1 on the other side, then c1 ← v on this
            // side with the opposite sign; contracting c1 restores d.
            g.insert_vertex(u, fresh_name('c'));
            g.insert_vertex(u + 1, fresh_name('c'));
            let (c1, c2) = (u, u + 1);
            u += 2;
            g.arcs.push(MidlineArc::new(v, c1, -s, side));
            g.arcs.push(MidlineArc::new(c1, c2, s, other));
            g.arcs.push(MidlineArc::new(c2, u, s, other));
            continue;
        }
        if !inner_v.is_empty() {
            // Hand the nested arcs to a copy x of v first.  The path
            // v → w (other side) → x (this side) contracts back to v.
            g.insert_vertex(v + 1, fresh_name('w'));
            g.insert_vertex(v + 2, format!("{}′", g.names[v]));
            u += 2;
            for &j in &inner_v {
                g.arcs[j].left = v + 2;
            }
            g.arcs
                .push(MidlineArc::new(v, v + 1, other.thompson_sign(), other));
            g.arcs
                .push(MidlineArc::new(v + 1, v + 2, side.thompson_sign(), side));
        }
        // Detour v → b1 → b2 on the other side with d's sign, then b2 → u
        // on this side with the opposite sign; contracting b2 restores d.
        g.insert_vertex(v + 1, fresh_name('b'));
        g.insert_vertex(v + 2, fresh_name('b'));
        u += 2;
        g.arcs.push(MidlineArc::new(v, v + 1, s, other));
        g.arcs.push(MidlineArc::new(v + 1, v + 2, s, other));
        g.arcs.push(MidlineArc::new(v + 2, u, -s, side));
    }
}

fn split(g: &mut SignedMidlineGraph, fresh_name: &mut dyn FnMut(char) -> String) {
    loop {
        let Some(u) = (1..g.vertices).find(|&v| g.incoming(v, 1) > 1 || g.incoming(v, -1) > 1)
        else {
            return;
        };
        // Incoming arcs, outermost first.
        let mut pos: Vec<usize> = (0..g.arcs.len())
            .filter(|&k| g.arcs[k].right == u && g.arcs[k].sign > 0)
            .collect();
        let mut neg: Vec<usize> = (0..g.arcs.len())
            .filter(|&k| g.arcs[k].right == u && g.arcs[k].sign < 0)
            .collect();
        // Parallel arcs listed later are further out.
        pos.sort_by_key(|&k| (g.arcs[k].left, std::cmp::Reverse(k)));
        neg.sort_by_key(|&k| (g.arcs[k].left, std::cmp::Reverse(k)));
        // The left copy takes a block of incoming arcs that is contiguous
        // around the west of u; the right copy keeps the outermost arc of the
        // crowded sign and receives the middle vertex's arc of the other.
        let (moved, first_side): (Vec<usize>, ArcSide) = if pos.len() > 1 {
            (
                pos[1..].iter().chain(neg.iter()).copied().collect(),
                ArcSide::Above,
            )
        } else {
            (
                pos.iter().chain(neg[1..].iter()).copied().collect(),
                ArcSide::Below,
            )
        };
        // u becomes the left copy; a middle vertex and the right copy
        // follow it.
        let name = g.names[u].clone();
        g.insert_vertex(u + 1, fresh_name('d'));
        g.insert_vertex(u + 2, format!("{name}′"));
        for a in g.arcs.iter_mut() {
            if a.left == u {
                a.left = u + 2;
            }
        }
        for (k, a) in g.arcs.iter_mut().enumerate() {
            if a.right == u && !moved.contains(&k) {
                a.right = u + 2;
            }
        }
        g.arcs.push(MidlineArc::new(
            u,
            u + 1,
            first_side.thompson_sign(),
            first_side,
        ));
        let second = first_side.other();
        g.arcs.push(MidlineArc::new(
            u + 1,
            u + 2,
            second.thompson_sign(),
            second,
        ));
    }
}

fn supply(g: &mut SignedMidlineGraph, fresh_name: &mut dyn FnMut(char) -> String) {
    let mut v = 1;
    while v < g.vertices {
        for side in [ArcSide::Above, ArcSide::Below] {
            let sign = side.thompson_sign();
            if g.incoming(v, sign) == 0 {
                // A pendant arc f → v, then a double bond between f and its
                // left neighbour.
                g.insert_vertex(v, fresh_name('f'));
                g.arcs.push(MidlineArc::new(v, v + 1, sign, side));
                g.arcs.push(MidlineArc::new(v - 1, v, 1, ArcSide::Above));
                g.arcs.push(MidlineArc::new(v - 1, v, -1, ArcSide::Below));
                v += 1;
            }
        }
        v += 1;
    }
}

/// Reads a Thompson-form midline graph as a tree pair: the positive arcs
/// above give the top tree, the negative arcs below the bottom tree.
///
/// Vertex `i ≥ 1` is the `i`-th caret in in-order.  A caret's incoming arc
/// comes from the nearest ancestor having it in its right subtree, or from
/// vertex 0 if there is none.
pub fn graph_to_element(g: &SignedMidlineGraph) -> Result<ThompsonElement, ReverseError> {
    if let Some((vertex, reason)) = g.thompson_violation() {
        return Err(ReverseError::NotThompsonForm { vertex, reason });
    }
    let m = g.vertices - 1;
    let tree = |sign: i32| -> Result<BinaryTree, ReverseError> {
        let mut parent = vec![0usize; g.vertices];
        for a in g.arcs.iter().filter(|a| a.sign == sign) {
            parent[a.right] = a.left;
        }
        build(&parent, 1, m, 0)
    };
    let top = tree(1)?;
    let bottom = tree(-1)?;
    Ok(ThompsonElement::from_trees(top, bottom).expect("both trees have m + 1 leaves"))
}

fn build(parent: &[usize], lo: usize, hi: usize, p: usize) -> Result<BinaryTree, ReverseError> {
    if lo > hi {
        return Ok(BinaryTree::leaf());
    }
    let spine: Vec<usize> = (lo..=hi).filter(|&c| parent[c] == p).collect();
    if spine.first() != Some(&lo) {
        return Err(ReverseError::NotThompsonForm {
            vertex: lo,
            reason: format!(
                "its incoming arc does not come from vertex {p}, the nearest enclosing caret"
            ),
        });
    }
    let mut t = BinaryTree::leaf();
    for (i, &c) in spine.iter().enumerate() {
        let next = spine.get(i + 1).copied().unwrap_or(hi + 1);
        t = BinaryTree::node(t, build(parent, c + 1, next - 1, c)?);
    }
    Ok(t)
}

/// The midline graph of `ψ(e)`: vertex `r` is the unshaded face meeting
/// the line of leaves between leaves `r − 1` and `r`, vertex 0 the
/// exterior, and every crossing an arc, above for top carets and below for
/// bottom carets.
pub fn element_to_graph(e: &ThompsonElement) -> SignedMidlineGraph {
    let (d, corners) = psi_with_regions(e);
    if d.crossings.is_empty() {
        return SignedMidlineGraph::single_vertex();
    }
    let gd = goeritz(&d).expect("ψ produces connected diagrams");
    let index: HashMap<usize, usize> = gd
        .unshaded_faces
        .iter()
        .enumerate()
        .map(|(i, &f)| (f, i))
        .collect();
    let mut position = vec![usize::MAX; gd.unshaded_faces.len()];
    position[0] = 0;
    for (r, &(c, q)) in corners.iter().enumerate() {
        position[index[&gd.face_of[c][q]]] = r + 1;
    }
    assert!(
        position.iter().all(|&p| p != usize::MAX),
        "every unshaded face meets the midline"
    );
    let top_carets = e.top().internal_count();
    let arcs = gd
        .edges
        .iter()
        .enumerate()
        .map(|(c, &(u, v, sign))| {
            let (x, y) = (position[u], position[v]);
            let side = if c < top_carets {
                ArcSide::Above
            } else {
                ArcSide::Below
            };
            MidlineArc::new(x.min(y), x.max(y), sign, side)
        })
        .collect();
    SignedMidlineGraph::new(gd.unshaded_faces.len(), arcs).expect("ψ draws arcs without crossings")
}

/// The whole reverse pipeline: a tree pair whose ψ-image is the same link
/// as `d`.
pub fn reverse(d: &PlanarDiagram) -> Result<ThompsonElement, ReverseError> {
    let g = extract_signed_graph(d)?;
    let m = linearize(&g)?;
    graph_to_element(&normalize(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::jones_set;
    use crate::jones_map::psi;
    use crate::thompson_core::all_trees;

    fn pd(c: &[[u32; 4]]) -> PlanarDiagram {
        PlanarDiagram {
            crossings: c.to_vec(),
            loops: 0,
        }
    }

    fn arc(i: usize, j: usize, sign: i32, above: bool) -> MidlineArc {
        MidlineArc::new(
            i,
            j,
            sign,
            if above {
                ArcSide::Above
            } else {
                ArcSide::Below
            },
        )
    }

    fn same_link(a: &PlanarDiagram, b: &PlanarDiagram) {
        assert_eq!(jones_set(a).unwrap(), jones_set(b).unwrap());
    }

    #[test]
    fn one_crossing_unknot_has_two_vertices() {
        let g = extract_signed_graph(&pd(&[[1, 1, 2, 2]])).unwrap();
        assert_eq!(g.vertices + g.edges.len(), 2 + 1);
    }

    #[test]
    fn trefoil_graph_is_a_triple_edge_or_triangle() {
        let t = pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]);
        let g = extract_signed_graph(&t).unwrap();
        assert_eq!(g.edges.len(), 3);
        assert!(g.vertices == 2 || g.vertices == 3);
        assert!(g.edges.iter().all(|e| e.sign == g.edges[0].sign));
    }

    #[test]
    fn midline_drawing_agrees_with_psi() {
        for n in 1..=6 {
            for top in all_trees(n) {
                for bottom in all_trees(n) {
                    let e = ThompsonElement::from_trees(top.clone(), bottom).unwrap();
                    let g = element_to_graph(&e);
                    assert!(g.is_thompson_form(), "{g}");
                    same_link(&midline_to_diagram(&g), &psi(&e));
                }
            }
        }
    }

    #[test]
    fn arcs_follow_the_right_subtree_rule() {
        fn arcs_of(t: &BinaryTree, sign: i32, above: bool, out: &mut Vec<MidlineArc>) {
            // In-order numbering with the nearest right-ancestor as parent.
            fn go(
                t: &BinaryTree,
                next: &mut usize,
                right_anc: usize,
                sign: i32,
                above: bool,
                out: &mut Vec<MidlineArc>,
            ) {
                if let BinaryTree::Node(l, r) = t {
                    go(l, next, right_anc, sign, above, out);
                    *next += 1;
                    let me = *next;
                    out.push(arc(right_anc, me, sign, above));
                    go(r, next, me, sign, above, out);
                }
            }
            go(t, &mut 0, 0, sign, above, out);
        }
        for n in 1..=6 {
            for top in all_trees(n) {
                for bottom in all_trees(n) {
                    let e = ThompsonElement::from_trees(top.clone(), bottom.clone()).unwrap();
                    let mut want = Vec::new();
                    arcs_of(&top, 1, true, &mut want);
                    arcs_of(&bottom, -1, false, &mut want);
                    want.sort();
                    assert_eq!(element_to_graph(&e).sorted_arcs(), want);
                }
            }
        }
    }

    #[test]
    fn round_trip_through_graphs() {
        for n in 1..=5 {
            for top in all_trees(n) {
                for bottom in all_trees(n) {
                    let e = ThompsonElement::from_trees(top.clone(), bottom).unwrap();
                    assert_eq!(graph_to_element(&element_to_graph(&e)).unwrap(), e);
                }
            }
        }
    }

    #[test]
    fn smallest_normal_form() {
        let g = SignedMidlineGraph::new(2, vec![arc(0, 1, 1, true), arc(0, 1, -1, false)]).unwrap();
        let e = graph_to_element(&g).unwrap();
        assert_eq!(e.top().to_code(), "100");
        assert_eq!(e.bottom().to_code(), "100");
    }

    #[test]
    fn extraction_matches_the_drawing() {
        for n in 2..=5 {
            for top in all_trees(n) {
                for bottom in all_trees(n) {
                    let e = ThompsonElement::from_trees(top.clone(), bottom).unwrap();
                    let d = psi(&e);
                    let g = extract_signed_graph(&d).unwrap();
                    assert_eq!(g.edges.len(), d.crossing_count());
                    let m = linearize(&g).unwrap();
                    same_link(&midline_to_diagram(&m), &d);
                }
            }
        }
    }

    #[test]
    fn normal_graphs_are_fixed() {
        for n in 1..=5 {
            for top in all_trees(n) {
                for bottom in all_trees(n) {
                    let e = ThompsonElement::from_trees(top.clone(), bottom).unwrap();
                    let g = element_to_graph(&e);
                    assert_eq!(normalize(&g), g);
                }
            }
        }
    }

    #[test]
    fn single_wrong_arc_is_relocated() {
        let g =
            SignedMidlineGraph::new(2, vec![arc(0, 1, -1, true), arc(0, 1, -1, false)]).unwrap();
        let mut relocated = g.clone();
        relocate(&mut relocated, &mut |c| c.to_string());
        assert_eq!(relocated.vertex_count(), 4);
        assert!(relocated
            .arcs()
            .iter()
            .all(|a| a.sign == a.side.thompson_sign()));
        same_link(&midline_to_diagram(&relocated), &midline_to_diagram(&g));
        let n = normalize(&g);
        assert!(n.is_thompson_form());
        same_link(&midline_to_diagram(&n), &midline_to_diagram(&g));
    }

    #[test]
    fn each_phase_preserves_the_link() {
        let graphs = vec![
            vec![
                arc(0, 1, 1, true),
                arc(0, 2, 1, true),
                arc(1, 2, 1, true),
                arc(0, 2, -1, false),
            ],
            vec![
                arc(0, 1, -1, true),
                arc(0, 2, 1, false),
                arc(0, 3, 1, true),
                arc(2, 3, -1, true),
                arc(1, 2, -1, true),
            ],
            vec![
                arc(0, 3, 1, true),
                arc(0, 1, 1, true),
                arc(1, 2, -1, true),
                arc(0, 2, -1, false),
                arc(2, 3, 1, false),
            ],
            vec![
                arc(0, 2, -1, true),
                arc(0, 1, 1, true),
                arc(0, 4, 1, false),
                arc(1, 4, -1, false),
                arc(2, 3, 1, true),
                arc(3, 4, 1, true),
                arc(2, 4, 1, true),
            ],
        ];
        for arcs in graphs {
            let n = arcs.iter().map(|a| a.right).max().unwrap() + 1;
            let g = SignedMidlineGraph::new(n, arcs).unwrap();
            let want = jones_set(&midline_to_diagram(&g)).unwrap();
            let mut h = g.clone();
            let mut names = |c: char| c.to_string();
            relocate(&mut h, &mut names);
            assert_eq!(
                jones_set(&midline_to_diagram(&h)).unwrap(),
                want,
                "relocate\n{g}\n{h}"
            );
            split(&mut h, &mut names);
            assert_eq!(
                jones_set(&midline_to_diagram(&h)).unwrap(),
                want,
                "split\n{g}\n{h}"
            );
            supply(&mut h, &mut names);
            assert_eq!(
                jones_set(&midline_to_diagram(&h)).unwrap(),
                want,
                "supply\n{g}\n{h}"
            );
            assert!(h.is_thompson_form(), "{h}");
            let e = graph_to_element(&h).unwrap();
            assert_eq!(jones_set(&psi(&e)).unwrap(), want);
        }
    }

    #[test]
    fn normalize_preserves_random_links() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(2..=5);
            let side = |rng: &mut rand_chacha::ChaCha8Rng| {
                if rng.gen_bool(0.5) {
                    ArcSide::Above
                } else {
                    ArcSide::Below
                }
            };
            let sign = |rng: &mut rand_chacha::ChaCha8Rng| if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut arcs: Vec<MidlineArc> = (1..n)
                .map(|i| MidlineArc::new(i - 1, i, sign(&mut rng), side(&mut rng)))
                .collect();
            for _ in 0..rng.gen_range(0..4) {
                let i = rng.gen_range(0..n - 1);
                let j = rng.gen_range(i + 1..n);
                let a = MidlineArc::new(i, j, sign(&mut rng), side(&mut rng));
                if arcs.iter().all(|b| b.side != a.side || !arcs_cross(&a, b)) {
                    arcs.push(a);
                }
            }
            let g = SignedMidlineGraph::new(n, arcs).unwrap();
            let want = jones_set(&midline_to_diagram(&g)).unwrap();
            let h = normalize(&g);
            assert!(h.is_thompson_form(), "{g}\n{h}");
            assert_eq!(
                jones_set(&midline_to_diagram(&h)).unwrap(),
                want,
                "{g}\n{h}"
            );
            let e = graph_to_element(&h).unwrap();
            assert_eq!(jones_set(&psi(&e)).unwrap(), want, "{g}");
        }
    }

    /// A six-region example: top tree with in-order carets d0 d1 d2 d3 d4
    /// (root d2), bottom tree d8 d7 d6 d9 d5 (root d8).
    fn six_region_element() -> ThompsonElement {
        let top = crate::thompson_core::tree_from_code("11010010100").unwrap();
        let bottom = crate::thompson_core::tree_from_code("10101011000").unwrap();
        ThompsonElement::from_trees(top, bottom).unwrap()
    }

    #[test]
    fn six_region_element_graph() {
        let e = six_region_element();
        let d = psi(&e);
        let g = extract_signed_graph(&d).unwrap();
        assert_eq!(
            (
                g.vertices,
                g.edges.len(),
                g.positive_edges(),
                g.negative_edges()
            ),
            (6, 10, 5, 5)
        );
        let want = vec![
            arc(0, 1, 1, true),
            arc(0, 3, 1, true),
            arc(1, 2, 1, true),
            arc(3, 4, 1, true),
            arc(4, 5, 1, true),
            arc(3, 5, -1, false),
            arc(2, 3, -1, false),
            arc(1, 2, -1, false),
            arc(0, 1, -1, false),
            arc(3, 4, -1, false),
        ];
        let want = SignedMidlineGraph::new(6, want).unwrap();
        assert_eq!(element_to_graph(&e), want);
        let m = linearize(&g).unwrap();
        assert_eq!(m.vertex_count(), 6);
        assert!(m.is_thompson_form());
        same_link(&midline_to_diagram(&m), &d);
    }

    /// An eight-crossing knot after isotoping its unshaded
    /// regions onto the midline.
    fn eight_crossing_knot() -> SignedMidlineGraph {
        SignedMidlineGraph::new(
            5,
            vec![
                arc(0, 1, 1, true),
                arc(0, 2, 1, true),
                arc(0, 4, -1, false),
                arc(1, 2, 1, true),
                arc(1, 3, 1, false),
                arc(2, 3, 1, true),
                arc(2, 4, -1, true),
                arc(3, 4, -1, false),
            ],
        )
        .unwrap()
    }

    #[test]
    fn eight_crossing_knot_normalizes_with_primed_copies() {
        let g = eight_crossing_knot();
        let d = midline_to_diagram(&g);
        assert_eq!(d.crossing_count(), 8);
        assert_eq!(d.components(), 1);
        let n = normalize(&g);
        assert!(n.is_thompson_form());
        let named: Vec<&str> = n
            .names()
            .iter()
            .map(String::as_str)
            .filter(|s| s.chars().next().unwrap().is_ascii_digit())
            .collect();
        assert_eq!(named, ["0", "1", "2", "2′", "3", "4", "4′", "4″"]);
        // Five originals, four relocation vertices, three split vertices
        // (a middle vertex and a copy each), and ten supplied vertices for
        // 1, b1, b2, 2, d, c1, c2, 4 and the two middle vertices of 4.
        assert_eq!(n.vertex_count(), 5 + 4 + 6 + 10);
        same_link(&midline_to_diagram(&n), &d);
        let e = graph_to_element(&n).unwrap();
        same_link(&psi(&e), &d);
        // The layout search recovers a drawing of the same knot.
        let m = linearize(&extract_signed_graph(&d).unwrap()).unwrap();
        assert_eq!(m.vertex_count(), 5);
        same_link(&midline_to_diagram(&m), &d);
    }

    #[test]
    fn path_graph_lays_out_in_order() {
        let g = SignedMidlineGraph::new(
            4,
            vec![arc(0, 1, 1, true), arc(1, 2, -1, false), arc(2, 3, 1, true)],
        )
        .unwrap();
        let m = linearize(&extract_signed_graph(&midline_to_diagram(&g)).unwrap()).unwrap();
        assert_eq!(m, g);
    }

    #[test]
    fn leaves_can_be_deleted() {
        let g = SignedMidlineGraph::new(
            3,
            vec![arc(0, 1, 1, true), arc(0, 1, -1, false), arc(1, 2, 1, true)],
        )
        .unwrap();
        let h = g.delete_leaf(2).unwrap();
        assert_eq!(h.vertex_count(), 2);
        same_link(&midline_to_diagram(&g), &midline_to_diagram(&h));
        assert!(g.delete_leaf(1).is_none());
    }

    #[test]
    fn json_shape() {
        let g = SignedMidlineGraph::new(2, vec![arc(0, 1, 1, true), arc(0, 1, -1, false)]).unwrap();
        let j = serde_json::to_string(&g).unwrap();
        assert_eq!(
            j,
            r#"{"vertices":2,"arcs":[[0,1,"+","above"],[0,1,"-","below"]]}"#
        );
        let back: SignedMidlineGraph = serde_json::from_str(&j).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<SignedMidlineGraph>(
            r#"{"vertices":4,"arcs":[[0,2,"+","above"],[1,3,"+","above"]]}"#
        )
        .is_err());
    }
}
