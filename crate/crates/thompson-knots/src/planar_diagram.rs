//! Link and tangle diagrams as PD codes, and the tangle algebra used to
//! build Conway tangles.
//!
//! A crossing is a 4-tuple of edge ids listed counterclockwise, starting at an
//! end of the under-strand: positions 0 and 2 carry the under-strand,
//! positions 1 and 3 the over-strand.  A closed diagram uses every edge id
//! exactly twice; crossing-free circles are counted separately in `loops`.
//!
//! A tangle additionally exposes four boundary ends `N, E, S, W`.  Walking
//! counterclockwise around the tangle disk meets them in the order
//! `N, W, S, E`.  Tangles are pictured in a frame turned by 45°, so `N` and
//! `W` sit on the upper-left side of the disk and `S` and `E` on the
//! lower-right side.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conway_notation::ConwayExpr;

/// Errors raised by diagram traversals.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("diagram is disconnected ({0} pieces); process each piece separately")]
    Disconnected(usize),
    #[error("edge {edge} occurs {count} times; every edge must occur exactly twice")]
    BadEdge { edge: u32, count: usize },
}

/// The corners `(crossing, quadrant)` around one face.
pub(crate) type Face = Vec<(usize, usize)>;

/// A closed link diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanarDiagram {
    pub crossings: Vec<[u32; 4]>,
    #[serde(default)]
    pub loops: usize,
}

/// Boundary labels of a tangle, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    N = 0,
    E = 1,
    S = 2,
    W = 3,
}

/// A 4-ended tangle diagram.
///
/// `boundary[End::N as usize]` is the edge leaving the disk at `N`, and so on.
/// An edge running straight from one boundary point to another (as in the
/// crossing-free tangles) appears twice in `boundary` and not in `crossings`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "TangleJson", try_from = "TangleJson")]
pub struct TangleDiagram {
    pub crossings: Vec<[u32; 4]>,
    pub boundary: [u32; 4],
    pub loops: usize,
}

#[derive(Serialize, Deserialize)]
struct TangleJson {
    crossings: Vec<[u32; 4]>,
    #[serde(default)]
    loops: usize,
    boundary: BoundaryJson,
}

#[derive(Serialize, Deserialize)]
#[allow(non_snake_case)]
struct BoundaryJson {
    N: u32,
    E: u32,
    S: u32,
    W: u32,
}

impl From<TangleDiagram> for TangleJson {
    fn from(t: TangleDiagram) -> Self {
        let [n, e, s, w] = t.boundary;
        TangleJson {
            crossings: t.crossings,
            loops: t.loops,
            boundary: BoundaryJson {
                N: n,
                E: e,
                S: s,
                W: w,
            },
        }
    }
}

impl TryFrom<TangleJson> for TangleDiagram {
    type Error = DiagramError;
    fn try_from(j: TangleJson) -> Result<Self, Self::Error> {
        let t = TangleDiagram {
            crossings: j.crossings,
            boundary: [j.boundary.N, j.boundary.E, j.boundary.S, j.boundary.W],
            loops: j.loops,
        };
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for &e in t.crossings.iter().flatten().chain(t.boundary.iter()) {
            *counts.entry(e).or_default() += 1;
        }
        if let Some((&edge, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(DiagramError::BadEdge { edge, count });
        }
        Ok(t)
    }
}

/// Starts a crossing tuple at the under-strand end with the smaller id.
pub(crate) fn canonical_tuple(t: [u32; 4]) -> [u32; 4] {
    if t[2] < t[0] {
        [t[2], t[3], t[0], t[1]]
    } else {
        t
    }
}

/// Scratch space for wiring diagrams together.
///
/// Edge ids are handed out by [`Wiring::fresh`]; [`Wiring::join`] declares
/// that two ids are the same edge.  [`Wiring::finish`] merges joined ids,
/// turns fully joined cycles into free loops, and relabels densely.
#[derive(Debug, Default)]
pub(crate) struct Wiring {
    crossings: Vec<[usize; 4]>,
    joins: Vec<(usize, usize)>,
    next: usize,
    pub(crate) loops: usize,
}

impl Wiring {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    pub(crate) fn crossing(&mut self, t: [usize; 4]) {
        self.crossings.push(t);
    }

    pub(crate) fn join(&mut self, a: usize, b: usize) {
        self.joins.push((a, b));
    }

    /// Copies a tangle in, returning the ids of its boundary ends.
    pub(crate) fn add_tangle(&mut self, t: &TangleDiagram) -> [usize; 4] {
        let max = t
            .crossings
            .iter()
            .flatten()
            .chain(t.boundary.iter())
            .copied()
            .max()
            .unwrap_or(0) as usize;
        let base = self.next;
        self.next += max + 1;
        for c in &t.crossings {
            self.crossings.push(c.map(|e| base + e as usize));
        }
        self.loops += t.loops;
        t.boundary.map(|e| base + e as usize)
    }

    /// Merges joined ids and relabels edges `1..=E` by first appearance,
    /// crossings first and then `open` ends.  Returns the crossings, the new
    /// ids of `open`, and the loop count.
    pub(crate) fn finish(self, open: &[usize]) -> (Vec<[u32; 4]>, Vec<u32>, usize) {
        let (crossings, open, loops, _) = self.finish_detailed(open);
        (crossings, open, loops)
    }

    /// [`Wiring::finish`], also reporting which crossings had their tuple
    /// rotated by two positions to start at the smaller under-strand id.
    pub(crate) fn finish_detailed(
        self,
        open: &[usize],
    ) -> (Vec<[u32; 4]>, Vec<u32>, usize, Vec<bool>) {
        let mut uf = UnionFind::<usize>::new(self.next.max(1));
        for &(a, b) in &self.joins {
            uf.union(a, b);
        }
        let mut used = vec![false; self.next];
        let mut touched = vec![false; self.next];
        for &e in self.crossings.iter().flatten().chain(open.iter()) {
            used[uf.find(e)] = true;
            touched[e] = true;
        }
        for &(a, b) in &self.joins {
            touched[a] = true;
            touched[b] = true;
        }
        // Every class of ids that never reaches a crossing slot or an open end
        // is a closed crossing-free circle.
        let mut seen = vec![false; self.next];
        let mut loops = self.loops;
        for id in (0..self.next).filter(|&id| touched[id]) {
            let r = uf.find(id);
            if !seen[r] {
                seen[r] = true;
                if !used[r] {
                    loops += 1;
                }
            }
        }
        let mut label: HashMap<usize, u32> = HashMap::new();
        let mut relabel = |e: usize| {
            let r = uf.find(e);
            let n = label.len() as u32 + 1;
            *label.entry(r).or_insert(n)
        };
        let raw: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.map(&mut relabel)).collect();
        let open = open.iter().map(|&e| relabel(e)).collect();
        let rotated = raw.iter().map(|t| t[2] < t[0]).collect();
        let crossings = raw.into_iter().map(canonical_tuple).collect();
        (crossings, open, loops, rotated)
    }
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        PlanarDiagram {
            crossings: vec![],
            loops: 1,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Checks that every edge id occurs exactly twice.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for &e in self.crossings.iter().flatten() {
            *counts.entry(e).or_default() += 1;
        }
        let mut bad: Vec<_> = counts.into_iter().filter(|&(_, c)| c != 2).collect();
        bad.sort();
        match bad.first() {
            Some(&(edge, count)) => Err(DiagramError::BadEdge { edge, count }),
            None => Ok(()),
        }
    }

    /// Re-wires through [`Wiring`] to get dense ids and canonical tuples.
    pub fn canonical(&self) -> Self {
        let mut w = Wiring::new();
        let max = self.crossings.iter().flatten().copied().max().unwrap_or(0) as usize;
        w.next = max + 1;
        for c in &self.crossings {
            w.crossing(c.map(|e| e as usize));
        }
        let (crossings, _, loops) = w.finish(&[]);
        PlanarDiagram {
            crossings,
            loops: loops + self.loops,
        }
    }

    /// The two crossing slots of every edge.
    fn slots(&self) -> HashMap<u32, Vec<(usize, usize)>> {
        let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (c, t) in self.crossings.iter().enumerate() {
            for (i, &e) in t.iter().enumerate() {
                occ.entry(e).or_default().push((c, i));
            }
        }
        occ
    }

    /// For each slot `(c, i)`, the slot at the other end of its edge.
    pub(crate) fn partner_slots(&self) -> Vec<[(usize, usize); 4]> {
        let occ = self.slots();
        self.crossings
            .iter()
            .enumerate()
            .map(|(c, t)| {
                let mut row = [(0, 0); 4];
                for i in 0..4 {
                    let o = &occ[&t[i]];
                    row[i] = if o[0] == (c, i) { o[1] } else { o[0] };
                }
                row
            })
            .collect()
    }

    /// Faces as cycles of corners.  Corner `(c, i)` is the region between
    /// slot `i` and slot `i + 1` (counterclockwise) at crossing `c`.
    ///
    /// Requires a connected diagram; Euler's formula `V − E + F = 2` then
    /// holds for planar rotation systems.
    pub fn faces(&self) -> Result<Vec<Vec<(usize, usize)>>, DiagramError> {
        let pieces = self.piece_count();
        if pieces > 1 {
            return Err(DiagramError::Disconnected(pieces));
        }
        if self.crossings.is_empty() {
            // A single circle bounds two discs, neither with a corner.
            return Ok(vec![vec![], vec![]]);
        }
        Ok(self.corner_faces().1)
    }

    /// The face id of every corner, plus the faces themselves.
    pub(crate) fn corner_faces(&self) -> (Vec<[usize; 4]>, Vec<Face>) {
        let partner = self.partner_slots();
        let mut face_of = vec![[usize::MAX; 4]; self.crossings.len()];
        let mut faces = Vec::new();
        for c in 0..self.crossings.len() {
            for i in 0..4 {
                if face_of[c][i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut cycle = Vec::new();
                let (mut cc, mut ci) = (c, i);
                while face_of[cc][ci] == usize::MAX {
                    face_of[cc][ci] = id;
                    cycle.push((cc, ci));
                    (cc, ci) = partner[cc][(ci + 1) % 4];
                }
                faces.push(cycle);
            }
        }
        (face_of, faces)
    }

    /// Connected pieces of the underlying 4-valent graph, free loops
    /// included.
    pub fn piece_count(&self) -> usize {
        if self.crossings.is_empty() {
            return self.loops;
        }
        let mut uf = UnionFind::<usize>::new(self.crossings.len());
        for (c, row) in self.partner_slots().iter().enumerate() {
            for &(d, _) in row {
                uf.union(c, d);
            }
        }
        let roots: std::collections::BTreeSet<usize> =
            (0..self.crossings.len()).map(|c| uf.find(c)).collect();
        roots.len() + self.loops
    }

    /// `V − E + F` for a connected diagram.
    pub fn euler_characteristic(&self) -> Result<i64, DiagramError> {
        let f = self.faces()?.len() as i64;
        let v = self.crossings.len() as i64;
        let e = if v == 0 { 0 } else { 2 * v };
        Ok(v - e + f)
    }

    /// Number of link components.
    pub fn components(&self) -> usize {
        self.strands().len() + self.loops
    }

    /// The components that pass through crossings, each as a cyclic list of
    /// slots `(crossing, position)` at which the component enters a crossing.
    /// Each component is traversed in the direction that leaves its first
    /// slot through the opposite position.
    pub(crate) fn strands(&self) -> Vec<Vec<(usize, usize)>> {
        let partner = self.partner_slots();
        let mut seen = vec![[false; 4]; self.crossings.len()];
        let mut out = Vec::new();
        for c in 0..self.crossings.len() {
            for i in 0..4 {
                if seen[c][i] {
                    continue;
                }
                let mut comp = Vec::new();
                let (mut cc, mut ci) = (c, i);
                while !seen[cc][ci] {
                    seen[cc][ci] = true;
                    comp.push((cc, ci));
                    let exit = (ci + 2) % 4;
                    seen[cc][exit] = true;
                    (cc, ci) = partner[cc][exit];
                }
                out.push(comp);
            }
        }
        out
    }

    /// Reflection of the picture across a line in the plane.  Over/under
    /// information is kept; as a link this is the mirror image.
    pub fn reflect(&self) -> Self {
        PlanarDiagram {
            crossings: self
                .crossings
                .iter()
                .map(|&[a, b, c, d]| [a, d, c, b])
                .collect(),
            loops: self.loops,
        }
    }

    /// Changes every crossing.  As a link this is the mirror image.
    pub fn mirror(&self) -> Self {
        PlanarDiagram {
            crossings: self
                .crossings
                .iter()
                .map(|&[a, b, c, d]| [b, c, d, a])
                .collect(),
            loops: self.loops,
        }
        .canonical()
    }

    /// Gauss code text: one line per component, entries `O<k>`/`U<k>` with a
    /// sign suffix, crossing labels `k` counted from 1.
    pub fn gauss_code(&self) -> String {
        let signs = crate::invariants::crossing_signs(self, &vec![false; self.strands().len()]);
        let mut lines = Vec::new();
        for comp in self.strands() {
            let parts: Vec<String> = comp
                .iter()
                .map(|&(c, i)| {
                    let kind = if i % 2 == 0 { 'U' } else { 'O' };
                    let s = if signs[c] > 0 { '+' } else { '-' };
                    format!("{kind}{}{s}", c + 1)
                })
                .collect();
            lines.push(parts.join(","));
        }
        for _ in 0..self.loops {
            lines.push(String::new());
        }
        lines.join("\n")
    }
}

impl TangleDiagram {
    pub fn end(&self, e: End) -> u32 {
        self.boundary[e as usize]
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Builds a tangle from wiring, with `open` listed as `[N, E, S, W]`.
    pub(crate) fn from_wiring(w: Wiring, open: [usize; 4]) -> Self {
        let (crossings, ends, loops) = w.finish(&open);
        TangleDiagram {
            crossings,
            boundary: [ends[0], ends[1], ends[2], ends[3]],
            loops,
        }
    }

    /// The n-crossing tangle: two strands starting at `N` and `W`, twisted
    /// `|n|` times along the `NW–SE` diagonal.  For `n > 0` the horizontal
    /// strand passes over the vertical one at every crossing; for `n < 0`
    /// under.  For `n = 0` the strands run `N–E` and `W–S` without crossing.
    pub fn from_integer(n: i64) -> Self {
        let mut w = Wiring::new();
        if n == 0 {
            let a = w.fresh();
            let b = w.fresh();
            return Self::from_wiring(w, [a, a, b, b]);
        }
        let k = n.unsigned_abs() as usize;
        // Arms of crossing j, by compass direction.
        let arms: Vec<[usize; 4]> = (0..k)
            .map(|_| [w.fresh(), w.fresh(), w.fresh(), w.fresh()])
            .collect();
        for [nn, e, s, ww] in &arms {
            let (nn, e, s, ww) = (*nn, *e, *s, *ww);
            // Counterclockwise order is N, W, S, E.
            if n > 0 {
                w.crossing([nn, ww, s, e]);
            } else {
                w.crossing([ww, s, e, nn]);
            }
        }
        for j in 0..k - 1 {
            w.join(arms[j][1], arms[j + 1][0]);
            w.join(arms[j][2], arms[j + 1][3]);
        }
        Self::from_wiring(w, [arms[0][0], arms[k - 1][1], arms[k - 1][2], arms[0][3]])
    }

    /// Reflection across the horizontal axis: `N` and `S` trade places,
    /// over/under is kept.
    pub fn reflect(&self) -> Self {
        let [n, e, s, w] = self.boundary;
        TangleDiagram {
            crossings: self
                .crossings
                .iter()
                .map(|&[a, b, c, d]| [a, d, c, b])
                .collect(),
            boundary: [s, e, n, w],
            loops: self.loops,
        }
    }

    /// Reflection across the vertical axis: `E` and `W` trade places.
    pub fn reflect_vertical(&self) -> Self {
        let [n, e, s, w] = self.boundary;
        TangleDiagram {
            crossings: self
                .crossings
                .iter()
                .map(|&[a, b, c, d]| [a, d, c, b])
                .collect(),
            boundary: [n, w, s, e],
            loops: self.loops,
        }
    }

    /// Changes every crossing, keeping the boundary.
    pub fn mirror(&self) -> Self {
        TangleDiagram {
            crossings: self
                .crossings
                .iter()
                .map(|&[a, b, c, d]| canonical_tuple([b, c, d, a]))
                .collect(),
            boundary: self.boundary,
            loops: self.loops,
        }
    }

    /// The common wiring pattern of the three products: `x` sits on the
    /// lower right, `y` on the upper left, `x.N` joins `y.E` and `x.W` joins
    /// `y.S`; the result exposes `y.N, x.E, x.S, y.W`.
    pub fn diagonal(x: &TangleDiagram, y: &TangleDiagram) -> Self {
        Self::diagonal_chain(&[x, y])
    }

    /// [`TangleDiagram::diagonal`] iterated along a chain, from the lower
    /// right to the upper left.
    pub fn diagonal_chain(parts: &[&TangleDiagram]) -> Self {
        assert!(!parts.is_empty());
        let mut w = Wiring::new();
        let ends: Vec<[usize; 4]> = parts.iter().map(|t| w.add_tangle(t)).collect();
        for pair in ends.windows(2) {
            let (x, y) = (pair[0], pair[1]);
            w.join(x[End::N as usize], y[End::E as usize]);
            w.join(x[End::W as usize], y[End::S as usize]);
        }
        let first = ends[0];
        let last = ends[ends.len() - 1];
        Self::from_wiring(
            w,
            [
                last[End::N as usize],
                first[End::E as usize],
                first[End::S as usize],
                last[End::W as usize],
            ],
        )
    }

    /// `F · G`: the reflected `F` below and to the right of `G`.
    pub fn multiply(f: &TangleDiagram, g: &TangleDiagram) -> Self {
        Self::diagonal(&f.reflect(), g)
    }

    /// `F + G`: `G` below and to the right of `F`, neither reflected.
    pub fn add(f: &TangleDiagram, g: &TangleDiagram) -> Self {
        Self::diagonal(g, f)
    }

    /// `F, G`: both tangles reflected, `F` below and to the right of `G`.
    pub fn concat(f: &TangleDiagram, g: &TangleDiagram) -> Self {
        Self::concat_all(&[f, g])
    }

    /// The comma-separated list `F₁, F₂, …, Fₖ`: every entry reflected and
    /// the entries chained from the lower right (`F₁`) to the upper left.
    pub fn concat_all(parts: &[&TangleDiagram]) -> Self {
        let reflected: Vec<TangleDiagram> = parts.iter().map(|t| t.reflect()).collect();
        let refs: Vec<&TangleDiagram> = reflected.iter().collect();
        Self::diagonal_chain(&refs)
    }

    /// Joins `N` to `E` and `S` to `W` outside the disk.
    pub fn closure(&self) -> PlanarDiagram {
        let mut w = Wiring::new();
        let ends = w.add_tangle(self);
        w.join(ends[End::N as usize], ends[End::E as usize]);
        w.join(ends[End::S as usize], ends[End::W as usize]);
        let (crossings, _, loops) = w.finish(&[]);
        PlanarDiagram { crossings, loops }
    }
}

/// Alias for [`TangleDiagram::from_integer`].
pub fn tangle_from_integer(n: i64) -> TangleDiagram {
    TangleDiagram::from_integer(n)
}

/// The result of building a Conway expression: a tangle, or a closed diagram
/// when the expression is a closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Built {
    Tangle(TangleDiagram),
    Closed(PlanarDiagram),
}

impl Built {
    pub fn into_closed(self) -> PlanarDiagram {
        match self {
            Built::Closed(d) => d,
            Built::Tangle(t) => t.closure(),
        }
    }
}

/// Builds the diagram of a Conway expression by direct wiring.
pub fn build_conway(e: &ConwayExpr) -> Built {
    match e {
        ConwayExpr::Closure(inner) => Built::Closed(build_tangle(inner).closure()),
        other => Built::Tangle(build_tangle(other)),
    }
}

fn build_tangle(e: &ConwayExpr) -> TangleDiagram {
    match e {
        ConwayExpr::Int(n) => TangleDiagram::from_integer(*n),
        ConwayExpr::Product(a, b) => TangleDiagram::multiply(&build_tangle(a), &build_tangle(b)),
        ConwayExpr::Sum(a, b) => TangleDiagram::add(&build_tangle(a), &build_tangle(b)),
        ConwayExpr::Concat(items) => {
            let parts: Vec<TangleDiagram> = items.iter().map(build_tangle).collect();
            let refs: Vec<&TangleDiagram> = parts.iter().collect();
            TangleDiagram::concat_all(&refs)
        }
        // A closure below the root is closed and then ignored as a tangle is
        // not meaningful; the parser never produces one.
        ConwayExpr::Closure(inner) => build_tangle(inner),
    }
}
