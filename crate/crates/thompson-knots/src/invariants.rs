//! Exact link invariants: the Kauffman bracket, the writhe-normalised Jones
//! polynomial (in the variable `A`), and the determinant via the Goeritz
//! matrix of a checkerboard shading.
//!
//! Two bracket implementations are provided.  [`kauffman_bracket`] contracts
//! the diagram one crossing at a time, keeping a table indexed by how the
//! loose ends on the current frontier are paired up; its cost depends on the
//! frontier width rather than on `2^c`.  [`state_sum_bracket`] enumerates all
//! `2^c` smoothings and serves as a small-diagram oracle for the first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::planar_diagram::{DiagramError, PlanarDiagram};

/// Errors raised while computing invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{crossings} crossings exceeds the state-sum bound of {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("bracket coefficients overflow 128-bit arithmetic on a {crossings}-crossing diagram")]
    CoefficientOverflow { crossings: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A Laurent polynomial in `A` with integer coefficients.  Zero
/// coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff · A^exp`.
    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// The loop value `δ = −A² − A⁻²`.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coefficient(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Substitutes `A ↦ A⁻¹`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `A = ζ₈ = e^{iπ/4}` for polynomials with only even
    /// exponents (then `A² = i`); `None` if an odd exponent occurs.
    pub fn eval_at_zeta8(&self) -> Option<Complex<i64>> {
        let mut z = Complex::new(0, 0);
        for (e, c) in self.terms() {
            if e % 2 != 0 {
                return None;
            }
            let unit = match (e / 2).rem_euclid(4) {
                0 => Complex::new(1, 0),
                1 => Complex::new(0, 1),
                2 => Complex::new(-1, 0),
                _ => Complex::new(0, -1),
            };
            z += unit * c;
        }
        Some(z)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            let sep = if i > 0 { " " } else { "" };
            let sp = if i > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{sp}")?;
            match (*e, mag) {
                (0, m) => write!(f, "{m}")?,
                (e, 1) => write!(f, "A^{e}")?,
                (e, m) => write!(f, "{m}A^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let inner: BTreeMap<String, i64> = self
            .terms
            .iter()
            .map(|(e, c)| (e.to_string(), *c))
            .collect();
        let mut outer = BTreeMap::new();
        outer.insert("A", inner);
        outer.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let outer: BTreeMap<String, BTreeMap<String, i64>> = BTreeMap::deserialize(d)?;
        let inner = outer.get("A").ok_or_else(|| D::Error::missing_field("A"))?;
        let mut p = LaurentPoly::zero();
        for (k, &c) in inner {
            let e: i32 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent {k:?}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// Bound for the exhaustive state sum.
pub const STATE_SUM_LIMIT: usize = 28;

/// Joins of the two smoothings of crossing `(a, b, c, d)`: the A-smoothing
/// pairs `a` with `b` and `c` with `d`; the B-smoothing pairs `a` with `d`
/// and `b` with `c`.
fn smoothing(t: &[u32; 4], a_side: bool) -> [(u32, u32); 2] {
    let [a, b, c, d] = *t;
    if a_side {
        [(a, b), (c, d)]
    } else {
        [(a, d), (b, c)]
    }
}

/// The bracket by explicit enumeration of all `2^c` states.  Normalised so
/// the crossing-free circle has bracket 1.
pub fn state_sum_bracket(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    let n = d.crossings.len();
    if n > STATE_SUM_LIMIT {
        return Err(InvariantError::TooManyCrossings {
            crossings: n,
            limit: STATE_SUM_LIMIT,
        });
    }
    if n == 0 {
        return Ok(LaurentPoly::delta().pow(d.loops.saturating_sub(1) as u32));
    }
    let mut ids: Vec<u32> = d.crossings.iter().flatten().copied().collect();
    ids.sort();
    ids.dedup();
    let index: HashMap<u32, usize> = ids.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let delta = LaurentPoly::delta();
    let mut by_loops: BTreeMap<(usize, i32), i64> = BTreeMap::new();
    for state in 0u64..(1u64 << n) {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(ids.len());
        let mut a_count = 0i32;
        for (k, t) in d.crossings.iter().enumerate() {
            let a_side = state >> k & 1 == 0;
            a_count += if a_side { 1 } else { -1 };
            for (x, y) in smoothing(t, a_side) {
                uf.union(index[&x], index[&y]);
            }
        }
        let mut roots: Vec<usize> = (0..ids.len()).map(|i| uf.find(i)).collect();
        roots.sort();
        roots.dedup();
        *by_loops
            .entry((roots.len() + d.loops, a_count))
            .or_default() += 1;
    }
    let mut total = LaurentPoly::zero();
    for ((loops, exp), count) in by_loops {
        total = &total + &(&LaurentPoly::monomial(count, exp) * &delta.pow(loops as u32 - 1));
    }
    Ok(total)
}

/// Pairing of loose ends on the contraction frontier: sorted `(x, y)` with
/// `x < y`, meaning the open ends of edges `x` and `y` are joined by an arc
/// of the partial smoothing.  A self-pair `(x, x)` never occurs.
type Frontier = Vec<(u32, u32)>;

/// Adds the arc `x–y` to a pairing.  Returns `true` if it closed a circle.
fn add_arc(partner: &mut HashMap<u32, u32>, x: u32, y: u32) -> bool {
    if x == y {
        // Both ends of one edge meet at this crossing and the smoothing
        // connects them: a closed circle.
        return true;
    }
    match (partner.remove(&x), partner.remove(&y)) {
        (Some(px), Some(py)) => {
            if px == y {
                return true;
            }
            partner.insert(px, py);
            partner.insert(py, px);
        }
        (Some(px), None) => {
            partner.insert(px, y);
            partner.insert(y, px);
        }
        (None, Some(py)) => {
            partner.insert(py, x);
            partner.insert(x, py);
        }
        (None, None) => {
            partner.insert(x, y);
            partner.insert(y, x);
        }
    }
    false
}

/// Greedy contraction order: repeatedly take the crossing sharing the most
/// edges with those already taken.
fn contraction_order(d: &PlanarDiagram) -> Vec<usize> {
    let n = d.crossings.len();
    let mut done = vec![false; n];
    let mut seen_edges: HashMap<u32, usize> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&c| !done[c])
            .max_by_key(|&c| {
                let shared = d.crossings[c]
                    .iter()
                    .filter(|e| seen_edges.contains_key(e))
                    .count();
                (shared, std::cmp::Reverse(c))
            })
            .expect("a remaining crossing");
        done[best] = true;
        order.push(best);
        for &e in &d.crossings[best] {
            *seen_edges.entry(e).or_default() += 1;
        }
    }
    order
}

/// The Kauffman bracket, normalised so the crossing-free circle has
/// bracket 1.
///
/// ```
/// use thompson_knots::conway_notation::parse_conway;
/// use thompson_knots::invariants::{kauffman_bracket, LaurentPoly};
/// use thompson_knots::planar_diagram::build_conway;
/// let hopf = build_conway(&parse_conway("[1+1]").unwrap()).into_closed();
/// let b = kauffman_bracket(&hopf).unwrap();
/// assert!(b == LaurentPoly::from_terms([(4, -1), (-4, -1)]) || b == LaurentPoly::from_terms([(4, -1), (-4, -1)]).invert_variable());
/// ```
pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<LaurentPoly, InvariantError> {
    d.validate()?;
    let overflow = InvariantError::CoefficientOverflow {
        crossings: d.crossings.len(),
    };
    let delta = WidePoly::from_poly(&LaurentPoly::delta());
    // Key: frontier pairing and whether any circle has been closed yet (the
    // first circle is free, every further one costs a factor δ).
    let start_closed = d.loops > 0;
    let mut start = WidePoly::from_poly(&LaurentPoly::one());
    for _ in 1..d.loops {
        start = start.mul(&delta).ok_or_else(|| overflow.clone())?;
    }
    let mut table: HashMap<(Frontier, bool), WidePoly> = HashMap::new();
    table.insert((Vec::new(), start_closed), start);
    for c in contraction_order(d) {
        let t = &d.crossings[c];
        let mut next: HashMap<(Frontier, bool), WidePoly> = HashMap::new();
        for ((frontier, closed), poly) in &table {
            for a_side in [true, false] {
                let mut partner: HashMap<u32, u32> = HashMap::with_capacity(frontier.len() * 2 + 4);
                for &(x, y) in frontier {
                    partner.insert(x, y);
                    partner.insert(y, x);
                }
                let mut circles = 0u32;
                for (x, y) in smoothing(t, a_side) {
                    if add_arc(&mut partner, x, y) {
                        circles += 1;
                    }
                }
                let mut closed = *closed;
                if circles > 0 && !closed {
                    closed = true;
                    circles -= 1;
                }
                let mut key: Frontier = partner
                    .iter()
                    .filter(|(x, y)| x < y)
                    .map(|(&x, &y)| (x, y))
                    .collect();
                key.sort_unstable();
                let mut term = poly.shift(if a_side { 1 } else { -1 });
                for _ in 0..circles {
                    term = term.mul(&delta).ok_or_else(|| overflow.clone())?;
                }
                let slot = next.entry((key, closed)).or_default();
                slot.add_assign(&term).ok_or_else(|| overflow.clone())?;
            }
        }
        next.retain(|_, p| !p.0.is_empty());
        table = next;
    }
    let mut total = WidePoly::default();
    for ((frontier, _), poly) in table {
        debug_assert!(frontier.is_empty());
        total.add_assign(&poly).ok_or_else(|| overflow.clone())?;
    }
    total.narrow().ok_or(overflow)
}

/// Working polynomial of the bracket recursion.  Partial sums over states
/// grow far beyond the final coefficients, so they are kept in 128 bits and
/// every operation is checked.
#[derive(Debug, Clone, Default)]
struct WidePoly(BTreeMap<i32, i128>);

impl WidePoly {
    fn from_poly(p: &LaurentPoly) -> Self {
        WidePoly(p.terms().map(|(e, c)| (e, i128::from(c))).collect())
    }

    fn shift(&self, k: i32) -> Self {
        WidePoly(self.0.iter().map(|(&e, &c)| (e + k, c)).collect())
    }

    fn add_term(&mut self, exp: i32, coeff: i128) -> Option<()> {
        let slot = self.0.entry(exp).or_insert(0);
        *slot = slot.checked_add(coeff)?;
        if *slot == 0 {
            self.0.remove(&exp);
        }
        Some(())
    }

    fn add_assign(&mut self, rhs: &WidePoly) -> Option<()> {
        for (&e, &c) in &rhs.0 {
            self.add_term(e, c)?;
        }
        Some(())
    }

    fn mul(&self, rhs: &WidePoly) -> Option<WidePoly> {
        let mut out = WidePoly::default();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &rhs.0 {
                out.add_term(e1 + e2, c1.checked_mul(c2)?)?;
            }
        }
        Some(out)
    }

    fn narrow(&self) -> Option<LaurentPoly> {
        let terms: Option<Vec<(i32, i64)>> = self
            .0
            .iter()
            .map(|(&e, &c)| i64::try_from(c).ok().map(|c| (e, c)))
            .collect();
        terms.map(LaurentPoly::from_terms)
    }
}

/// Crossing signs (+1 or −1) when the `k`-th traversed component is
/// reversed iff `flips[k]`; components are numbered as in the diagram's
/// strand traversal.
pub(crate) fn crossing_signs(d: &PlanarDiagram, flips: &[bool]) -> Vec<i32> {
    let mut under_up = vec![0i32; d.crossings.len()];
    let mut over_right = vec![0i32; d.crossings.len()];
    for (k, comp) in d.strands().iter().enumerate() {
        let f = if flips.get(k).copied().unwrap_or(false) {
            -1
        } else {
            1
        };
        for &(c, i) in comp {
            match i {
                0 => under_up[c] = f,
                2 => under_up[c] = -f,
                3 => over_right[c] = f,
                _ => over_right[c] = -f,
            }
        }
    }
    under_up
        .iter()
        .zip(&over_right)
        .map(|(u, o)| u * o)
        .collect()
}

/// Writhe under an orientation choice: `orientations[k] == true` reverses
/// the `k`-th component of the strand traversal.
pub fn writhe(d: &PlanarDiagram, orientations: &[bool]) -> i32 {
    crossing_signs(d, orientations).iter().sum()
}

/// Number of components that pass through a crossing.
pub fn strand_count(d: &PlanarDiagram) -> usize {
    d.strands().len()
}

/// `(−A)^(−3w) · ⟨d⟩` over all relative orientations, as a sorted set.
/// A knot gives a single polynomial.
pub fn jones_set(d: &PlanarDiagram) -> Result<Vec<LaurentPoly>, InvariantError> {
    let bracket = kauffman_bracket(d)?;
    let k = strand_count(d);
    let mut out = Vec::new();
    let classes = if k == 0 { 1 } else { 1u64 << (k - 1) };
    for mask in 0..classes {
        let flips: Vec<bool> = (0..k).map(|i| i > 0 && mask >> (i - 1) & 1 == 1).collect();
        let w = writhe(d, &flips);
        let unit = LaurentPoly::monomial(if w % 2 == 0 { 1 } else { -1 }, -3 * w);
        out.push(&unit * &bracket);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Checkerboard shading of a connected diagram with the exterior unshaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoeritzData {
    /// Colour of every face; `true` means shaded.
    pub shaded: Vec<bool>,
    /// The unshaded faces, exterior first; `matrix` is indexed by this list.
    pub unshaded_faces: Vec<usize>,
    /// Face id of every corner `(crossing, quadrant)`.
    pub face_of: Vec<[usize; 4]>,
    /// Symmetric Goeritz matrix over `unshaded_faces` (rows sum to zero).
    pub matrix: Vec<Vec<i64>>,
    /// For each crossing: the two unshaded faces (as indices into
    /// `unshaded_faces`) and the crossing's sign.
    pub edges: Vec<(usize, usize, i32)>,
}

/// Shades the faces and builds the Goeritz matrix.
///
/// The exterior is the face at quadrant 0 of crossing 0.  A crossing is
/// positive when the unshaded quadrants are the one between positions 0, 1
/// and the one between positions 2, 3.
pub fn goeritz(d: &PlanarDiagram) -> Result<GoeritzData, InvariantError> {
    d.validate()?;
    let pieces = d.piece_count();
    if pieces > 1 {
        return Err(DiagramError::Disconnected(pieces).into());
    }
    let (face_of, faces) = d.corner_faces();
    let mut colour: Vec<Option<bool>> = vec![None; faces.len()];
    if !faces.is_empty() {
        colour[face_of[0][0]] = Some(false);
        // Adjacent quadrants at a crossing alternate colours; propagate
        // until every face is coloured.
        let mut changed = true;
        while changed {
            changed = false;
            for row in &face_of {
                for i in 0..4 {
                    if let Some(col) = colour[row[i]] {
                        let nb = row[(i + 1) % 4];
                        if colour[nb].is_none() {
                            colour[nb] = Some(!col);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    let shaded: Vec<bool> = colour
        .iter()
        .map(|c| c.expect("connected diagram"))
        .collect();
    let mut unshaded_faces: Vec<usize> = Vec::new();
    if !faces.is_empty() {
        unshaded_faces.push(face_of[0][0]);
    }
    for (f, &is_shaded) in shaded.iter().enumerate() {
        if !is_shaded && !unshaded_faces.contains(&f) {
            unshaded_faces.push(f);
        }
    }
    let index: HashMap<usize, usize> = unshaded_faces
        .iter()
        .enumerate()
        .map(|(i, &f)| (f, i))
        .collect();
    let m = unshaded_faces.len().max(1);
    let mut matrix = vec![vec![0i64; m]; m];
    let mut edges = Vec::with_capacity(d.crossings.len());
    for row in &face_of {
        let (q, sign) = if shaded[row[0]] { (1, -1) } else { (0, 1) };
        let (u, v) = (index[&row[q]], index[&row[q + 2]]);
        edges.push((u, v, sign));
        if u != v {
            matrix[u][v] -= sign as i64;
            matrix[v][u] -= sign as i64;
            matrix[u][u] += sign as i64;
            matrix[v][v] += sign as i64;
        }
    }
    Ok(GoeritzData {
        shaded,
        unshaded_faces,
        face_of,
        matrix,
        edges,
    })
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn integer_determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// The link determinant: `|det|` of the Goeritz matrix with the exterior
/// row and column removed.
pub fn goeritz_determinant(d: &PlanarDiagram) -> Result<u64, InvariantError> {
    if d.crossings.is_empty() {
        let pieces = d.piece_count();
        if pieces > 1 {
            return Err(DiagramError::Disconnected(pieces).into());
        }
        return Ok(1);
    }
    let g = goeritz(d)?;
    let minor: Vec<Vec<i64>> = g.matrix[1..].iter().map(|r| r[1..].to_vec()).collect();
    Ok(integer_determinant(&minor).unsigned_abs() as u64)
}

/// `|V(−1)|²` computed from a Jones polynomial in `A` at `A = ζ₈`.
pub fn jones_at_minus_one_norm(v: &LaurentPoly) -> Option<i64> {
    v.eval_at_zeta8().map(|z| z.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(c: &[[u32; 4]]) -> PlanarDiagram {
        PlanarDiagram {
            crossings: c.to_vec(),
            loops: 0,
        }
    }

    fn trefoil() -> PlanarDiagram {
        pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])
    }

    fn hopf() -> PlanarDiagram {
        pd(&[[4, 1, 3, 2], [2, 3, 1, 4]])
    }

    #[test]
    fn hand_enumerated_brackets() {
        assert_eq!(
            kauffman_bracket(&PlanarDiagram::unknot()).unwrap(),
            LaurentPoly::one()
        );
        let h = LaurentPoly::from_terms([(4, -1), (-4, -1)]);
        assert_eq!(kauffman_bracket(&hopf()).unwrap(), h);
        // This presentation is the left-handed trefoil.
        let t = LaurentPoly::from_terms([(-5, -1), (3, -1), (7, 1)]);
        assert_eq!(kauffman_bracket(&trefoil()).unwrap(), t);
        assert_eq!(state_sum_bracket(&trefoil()).unwrap(), t);
    }

    #[test]
    fn jones_of_left_trefoil_in_a() {
        // V = −t⁻⁴ + t⁻³ + t⁻¹ with t = A⁻⁴.
        let v = LaurentPoly::from_terms([(16, -1), (12, 1), (4, 1)]);
        assert_eq!(jones_set(&trefoil()).unwrap(), vec![v]);
        assert_eq!(writhe(&trefoil(), &[false]), -3);
        assert_eq!(writhe(&trefoil(), &[true]), -3);
    }

    #[test]
    fn hopf_orientations_give_two_values() {
        let js = jones_set(&hopf()).unwrap();
        assert_eq!(js.len(), 2);
        assert_eq!(writhe(&hopf(), &[false, false]).abs(), 2);
    }

    #[test]
    fn determinants_by_hand() {
        assert_eq!(goeritz_determinant(&PlanarDiagram::unknot()).unwrap(), 1);
        assert_eq!(goeritz_determinant(&trefoil()).unwrap(), 3);
        assert_eq!(goeritz_determinant(&hopf()).unwrap(), 2);
        let v = &jones_set(&trefoil()).unwrap()[0];
        assert_eq!(jones_at_minus_one_norm(v), Some(9));
    }

    #[test]
    fn bareiss_matches_small_cases() {
        assert_eq!(integer_determinant(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(integer_determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            integer_determinant(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]),
            -3
        );
    }

    #[test]
    fn json_shape() {
        let p = LaurentPoly::from_terms([(-4, -1), (4, -1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"A":{"-4":-1,"4":-1}}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }
}
