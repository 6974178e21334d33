//! SVG drawings on the 45° grid: leaves sit on a horizontal line, the top
//! tree grows upwards and the bottom tree downwards, and every edge is a
//! diagonal.

use std::fmt::Write;

use thompson_knots::constructions::{ChairDiagram, Orientation};
use thompson_knots::thompson_core::{BinaryTree, ThompsonElement};

const MARGIN: f64 = 20.0;

struct Canvas {
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(width: f64, height: f64) -> Self {
        Canvas {
            width,
            height,
            body: String::new(),
        }
    }

    fn line(&mut self, (x1, y1): (f64, f64), (x2, y2): (f64, f64), colour: &str) {
        let _ = writeln!(
            self.body,
            r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{colour}" stroke-width="2" stroke-linecap="round"/>"#
        );
    }

    fn dot(&mut self, (x, y): (f64, f64)) {
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{x}" cy="{y}" r="3" fill="black"/>"#
        );
    }

    fn text(&mut self, (x, y): (f64, f64), s: &str) {
        let _ = writeln!(
            self.body,
            r#"  <text x="{x}" y="{y}" font-family="sans-serif" font-size="12" text-anchor="middle">{s}</text>"#
        );
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{body}</svg>\n",
            w = self.width,
            h = self.height,
            body = self.body
        )
    }
}

/// Draws `t` with leaf `i` at `x = MARGIN + i·unit` on the line `y = mid`;
/// `dir` is −1 to grow upwards and +1 downwards.  Returns the apex.
fn draw_tree(
    c: &mut Canvas,
    t: &BinaryTree,
    first: usize,
    unit: f64,
    mid: f64,
    dir: f64,
    colour: &str,
) -> (f64, f64) {
    let xa = MARGIN + first as f64 * unit;
    let xb = xa + (t.leaf_count() - 1) as f64 * unit;
    let apex = ((xa + xb) / 2.0, mid + dir * (xb - xa) / 2.0);
    if let BinaryTree::Node(l, r) = t {
        let la = draw_tree(c, l, first, unit, mid, dir, colour);
        let ra = draw_tree(c, r, first + l.leaf_count(), unit, mid, dir, colour);
        c.line(apex, la, colour);
        c.line(apex, ra, colour);
    }
    apex
}

fn draw_pair(c: &mut Canvas, top: &BinaryTree, bottom: &BinaryTree, unit: f64, mid: f64) {
    draw_tree(c, top, 0, unit, mid, -1.0, "#1f4e9c");
    draw_tree(c, bottom, 0, unit, mid, 1.0, "#9c1f2e");
    for i in 0..top.leaf_count() {
        c.dot((MARGIN + i as f64 * unit, mid));
    }
}

/// The tree pair with its leaves matched along the midline.
pub fn tree_pair(e: &ThompsonElement) -> String {
    let unit = 30.0;
    let span = (e.leaf_count() - 1) as f64 * unit;
    let mut c = Canvas::new(span + 2.0 * MARGIN, span + 2.0 * MARGIN);
    draw_pair(&mut c, e.top(), e.bottom(), unit, MARGIN + span / 2.0);
    c.finish()
}

/// The skeleton of a chair diagram, with each block drawn as a column of
/// chair glyphs in its region and labelled with its chair count.
pub fn chairs(d: &ChairDiagram) -> String {
    let unit = 60.0;
    let step = 14.0;
    let (top, bottom) = d.skeleton();
    let span = (top.leaf_count() - 1) as f64 * unit;
    let tallest = d.blocks().iter().map(|b| b.count).max().unwrap_or(0) as f64 * step + 20.0;
    let half = (span / 2.0).max(tallest / 2.0);
    let mid = MARGIN + half;
    let mut c = Canvas::new(span + 2.0 * MARGIN, 2.0 * (half + MARGIN));
    draw_pair(&mut c, top, bottom, unit, mid);
    for b in d.blocks() {
        let x = MARGIN + (b.region as f64 - 0.5) * unit;
        let facing = match b.orientation {
            Orientation::Normal | Orientation::Reflected => 1.0,
            Orientation::FlippedReflected => -1.0,
        };
        let y0 = mid - (b.count as f64 * step) / 2.0;
        for k in 0..b.count {
            let y = y0 + k as f64 * step + 4.0;
            // Back, seat and two legs.
            let back = x + facing * 5.0;
            c.line((back, y - 4.0), (back, y + 6.0), "black");
            c.line((x - facing * 5.0, y + 2.0), (back, y + 2.0), "black");
            c.line(
                (x - facing * 5.0, y + 2.0),
                (x - facing * 5.0, y + 6.0),
                "black",
            );
        }
        c.text((x, y0 - 4.0), &format!("{}", b.count));
    }
    c.finish()
}
