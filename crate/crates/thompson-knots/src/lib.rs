//! Thompson's group F and knots.
//!
//! Elements of F are pairs of binary trees.  A skein-style map turns every
//! tree pair into a link diagram, and every link arises this way.  This crate
//! implements that map, the tangle constructions that realise rational and
//! pretzel-type links as tree pairs, the reverse algorithm from a diagram back
//! to a tree pair, and the exact invariants used to check all of it.
//!
//! * [`thompson_core`] — tree pairs, reduction, composition, dyadic
//!   subdivisions.
//! * [`conway_notation`] — Conway notation and continued fractions.
//! * [`planar_diagram`] — PD codes and tangle algebra.
//! * [`constructions`] — the chair-diagram families for products and
//!   comma lists.
//! * [`jones_map`] — the maps from tree pairs and chair diagrams to links.
//! * [`invariants`] — Kauffman bracket, Jones polynomial, determinant.
//! * [`reverse_pipeline`] — from a diagram back to a tree pair.

pub mod constructions;
pub mod conway_notation;
pub mod invariants;
pub mod jones_map;
pub mod planar_diagram;
pub mod reverse_pipeline;
pub mod thompson_core;

/// The guide in `book/` and the README, compiled so that their examples
/// run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/tree_pairs.md")]
    mod tree_pairs {}
    #[doc = include_str!("../../../book/src/conway.md")]
    mod conway {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/chairs.md")]
    mod chairs {}
    #[doc = include_str!("../../../book/src/skein_map.md")]
    mod skein_map {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/reverse.md")]
    mod reverse {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
