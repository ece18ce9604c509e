//! Exact-arithmetic library for snake graphs and their generalisations.
//!
//! A snake graph is a plane graph built from unit square tiles, each placed
//! to the right of or on top of its predecessor. This crate constructs such
//! graphs from direction words over `{R, U}`, classifies their turns and
//! boundaries, equips them with Kasteleyn weightings, and computes
//! characteristic polynomials of the weighted adjacency matrices along three
//! independent routes:
//!
//! * the tridiagonal three-term recursion over the boundary neighbour counts,
//! * closed forms for horizontal snakes, L-shaped snakes and staircases in
//!   terms of Fibonacci product polynomials,
//! * numerators of negative continued fractions.
//!
//! Perfect matchings are counted three ways as well (brute-force
//! enumeration, `|det B|` of the bipartite weighted adjacency matrix, and
//! the continued-fraction numerator), so every result can be cross-checked
//! exactly. Graphs with turns of both colours are first transformed by tile
//! rotations into a generalised snake graph with monochromatic black turns;
//! the rotation preserves the matching count.
//!
//! All integer computations use arbitrary precision; floating point appears
//! only in spectral spot checks with explicit tolerances.

#![forbid(unsafe_code)]

pub mod contfrac;
pub mod graph;
pub mod matchings;
pub mod polynomials;
pub mod verify;
pub mod weighting;

pub use graph::{
    blacken, boundaries, build_snake, classify_turns, monochromatic_turns, neighbour_counts,
    rotate, BoundaryDecomposition, Colour, Edge, PlaneGraph, Side, SnakeSpec, TurnColour,
    TurnReport,
};
pub use polynomials::IntPoly;
