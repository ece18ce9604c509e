//! Snake graphs and generalised snake graphs.
//!
//! A graph is stored as an ordered list of square tiles, each an oriented
//! 4-cycle of vertex ids, with consecutive tiles glued along one shared
//! edge. Everything else (edge set, rotation system, outer face) is derived
//! from the tile list, so the combinatorial embedding survives rotations
//! even though grid coordinates become advisory.

mod boundary;
mod build;
mod io;
mod rotate;
mod turns;

pub use boundary::{boundaries, BoundaryDecomposition};
pub use build::build_snake;
pub use io::{graph_from_json, to_dot, GraphJson};
pub(crate) use rotate::rotation_data;
pub use rotate::{blacken, blacken_with, canonical_code, rotate, rotation_is_legal, PassOrder};
pub use turns::{
    classify_turns, monochromatic_turns, neighbour_counts, Side, TurnColour, TurnReport,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by graph construction and transformation.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid direction word: {0}")]
    InvalidSpec(String),
    #[error("tile index {index} out of range for a graph with {tiles} tiles")]
    TileIndexOutOfRange { index: usize, tiles: usize },
    #[error("rotation partition conditions violated: {0}")]
    PartitionConditions(String),
    #[error("inconsistent graph structure: {0}")]
    InvalidGraph(String),
    #[error("operation requires black (or no) turns, found {0:?} turns")]
    NonBlackTurns(TurnColour),
    #[error("blackening did not converge within {passes} passes")]
    BlackenExceeded { passes: usize },
    #[error("graph JSON: {0}")]
    Json(String),
}

/// Vertex colour in the bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Black,
    White,
}

impl Colour {
    pub fn flip(self) -> Colour {
        match self {
            Colour::Black => Colour::White,
            Colour::White => Colour::Black,
        }
    }
}

/// An undirected edge, stored with the smaller vertex id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "loops are not allowed");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.0 {
            self.1
        } else {
            debug_assert_eq!(v, self.1);
            self.0
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

/// One step of the snake: next tile to the right or on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dir {
    R,
    U,
}

/// A snake graph described tile-by-tile: the word has one letter per tile
/// after the first, so the empty word is the single square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeSpec {
    dirs: Vec<Dir>,
}

impl SnakeSpec {
    pub fn new(dirs: Vec<Dir>) -> SnakeSpec {
        SnakeSpec { dirs }
    }

    pub fn dirs(&self) -> &[Dir] {
        &self.dirs
    }

    pub fn tile_count(&self) -> usize {
        self.dirs.len() + 1
    }

    /// Horizontal snake `H_n` (`n >= 1` tiles in a row).
    pub fn horizontal(n: usize) -> SnakeSpec {
        assert!(n >= 1);
        SnakeSpec::new(vec![Dir::R; n - 1])
    }

    /// Vertical snake `V_n`.
    pub fn vertical(n: usize) -> SnakeSpec {
        assert!(n >= 1);
        SnakeSpec::new(vec![Dir::U; n - 1])
    }

    /// L-shaped snake with `r` horizontal tiles followed by `s - 1` tiles on
    /// top, so the corner tile is counted by both legs.
    pub fn l_shaped(r: usize, s: usize) -> SnakeSpec {
        assert!(r >= 1 && s >= 1);
        let mut dirs = vec![Dir::R; r - 1];
        dirs.extend(vec![Dir::U; s - 1]);
        SnakeSpec::new(dirs)
    }

    /// Staircase `S_{m,n}`: `m` alternating horizontal and vertical pieces of
    /// `n` tiles, glued along their end tiles.
    pub fn staircase(m: usize, n: usize) -> SnakeSpec {
        assert!(m >= 1 && n >= 1);
        let mut dirs = Vec::new();
        for piece in 0..m {
            let d = if piece % 2 == 0 { Dir::R } else { Dir::U };
            dirs.extend(std::iter::repeat(d).take(n - 1));
        }
        SnakeSpec::new(dirs)
    }
}

impl FromStr for SnakeSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let mut dirs = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch.to_ascii_uppercase() {
                'R' => dirs.push(Dir::R),
                'U' => dirs.push(Dir::U),
                other => {
                    return Err(GraphError::InvalidSpec(format!(
                        "unexpected character {other:?}; the alphabet is {{R, U}}"
                    )))
                }
            }
        }
        Ok(SnakeSpec::new(dirs))
    }
}

impl fmt::Display for SnakeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.dirs {
            write!(
                f,
                "{}",
                match d {
                    Dir::R => 'R',
                    Dir::U => 'U',
                }
            )?;
        }
        Ok(())
    }
}

/// A snake or generalised snake graph with a fixed plane embedding.
///
/// Immutable after construction; transformations return fresh graphs.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    coords: Vec<(i64, i64)>,
    colours: Vec<Colour>,
    tiles: Vec<[usize; 4]>,
    generalised: bool,
    first_tile_up: bool,
    // derived data
    edges: Vec<Edge>,
    adj_ccw: Vec<Vec<usize>>,
    vertex_tiles: Vec<Vec<usize>>,
    edge_tiles: BTreeMap<Edge, Vec<usize>>,
    outer: Vec<usize>,
}

impl PlaneGraph {
    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn tiles(&self) -> &[[usize; 4]] {
        &self.tiles
    }

    pub fn coord(&self, v: usize) -> (i64, i64) {
        self.coords[v]
    }

    pub fn colour(&self, v: usize) -> Colour {
        self.colours[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj_ccw[v].len()
    }

    /// Neighbours of `v` in counterclockwise rotation order.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj_ccw[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj_ccw[a].contains(&b)
    }

    /// True once the graph has been transformed by a rotation.
    pub fn is_generalised(&self) -> bool {
        self.generalised
    }

    pub(crate) fn first_tile_up(&self) -> bool {
        self.first_tile_up
    }

    /// Tiles containing `v`, in increasing tile order (always a consecutive
    /// run for snake and generalised snake graphs).
    pub fn tiles_at(&self, v: usize) -> &[usize] {
        &self.vertex_tiles[v]
    }

    /// The (one or two) tiles bounded by an edge.
    pub fn tiles_on_edge(&self, e: Edge) -> &[usize] {
        self.edge_tiles.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The outer face as a simple vertex cycle.
    pub fn outer_cycle(&self) -> &[usize] {
        &self.outer
    }

    pub fn black_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.colours[v] == Colour::Black)
            .collect()
    }

    pub fn white_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.colours[v] == Colour::White)
            .collect()
    }

    /// Corner of `tile` diagonally opposite `v`.
    pub fn opposite_corner(&self, tile: usize, v: usize) -> usize {
        let t = &self.tiles[tile];
        let p = t.iter().position(|&c| c == v).expect("vertex not on tile");
        t[(p + 2) % 4]
    }

    /// Vertices of tile 0 with the lowest y (then x) coordinate; tile 0 is
    /// never moved by rotations, so its grid coordinates stay meaningful.
    pub(crate) fn first_tile_lower_left(&self) -> usize {
        *self.tiles[0]
            .iter()
            .min_by_key(|&&v| (self.coords[v].1, self.coords[v].0))
            .expect("tiles are nonempty")
    }

    /// Builds a graph from an ordered tile list, deriving and validating the
    /// embedding. This is the single entry point used by construction,
    /// rotation and JSON import.
    pub fn assemble(
        coords: Vec<(i64, i64)>,
        colours: Vec<Colour>,
        mut tiles: Vec<[usize; 4]>,
        generalised: bool,
        first_tile_up: bool,
    ) -> Result<PlaneGraph, GraphError> {
        let nv = coords.len();
        if colours.len() != nv {
            return Err(GraphError::InvalidGraph(
                "colour list does not match vertex list".into(),
            ));
        }
        if tiles.is_empty() {
            return Err(GraphError::InvalidGraph(
                "a graph needs at least one tile".into(),
            ));
        }
        for t in &tiles {
            if t.iter().any(|&v| v >= nv) {
                return Err(GraphError::InvalidGraph(
                    "tile references unknown vertex".into(),
                ));
            }
            let set: BTreeSet<usize> = t.iter().copied().collect();
            if set.len() != 4 {
                return Err(GraphError::InvalidGraph(
                    "tile corners must be distinct".into(),
                ));
            }
        }
        if !generalised {
            for t in tiles.iter_mut() {
                normalize_grid_tile(t, &coords)?;
            }
        }
        for w in tiles.windows(2) {
            let shared = shared_corners(&w[0], &w[1]);
            if shared.len() != 2 {
                return Err(GraphError::InvalidGraph(
                    "consecutive tiles must share exactly one edge".into(),
                ));
            }
        }

        // edge set and edge-to-tile incidences
        let mut edge_tiles: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (ti, t) in tiles.iter().enumerate() {
            for i in 0..4 {
                let e = Edge::new(t[i], t[(i + 1) % 4]);
                let entry = edge_tiles.entry(e).or_default();
                if entry.len() == 2 {
                    return Err(GraphError::InvalidGraph(format!(
                        "edge {e:?} bounds more than two tiles"
                    )));
                }
                entry.push(ti);
            }
        }
        let edges: Vec<Edge> = edge_tiles.keys().copied().collect();

        // tiles per vertex, required to form consecutive runs
        let mut vertex_tiles = vec![Vec::new(); nv];
        for (ti, t) in tiles.iter().enumerate() {
            for &v in t {
                vertex_tiles[v].push(ti);
            }
        }
        for (v, run) in vertex_tiles.iter().enumerate() {
            if run.is_empty() {
                return Err(GraphError::InvalidGraph(format!("isolated vertex {v}")));
            }
            if run.windows(2).any(|w| w[1] != w[0] + 1) {
                return Err(GraphError::InvalidGraph(format!(
                    "tiles at vertex {v} do not form a consecutive run"
                )));
            }
        }

        // bipartite with balanced colour classes
        for e in &edges {
            if colours[e.0] == colours[e.1] {
                return Err(GraphError::InvalidGraph(format!(
                    "edge {e:?} joins two {:?} vertices",
                    colours[e.0]
                )));
            }
        }
        let blacks = colours.iter().filter(|&&c| c == Colour::Black).count();
        if 2 * blacks != nv {
            return Err(GraphError::InvalidGraph(format!(
                "{blacks} black vertices among {nv} (classes must balance)"
            )));
        }

        let adj_ccw = stitch_rotation_system(&tiles, &vertex_tiles, nv)?;
        let outer = check_faces(&tiles, &adj_ccw, edges.len())?;

        Ok(PlaneGraph {
            coords,
            colours,
            tiles,
            generalised,
            first_tile_up,
            edges,
            adj_ccw,
            vertex_tiles,
            edge_tiles,
            outer,
        })
    }

    pub(crate) fn with_colours(&self, colours: Vec<Colour>) -> PlaneGraph {
        let mut g = self.clone();
        assert_eq!(colours.len(), g.colours.len());
        g.colours = colours;
        g
    }
}

/// Corners shared by two tiles.
pub(crate) fn shared_corners(a: &[usize; 4], b: &[usize; 4]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.contains(v)).collect()
}

/// For unrotated snakes, checks a tile is a unit grid square and rotates its
/// corner cycle to the canonical order (LL, LR, UR, UL), which is the
/// counterclockwise orientation used by the face checks.
fn normalize_grid_tile(t: &mut [usize; 4], coords: &[(i64, i64)]) -> Result<(), GraphError> {
    let (x0, y0) = t
        .iter()
        .map(|&v| coords[v])
        .fold((i64::MAX, i64::MAX), |(ax, ay), (x, y)| {
            (ax.min(x), ay.min(y))
        });
    let want = [(x0, y0), (x0 + 1, y0), (x0 + 1, y0 + 1), (x0, y0 + 1)];
    let mut ordered = [usize::MAX; 4];
    for &v in t.iter() {
        match want.iter().position(|&c| c == coords[v]) {
            Some(p) => ordered[p] = v,
            None => {
                return Err(GraphError::InvalidGraph(
                    "snake tile is not a unit grid square".into(),
                ))
            }
        }
    }
    *t = ordered;
    Ok(())
}

/// Builds the counterclockwise rotation system by stitching together the
/// corner cycles of the tiles around each vertex.
fn stitch_rotation_system(
    tiles: &[[usize; 4]],
    vertex_tiles: &[Vec<usize>],
    nv: usize,
) -> Result<Vec<Vec<usize>>, GraphError> {
    let mut adj = vec![Vec::new(); nv];
    for (v, run) in vertex_tiles.iter().enumerate() {
        // entering and leaving neighbour of v in each tile's oriented cycle
        let ab: Vec<(usize, usize)> = run
            .iter()
            .map(|&ti| {
                let t = &tiles[ti];
                let p = t.iter().position(|&c| c == v).expect("tile contains v");
                (t[(p + 3) % 4], t[(p + 1) % 4]) // (incoming a, outgoing b)
            })
            .collect();
        // chain the tiles so that consecutive ones share the edge b_i = a_{i+1}
        let chained: Vec<(usize, usize)> = if ab.windows(2).all(|w| w[0].1 == w[1].0) {
            ab.clone()
        } else {
            let rev: Vec<(usize, usize)> = ab.iter().rev().copied().collect();
            if rev.windows(2).all(|w| w[0].1 == w[1].0) {
                rev
            } else {
                return Err(GraphError::InvalidGraph(format!(
                    "tiles around vertex {v} do not chain along shared edges"
                )));
            }
        };
        // counterclockwise: outgoing edges from the last tile back to the
        // first, then the first tile's incoming edge
        let mut order: Vec<usize> = chained.iter().rev().map(|&(_, b)| b).collect();
        order.push(chained[0].0);
        adj[v] = order;
    }
    Ok(adj)
}

/// Walks every face of the embedding and checks the bounded faces are
/// exactly the tiles. Returns the outer face as a vertex cycle.
fn check_faces(
    tiles: &[[usize; 4]],
    adj_ccw: &[Vec<usize>],
    edge_count: usize,
) -> Result<Vec<usize>, GraphError> {
    // next directed edge when traversing with the face on the left:
    // from (u -> v) continue to (v -> w) with w the predecessor of u in the
    // counterclockwise order around v
    let next = |u: usize, v: usize| -> (usize, usize) {
        let nbrs = &adj_ccw[v];
        let p = nbrs
            .iter()
            .position(|&x| x == u)
            .expect("arrived along an edge");
        let w = nbrs[(p + nbrs.len() - 1) % nbrs.len()];
        (v, w)
    };
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for (u, nbrs) in adj_ccw.iter().enumerate() {
        for &v in nbrs {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut cu, mut cv) = (u, v);
            loop {
                face.push(cu);
                seen.insert((cu, cv));
                let (nu, nv) = next(cu, cv);
                cu = nu;
                cv = nv;
                if (cu, cv) == (u, v) {
                    break;
                }
                if face.len() > 2 * edge_count {
                    return Err(GraphError::InvalidGraph("face walk does not close".into()));
                }
            }
            faces.push(face);
        }
    }
    if faces.len() != tiles.len() + 1 {
        return Err(GraphError::InvalidGraph(format!(
            "embedding has {} faces for {} tiles",
            faces.len(),
            tiles.len()
        )));
    }
    // match each tile to a face, cyclically
    let mut outer: Option<Vec<usize>> = None;
    let mut used = vec![false; faces.len()];
    'tile: for t in tiles {
        for (fi, face) in faces.iter().enumerate() {
            if !used[fi] && face.len() == 4 && cyclic_eq(face, t) {
                used[fi] = true;
                continue 'tile;
            }
        }
        return Err(GraphError::InvalidGraph(format!(
            "tile {t:?} is not a face of the embedding"
        )));
    }
    for (fi, face) in faces.iter().enumerate() {
        if !used[fi] {
            outer = Some(face.clone());
        }
    }
    let outer = outer.expect("face count leaves exactly one unmatched");
    let distinct: BTreeSet<usize> = outer.iter().copied().collect();
    if distinct.len() != outer.len() {
        return Err(GraphError::InvalidGraph(
            "outer face is not a simple cycle".into(),
        ));
    }
    Ok(outer)
}

fn cyclic_eq(face: &[usize], tile: &[usize; 4]) -> bool {
    (0..4).any(|shift| (0..4).all(|i| face[(i + shift) % 4] == tile[i]))
}
