//! JSON import/export of graphs and DOT rendering for visual inspection.

use serde::{Deserialize, Serialize};

use super::{boundaries, Colour, Edge, GraphError, PlaneGraph};
use crate::weighting::Weighting;

/// Serialized form of a [`PlaneGraph`]. Coordinates are advisory for
/// generalised graphs; the tile list carries the embedding.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
    pub tiles: Vec<[usize; 4]>,
    pub generalised: bool,
    pub first_tile_up: bool,
    pub boundary: BoundaryJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub x: i64,
    pub y: i64,
    pub colour: Colour,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryJson {
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
}

impl GraphJson {
    pub fn from_graph(g: &PlaneGraph) -> GraphJson {
        let b = boundaries(g);
        GraphJson {
            vertices: (0..g.vertex_count())
                .map(|v| {
                    let (x, y) = g.coord(v);
                    VertexJson {
                        id: v,
                        x,
                        y,
                        colour: g.colour(v),
                    }
                })
                .collect(),
            edges: g.edges().iter().map(|e| [e.0, e.1]).collect(),
            tiles: g.tiles().to_vec(),
            generalised: g.is_generalised(),
            first_tile_up: g.first_tile_up(),
            boundary: BoundaryJson {
                upper: b.upper,
                lower: b.lower,
            },
        }
    }

    pub fn into_graph(self) -> Result<PlaneGraph, GraphError> {
        let n = self.vertices.len();
        let mut coords = vec![(0i64, 0i64); n];
        let mut colours = vec![Colour::Black; n];
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(GraphError::Json(format!(
                    "vertex ids must be 0..{} in order, found {} at {}",
                    n - 1,
                    v.id,
                    i
                )));
            }
            coords[i] = (v.x, v.y);
            colours[i] = v.colour;
        }
        let g = PlaneGraph::assemble(
            coords,
            colours,
            self.tiles,
            self.generalised,
            self.first_tile_up,
        )?;
        // the edge list is redundant; verify it if present
        if !self.edges.is_empty() {
            let mut given: Vec<Edge> = self.edges.iter().map(|&[a, b]| Edge::new(a, b)).collect();
            given.sort_unstable();
            given.dedup();
            if given.as_slice() != g.edges() {
                return Err(GraphError::Json(
                    "edge list disagrees with the edges of the tile complex".into(),
                ));
            }
        }
        Ok(g)
    }
}

/// Parses a graph from its JSON form.
pub fn graph_from_json(text: &str) -> Result<PlaneGraph, GraphError> {
    let parsed: GraphJson =
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    parsed.into_graph()
}

/// Renders the graph in DOT. Vertices are filled by colour; positions are
/// pinned to the grid for snakes and left to the layout engine afterwards.
/// A weighting overlay labels every edge with its sign.
pub fn to_dot(g: &PlaneGraph, weighting: Option<&Weighting>) -> String {
    let mut out = String::from(
        "graph snake {\n  node [shape=circle, style=filled, fixedsize=true, width=0.25];\n",
    );
    for v in 0..g.vertex_count() {
        let (x, y) = g.coord(v);
        let fill = match g.colour(v) {
            Colour::Black => "black, fontcolor=white",
            Colour::White => "white",
        };
        let pos = if g.is_generalised() {
            String::new()
        } else {
            format!(", pos=\"{x},{y}!\"")
        };
        out.push_str(&format!("  v{v} [label=\"{v}\", fillcolor={fill}{pos}];\n"));
    }
    for e in g.edges() {
        let label = match weighting {
            Some(w) => format!(" [label=\"{:+}\"]", w.sign(*e)),
            None => String::new(),
        };
        out.push_str(&format!("  v{} -- v{}{label};\n", e.0, e.1));
    }
    out.push_str("}\n");
    out
}
