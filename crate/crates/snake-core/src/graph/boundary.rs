//! Boundary decomposition: start and end edges, the upper and lower boundary
//! paths, and the internal/external edge classification.

use std::collections::BTreeSet;

use super::{Edge, GraphError, PlaneGraph};

/// The outer structure of a snake or generalised snake graph.
#[derive(Debug, Clone)]
pub struct BoundaryDecomposition {
    /// Upper boundary path, ordered from the start-edge end.
    pub upper: Vec<usize>,
    /// Lower boundary path, ordered from the start-edge end.
    pub lower: Vec<usize>,
    /// Edge of the first tile joining its two vertices private to that tile
    /// (the left edge, for the single tile).
    pub start_edge: Edge,
    /// The analogous edge of the last tile.
    pub end_edge: Edge,
    pub internal_edges: BTreeSet<Edge>,
    pub external_edges: BTreeSet<Edge>,
}

/// Splits the outer cycle at the start and end edges into the upper and
/// lower boundary paths.
///
/// The path containing the lower-left vertex of the first tile is the upper
/// boundary when the second tile sits on top of the first, otherwise the
/// lower one; for the single tile the top edge is the upper boundary.
///
/// Internal edges of a snake graph are the edges shared by two tiles
/// together with the lower side of the first tile and the upper side of the
/// last tile. After rotations only the shared edges are classified internal,
/// since "upper side" no longer has geometric meaning.
pub fn boundaries(g: &PlaneGraph) -> BoundaryDecomposition {
    let (start_edge, end_edge) = terminal_edges(g).expect("assembled graphs have terminal edges");

    let outer = g.outer_cycle();
    let m = outer.len();
    let pos = |e: Edge| -> usize {
        (0..m)
            .find(|&i| Edge::new(outer[i], outer[(i + 1) % m]) == e)
            .expect("terminal edges lie on the outer cycle")
    };
    // rotate so the start edge spans (last, first)
    let si = pos(start_edge);
    let cyc: Vec<usize> = (0..m).map(|i| outer[(si + 1 + i) % m]).collect();
    let ei = (0..m - 1)
        .find(|&i| Edge::new(cyc[i], cyc[i + 1]) == end_edge)
        .expect("end edge on outer cycle");
    let path_a: Vec<usize> = cyc[..=ei].to_vec();
    let mut path_b: Vec<usize> = cyc[ei + 1..].to_vec();
    path_b.reverse(); // begin at its start-edge endpoint

    let ll = g.first_tile_lower_left();
    let ll_in_a = path_a.contains(&ll);
    let (with_ll, without_ll) = if ll_in_a {
        (path_a, path_b)
    } else {
        (path_b, path_a)
    };
    // the path through the lower-left origin is the lower boundary unless the
    // snake starts by going up; for the single tile it is the bottom edge
    let (upper, lower) = if g.first_tile_up() {
        (with_ll, without_ll)
    } else {
        (without_ll, with_ll)
    };

    let mut internal_edges: BTreeSet<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| g.tiles_on_edge(e).len() == 2)
        .collect();
    if !g.is_generalised() {
        internal_edges.insert(extreme_side(g, 0, false));
        internal_edges.insert(extreme_side(g, g.tile_count() - 1, true));
    }
    let external_edges: BTreeSet<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !internal_edges.contains(e))
        .collect();

    BoundaryDecomposition {
        upper,
        lower,
        start_edge,
        end_edge,
        internal_edges,
        external_edges,
    }
}

/// The bottom (`upper = false`) or top (`upper = true`) side of a grid tile.
fn extreme_side(g: &PlaneGraph, tile: usize, upper: bool) -> Edge {
    let t = &g.tiles()[tile];
    let mut by_y: Vec<usize> = t.to_vec();
    by_y.sort_by_key(|&v| {
        let (x, y) = g.coord(v);
        (if upper { -y } else { y }, x)
    });
    Edge::new(by_y[0], by_y[1])
}

/// Start and end edges: for each terminal tile, the edge joining its two
/// vertices that belong to no other tile.
pub(crate) fn terminal_edges(g: &PlaneGraph) -> Result<(Edge, Edge), GraphError> {
    if g.tile_count() == 1 {
        // left and right side of the single square
        let t = &g.tiles()[0];
        let mut by_x: Vec<usize> = t.to_vec();
        by_x.sort_by_key(|&v| (g.coord(v).0, g.coord(v).1));
        return Ok((Edge::new(by_x[0], by_x[1]), Edge::new(by_x[2], by_x[3])));
    }
    let private_edge = |tile: usize| -> Result<Edge, GraphError> {
        let private: Vec<usize> = g.tiles()[tile]
            .iter()
            .copied()
            .filter(|&v| g.tiles_at(v) == [tile])
            .collect();
        if private.len() != 2 {
            return Err(GraphError::InvalidGraph(format!(
                "tile {tile} has {} private vertices, expected 2",
                private.len()
            )));
        }
        if !g.has_edge(private[0], private[1]) {
            return Err(GraphError::InvalidGraph(format!(
                "private vertices of tile {tile} are not adjacent"
            )));
        }
        Ok(Edge::new(private[0], private[1]))
    };
    Ok((private_edge(0)?, private_edge(g.tile_count() - 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_snake, SnakeSpec};
    use std::str::FromStr;

    fn g(word: &str) -> PlaneGraph {
        build_snake(&SnakeSpec::from_str(word).unwrap())
    }

    fn coords_of(g: &PlaneGraph, path: &[usize]) -> Vec<(i64, i64)> {
        path.iter().map(|&v| g.coord(v)).collect()
    }

    #[test]
    fn single_tile_boundaries() {
        let graph = g("");
        let b = boundaries(&graph);
        assert_eq!(coords_of(&graph, &b.upper), vec![(0, 1), (1, 1)]);
        assert_eq!(coords_of(&graph, &b.lower), vec![(0, 0), (1, 0)]);
        // internal: bottom and top; external: left and right
        assert_eq!(b.internal_edges.len(), 2);
        assert_eq!(b.external_edges.len(), 2);
        assert!(b.external_edges.contains(&b.start_edge));
        assert!(b.external_edges.contains(&b.end_edge));
    }

    #[test]
    fn h6_paths_have_seven_vertices() {
        let graph = g("RRRRR");
        let b = boundaries(&graph);
        assert_eq!(b.upper.len(), 7);
        assert_eq!(b.lower.len(), 7);
        assert_eq!(coords_of(&graph, &b.lower)[0], (0, 0));
        assert_eq!(coords_of(&graph, &b.upper)[0], (0, 1));
    }

    #[test]
    fn seven_tile_s_shape_split() {
        // the split shown for the 7-tile S-shaped snake
        let graph = g("RRUURR");
        let b = boundaries(&graph);
        assert_eq!(
            coords_of(&graph, &b.lower),
            vec![
                (0, 0),
                (1, 0),
                (2, 0),
                (3, 0),
                (3, 1),
                (3, 2),
                (4, 2),
                (5, 2)
            ]
        );
        assert_eq!(
            coords_of(&graph, &b.upper),
            vec![
                (0, 1),
                (1, 1),
                (2, 1),
                (2, 2),
                (2, 3),
                (3, 3),
                (4, 3),
                (5, 3)
            ]
        );
    }

    #[test]
    fn vertical_first_move_swaps_labels() {
        let graph = g("UR");
        let b = boundaries(&graph);
        // first move is up, so the lower-left origin path is the upper one
        assert!(b.upper.iter().any(|&v| graph.coord(v) == (0, 0)));
    }

    #[test]
    fn tiles_have_two_internal_and_two_external_edges() {
        for len in 0..=8usize {
            for bits in 0..1u32 << len {
                let word: String = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { 'U' } else { 'R' })
                    .collect();
                let graph = g(&word);
                let b = boundaries(&graph);
                assert_eq!(
                    b.internal_edges.len() + b.external_edges.len(),
                    graph.edge_count()
                );
                for t in graph.tiles() {
                    let internal = (0..4)
                        .filter(|&i| b.internal_edges.contains(&Edge::new(t[i], t[(i + 1) % 4])))
                        .count();
                    assert_eq!(internal, 2, "word {word}");
                }
            }
        }
    }

    #[test]
    fn boundary_black_counts_add_up() {
        // |upper black| + |lower black| = |V| / 2 when all turns are black
        use crate::graph::turns::{monochromatic_turns, TurnColour};
        for word in ["", "R", "RRRRR", "RRUURR", "RRUURRR", "RRUURRUU"] {
            let graph = g(word);
            assert_ne!(monochromatic_turns(&graph), TurnColour::Mixed);
            let b = boundaries(&graph);
            let blacks = |p: &[usize]| {
                p.iter()
                    .filter(|&&v| graph.colour(v) == crate::graph::Colour::Black)
                    .count()
            };
            assert_eq!(
                blacks(&b.upper) + blacks(&b.lower),
                graph.vertex_count() / 2,
                "word {word}"
            );
        }
    }
}
