//! Rotations at tiles and the blackening transform.
//!
//! Removing the four corners of an interior tile splits a (generalised)
//! snake graph into a head component (holding the first tile) and a tail
//! component (holding the last). A rotation is legal when the two attachment
//! corner pairs share exactly one corner `C`; labelling the tile `C`, `D`
//! (tail side), `B` (head side) and `A` opposite `C`, it detaches the tail
//! from `(D, C)` and reattaches it to `(B, A)`. The matching count is
//! preserved; the pivot corner of the rotated tile switches colour class.

use std::collections::BTreeSet;

use super::boundary::terminal_edges;
use super::turns::{classify_turns, TurnColour};
use super::{Colour, GraphError, PlaneGraph};

/// The corner roles and attachment lists of a legal rotation.
#[derive(Debug, Clone)]
pub(crate) struct RotationData {
    pub tile: usize,
    /// Corner opposite the pivot; receives the tail edges formerly at `c`.
    pub a: usize,
    /// Head-side corner; receives the tail edges formerly at `d`.
    pub b: usize,
    /// The pivot corner shared by the head and tail attachments.
    pub c: usize,
    /// Tail-side corner adjacent to the pivot.
    pub d: usize,
    /// Tail vertices joined to `d` (the `S_i`).
    pub s: Vec<usize>,
    /// Tail vertices joined to `c` (the `R_j`).
    pub r: Vec<usize>,
}

/// Identifies the corner roles for a rotation at `tile`, checking the
/// partition conditions.
pub(crate) fn rotation_data(g: &PlaneGraph, tile: usize) -> Result<RotationData, GraphError> {
    let n = g.tile_count();
    if tile >= n {
        return Err(GraphError::TileIndexOutOfRange {
            index: tile,
            tiles: n,
        });
    }
    if tile == 0 || tile == n - 1 {
        return Err(GraphError::PartitionConditions(
            "a terminal tile has only one attached component".into(),
        ));
    }
    let corners = g.tiles()[tile];
    let head_attach = super::shared_corners(&g.tiles()[tile - 1], &corners);
    let tail_attach = super::shared_corners(&corners, &g.tiles()[tile + 1]);
    let common: Vec<usize> = head_attach
        .iter()
        .copied()
        .filter(|v| tail_attach.contains(v))
        .collect();
    if common.len() != 1 {
        return Err(GraphError::PartitionConditions(format!(
            "attachments at tile {tile} share {} corners, need exactly one",
            common.len()
        )));
    }
    let c = common[0];
    let b = head_attach
        .into_iter()
        .find(|&v| v != c)
        .expect("two head corners");
    let d = tail_attach
        .into_iter()
        .find(|&v| v != c)
        .expect("two tail corners");
    let a = corners
        .iter()
        .copied()
        .find(|&v| v != b && v != c && v != d)
        .expect("fourth corner");

    // the head and tail components, with the tile corners removed
    let forbidden: BTreeSet<usize> = corners.iter().copied().collect();
    let (start_edge, end_edge) = terminal_edges(g)?;
    let head = component_of(g, start_edge.0, &forbidden);
    let tail = component_of(g, end_edge.0, &forbidden);
    if head.intersection(&tail).next().is_some() || head.len() + tail.len() + 4 != g.vertex_count()
    {
        return Err(GraphError::PartitionConditions(
            "tile corners do not split the graph into head and tail".into(),
        ));
    }
    let mut s = Vec::new();
    let mut r = Vec::new();
    for &v in &tail {
        for &u in g.neighbours(v) {
            if !forbidden.contains(&u) {
                continue;
            }
            if u == d {
                s.push(v);
            } else if u == c {
                r.push(v);
            } else {
                return Err(GraphError::PartitionConditions(format!(
                    "tail attaches at corner {u}, expected only {c} and {d}"
                )));
            }
        }
    }
    for &v in &head {
        for &u in g.neighbours(v) {
            if forbidden.contains(&u) && u != b && u != c {
                return Err(GraphError::PartitionConditions(format!(
                    "head attaches at corner {u}, expected only {b} and {c}"
                )));
            }
        }
    }
    s.sort_unstable();
    r.sort_unstable();
    Ok(RotationData {
        tile,
        a,
        b,
        c,
        d,
        s,
        r,
    })
}

fn component_of(g: &PlaneGraph, start: usize, forbidden: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        if forbidden.contains(&v) || !seen.insert(v) {
            continue;
        }
        for &u in g.neighbours(v) {
            if !forbidden.contains(&u) && !seen.contains(&u) {
                stack.push(u);
            }
        }
    }
    seen
}

/// Rotates the graph at `tile`, moving the tail attachment from the corners
/// `(D, C)` to `(B, A)`. The vertex set, colouring and tile count are
/// unchanged; the corner cycles of the tail tiles are rewritten by the
/// substitution `C -> A`, `D -> B`, and the embedding is rebuilt from the
/// tile list so the bounded faces remain exactly the tiles.
pub fn rotate(g: &PlaneGraph, tile: usize) -> Result<PlaneGraph, GraphError> {
    let rd = rotation_data(g, tile)?;
    rotate_prepared(g, &rd)
}

pub(crate) fn rotate_prepared(g: &PlaneGraph, rd: &RotationData) -> Result<PlaneGraph, GraphError> {
    let mut tiles = g.tiles().to_vec();
    for t in tiles.iter_mut().skip(rd.tile + 1) {
        for corner in t.iter_mut() {
            if *corner == rd.c {
                *corner = rd.a;
            } else if *corner == rd.d {
                *corner = rd.b;
            }
        }
    }
    let coords: Vec<(i64, i64)> = (0..g.vertex_count()).map(|v| g.coord(v)).collect();
    let colours: Vec<Colour> = (0..g.vertex_count()).map(|v| g.colour(v)).collect();
    PlaneGraph::assemble(coords, colours, tiles, true, g.first_tile_up())
}

/// Whether the partition conditions for a rotation at `tile` hold.
pub fn rotation_is_legal(g: &PlaneGraph, tile: usize) -> bool {
    rotation_data(g, tile).is_ok()
}

/// Pass order for the blackening sweep; both must reach the same graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PassOrder {
    Forward,
    Reverse,
}

/// Transforms a snake graph into the generalised snake graph `black(G)`
/// whose turns are all black, by repeatedly rotating at tiles whose pivot
/// corner is white. The matching count is preserved by every rotation.
pub fn blacken(g: &PlaneGraph) -> Result<PlaneGraph, GraphError> {
    blacken_with(g, PassOrder::Forward)
}

/// `blacken` with an explicit sweep order, used to confirm empirically that
/// the result does not depend on the rotation order.
pub fn blacken_with(g: &PlaneGraph, order: PassOrder) -> Result<PlaneGraph, GraphError> {
    let n = g.tile_count();
    let mut cur = g.clone();
    if n < 3 {
        return Ok(cur);
    }
    let passes = n * n;
    for _ in 0..passes {
        let mut changed = false;
        let interior: Vec<usize> = match order {
            PassOrder::Forward => (1..n - 1).collect(),
            PassOrder::Reverse => (1..n - 1).rev().collect(),
        };
        for k in interior {
            let Ok(rd) = rotation_data(&cur, k) else {
                continue;
            };
            if cur.colour(rd.c) == Colour::White {
                cur = rotate_prepared(&cur, &rd)?;
                changed = true;
            }
        }
        if !changed {
            let report = classify_turns(&cur);
            return match report.turn_colour {
                TurnColour::Black | TurnColour::None => Ok(cur),
                other => Err(GraphError::InvalidGraph(format!(
                    "blackening reached a fixpoint with {other:?} turns"
                ))),
            };
        }
    }
    Err(GraphError::BlackenExceeded { passes })
}

/// A canonical description of the embedded coloured graph, independent of
/// vertex ids: a breadth-first relabelling rooted at the start edge, with
/// neighbour lists read in rotation order from each vertex's discovery edge.
/// Two generalised snake graphs are isomorphic as rooted plane graphs with
/// colours exactly when their codes agree.
pub fn canonical_code(g: &PlaneGraph) -> String {
    let (start, _) = terminal_edges(g).expect("assembled graphs have terminal edges");
    let (root, mate) = if g.colour(start.0) == Colour::Black {
        (start.0, start.1)
    } else {
        (start.1, start.0)
    };
    let mut label = vec![usize::MAX; g.vertex_count()];
    let mut arrival = vec![usize::MAX; g.vertex_count()];
    label[root] = 0;
    label[mate] = 1;
    arrival[root] = mate;
    arrival[mate] = root;
    let mut queue = std::collections::VecDeque::from([root, mate]);
    let mut order = vec![root, mate];
    let mut next_label = 2;
    while let Some(v) = queue.pop_front() {
        let nbrs = g.neighbours(v);
        let p = nbrs
            .iter()
            .position(|&u| u == arrival[v])
            .expect("arrival edge is incident");
        for i in 0..nbrs.len() {
            let u = nbrs[(p + i) % nbrs.len()];
            if label[u] == usize::MAX {
                label[u] = next_label;
                next_label += 1;
                arrival[u] = v;
                queue.push_back(u);
                order.push(u);
            }
        }
    }
    let mut out = String::new();
    for &v in &order {
        let nbrs = g.neighbours(v);
        let p = nbrs
            .iter()
            .position(|&u| u == arrival[v])
            .expect("arrival edge is incident");
        let rotated: Vec<String> = (0..nbrs.len())
            .map(|i| label[nbrs[(p + i) % nbrs.len()]].to_string())
            .collect();
        let colour = match g.colour(v) {
            Colour::Black => 'b',
            Colour::White => 'w',
        };
        out.push_str(&format!("{}{}({});", label[v], colour, rotated.join(",")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_snake, Edge, SnakeSpec};
    use std::str::FromStr;

    fn g(word: &str) -> PlaneGraph {
        build_snake(&SnakeSpec::from_str(word).unwrap())
    }

    fn edge_set(g: &PlaneGraph) -> BTreeSet<Edge> {
        g.edges().iter().copied().collect()
    }

    #[test]
    fn rotation_is_an_involution_on_edges() {
        for (word, tile) in [
            ("RUR", 2),
            ("RURURU", 2),
            ("RRUURR", 2),
            ("RRUURR", 4),
            ("RUR", 1),
        ] {
            let graph = g(word);
            let once = rotate(&graph, tile).unwrap();
            let twice = rotate(&once, tile).unwrap();
            assert_eq!(edge_set(&graph), edge_set(&twice), "{word} tile {tile}");
            assert_ne!(edge_set(&graph), edge_set(&once), "{word} tile {tile}");
        }
    }

    #[test]
    fn rotation_rejects_bad_tiles() {
        let graph = g("RRUURR");
        assert!(matches!(
            rotate(&graph, 99),
            Err(GraphError::TileIndexOutOfRange { .. })
        ));
        assert!(matches!(
            rotate(&graph, 0),
            Err(GraphError::PartitionConditions(..))
        ));
        assert!(matches!(
            rotate(&graph, 6),
            Err(GraphError::PartitionConditions(..))
        ));
        // straight interior tiles have disjoint attachments
        assert!(matches!(
            rotate(&graph, 1),
            Err(GraphError::PartitionConditions(..))
        ));
        assert!(matches!(
            rotate(&graph, 3),
            Err(GraphError::PartitionConditions(..))
        ));
    }

    #[test]
    fn rotation_preserves_bipartition_and_colour_counts() {
        let graph = g("RURURU");
        let rotated = rotate(&graph, 2).unwrap();
        assert_eq!(rotated.vertex_count(), graph.vertex_count());
        assert_eq!(rotated.black_vertices(), graph.black_vertices());
        assert!(rotated.is_generalised());
    }

    #[test]
    fn blacken_fixes_mixed_turns() {
        for (m, n) in [(6, 2), (4, 2), (5, 2), (3, 2)] {
            let graph = build_snake(&SnakeSpec::staircase(m, n));
            let black = blacken(&graph).unwrap();
            let report = classify_turns(&black);
            assert!(
                matches!(report.turn_colour, TurnColour::Black | TurnColour::None),
                "S_{m},{n} gave {:?}",
                report.turn_colour
            );
        }
    }

    #[test]
    fn blacken_is_identity_on_black_graphs() {
        for word in ["", "RRRRR", "RRUURR", "RRUURRR"] {
            let graph = g(word);
            let black = blacken(&graph).unwrap();
            assert_eq!(edge_set(&graph), edge_set(&black), "word {word}");
        }
    }

    #[test]
    fn blacken_order_independent() {
        for len in 0..=7usize {
            for bits in 0..1u32 << len {
                let word: String = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { 'U' } else { 'R' })
                    .collect();
                let graph = g(&word);
                let fwd = blacken_with(&graph, PassOrder::Forward).unwrap();
                let rev = blacken_with(&graph, PassOrder::Reverse).unwrap();
                assert_eq!(canonical_code(&fwd), canonical_code(&rev), "word {word}");
            }
        }
    }

    #[test]
    fn blacken_s62_is_a_fan() {
        // the 7-tile staircase S_{6,2} becomes two squares and a five-tile
        // fan whose hub is a corner of every tile
        let black = blacken(&build_snake(&SnakeSpec::staircase(6, 2))).unwrap();
        assert_eq!(black.tile_count(), 7);
        let hub = (0..black.vertex_count())
            .max_by_key(|&v| black.tiles_at(v).len())
            .unwrap();
        assert_eq!(black.tiles_at(hub).len(), 7);
        assert_eq!(black.colour(hub), Colour::Black);
        assert_eq!(black.degree(hub), 8);
    }
}
