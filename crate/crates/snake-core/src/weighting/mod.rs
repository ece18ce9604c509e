//! Kasteleyn weightings and the weighted adjacency matrices they induce.
//!
//! A weighting assigns +1 or -1 to every edge. It is Kasteleyn when every
//! bounded square face carries an odd number of negative signs and the outer
//! k-gon face carries an odd number exactly when k is divisible by four.
//! For such weightings `|det B|` of the black-by-white adjacency block
//! counts the perfect matchings of the graph.

mod matrix;

pub use matrix::IntMatrix;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::{boundaries, Colour, Edge, PlaneGraph, TurnColour};

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("the snake weighting is defined only for unrotated snake graphs")]
    GeneralisedGraph,
    #[error("weighting is not total on the edge set")]
    NotTotal,
    #[error("weighting violates the Kasteleyn face conditions")]
    NotKasteleyn,
    #[error("operation requires black (or no) turns, found {0:?} turns")]
    NonBlackTurns(TurnColour),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("BB^T does not block-diagonalize over the boundary split")]
    BlocksNotSeparated,
}

/// An edge weighting with values in `{+1, -1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting {
    weights: BTreeMap<Edge, i8>,
}

impl Weighting {
    fn from_map(weights: BTreeMap<Edge, i8>) -> Weighting {
        debug_assert!(weights.values().all(|&w| w == 1 || w == -1));
        Weighting { weights }
    }

    pub fn sign(&self, e: Edge) -> i8 {
        self.weights[&e]
    }

    pub fn get(&self, e: Edge) -> Option<i8> {
        self.weights.get(&e).copied()
    }

    pub fn negative_edges(&self) -> Vec<Edge> {
        self.weights
            .iter()
            .filter(|&(_, &w)| w < 0)
            .map(|(&e, _)| e)
            .collect()
    }

    fn is_total_on(&self, g: &PlaneGraph) -> bool {
        self.weights.len() == g.edge_count()
            && g.edges().iter().all(|e| self.weights.contains_key(e))
    }
}

/// The explicit weighting for snake graphs: +1 on every upper- and
/// lower-boundary edge, and alternating signs starting from +1 on the start
/// edge along the remaining rung edges (start edge, the shared tile edges in
/// order, end edge).
pub fn snake_weighting(g: &PlaneGraph) -> Result<Weighting, WeightError> {
    if g.is_generalised() {
        return Err(WeightError::GeneralisedGraph);
    }
    let b = boundaries(g);
    let mut weights: BTreeMap<Edge, i8> = g.edges().iter().map(|&e| (e, 1i8)).collect();
    let mut rungs = vec![b.start_edge];
    for w in g.tiles().windows(2) {
        let shared = crate::graph::shared_corners(&w[0], &w[1]);
        rungs.push(Edge::new(shared[0], shared[1]));
    }
    rungs.push(b.end_edge);
    for (i, e) in rungs.into_iter().enumerate() {
        weights.insert(e, if i % 2 == 0 { 1 } else { -1 });
    }
    let w = Weighting::from_map(weights);
    debug_assert!(verify_kasteleyn(g, &w));
    Ok(w)
}

/// A Kasteleyn weighting valid for snake and generalised snake graphs.
///
/// All edges start at +1; walking the tiles in order (a leaves-first walk of
/// the path-shaped dual graph), every face with an even number of negative
/// signs gets one free edge flipped: the edge shared with the next tile, or
/// the end edge for the last tile. The outer face condition then holds
/// automatically because the graph is bipartite with balanced classes.
pub fn generic_weighting(g: &PlaneGraph) -> Result<Weighting, WeightError> {
    let mut weights: BTreeMap<Edge, i8> = g.edges().iter().map(|&e| (e, 1i8)).collect();
    let b = boundaries(g);
    let n = g.tile_count();
    for ti in 0..n {
        let t = &g.tiles()[ti];
        let negs = (0..4)
            .filter(|&i| weights[&Edge::new(t[i], t[(i + 1) % 4])] < 0)
            .count();
        if negs % 2 == 1 {
            continue;
        }
        let free = if ti + 1 < n {
            let shared = crate::graph::shared_corners(t, &g.tiles()[ti + 1]);
            Edge::new(shared[0], shared[1])
        } else {
            b.end_edge
        };
        let w = weights.get_mut(&free).expect("free edge exists");
        *w = -*w;
    }
    let w = Weighting::from_map(weights);
    if !verify_kasteleyn(g, &w) {
        return Err(WeightError::NotKasteleyn);
    }
    Ok(w)
}

/// Checks the face-parity conditions: every bounded 4-gon face has an odd
/// number of negative edges, and the outer k-gon has an odd number exactly
/// when `k % 4 == 0`.
pub fn verify_kasteleyn(g: &PlaneGraph, w: &Weighting) -> bool {
    if !w.is_total_on(g) {
        return false;
    }
    for t in g.tiles() {
        let negs = (0..4)
            .filter(|&i| w.sign(Edge::new(t[i], t[(i + 1) % 4])) < 0)
            .count();
        if negs % 2 == 0 {
            return false;
        }
    }
    let outer = g.outer_cycle();
    let k = outer.len();
    let negs = (0..k)
        .filter(|&i| w.sign(Edge::new(outer[i], outer[(i + 1) % k])) < 0)
        .count();
    if k % 4 == 0 {
        negs % 2 == 1
    } else {
        negs % 2 == 0
    }
}

/// Gauge transformation: flips the sign of every edge incident to `v`.
/// Kasteleyn validity is preserved because every face meets `v` in zero or
/// two of its edges.
pub fn gauge(g: &PlaneGraph, w: &Weighting, v: usize) -> Result<Weighting, WeightError> {
    if v >= g.vertex_count() {
        return Err(WeightError::UnknownVertex(v));
    }
    if !w.is_total_on(g) {
        return Err(WeightError::NotTotal);
    }
    let mut weights = w.weights.clone();
    for &u in g.neighbours(v) {
        let s = weights.get_mut(&Edge::new(v, u)).expect("incident edge");
        *s = -*s;
    }
    Ok(Weighting::from_map(weights))
}

/// Vertex order used by all matrices: black vertices by id, then white
/// vertices by id.
pub fn bipartite_order(g: &PlaneGraph) -> Vec<usize> {
    let mut order = g.black_vertices();
    order.extend(g.white_vertices());
    order
}

/// The full weighted adjacency matrix `A`, symmetric with zero diagonal,
/// over the black-then-white vertex order.
pub fn adjacency_matrix(g: &PlaneGraph, w: &Weighting) -> IntMatrix {
    let order = bipartite_order(g);
    let mut m = IntMatrix::zeros(order.len(), order.len());
    for (i, &u) in order.iter().enumerate() {
        for (j, &v) in order.iter().enumerate() {
            if g.has_edge(u, v) {
                m.set(i, j, BigInt::from(w.sign(Edge::new(u, v))));
            }
        }
    }
    m.set_labels(order.clone(), order);
    m
}

/// The bipartite block `B` of `A`: rows are black vertices, columns white.
pub fn bipartite_matrix(g: &PlaneGraph, w: &Weighting) -> IntMatrix {
    let blacks = g.black_vertices();
    let whites = g.white_vertices();
    let mut m = IntMatrix::zeros(blacks.len(), whites.len());
    for (i, &u) in blacks.iter().enumerate() {
        for (j, &v) in whites.iter().enumerate() {
            if g.has_edge(u, v) {
                m.set(i, j, BigInt::from(w.sign(Edge::new(u, v))));
            }
        }
    }
    m.set_labels(blacks, whites);
    m
}

/// The oriented (skew-symmetric) adjacency matrix: edges weighted +1 point
/// black to white, edges weighted -1 point white to black, so the matrix is
/// `[[0, B], [-B^T, 0]]` over the black-then-white order and its Pfaffian
/// squares to `det(BB^T) = M(G)^2`.
pub fn oriented_adjacency(g: &PlaneGraph, w: &Weighting) -> IntMatrix {
    let order = bipartite_order(g);
    let mut m = IntMatrix::zeros(order.len(), order.len());
    for (i, &u) in order.iter().enumerate() {
        for (j, &v) in order.iter().enumerate() {
            if g.has_edge(u, v) {
                let s = BigInt::from(w.sign(Edge::new(u, v)));
                let oriented = if g.colour(u) == Colour::Black { s } else { -s };
                m.set(i, j, oriented);
            }
        }
    }
    m.set_labels(order.clone(), order);
    m
}

/// The two tridiagonal diagonal blocks of `BB^T`, indexed by the black
/// vertices of the upper and lower boundary in path order.
#[derive(Debug, Clone)]
pub struct GramBlocks {
    pub upper: IntMatrix,
    pub lower: IntMatrix,
}

impl GramBlocks {
    /// Diagonal entries of a block (the boundary neighbour counts).
    pub fn diagonal(m: &IntMatrix) -> Vec<BigInt> {
        (0..m.rows()).map(|i| m.get(i, i).clone()).collect()
    }
}

/// Splits `BB^T` into its upper- and lower-boundary blocks.
///
/// Requires black (or no) turns and a Kasteleyn weighting; entries between
/// the two boundary index sets must vanish. The returned blocks are
/// normalized by a diagonal sign similarity so all off-diagonal entries are
/// +1, matching the tridiagonal normal form; this changes no diagonal entry
/// and no spectrum.
pub fn gram_blocks(g: &PlaneGraph, w: &Weighting) -> Result<GramBlocks, WeightError> {
    match crate::graph::monochromatic_turns(g) {
        TurnColour::Black | TurnColour::None => {}
        other => return Err(WeightError::NonBlackTurns(other)),
    }
    if !verify_kasteleyn(g, w) {
        return Err(WeightError::NotKasteleyn);
    }
    let b = bipartite_matrix(g, w);
    let gram = b.mul(&b.transpose());

    let bd = boundaries(g);
    let blacks = g.black_vertices();
    let index_of = |v: usize| blacks.iter().position(|&b| b == v).expect("black vertex");
    let path_blacks = |path: &[usize]| -> Vec<usize> {
        path.iter()
            .copied()
            .filter(|&v| g.colour(v) == Colour::Black)
            .collect()
    };
    let upper_ids = path_blacks(&bd.upper);
    let lower_ids = path_blacks(&bd.lower);
    if upper_ids.len() + lower_ids.len() != blacks.len() {
        return Err(WeightError::BlocksNotSeparated);
    }
    for &u in &upper_ids {
        for &l in &lower_ids {
            if !gram.get(index_of(u), index_of(l)).is_zero() {
                return Err(WeightError::BlocksNotSeparated);
            }
        }
    }
    let extract = |ids: &[usize]| -> Result<IntMatrix, WeightError> {
        let k = ids.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, &u) in ids.iter().enumerate() {
            for (j, &v) in ids.iter().enumerate() {
                m.set(i, j, gram.get(index_of(u), index_of(v)).clone());
            }
        }
        m.set_labels(ids.to_vec(), ids.to_vec());
        normalize_tridiagonal(&mut m)?;
        Ok(m)
    };
    Ok(GramBlocks {
        upper: extract(&upper_ids)?,
        lower: extract(&lower_ids)?,
    })
}

/// Checks the block is tridiagonal with off-diagonal entries of absolute
/// value one and rescales rows/columns by signs until they are all +1.
fn normalize_tridiagonal(m: &mut IntMatrix) -> Result<(), WeightError> {
    let k = m.rows();
    for i in 0..k {
        for j in 0..k {
            let v = m.get(i, j);
            let ok = match i.abs_diff(j) {
                0 => true,
                1 => v == &BigInt::from(1) || v == &BigInt::from(-1),
                _ => v.is_zero(),
            };
            if !ok {
                return Err(WeightError::BlocksNotSeparated);
            }
        }
    }
    // diag(d) * M * diag(d) with d_0 = 1 and d_{i+1} = d_i * sign(M[i][i+1])
    let mut d = vec![1i8; k];
    for i in 0..k.saturating_sub(1) {
        let s = if m.get(i, i + 1) > &BigInt::zero() {
            1
        } else {
            -1
        };
        d[i + 1] = d[i] * s;
    }
    for i in 0..k {
        for j in 0..k {
            let v = m.get(i, j) * BigInt::from(d[i] as i64 * d[j] as i64);
            m.set(i, j, v);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_snake, neighbour_counts, rotate, Side, SnakeSpec};
    use crate::polynomials::tridiag_charpoly;
    use std::str::FromStr;

    fn g(word: &str) -> PlaneGraph {
        build_snake(&SnakeSpec::from_str(word).unwrap())
    }

    fn rung_signs(graph: &PlaneGraph, w: &Weighting) -> Vec<i8> {
        let b = boundaries(graph);
        let mut rungs = vec![b.start_edge];
        for win in graph.tiles().windows(2) {
            let shared = crate::graph::shared_corners(&win[0], &win[1]);
            rungs.push(Edge::new(shared[0], shared[1]));
        }
        rungs.push(b.end_edge);
        rungs.into_iter().map(|e| w.sign(e)).collect()
    }

    #[test]
    fn snake_weighting_alternates_rung_signs() {
        // the 8-tile S-shaped graph gets -1 exactly on rungs 2, 4, 6, 8 (of 9)
        let graph = g("RRUURRR");
        let w = snake_weighting(&graph).unwrap();
        assert_eq!(rung_signs(&graph, &w), vec![1, -1, 1, -1, 1, -1, 1, -1, 1]);
        for e in boundaries(&graph).upper.windows(2) {
            assert_eq!(w.sign(Edge::new(e[0], e[1])), 1);
        }
        assert!(verify_kasteleyn(&graph, &w));
    }

    #[test]
    fn h2_rung_signs() {
        let graph = g("R");
        let w = snake_weighting(&graph).unwrap();
        assert_eq!(rung_signs(&graph, &w), vec![1, -1, 1]);
    }

    #[test]
    fn single_tile_weighting_is_kasteleyn() {
        let graph = g("");
        let w = snake_weighting(&graph).unwrap();
        assert!(verify_kasteleyn(&graph, &w));
        assert_eq!(w.negative_edges().len(), 1);
    }

    #[test]
    fn all_positive_fails_on_single_tile() {
        let graph = g("");
        let weights = graph.edges().iter().map(|&e| (e, 1i8)).collect();
        let w = Weighting::from_map(weights);
        assert!(!verify_kasteleyn(&graph, &w));
    }

    #[test]
    fn flipping_one_boundary_edge_breaks_kasteleyn() {
        let graph = g("RRUURRR");
        let mut w = snake_weighting(&graph).unwrap();
        let b = boundaries(&graph);
        let e = Edge::new(b.upper[0], b.upper[1]);
        *w.weights.get_mut(&e).unwrap() = -1;
        assert!(!verify_kasteleyn(&graph, &w));
    }

    #[test]
    fn generic_weighting_valid_everywhere() {
        for word in ["", "R", "RRRRR", "RRUURR", "RRUURRR", "RURURU"] {
            let graph = g(word);
            let w = generic_weighting(&graph).unwrap();
            assert!(verify_kasteleyn(&graph, &w), "word {word}");
        }
        // and on a rotated graph, where the snake weighting refuses
        let rotated = rotate(&g("RURURU"), 2).unwrap();
        assert!(matches!(
            snake_weighting(&rotated),
            Err(WeightError::GeneralisedGraph)
        ));
        let w = generic_weighting(&rotated).unwrap();
        assert!(verify_kasteleyn(&rotated, &w));
    }

    #[test]
    fn gauge_is_involution_and_preserves_kasteleyn() {
        let graph = g("RRUURR");
        let w = snake_weighting(&graph).unwrap();
        let det = bipartite_matrix(&graph, &w).det();
        for v in [0, 3, 7] {
            let once = gauge(&graph, &w, v).unwrap();
            assert!(verify_kasteleyn(&graph, &once));
            assert_eq!(
                num_traits::Signed::abs(&bipartite_matrix(&graph, &once).det()),
                num_traits::Signed::abs(&det)
            );
            let twice = gauge(&graph, &once, v).unwrap();
            assert_eq!(twice, w);
        }
        assert!(matches!(
            gauge(&graph, &w, 999),
            Err(WeightError::UnknownVertex(999))
        ));
    }

    #[test]
    fn snake_and_generic_weightings_are_gauge_equivalent_on_h3() {
        // same |det B| and the same adjacency spectrum
        let graph = g("RR");
        let ws = snake_weighting(&graph).unwrap();
        let wg = generic_weighting(&graph).unwrap();
        assert_eq!(
            num_traits::Signed::abs(&bipartite_matrix(&graph, &ws).det()),
            num_traits::Signed::abs(&bipartite_matrix(&graph, &wg).det())
        );
        assert_eq!(
            crate::polynomials::charpoly_exact(&adjacency_matrix(&graph, &ws)),
            crate::polynomials::charpoly_exact(&adjacency_matrix(&graph, &wg))
        );
    }

    #[test]
    fn oriented_adjacency_of_h6() {
        // det of the skew matrix is M(H_6)^2 = 21^2 and equals det BB^T
        let graph = g("RRRRR");
        let w = snake_weighting(&graph).unwrap();
        let skew = oriented_adjacency(&graph, &w);
        assert_eq!(skew.det(), BigInt::from(441));
        let b = bipartite_matrix(&graph, &w);
        assert_eq!(b.mul(&b.transpose()).det(), BigInt::from(441));
    }

    #[test]
    fn adjacency_matrices_structure() {
        let graph = g("");
        let w = snake_weighting(&graph).unwrap();
        let a = adjacency_matrix(&graph, &w);
        assert!(a.is_symmetric());
        assert!(a.has_zero_diagonal());
        assert_eq!(num_traits::Signed::abs(&a.det()), BigInt::from(4));
        let b = bipartite_matrix(&graph, &w);
        assert_eq!(num_traits::Signed::abs(&b.det()), BigInt::from(2));
        // A carries B as its black-by-white block and zeros on the diagonal blocks
        let k = b.rows();
        for i in 0..k {
            for j in 0..k {
                assert_eq!(a.get(i, k + j), b.get(i, j));
                assert!(a.get(i, j).is_zero());
                assert!(a.get(k + i, k + j).is_zero());
            }
        }
        let skew = oriented_adjacency(&graph, &w);
        assert!(skew.is_skew_symmetric());
        assert_eq!(skew.det(), BigInt::from(4));
    }

    #[test]
    fn gram_blocks_h2() {
        let graph = g("R");
        let w = snake_weighting(&graph).unwrap();
        let blocks = gram_blocks(&graph, &w).unwrap();
        let diag = |m: &IntMatrix| -> Vec<i64> {
            GramBlocks::diagonal(m)
                .iter()
                .map(|v| i64::try_from(v).unwrap())
                .collect()
        };
        // upper boundary holds the degree-3 black vertex
        assert_eq!(diag(&blocks.upper), vec![2, 2]);
        assert_eq!(diag(&blocks.lower), vec![3]);
    }

    #[test]
    fn gram_blocks_match_neighbour_counts_and_charpoly() {
        for word in ["", "R", "RRRRR", "RRUURR", "RRUURRR", "RRUURRUU"] {
            let graph = g(word);
            for w in [
                snake_weighting(&graph).unwrap(),
                generic_weighting(&graph).unwrap(),
            ] {
                let blocks = gram_blocks(&graph, &w).unwrap();
                for (side, m) in [(Side::Upper, &blocks.upper), (Side::Lower, &blocks.lower)] {
                    let e = neighbour_counts(&graph, side).unwrap();
                    let diag: Vec<i64> = GramBlocks::diagonal(m)
                        .iter()
                        .map(|v| i64::try_from(v).unwrap())
                        .collect();
                    assert_eq!(diag, e, "word {word}");
                    assert_eq!(
                        crate::polynomials::charpoly_exact(m),
                        tridiag_charpoly(&e),
                        "word {word}"
                    );
                }
            }
        }
    }

    #[test]
    fn gram_blocks_reject_mixed_turns() {
        let graph = build_snake(&SnakeSpec::staircase(6, 2));
        let w = generic_weighting(&graph).unwrap();
        assert!(matches!(
            gram_blocks(&graph, &w),
            Err(WeightError::NonBlackTurns(TurnColour::Mixed))
        ));
    }

    #[test]
    fn charpoly_of_a_is_charpoly_of_gram_in_t_squared() {
        use crate::polynomials::{charpoly_exact, IntPoly};
        for word in ["", "R", "RRR", "RRUURR"] {
            let graph = g(word);
            let w = snake_weighting(&graph).unwrap();
            let a = adjacency_matrix(&graph, &w);
            let b = bipartite_matrix(&graph, &w);
            let gram = b.mul(&b.transpose());
            let lhs = charpoly_exact(&a);
            let rhs = charpoly_exact(&gram).compose(&IntPoly::from_i64(&[0, 0, 1]));
            assert_eq!(lhs, rhs, "word {word}");
        }
    }
}
