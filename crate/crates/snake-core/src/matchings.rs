//! Perfect matchings: the brute-force enumeration oracle, the determinant
//! counter, the continued-fraction counter, and the explicit bijection check
//! for rotations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::contfrac::matchings_from_boundary;
use crate::graph::{blacken, neighbour_counts, rotation_data, Edge, GraphError, PlaneGraph, Side};
use crate::weighting::{bipartite_matrix, generic_weighting, snake_weighting, WeightError};

#[derive(Debug, Error)]
pub enum MatchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("the two boundary counts disagree: {lower} (lower) vs {upper} (upper)")]
    BoundaryMismatch { lower: BigInt, upper: BigInt },
    #[error("rotation bijection failed on matching {matching:?}: image {image:?} is invalid")]
    BijectionFailed {
        matching: Vec<Edge>,
        image: Vec<Edge>,
    },
}

/// A perfect matching, kept as a sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matching {
    pub edges: Vec<Edge>,
}

impl Matching {
    fn new(mut edges: Vec<Edge>) -> Matching {
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|e| e.touches(v))
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// Counts the perfect matchings by backtracking over the vertices in id
/// order, optionally collecting the matchings themselves in a canonical
/// sorted order. The count of the empty edge set over zero vertices is 1.
///
/// When `SNAKESPEC_THREADS` is set above 1, the branches of the first
/// vertex are explored on that many worker threads; the result does not
/// depend on the schedule.
pub fn enumerate_matchings(g: &PlaneGraph, collect: bool) -> (BigInt, Option<Vec<Matching>>) {
    let threads = std::env::var("SNAKESPEC_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1);

    let branches: Vec<Edge> = g.neighbours(0).iter().map(|&u| Edge::new(0, u)).collect();
    let run_branch = |first: Edge| -> (BigInt, Vec<Matching>) {
        let mut covered = vec![false; g.vertex_count()];
        covered[first.0] = true;
        covered[first.1] = true;
        let mut stack = vec![first];
        let mut count = BigInt::from(0);
        let mut found = Vec::new();
        backtrack(g, &mut covered, &mut stack, &mut count, collect, &mut found);
        (count, found)
    };

    let results: Vec<(BigInt, Vec<Matching>)> = if threads > 1 && branches.len() > 1 {
        std::thread::scope(|scope| {
            let rb = &run_branch;
            let handles: Vec<_> = branches
                .iter()
                .map(|&b| scope.spawn(move || rb(b)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker"))
                .collect()
        })
    } else {
        branches.iter().map(|&b| run_branch(b)).collect()
    };

    let mut count = BigInt::from(0);
    let mut all = Vec::new();
    for (c, ms) in results {
        count += c;
        all.extend(ms);
    }
    all.sort_unstable();
    (count, collect.then_some(all))
}

fn backtrack(
    g: &PlaneGraph,
    covered: &mut Vec<bool>,
    stack: &mut Vec<Edge>,
    count: &mut BigInt,
    collect: bool,
    found: &mut Vec<Matching>,
) {
    let Some(v) = covered.iter().position(|&c| !c) else {
        *count += 1;
        if collect {
            found.push(Matching::new(stack.clone()));
        }
        return;
    };
    covered[v] = true;
    for &u in g.neighbours(v) {
        if covered[u] {
            continue;
        }
        covered[u] = true;
        stack.push(Edge::new(v, u));
        backtrack(g, covered, stack, count, collect, found);
        stack.pop();
        covered[u] = false;
    }
    covered[v] = false;
}

/// The matching count alone.
pub fn count_matchings(g: &PlaneGraph) -> BigInt {
    enumerate_matchings(g, false).0
}

/// `M(G) = |det B|` for the bipartite block of any Kasteleyn weighting: the
/// explicit snake weighting when available, the generic one otherwise.
pub fn count_via_determinant(g: &PlaneGraph) -> Result<BigInt, MatchError> {
    let w = if g.is_generalised() {
        generic_weighting(g)?
    } else {
        snake_weighting(g)?
    };
    Ok(bipartite_matrix(g, &w).det().abs())
}

/// Counts matchings through the continued-fraction route: blacken if
/// needed, read the neighbour counts of both boundaries, and evaluate the
/// negative-continued-fraction numerators at zero. The two boundaries must
/// agree; the common value is returned.
pub fn count_via_contfrac(g: &PlaneGraph) -> Result<BigInt, MatchError> {
    let black = blacken(g)?;
    let lower = matchings_from_boundary(&neighbour_counts(&black, Side::Lower)?);
    let upper = matchings_from_boundary(&neighbour_counts(&black, Side::Upper)?);
    if lower != upper {
        return Err(MatchError::BoundaryMismatch { lower, upper });
    }
    Ok(lower)
}

/// Verifies the explicit matching bijection behind a rotation: matchings
/// through the tile edge `(A, D)` or `(C, D)` map to themselves; a matching
/// using `(A, B)`, `(D, S_i)` and `(C, R_j)` trades those three edges for
/// `(C, D)`, `(B, S_i)` and `(A, R_j)`. The image set must be exactly the
/// matching set of the rotated graph.
pub fn rotation_bijection_check(g: &PlaneGraph, tile: usize) -> Result<(), MatchError> {
    let rd = rotation_data(g, tile)?;
    let rotated = crate::graph::rotate(g, tile)?;
    let (_, source) = enumerate_matchings(g, true);
    let (_, target) = enumerate_matchings(&rotated, true);
    let source = source.expect("collected");
    let target: BTreeSet<Matching> = target.expect("collected").into_iter().collect();

    let mut images = BTreeSet::new();
    for m in &source {
        let image = if m.contains(Edge::new(rd.a, rd.d)) || m.contains(Edge::new(rd.c, rd.d)) {
            m.clone()
        } else {
            // A is matched along (A, B); D and C are matched into the tail
            debug_assert!(m.contains(Edge::new(rd.a, rd.b)));
            let s_edge =
                rd.s.iter()
                    .map(|&s| Edge::new(rd.d, s))
                    .find(|&e| m.contains(e));
            let r_edge =
                rd.r.iter()
                    .map(|&r| Edge::new(rd.c, r))
                    .find(|&e| m.contains(e));
            let (Some(se), Some(re)) = (s_edge, r_edge) else {
                return Err(MatchError::BijectionFailed {
                    matching: m.edges.clone(),
                    image: Vec::new(),
                });
            };
            let mut edges: Vec<Edge> = m
                .edges
                .iter()
                .copied()
                .filter(|&e| e != Edge::new(rd.a, rd.b) && e != se && e != re)
                .collect();
            edges.push(Edge::new(rd.c, rd.d));
            edges.push(Edge::new(rd.b, se.other(rd.d)));
            edges.push(Edge::new(rd.a, re.other(rd.c)));
            Matching::new(edges)
        };
        if !target.contains(&image) || !images.insert(image.clone()) {
            return Err(MatchError::BijectionFailed {
                matching: m.edges.clone(),
                image: image.edges,
            });
        }
    }
    if images.len() != target.len() {
        return Err(MatchError::BijectionFailed {
            matching: Vec::new(),
            image: Vec::new(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_snake, rotate, SnakeSpec};
    use std::str::FromStr;

    fn g(word: &str) -> PlaneGraph {
        build_snake(&SnakeSpec::from_str(word).unwrap())
    }

    #[test]
    fn counts_of_named_graphs() {
        for (word, m) in [
            ("", 2i64),
            ("R", 3),
            ("RR", 5),
            ("RRRRR", 21),
            ("RRUURR", 29),
            ("RRUURRR", 46),
            ("RUR", 5),
            ("RURURU", 8),
            ("RRUURRUU", 70),
            ("RRUU", 12),
        ] {
            assert_eq!(count_matchings(&g(word)), BigInt::from(m), "word {word}");
        }
    }

    #[test]
    fn every_snake_has_a_matching() {
        for len in 0..=8usize {
            for bits in 0..1u32 << len {
                let word: String = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { 'U' } else { 'R' })
                    .collect();
                assert!(count_matchings(&g(&word)) >= BigInt::from(1));
            }
        }
    }

    #[test]
    fn collected_list_matches_count_and_is_canonical() {
        let graph = g("RRU");
        let (count, list) = enumerate_matchings(&graph, true);
        let list = list.unwrap();
        assert_eq!(BigInt::from(list.len()), count);
        let mut sorted = list.clone();
        sorted.sort_unstable();
        assert_eq!(list, sorted);
        for m in &list {
            assert!((0..graph.vertex_count()).all(|v| m.covers(v)));
            assert_eq!(m.edges.len() * 2, graph.vertex_count());
        }
    }

    #[test]
    fn determinant_and_contfrac_agree_with_enumeration() {
        for word in ["", "R", "RRRRR", "RRUURR", "RRUURRR", "RURURU", "RRUURRUU"] {
            let graph = g(word);
            let m = count_matchings(&graph);
            assert_eq!(count_via_determinant(&graph).unwrap(), m, "det {word}");
            assert_eq!(count_via_contfrac(&graph).unwrap(), m, "cf {word}");
        }
    }

    #[test]
    fn counts_invariant_under_rotation_and_blacken() {
        let graph = g("RURURU");
        let m = count_matchings(&graph);
        let rotated = rotate(&graph, 2).unwrap();
        assert_eq!(count_matchings(&rotated), m);
        assert_eq!(count_via_determinant(&rotated).unwrap(), m);
        let black = blacken(&graph).unwrap();
        assert_eq!(count_matchings(&black), m);
    }

    #[test]
    fn bijection_check_small() {
        for (word, tile) in [
            ("RUR", 2),
            ("RUR", 1),
            ("RURURU", 2),
            ("RRUURR", 2),
            ("RRUURR", 4),
        ] {
            rotation_bijection_check(&g(word), tile).unwrap();
        }
    }

    #[test]
    fn bijection_check_rejects_straight_tiles() {
        assert!(rotation_bijection_check(&g("RRRRR"), 2).is_err());
    }

    #[test]
    fn threaded_enumeration_matches() {
        let graph = g("RRUURRR");
        std::env::set_var("SNAKESPEC_THREADS", "3");
        let (count, list) = enumerate_matchings(&graph, true);
        std::env::remove_var("SNAKESPEC_THREADS");
        let (count1, list1) = enumerate_matchings(&graph, true);
        assert_eq!(count, count1);
        assert_eq!(list, list1);
    }
}
