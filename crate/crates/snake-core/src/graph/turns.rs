//! Turn classification for snake and generalised snake graphs.

use super::{Colour, GraphError, PlaneGraph};

/// Colour class of the turn set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TurnColour {
    Black,
    White,
    Mixed,
    None,
}

/// All turns of a graph with their arities.
#[derive(Debug, Clone)]
pub struct TurnReport {
    /// `(vertex, arity)` pairs, sorted by vertex id. The arity of a turn is
    /// its number of neighbours; snake graphs only have 2- and 4-turns.
    pub turns: Vec<(usize, u32)>,
    /// Tiles carrying exactly two turns.
    pub turning_tiles: Vec<usize>,
    /// True unless turns of both colours occur.
    pub monochromatic: bool,
    pub turn_colour: TurnColour,
}

/// Classifies the turns of `g`.
///
/// For unrotated snake graphs a vertex is a turn when it has exactly 2 or 4
/// neighbours and is not one of the lower-left, lower-right or upper-left
/// corners of the first tile nor the upper-left, upper-right or lower-right
/// corners of the last tile. For generalised graphs the tile-membership rule
/// applies instead: any vertex of at least three tiles is a turn, as is a
/// vertex of exactly one tile that sits diagonally opposite such a vertex
/// and avoids the first and last tiles. Both rules agree on snake graphs.
pub fn classify_turns(g: &PlaneGraph) -> TurnReport {
    let turn_set: Vec<usize> = if g.is_generalised() {
        generalised_turns(g)
    } else {
        snake_turns(g)
    };
    let turns: Vec<(usize, u32)> = turn_set
        .into_iter()
        .map(|v| (v, g.degree(v) as u32))
        .collect();

    // a turning tile owns a diagonal pair made of its 2-turn and the
    // opposite higher-arity turn; neighbouring tiles can pick up two
    // higher-arity turns diagonally without being turning tiles themselves
    let is_turn = |v: usize| turns.iter().any(|&(t, _)| t == v);
    let turning_tiles: Vec<usize> = (0..g.tile_count())
        .filter(|&ti| {
            let t = &g.tiles()[ti];
            [(t[0], t[2]), (t[1], t[3])].iter().any(|&(p, q)| {
                let (two, big) = if g.degree(p) == 2 { (p, q) } else { (q, p) };
                g.degree(two) == 2 && g.degree(big) >= 4 && is_turn(two) && is_turn(big)
            })
        })
        .collect();

    let turn_colour = if turns.is_empty() {
        TurnColour::None
    } else {
        let mut black = false;
        let mut white = false;
        for &(v, _) in &turns {
            match g.colour(v) {
                Colour::Black => black = true,
                Colour::White => white = true,
            }
        }
        match (black, white) {
            (true, true) => TurnColour::Mixed,
            (true, false) => TurnColour::Black,
            (false, true) => TurnColour::White,
            (false, false) => unreachable!("turn set is nonempty"),
        }
    };

    TurnReport {
        monochromatic: turn_colour != TurnColour::Mixed,
        turns,
        turning_tiles,
        turn_colour,
    }
}

fn snake_turns(g: &PlaneGraph) -> Vec<usize> {
    // tiles are normalized to (LL, LR, UR, UL)
    let first = g.tiles()[0];
    let last = g.tiles()[g.tile_count() - 1];
    let excluded = [first[0], first[1], first[3], last[3], last[2], last[1]];
    (0..g.vertex_count())
        .filter(|&v| {
            let d = g.degree(v);
            (d == 2 || d == 4) && !excluded.contains(&v)
        })
        .collect()
}

fn generalised_turns(g: &PlaneGraph) -> Vec<usize> {
    let hubs: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.tiles_at(v).len() >= 3)
        .collect();
    let first = &g.tiles()[0];
    let last = &g.tiles()[g.tile_count() - 1];
    let mut out = hubs.clone();
    for v in 0..g.vertex_count() {
        let run = g.tiles_at(v);
        if run.len() != 1 || first.contains(&v) || last.contains(&v) {
            continue;
        }
        if hubs.contains(&g.opposite_corner(run[0], v)) {
            out.push(v);
        }
    }
    out.sort_unstable();
    out
}

/// Colour class of the turn set under the graph's colouring.
pub fn monochromatic_turns(g: &PlaneGraph) -> TurnColour {
    classify_turns(g).turn_colour
}

/// Which of the two boundary paths to read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// Neighbour counts of the black vertices along the chosen boundary, in
/// path order (the returned vector is 0-indexed; sources writing
/// `e_1, ..., e_k` mean entry `l - 1` here). The counts are the diagonal
/// entries of the corresponding tridiagonal block of `BB^T`, so the graph
/// must have black (or no) turns.
pub fn neighbour_counts(g: &PlaneGraph, side: Side) -> Result<Vec<i64>, GraphError> {
    match monochromatic_turns(g) {
        TurnColour::Black | TurnColour::None => {}
        other => return Err(GraphError::NonBlackTurns(other)),
    }
    let b = super::boundaries(g);
    let path = match side {
        Side::Upper => &b.upper,
        Side::Lower => &b.lower,
    };
    Ok(path
        .iter()
        .filter(|&&v| g.colour(v) == Colour::Black)
        .map(|&v| g.degree(v) as i64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_snake, SnakeSpec};
    use std::str::FromStr;

    fn g(word: &str) -> PlaneGraph {
        build_snake(&SnakeSpec::from_str(word).unwrap())
    }

    #[test]
    fn horizontal_has_no_turns() {
        let rep = classify_turns(&g("RRRRR"));
        assert!(rep.turns.is_empty());
        assert_eq!(rep.turn_colour, TurnColour::None);
        assert!(rep.monochromatic);
        assert!(rep.turning_tiles.is_empty());
    }

    #[test]
    fn l_shape_has_one_turning_tile() {
        let rep = classify_turns(&build_snake(&SnakeSpec::l_shaped(7, 5)));
        assert_eq!(rep.turns.len(), 2);
        let arities: Vec<u32> = rep.turns.iter().map(|&(_, a)| a).collect();
        assert!(arities.contains(&2) && arities.contains(&4));
        assert_eq!(rep.turning_tiles.len(), 1);
        assert_eq!(rep.turn_colour, TurnColour::Black);
    }

    #[test]
    fn staircase_s43_turns() {
        let rep = classify_turns(&build_snake(&SnakeSpec::staircase(4, 3)));
        assert_eq!(rep.turns.len(), 6);
        assert_eq!(rep.turning_tiles.len(), 3);
        assert_eq!(rep.turn_colour, TurnColour::Black);
    }

    #[test]
    fn fig_graph_black_and_s62_mixed() {
        assert_eq!(monochromatic_turns(&g("RRUURRR")), TurnColour::Black);
        assert_eq!(
            monochromatic_turns(&build_snake(&SnakeSpec::staircase(6, 2))),
            TurnColour::Mixed
        );
        assert_eq!(monochromatic_turns(&g("RRRR")), TurnColour::None);
    }

    #[test]
    fn every_snake_turn_is_a_2_or_4_turn_on_a_turning_tile() {
        for len in 0..=8usize {
            for bits in 0..1u32 << len {
                let word: String = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { 'U' } else { 'R' })
                    .collect();
                let rep = classify_turns(&g(&word));
                for &(_, arity) in &rep.turns {
                    assert!(arity == 2 || arity == 4, "word {word}");
                }
                assert_eq!(rep.turns.len(), 2 * rep.turning_tiles.len(), "word {word}");
            }
        }
    }

    #[test]
    fn monochromatic_iff_interior_runs_odd() {
        // interior maximal straight runs of tiles must have odd length
        for len in 0..=10usize {
            for bits in 0..1u32 << len {
                let word: Vec<char> = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { 'U' } else { 'R' })
                    .collect();
                let mut runs: Vec<(usize, usize)> = Vec::new(); // (letters, start)
                let mut i = 0;
                while i < len {
                    let mut j = i;
                    while j < len && word[j] == word[i] {
                        j += 1;
                    }
                    runs.push((j - i, i));
                    i = j;
                }
                let expect = runs.iter().enumerate().all(|(ri, &(letters, _))| {
                    let interior = ri > 0 && ri + 1 < runs.len();
                    !interior || (letters + 1) % 2 == 1
                });
                let rep = classify_turns(&g(&word.iter().collect::<String>()));
                assert_eq!(
                    rep.monochromatic,
                    expect,
                    "word {}",
                    word.iter().collect::<String>()
                );
            }
        }
    }

    #[test]
    fn neighbour_counts_examples() {
        let fig = g("RRUURRR");
        assert_eq!(
            neighbour_counts(&fig, Side::Lower).unwrap(),
            vec![3, 2, 4, 3]
        );
        assert_eq!(
            neighbour_counts(&fig, Side::Upper).unwrap(),
            vec![2, 4, 2, 3, 2]
        );
        let h2 = g("R");
        assert_eq!(neighbour_counts(&h2, Side::Lower).unwrap(), vec![3]);
        assert_eq!(neighbour_counts(&h2, Side::Upper).unwrap(), vec![2, 2]);
    }

    #[test]
    fn neighbour_counts_reject_white_turns() {
        let g = g("RRUURRR");
        let flipped: Vec<_> = (0..g.vertex_count()).map(|v| g.colour(v).flip()).collect();
        let white = g.with_colours(flipped);
        assert_eq!(monochromatic_turns(&white), TurnColour::White);
        assert!(matches!(
            neighbour_counts(&white, Side::Lower),
            Err(GraphError::NonBlackTurns(TurnColour::White))
        ));
    }

    #[test]
    fn neighbour_counts_reject_mixed_turns() {
        let s62 = build_snake(&SnakeSpec::staircase(6, 2));
        assert!(matches!(
            neighbour_counts(&s62, Side::Lower),
            Err(GraphError::NonBlackTurns(TurnColour::Mixed))
        ));
    }
}
