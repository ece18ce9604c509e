//! Construction of snake graphs from direction words.

use std::collections::BTreeMap;

use super::turns::{classify_turns, TurnColour};
use super::{Colour, Dir, PlaneGraph, SnakeSpec};

/// Builds the snake graph of a direction word on the integer grid, with the
/// first tile's lower-left corner at the origin.
///
/// The bipartition colours vertices by coordinate-sum parity. When the turn
/// set is monochromatic the parity class containing the turns is coloured
/// black; when there are no turns the odd class is black (the convention
/// under which the lower boundary carries the classical sign sequence of a
/// horizontal snake); for two-coloured turn sets the lower-left origin is
/// black.
pub fn build_snake(spec: &SnakeSpec) -> PlaneGraph {
    let mut lower_left = (0i64, 0i64);
    let mut tile_corners: Vec<[(i64, i64); 4]> = vec![corners(lower_left)];
    for d in spec.dirs() {
        match d {
            Dir::R => lower_left.0 += 1,
            Dir::U => lower_left.1 += 1,
        }
        tile_corners.push(corners(lower_left));
    }

    let mut ids: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut coords: Vec<(i64, i64)> = Vec::new();
    let mut tiles: Vec<[usize; 4]> = Vec::new();
    for tc in &tile_corners {
        let mut tile = [0usize; 4];
        for (slot, &c) in tile.iter_mut().zip(tc.iter()) {
            *slot = *ids.entry(c).or_insert_with(|| {
                coords.push(c);
                coords.len() - 1
            });
        }
        tiles.push(tile);
    }

    let first_tile_up = spec.dirs().first() == Some(&Dir::U);
    let provisional: Vec<Colour> = coords.iter().map(|c| parity_colour(*c, 1)).collect();
    let graph = PlaneGraph::assemble(coords.clone(), provisional, tiles, false, first_tile_up)
        .expect("direction words always assemble");

    let report = classify_turns(&graph);
    let black_parity = match report.turn_colour {
        TurnColour::None => 1,
        TurnColour::Mixed => 0,
        TurnColour::Black | TurnColour::White => {
            let (v, _) = report.turns[0];
            let (x, y) = graph.coord(v);
            (x + y).rem_euclid(2)
        }
    };
    let colours: Vec<Colour> = coords
        .iter()
        .map(|c| parity_colour(*c, black_parity))
        .collect();
    graph.with_colours(colours)
}

fn corners((x, y): (i64, i64)) -> [(i64, i64); 4] {
    [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
}

fn parity_colour((x, y): (i64, i64), black_parity: i64) -> Colour {
    if (x + y).rem_euclid(2) == black_parity {
        Colour::Black
    } else {
        Colour::White
    }
}
