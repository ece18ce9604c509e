//! The cross-validation suite: runs every identity the library promises on
//! one graph and reports pass/fail per check. Exercised by the command-line
//! `verify` verb and by the acceptance tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::contfrac::{charpoly_from_boundary, matchings_from_boundary, sign_sequence_of};
use crate::graph::{
    blacken, blacken_with, canonical_code, classify_turns, rotation_data, PassOrder, PlaneGraph,
    Side, TurnColour,
};
use crate::matchings::{count_matchings, rotation_bijection_check};
use crate::polynomials::{charpoly_exact, tridiag_eigenvalues, IntPoly};
use crate::weighting::{
    adjacency_matrix, bipartite_matrix, gauge, generic_weighting, gram_blocks, oriented_adjacency,
    snake_weighting, verify_kasteleyn, GramBlocks,
};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            name,
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            name,
            passed: false,
            detail: detail.into(),
        }
    }

    fn of(name: &'static str, ok: bool, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            name,
            passed: ok,
            detail: detail.into(),
        }
    }
}

/// Runs the full invariant suite on a graph. Randomized parts (gauge orbits)
/// draw from a seeded generator, so results are reproducible.
pub fn run_graph_suite(g: &PlaneGraph, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let m = count_matchings(g);
    out.push(CheckResult::pass("enumeration", format!("M = {m}")));

    // Kasteleyn weightings: explicit (snakes) and generic
    let mut weightings = Vec::new();
    if !g.is_generalised() {
        match snake_weighting(g) {
            Ok(w) => {
                out.push(CheckResult::of(
                    "snake-weighting-kasteleyn",
                    verify_kasteleyn(g, &w),
                    "face parities of the explicit snake weighting",
                ));
                weightings.push(("snake", w));
            }
            Err(e) => out.push(CheckResult::fail(
                "snake-weighting-kasteleyn",
                e.to_string(),
            )),
        }
    }
    match generic_weighting(g) {
        Ok(w) => {
            out.push(CheckResult::of(
                "generic-weighting-kasteleyn",
                verify_kasteleyn(g, &w),
                "face parities of the generic weighting",
            ));
            weightings.push(("generic", w));
        }
        Err(e) => out.push(CheckResult::fail(
            "generic-weighting-kasteleyn",
            e.to_string(),
        )),
    }

    for (tag, w) in &weightings {
        let a = adjacency_matrix(g, w);
        let b = bipartite_matrix(g, w);
        let det_a = a.det();
        let det_b = b.det();
        out.push(CheckResult::of(
            "det-identities",
            det_a.abs() == &m * &m && det_b.abs() == m,
            format!(
                "{tag}: |det A| = {} and |det B| = {}",
                det_a.abs(),
                det_b.abs()
            ),
        ));
        let skew = oriented_adjacency(g, w);
        out.push(CheckResult::of(
            "pfaffian-orientation",
            skew.is_skew_symmetric() && skew.det() == &m * &m,
            format!("{tag}: det of the oriented matrix = {}", skew.det()),
        ));
        let gram = b.mul(&b.transpose());
        out.push(CheckResult::of(
            "gram-determinant",
            gram.det() == &m * &m,
            format!("{tag}: det BB^T = {}", gram.det()),
        ));
        let char_a = charpoly_exact(&a);
        let char_gram = charpoly_exact(&gram);
        out.push(CheckResult::of(
            "charpoly-squares",
            char_a == char_gram.compose(&IntPoly::from_i64(&[0, 0, 1])),
            format!("{tag}: charpoly(A)(t) vs charpoly(BB^T)(t^2)"),
        ));
    }

    // gauge orbit: validity and exact spectral invariance
    if let Some((_, w0)) = weightings.first() {
        let mut w = w0.clone();
        let reference = charpoly_exact(&adjacency_matrix(g, &w));
        let mut ok = true;
        for _ in 0..10 {
            let v = rng.gen_range(0..g.vertex_count());
            w = match gauge(g, &w, v) {
                Ok(next) => next,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            if !verify_kasteleyn(g, &w) || charpoly_exact(&adjacency_matrix(g, &w)) != reference {
                ok = false;
                break;
            }
        }
        out.push(CheckResult::of(
            "gauge-orbit",
            ok,
            "10 random gauges keep Kasteleyn validity and charpoly(A)",
        ));
    }

    // boundary machinery on the blackened graph
    match blacken(g) {
        Ok(black) => {
            let report = classify_turns(&black);
            out.push(CheckResult::of(
                "blacken-turns",
                matches!(report.turn_colour, TurnColour::Black | TurnColour::None),
                format!("turn colour after blackening: {:?}", report.turn_colour),
            ));
            out.push(CheckResult::of(
                "blacken-matchings",
                count_matchings(&black) == m,
                "matching count preserved by blackening",
            ));
            match blacken_with(g, PassOrder::Reverse) {
                Ok(rev) => out.push(CheckResult::of(
                    "blacken-unique",
                    canonical_code(&black) == canonical_code(&rev),
                    "forward and reverse rotation orders reach the same graph",
                )),
                Err(e) => out.push(CheckResult::fail("blacken-unique", e.to_string())),
            }
            out.extend(boundary_checks(&black, &m));
        }
        Err(e) => out.push(CheckResult::fail("blacken-turns", e.to_string())),
    }

    // explicit matching bijection for each legal rotation
    let mut legal = 0;
    let mut bijections_ok = true;
    for tile in 1..g.tile_count().saturating_sub(1) {
        if rotation_data(g, tile).is_err() {
            continue;
        }
        legal += 1;
        if let Err(e) = rotation_bijection_check(g, tile) {
            bijections_ok = false;
            out.push(CheckResult::fail("rotation-bijection", e.to_string()));
            break;
        }
    }
    if bijections_ok {
        out.push(CheckResult::pass(
            "rotation-bijection",
            format!("explicit bijection verified at {legal} tiles"),
        ));
    }

    out
}

fn boundary_checks(black: &PlaneGraph, m: &BigInt) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let Ok(w) = generic_weighting(black) else {
        return vec![CheckResult::fail("gram-blocks", "no generic weighting")];
    };
    match gram_blocks(black, &w) {
        Ok(blocks) => {
            let diag_to_i64 = |mat: &crate::weighting::IntMatrix| -> Vec<i64> {
                GramBlocks::diagonal(mat)
                    .iter()
                    .map(|v| i64::try_from(v).expect("small degrees"))
                    .collect()
            };
            for (side, mat) in [(Side::Upper, &blocks.upper), (Side::Lower, &blocks.lower)] {
                let e = crate::graph::neighbour_counts(black, side).expect("black turns");
                let name = match side {
                    Side::Upper => "tridiagonal-upper",
                    Side::Lower => "tridiagonal-lower",
                };
                let diag_ok = diag_to_i64(mat) == e;
                let charpolys_match = charpoly_exact(mat) == charpoly_from_boundary(&e);
                let count = matchings_from_boundary(&e);
                out.push(CheckResult::of(
                    name,
                    diag_ok && charpolys_match && &count == m,
                    format!("diagonal = neighbour counts {e:?}, |const| = {count}"),
                ));
            }
            out.push(eigenvector_check(black, &blocks, &w));
        }
        Err(e) => out.push(CheckResult::fail("gram-blocks", e.to_string())),
    }
    match (
        sign_sequence_of(black, Side::Lower),
        sign_sequence_of(black, Side::Upper),
    ) {
        (Ok(lo), Ok(up)) => {
            let (p_lo, _) = lo.value();
            let (p_up, _) = up.value();
            out.push(CheckResult::of(
                "sign-sequence",
                &p_lo == m && &p_up == m,
                format!("lower {lo} and upper {up} both have numerator {m}"),
            ));
        }
        (Err(e), _) | (_, Err(e)) => out.push(CheckResult::fail("sign-sequence", e.to_string())),
    }
    out
}

/// Checks the eigenvector transfer between the gram blocks and the full
/// weighted adjacency matrix: for each eigenvalue `t^2` of a block, the
/// stacked vector `(t v, B^T v)` must satisfy `A u = t u` up to `1e-8`.
fn eigenvector_check(
    g: &PlaneGraph,
    blocks: &GramBlocks,
    w: &crate::weighting::Weighting,
) -> CheckResult {
    let a = adjacency_matrix(g, w).to_f64();
    let b = bipartite_matrix(g, w);
    let bt = b.transpose().to_f64();
    let blacks = g.black_vertices();
    let order: Vec<usize> = crate::weighting::bipartite_order(g);
    let mut worst: f64 = 0.0;
    for block in [&blocks.upper, &blocks.lower] {
        let diag: Vec<i64> = GramBlocks::diagonal(block)
            .iter()
            .map(|v| i64::try_from(v).expect("small degrees"))
            .collect();
        if diag.is_empty() {
            continue;
        }
        let ids = block.row_labels();
        let principal = crate::polynomials::tridiag_principal_charpolys(&diag);
        for t2 in tridiag_eigenvalues(&diag) {
            let t = t2.sqrt();
            // eigenvector of the block from the principal characteristic polys
            let mut v_black = vec![0.0; blacks.len()];
            for (row, &vertex) in ids.iter().enumerate() {
                let pos = blacks.iter().position(|&x| x == vertex).expect("black");
                v_black[pos] = principal[row].eval_f64(t2);
            }
            // u = (t v, B^T v) over the black-then-white order
            let mut u = vec![0.0; order.len()];
            for (i, val) in v_black.iter().enumerate() {
                u[i] = t * val;
            }
            for (j, row) in bt.iter().enumerate() {
                u[blacks.len() + j] = row.iter().zip(&v_black).map(|(coef, val)| coef * val).sum();
            }
            let norm = u.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
            if norm == 0.0 {
                return CheckResult::fail("block-eigenvectors", "zero eigenvector");
            }
            // (t v, B^T v) has eigenvalue t; (-t v, B^T v) has eigenvalue -t
            let mut u_minus = u.clone();
            for slot in u_minus.iter_mut().take(blacks.len()) {
                *slot = -*slot;
            }
            for (i, row) in a.iter().enumerate() {
                let au: f64 = row.iter().zip(&u).map(|(coef, x)| coef * x).sum();
                worst = worst.max((au - t * u[i]).abs() / norm);
                let au_m: f64 = row.iter().zip(&u_minus).map(|(coef, x)| coef * x).sum();
                worst = worst.max((au_m + t * u_minus[i]).abs() / norm);
            }
        }
    }
    CheckResult::of(
        "block-eigenvectors",
        worst <= 1e-8,
        format!("max residual {worst:.3e} (tolerance 1e-8)"),
    )
}

/// Exact evaluation helper for the spectral acceptance checks: converts an
/// f64 point to a rational and evaluates the polynomial without rounding.
pub fn eval_abs_at_f64(p: &IntPoly, x: f64) -> f64 {
    let exact = BigRational::from_float(x).expect("finite point");
    let value = p.eval_rational(&exact);
    value.abs().to_f64().unwrap_or(f64::INFINITY)
}

/// Convenience: does the whole suite pass?
pub fn suite_passes(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
