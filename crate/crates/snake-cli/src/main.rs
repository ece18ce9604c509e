//! `snakegraph`: build snake graphs from direction words, inspect their
//! turns and boundaries, weight them, and cross-verify characteristic
//! polynomials and matching counts along independent routes.
//!
//! Exit codes: 0 on success, 1 on a verification mismatch, 2 on usage
//! errors.

use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use snake_core::contfrac::{pos_to_neg, sign_sequence_of};
use snake_core::graph::{
    blacken, boundaries, build_snake, classify_turns, graph_from_json, neighbour_counts, to_dot,
    Dir, GraphJson, PlaneGraph, Side, SnakeSpec, TurnColour,
};
use snake_core::matchings::{count_matchings, count_via_contfrac, count_via_determinant};
use snake_core::polynomials::{
    charpoly_exact, closed_form_h, closed_form_l, closed_form_staircase, tridiag_charpoly, IntPoly,
};
use snake_core::verify::{run_graph_suite, suite_passes};
use snake_core::weighting::{
    bipartite_matrix, generic_weighting, gram_blocks, snake_weighting, Weighting,
};

#[derive(Parser)]
#[command(
    name = "snakegraph",
    version,
    about = "snake graph analysis and cross-verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArgs {
    /// Direction word over {R, U} ("" is the single square), or '-' to read
    /// graph JSON from stdin.
    input: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Upper,
    Lower,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Upper => Side::Upper,
            SideArg::Lower => Side::Lower,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum WeightMethod {
    #[default]
    Snake,
    Generic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum CharMethod {
    /// Tridiagonal three-term recursion over the boundary neighbour counts.
    #[default]
    Recursion,
    /// Closed form for horizontal, L-shaped and staircase words.
    ClosedForm,
    /// Numerator of the negative continued fraction of the boundary.
    Contfrac,
    /// Exact characteristic polynomial of the matrix itself.
    Exact,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum CountMethod {
    Enumerate,
    Det,
    Contfrac,
    /// Run all three and require agreement.
    #[default]
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the graph and print it.
    Build {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Classify the turns.
    Turns {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Boundary decomposition: paths, terminal edges, edge classes.
    Boundary {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Construct a Kasteleyn weighting.
    Weight {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t)]
        method: WeightMethod,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Characteristic polynomial of BB^T (or of one boundary block).
    Charpoly {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t)]
        method: CharMethod,
        /// Restrict to the block of one boundary.
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Count perfect matchings.
    Matchings {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t)]
        method: CountMethod,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rotate the graph into its all-black-turn form and print it.
    Blacken {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Sign sequences and the continued fractions of both boundaries.
    Contfrac {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the invariant suite against the graph.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Seed for the randomized parts of the suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. piping into `head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Reads the input as a direction word or, for `-`, as graph JSON on stdin.
/// Returns the graph and the word when one was given.
fn load(input: &str) -> Result<(PlaneGraph, Option<SnakeSpec>), String> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| e.to_string())?;
        let g = graph_from_json(&text).map_err(|e| e.to_string())?;
        Ok((g, None))
    } else {
        let spec = SnakeSpec::from_str(input).map_err(|e| e.to_string())?;
        Ok((build_snake(&spec), Some(spec)))
    }
}

fn print_graph(g: &PlaneGraph, format: Format) {
    match format {
        Format::Text => {
            println!(
                "{} tiles, {} vertices, {} edges{}",
                g.tile_count(),
                g.vertex_count(),
                g.edge_count(),
                if g.is_generalised() {
                    " (generalised)"
                } else {
                    ""
                }
            );
            for (i, t) in g.tiles().iter().enumerate() {
                println!("tile {i}: {} {} {} {}", t[0], t[1], t[2], t[3]);
            }
        }
        Format::Json => {
            let j = GraphJson::from_graph(g);
            println!("{}", serde_json::to_string_pretty(&j).expect("serialize"));
        }
        Format::Dot => print!("{}", to_dot(g, None)),
    }
}

fn poly_json(p: &IntPoly) -> serde_json::Value {
    json!({ "text": p.to_string(), "coeffs": p.coeff_strings() })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Build { input, format } => {
            let (g, _) = load(&input.input)?;
            print_graph(&g, format);
        }
        Cmd::Turns { input, format } => {
            let (g, _) = load(&input.input)?;
            let report = classify_turns(&g);
            match format {
                Format::Json => {
                    let turns: Vec<_> = report
                        .turns
                        .iter()
                        .map(|&(v, a)| json!({ "vertex": v, "arity": a }))
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "turns": turns,
                            "turning_tiles": report.turning_tiles,
                            "monochromatic": report.monochromatic,
                            "turn_colour": report.turn_colour,
                        }))
                        .expect("serialize")
                    );
                }
                _ => {
                    println!("turn colour: {:?}", report.turn_colour);
                    println!("turning tiles: {:?}", report.turning_tiles);
                    for (v, a) in &report.turns {
                        println!("vertex {v}: {a}-turn");
                    }
                }
            }
        }
        Cmd::Boundary { input, format } => {
            let (g, _) = load(&input.input)?;
            let b = boundaries(&g);
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "upper": b.upper,
                            "lower": b.lower,
                            "start_edge": [b.start_edge.0, b.start_edge.1],
                            "end_edge": [b.end_edge.0, b.end_edge.1],
                            "internal_edges": b.internal_edges.iter().map(|e| [e.0, e.1]).collect::<Vec<_>>(),
                            "external_edges": b.external_edges.iter().map(|e| [e.0, e.1]).collect::<Vec<_>>(),
                        }))
                        .expect("serialize")
                    );
                }
                _ => {
                    println!("upper: {:?}", b.upper);
                    println!("lower: {:?}", b.lower);
                    println!("start edge: ({}, {})", b.start_edge.0, b.start_edge.1);
                    println!("end edge: ({}, {})", b.end_edge.0, b.end_edge.1);
                    println!(
                        "internal edges: {}, external edges: {}",
                        b.internal_edges.len(),
                        b.external_edges.len()
                    );
                }
            }
        }
        Cmd::Weight {
            input,
            method,
            format,
        } => {
            let (g, _) = load(&input.input)?;
            let w = build_weighting(&g, method)?;
            match format {
                Format::Json => {
                    let entries: Vec<_> = g
                        .edges()
                        .iter()
                        .map(|e| json!([e.0, e.1, w.sign(*e)]))
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({ "weights": entries }))
                            .expect("serialize")
                    );
                }
                Format::Dot => print!("{}", to_dot(&g, Some(&w))),
                Format::Text => {
                    for e in g.edges() {
                        println!("({}, {}): {:+}", e.0, e.1, w.sign(*e));
                    }
                }
            }
        }
        Cmd::Charpoly {
            input,
            method,
            side,
            format,
        } => {
            let (g, spec) = load(&input.input)?;
            let poly = charpoly_of(&g, spec.as_ref(), method, side.map(Side::from))?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&poly_json(&poly)).expect("serialize")
                ),
                _ => println!("{poly}"),
            }
        }
        Cmd::Matchings {
            input,
            method,
            format,
        } => {
            let (g, _) = load(&input.input)?;
            let (count, agreed) = count_with(&g, method)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "count": count.to_string() }))
                        .expect("serialize")
                ),
                _ => println!("{count}"),
            }
            if !agreed {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Blacken { input, format } => {
            let (g, _) = load(&input.input)?;
            let black = blacken(&g).map_err(|e| e.to_string())?;
            print_graph(&black, format);
        }
        Cmd::Contfrac { input, format } => {
            let (g, _) = load(&input.input)?;
            let report = contfrac_report(&g)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serialize")
                ),
                _ => print!("{}", report.text),
            }
        }
        Cmd::Verify { input, seed } => {
            let (g, _) = load(&input.input)?;
            let results = run_graph_suite(&g, seed);
            for r in &results {
                println!(
                    "{} {}: {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
            }
            if !suite_passes(&results) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn build_weighting(g: &PlaneGraph, method: WeightMethod) -> Result<Weighting, String> {
    match method {
        WeightMethod::Snake => snake_weighting(g).map_err(|e| e.to_string()),
        WeightMethod::Generic => generic_weighting(g).map_err(|e| e.to_string()),
    }
}

fn charpoly_of(
    g: &PlaneGraph,
    spec: Option<&SnakeSpec>,
    method: CharMethod,
    side: Option<Side>,
) -> Result<IntPoly, String> {
    if method == CharMethod::ClosedForm {
        if side.is_some() {
            return Err("closed forms cover the full polynomial, not one side".into());
        }
        let spec = spec.ok_or("closed forms need a direction word input")?;
        return closed_form_for(spec);
    }
    if method == CharMethod::Exact {
        let w = if g.is_generalised() {
            generic_weighting(g).map_err(|e| e.to_string())?
        } else {
            snake_weighting(g).map_err(|e| e.to_string())?
        };
        return match side {
            None => {
                let b = bipartite_matrix(g, &w);
                Ok(charpoly_exact(&b.mul(&b.transpose())))
            }
            Some(side) => {
                let blocks = gram_blocks(g, &w).map_err(|e| e.to_string())?;
                let block = match side {
                    Side::Upper => &blocks.upper,
                    Side::Lower => &blocks.lower,
                };
                Ok(charpoly_exact(block))
            }
        };
    }
    // boundary-driven methods need black turns
    if classify_turns(g).turn_colour == TurnColour::Mixed {
        return Err(
            "turns are not monochromatic black; run `blacken` first for boundary methods".into(),
        );
    }
    let of_side = |s: Side| -> Result<IntPoly, String> {
        let e = neighbour_counts(g, s).map_err(|e| e.to_string())?;
        Ok(match method {
            CharMethod::Recursion => tridiag_charpoly(&e),
            CharMethod::Contfrac => snake_core::contfrac::charpoly_from_boundary(&e),
            _ => unreachable!("handled above"),
        })
    };
    match side {
        Some(s) => of_side(s),
        None => Ok(&of_side(Side::Upper)? * &of_side(Side::Lower)?),
    }
}

fn closed_form_for(spec: &SnakeSpec) -> Result<IntPoly, String> {
    let dirs = spec.dirs();
    let n = spec.tile_count();
    let runs: Vec<(Dir, usize)> = {
        let mut out: Vec<(Dir, usize)> = Vec::new();
        for &d in dirs {
            match out.last_mut() {
                Some((last, len)) if *last == d => *len += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    };
    match runs.len() {
        0 => Ok(closed_form_h(1)),
        1 => Ok(closed_form_h(n)),
        2 => {
            let (r, s) = (runs[0].1 + 1, runs[1].1 + 1);
            let (r, s) = if runs[0].0 == Dir::R { (r, s) } else { (s, r) };
            Ok(closed_form_l(r, s))
        }
        m if runs.iter().all(|&(_, len)| len == 2) && runs[0].0 == Dir::R => {
            closed_form_staircase(m).map_err(|e| e.to_string())
        }
        _ => Err(format!(
            "no closed form for the word {spec}; supported shapes: horizontal, L, staircase S_m,3"
        )),
    }
}

fn count_with(g: &PlaneGraph, method: CountMethod) -> Result<(num_bigint::BigInt, bool), String> {
    Ok(match method {
        CountMethod::Enumerate => (count_matchings(g), true),
        CountMethod::Det => (count_via_determinant(g).map_err(|e| e.to_string())?, true),
        CountMethod::Contfrac => (count_via_contfrac(g).map_err(|e| e.to_string())?, true),
        CountMethod::All => {
            let a = count_matchings(g);
            let b = count_via_determinant(g).map_err(|e| e.to_string())?;
            let c = count_via_contfrac(g).map_err(|e| e.to_string())?;
            let agreed = a == b && b == c;
            if !agreed {
                eprintln!("mismatch: enumerate = {a}, det = {b}, contfrac = {c}");
            }
            (a, agreed)
        }
    })
}

struct ContfracReport {
    text: String,
    json: serde_json::Value,
}

fn contfrac_report(g: &PlaneGraph) -> Result<ContfracReport, String> {
    let mut text = String::new();
    let mut sides = Vec::new();
    for (name, side) in [("lower", Side::Lower), ("upper", Side::Upper)] {
        let cf = sign_sequence_of(g, side).map_err(|e| e.to_string())?;
        let neg = pos_to_neg(&cf).map_err(|e| e.to_string())?;
        let (p, q) = cf.value();
        text.push_str(&format!("{name}: {cf} = {neg} = {p}/{q}\n"));
        sides.push(json!({
            "side": name,
            "positive": cf.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "negative": neg.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "numerator": p.to_string(),
            "denominator": q.to_string(),
        }));
    }
    let m = count_matchings(g);
    text.push_str(&format!("matchings: {m}\n"));
    Ok(ContfracReport {
        text,
        json: json!({ "boundaries": sides, "matchings": m.to_string() }),
    })
}
