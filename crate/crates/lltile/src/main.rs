//! `lltile`: windows, tilings, simulators and reductions from the command line.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lltile::graph::{LabelGraph, DEFAULT_EXP_CAP};
use lltile::lamplighter::{ball, dl_window, parse_word, tetrahedron, GroupPoint, Step, Window};
use lltile::reduction::{reduce_halfplane, tileset_exponential, HalfPlaneTileset};
use lltile::sat::{dump_solution, encode, enumerate, export_dimacs, feasible_tiles, solve, validate};
use lltile::sim::builtin::builtin_simulator;
use lltile::sim::io::parse_simulator;
use lltile::sim::labels::{
    comb_labels, goodbad_labels, labels_name, marked_plane_patch, omega_labels, parse_grid, plane_patch, quadrant_labels, Decorated, DIR_E,
    DIR_N, DIR_NAMES, DIR_S, DIR_W,
};
use lltile::sim::{apply_simulator, Host, Simulated, Simulator};
use lltile::tiles::builtin::builtin;
use lltile::tiles::{DhsTarget, Seed, Tileset};
use lltile::verify::{run_suite, SUITES};
use lltile::Error;

#[derive(Parser)]
#[command(name = "lltile", version, about = "Tilings and simulations on lamplighter and Diestel-Leader windows")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the points of a window (DOT with --out).
    Window(WindowArgs),
    /// Solve a tiling problem; with --limit, enumerate and count solutions.
    Solve(ProblemArgs),
    /// Feasible tiles at interior vertices (or at one vertex with --at).
    Forced {
        #[command(flatten)]
        p: ProblemArgs,
        /// Generator word of the queried vertex.
        #[arg(long)]
        at: Option<String>,
        /// Interior depth when --at is absent.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Run a simulator on a window (tiled by the SAT solution) or a grid.
    Simulate(SimArgs),
    /// Interactive walk: one direction (east/north/west/south) or generator word per line.
    Walk(SimArgs),
    /// Build Π_T from a half-plane tileset file, or F^S from a target graph file over the simulator's output labels.
    Reduce {
        #[arg(long)]
        tileset: String,
        #[arg(long)]
        simulator: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the CNF of a tiling problem in DIMACS form.
    ExportDimacs(ProblemArgs),
    /// Run an acceptance suite: comb, sealevel, adjunction, gwa, reduction, dl or all.
    Verify { suite: String },
}

#[derive(Args)]
struct WindowArgs {
    /// ball:<r> | tetra:<lo>:<hi> | dl:<p>:<q>:<lo>:<hi>
    #[arg(long)]
    window: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ProblemArgs {
    /// Builtin name (optionally `builtin:`-prefixed) or a tileset file.
    #[arg(long)]
    tileset: String,
    /// ball:<r> | tetra:<lo>:<hi> | dl:<p>:<q>:<lo>:<hi>
    #[arg(long)]
    window: String,
    /// <word>=<tile>, tile by name or index; repeatable.
    #[arg(long)]
    seed: Vec<String>,
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, default_value = "builtin:sea_to_quadrant")]
    simulator: String,
    #[arg(long, default_value = "omega_full")]
    tileset: String,
    /// Lamplighter window, or grid:<w>x<h> for simulators on the quadrant or plane.
    #[arg(long, default_value = "tetra:-3:3")]
    window: String,
    #[arg(long, default_value = "e=24")]
    seed: Vec<String>,
    /// Starting vertex (generator word) for walk.
    #[arg(long, default_value = "e")]
    at: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure modes, by exit code.
enum Fail {
    /// Exit 1: UNSAT or a failed check.
    No(String),
    /// Exit 2 (usage) or 3 (capacity).
    Err(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Err(e)
    }
}

type Out = Result<(), Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::No(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Fail::Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Capacity { .. }) { 3 } else { 2 })
        }
    }
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Window(a) => {
            let w = parse_window(&a.window)?;
            let mut pts: Vec<String> = w.points.iter().map(|g| g.to_string()).collect();
            pts.sort();
            println!("vertices {} edges {}", w.len(), w.graph.nedges());
            if let Some(path) = a.out {
                write_out(&path, &w.graph.to_dot())?;
            } else {
                println!("{}", pts.join("\n"));
            }
            Ok(())
        }
        Cmd::Solve(p) => {
            let (w, ts, seeds) = problem(&p)?;
            let cnf = encode(&w, &ts, &seeds)?;
            if let Some(limit) = p.limit {
                let sols = enumerate(&cnf, limit)?;
                if sols.is_empty() {
                    return Err(Fail::No("UNSAT".into()));
                }
                println!("SAT {} solutions", sols.len());
                if let Some(path) = p.out {
                    let all: Vec<String> = sols.iter().map(|x| dump_solution(&w, x)).collect();
                    write_out(&path, &all.join("\n"))?;
                }
                return Ok(());
            }
            let Some(x) = solve(&cnf)? else {
                return Err(Fail::No("UNSAT".into()));
            };
            let bad = validate(&w, &ts, &seeds, &x)?;
            if !bad.is_empty() {
                return Err(Fail::No(format!("solver returned an invalid tiling: {}", bad[0])));
            }
            println!("SAT");
            emit(p.out.as_ref(), &dump_solution(&w, &x))
        }
        Cmd::Forced { p, at, depth } => {
            let (w, ts, seeds) = problem(&p)?;
            let cnf = encode(&w, &ts, &seeds)?;
            let vs = match &at {
                Some(word) => vec![w.vertex_of_word(word)?],
                None => w.interior(depth),
            };
            let forced = feasible_tiles(&cnf, &vs)?;
            if forced.values().all(|t| t.is_empty()) && !forced.is_empty() {
                return Err(Fail::No("UNSAT".into()));
            }
            let fmt = |t: &[usize]| format!("{{{}}}", t.iter().map(|&x| ts.tile_name(x)).collect::<Vec<_>>().join(", "));
            if at.is_some() {
                println!("{}", fmt(&forced[&vs[0]]));
            } else {
                let mut lines: Vec<String> = forced.iter().map(|(&v, t)| format!("{} {}", w.points[v], fmt(t))).collect();
                lines.sort();
                println!("{}", lines.join("\n"));
            }
            Ok(())
        }
        Cmd::Simulate(a) => {
            let (sim, host, names) = sim_host(&a)?;
            let out = apply_simulator(&host, &sim)?;
            println!(
                "host vertices {} simulated vertices {} edges {} incomplete pairs {}",
                host.graph.nverts(),
                out.graph.nverts(),
                out.graph.nedges(),
                out.incomplete.len()
            );
            let mut lines: Vec<String> = out
                .triples()
                .into_iter()
                .map(|(u, c, v)| format!("{} -{}-> {}", vname(&out, &sim, &names, u), sim.b().enames[c], vname(&out, &sim, &names, v)))
                .collect();
            lines.sort();
            emit(a.out.as_ref(), &(lines.join("\n") + "\n"))
        }
        Cmd::Walk(a) => walk(&a),
        Cmd::Reduce { tileset, simulator, out } => {
            let text = std::fs::read_to_string(&tileset).map_err(|e| Error::Invalid(format!("{tileset}: {e}")))?;
            let body = match simulator {
                None => {
                    let t = HalfPlaneTileset::parse(&text)?;
                    let red = reduce_halfplane(&t)?;
                    println!("{} half-plane tiles → {} product tiles ({} before merging)", t.tiles.len(), red.wang.tiles.len(), red.raw);
                    Tileset::Wang(red.wang).to_text()?
                }
                Some(s) => {
                    let sim = load_simulator(&s)?;
                    let f = DhsTarget::new(LabelGraph::parse(&text, sim.b().clone())?);
                    let fs = tileset_exponential(&f, &sim, DEFAULT_EXP_CAP)?;
                    println!("F^S: {} vertices, {} edges", fs.f.nverts(), fs.f.nedges());
                    fs.f.to_text()
                }
            };
            emit(out.as_ref(), &body)
        }
        Cmd::ExportDimacs(p) => {
            let (w, ts, seeds) = problem(&p)?;
            emit(p.out.as_ref(), &export_dimacs(&encode(&w, &ts, &seeds)?))
        }
        Cmd::Verify { suite } => {
            if !SUITES.iter().any(|(n, _)| *n == suite) {
                let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
                return Err(Error::Invalid(format!("unknown suite `{suite}` (expected one of {})", names.join(", "))).into());
            }
            let outcomes = run_suite(&suite)?;
            for o in &outcomes {
                println!("{}", o.line());
            }
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            if failed > 0 {
                return Err(Fail::No(format!("{failed} of {} criteria failed", outcomes.len())));
            }
            println!("all {} criteria passed", outcomes.len());
            Ok(())
        }
    }
}

fn write_out(path: &PathBuf, body: &str) -> Out {
    std::fs::write(path, body).map_err(|e| Fail::Err(Error::Invalid(format!("{}: {e}", path.display()))))
}

fn emit(path: Option<&PathBuf>, body: &str) -> Out {
    match path {
        Some(p) => write_out(p, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn parse_window(spec: &str) -> Result<Window, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    let int = |s: &str| s.parse::<i64>().map_err(|_| Error::InvalidToken(spec.to_string()));
    let small = |s: &str| s.parse::<u8>().map_err(|_| Error::InvalidToken(spec.to_string()));
    match parts.as_slice() {
        ["ball", r] => ball(int(r)?.try_into().map_err(|_| Error::InvalidToken(spec.to_string()))?),
        ["tetra", lo, hi] => tetrahedron(int(lo)?, int(hi)?),
        ["dl", p, q, lo, hi] => dl_window(small(p)?, small(q)?, int(lo)?, int(hi)?),
        ["grid", _] => Err(Error::Invalid("grid windows only host simulators (use simulate or walk)".into())),
        _ => Err(Error::InvalidToken(spec.to_string())),
    }
}

fn load_tileset(spec: &str) -> Result<Tileset, Error> {
    let name = spec.strip_prefix("builtin:").unwrap_or(spec);
    if spec.starts_with("builtin:") || !std::path::Path::new(spec).exists() {
        return builtin(name);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Invalid(format!("{spec}: {e}")))?;
    let (ts, warnings) = Tileset::parse(&text, false)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(ts)
}

fn load_simulator(spec: &str) -> Result<Simulator, Error> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin_simulator(name),
        None => {
            let text = std::fs::read_to_string(spec).map_err(|e| Error::Invalid(format!("{spec}: {e}")))?;
            parse_simulator(&text)
        }
    }
}

fn parse_seeds(specs: &[String], ts: &Tileset) -> Result<Vec<Seed>, Error> {
    specs
        .iter()
        .map(|s| {
            let (word, tile) = s.split_once('=').ok_or_else(|| Error::InvalidToken(s.clone()))?;
            parse_word(word)?;
            let tile = match ts.tile_by_name(tile) {
                Ok(t) => t,
                Err(_) => tile.parse::<usize>().ok().filter(|&t| t < ts.ntiles()).ok_or_else(|| Error::UnknownName(tile.to_string()))?,
            };
            Ok(Seed { word: word.to_string(), tile })
        })
        .collect()
}

fn problem(p: &ProblemArgs) -> Result<(Window, Tileset, Vec<Seed>), Error> {
    let w = parse_window(&p.window)?;
    let ts = load_tileset(&p.tileset)?;
    let seeds = parse_seeds(&p.seed, &ts)?;
    Ok((w, ts, seeds))
}

/// Decoration of the lamplighter graph matching a simulator's input labels.
fn decoration(name: &str) -> Option<Decorated> {
    match name {
        "comb" => Some(comb_labels()),
        "omega" => Some(omega_labels()),
        _ => None,
    }
}

/// Host for a simulator: a grid patch, or a window labelled by a SAT
/// solution of the tileset. Also returns a display name per host vertex.
fn sim_host(a: &SimArgs) -> Result<(Simulator, Host, Vec<String>), Fail> {
    let sim = load_simulator(&a.simulator)?;
    let input = labels_name(sim.a()).unwrap_or("custom");
    if let Some(spec) = a.window.strip_prefix("grid:") {
        let g = parse_grid(spec)?;
        let (w, h) = g.coords.iter().fold((0, 0), |(w, h), &(x, y)| (w.max(x + 1), h.max(y + 1)));
        let grid = match input {
            "quadrant" => g,
            "plane" => plane_patch(0, w - 1, 0, h - 1),
            "goodbad" => marked_plane_patch(w as usize, h as usize, &goodbad_labels(), |_, _| 0),
            _ => return Err(Error::LabelMismatch(format!("grid windows cannot host a simulator over `{input}`")).into()),
        };
        let names = grid.coords.iter().map(|(x, y)| format!("({x},{y})")).collect();
        return Ok((sim, grid.host, names));
    }
    let deco = decoration(input).ok_or_else(|| Error::LabelMismatch(format!("windows cannot host a simulator over `{input}`")))?;
    let w = parse_window(&a.window)?;
    let ts = load_tileset(&a.tileset)?;
    if ts.ntiles() != deco.nsym() {
        return Err(Error::LabelMismatch(format!("tileset has {} tiles, the simulator reads {} symbols", ts.ntiles(), deco.nsym())).into());
    }
    let seeds = parse_seeds(&a.seed, &ts)?;
    let x = solve(&encode(&w, &ts, &seeds)?)?.ok_or_else(|| Fail::No("UNSAT".into()))?;
    let host = deco.window_host(&w, &x)?;
    Ok((sim, host, w.points.iter().map(|g| g.to_string()).collect()))
}

fn vname(out: &Simulated, sim: &Simulator, names: &[String], u: usize) -> String {
    let (h, s) = out.ids[u];
    format!("{}/{}", names[h], sim.graph.graph.vnames[s])
}

/// Direction of a B-edge, when B is the plane or a decoration of it.
fn direction(b: &lltile::graph::Graph, c: usize) -> Option<usize> {
    match labels_name(b)? {
        "plane" => Some(c),
        "quadrant" => Some(quadrant_labels().dir_of(c)),
        "goodbad" => Some(goodbad_labels().dir_of(c)),
        _ => None,
    }
}

fn walk(a: &SimArgs) -> Out {
    let (sim, host, names) = sim_host(a)?;
    let out = apply_simulator(&host, &sim)?;
    let lamplighter = !a.window.starts_with("grid:");
    let w = if lamplighter { Some(parse_window(&a.window)?) } else { None };
    let first_over = |h: usize| (0..out.graph.nverts()).find(|&u| out.ids[u].0 == h);
    let start = match &w {
        Some(w) => w.vertex_of_word(&a.at)?,
        None => names.iter().position(|n| n == "(0,0)").unwrap_or(0),
    };
    let mut cur = first_over(start).ok_or_else(|| Fail::No(format!("nothing is simulated at {}", names[start])))?;
    let stdin = std::io::stdin();
    let mut stdout = std::io::stdout();
    let _ = writeln!(stdout, "{}", names[out.ids[cur].0]);
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| Error::Invalid(e.to_string()))?;
        let tok = line.trim();
        if tok.is_empty() {
            continue;
        }
        if tok == "quit" || tok == "exit" {
            break;
        }
        let dir = match tok.to_ascii_lowercase().as_str() {
            "east" => Some(DIR_E),
            "west" => Some(DIR_W),
            "north" => Some(DIR_N),
            "south" => Some(DIR_S),
            _ => None,
        };
        let msg = match dir {
            Some(d) => {
                let cs: Vec<usize> = (0..sim.b().nedges()).filter(|&c| direction(sim.b(), c) == Some(d)).collect();
                let next: BTreeSet<usize> = cs.iter().flat_map(|&c| out.successors(cur, c)).collect();
                let open = cs.iter().any(|&c| out.incomplete.contains(&(cur, c)));
                match next.first() {
                    Some(&v) => {
                        cur = v;
                        let extra = if next.len() > 1 { format!(" ({} successors)", next.len()) } else { String::new() };
                        format!("{}{extra}", names[out.ids[cur].0])
                    }
                    None if open => format!("no {} step: it leaves the window", DIR_NAMES[d]),
                    None => format!("no {} step", DIR_NAMES[d]),
                }
            }
            None => match (&w, parse_word(tok)) {
                (Some(w), Ok(steps)) => {
                    let g = apply_steps(&w.points[out.ids[cur].0], &steps);
                    match w.vertex(&g).and_then(first_over) {
                        Some(v) => {
                            cur = v;
                            names[out.ids[cur].0].clone()
                        }
                        None => format!("{g} is outside the window or not simulated"),
                    }
                }
                _ => format!("unknown move `{tok}` (east, north, west, south or a generator word)"),
            },
        };
        let _ = writeln!(stdout, "{msg}");
    }
    Ok(())
}

fn apply_steps(g: &GroupPoint, steps: &[Step]) -> GroupPoint {
    steps.iter().fold(g.clone(), |g, s| match *s {
        Step::Gen(x) => g.mul_gen(x),
        Step::Up(j) => g.up(j),
        Step::Down(i) => g.down(i),
    })
}
