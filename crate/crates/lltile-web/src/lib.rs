//! Browser bindings: word evaluation, window solving and a walk on the
//! simulated sea-level grid.

use wasm_bindgen::prelude::*;

use lltile::lamplighter::{ball, evaluate_word, tetrahedron, Window};
use lltile::sat::{dump_solution, encode, solve};
use lltile::sim::apply_simulator;
use lltile::sim::builtin::{sea_coord, sea_host, sea_to_quadrant};
use lltile::sim::labels::{quadrant_labels, DIR_E, DIR_N, DIR_S, DIR_W};
use lltile::tiles::builtin::builtin;
use lltile::tiles::Seed;

/// Canonical form `(marker; lamps)` of a word over a, A, b, B.
#[wasm_bindgen]
pub fn evaluate(word: &str) -> Result<String, String> {
    evaluate_word(word).map(|g| g.to_string()).map_err(|e| e.to_string())
}

fn window(spec: &str) -> Result<Window, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let int = |s: &str| s.parse::<i64>().map_err(|_| format!("bad window `{spec}`"));
    match parts.as_slice() {
        ["ball", r] => ball(int(r)?.clamp(0, 6) as usize),
        ["tetra", lo, hi] => tetrahedron(int(lo)?, int(hi)?),
        _ => return Err(format!("bad window `{spec}` (ball:<r> or tetra:<lo>:<hi>)")),
    }
    .map_err(|e| e.to_string())
}

/// Solves a builtin tileset on a window with one seed `<word>=<tile>`.
/// Returns `SAT` and one `<point> <tile>` line per vertex, or `UNSAT`.
#[wasm_bindgen]
pub fn solve_window(tileset: &str, spec: &str, seed: &str) -> Result<String, String> {
    let ts = builtin(tileset).map_err(|e| e.to_string())?;
    let w = window(spec)?;
    let mut seeds = Vec::new();
    if !seed.trim().is_empty() {
        let (word, tile) = seed.split_once('=').ok_or_else(|| format!("bad seed `{seed}` (word=tile)"))?;
        let tile = ts.tile_by_name(tile.trim()).or_else(|_| tile.trim().parse::<usize>().map_err(|_| format!("unknown tile `{tile}`")))?;
        seeds.push(Seed { word: word.trim().to_string(), tile });
    }
    let cnf = encode(&w, &ts, &seeds).map_err(|e| e.to_string())?;
    Ok(match solve(&cnf).map_err(|e| e.to_string())? {
        Some(x) => {
            let named: String = dump_solution(&w, &x)
                .lines()
                .map(|l| {
                    let (p, t) = l.rsplit_once(' ').unwrap();
                    format!("{p} {}\n", ts.tile_name(t.parse().unwrap()))
                })
                .collect();
            format!("SAT\n{named}")
        }
        None => "UNSAT\n".into(),
    })
}

/// Walks the sea-level grid simulated on tetrahedron(−3, 3) by the Ω
/// configuration, from the identity. `moves` is a string over E, N, W, S;
/// each line of the result is `<point> (m, n)`, or the reason a step failed.
#[wasm_bindgen]
pub fn sea_walk(moves: &str) -> Result<String, String> {
    let w = tetrahedron(-3, 3).map_err(|e| e.to_string())?;
    let host = sea_host(&w).map_err(|e| e.to_string())?;
    let out = apply_simulator(&host, &sea_to_quadrant()).map_err(|e| e.to_string())?;
    let quad = quadrant_labels();
    let show = |u: usize| {
        let g = &w.points[out.ids[u].0];
        let (m, n) = sea_coord(g).unwrap_or((-1, -1));
        format!("{g} ({m}, {n})\n")
    };
    let start = w.vertex(&lltile::lamplighter::GroupPoint::identity()).unwrap();
    let mut cur = (0..out.graph.nverts()).find(|&u| out.ids[u].0 == start).ok_or("no sea vertex at the identity")?;
    let mut text = show(cur);
    for m in moves.chars().filter(|c| !c.is_whitespace()) {
        let d = match m.to_ascii_uppercase() {
            'E' => DIR_E,
            'W' => DIR_W,
            'N' => DIR_N,
            'S' => DIR_S,
            _ => return Err(format!("unknown move `{m}` (E, N, W or S)")),
        };
        let next = (0..quad.graph.nedges()).filter(|&c| quad.dir_of(c) == d).flat_map(|c| out.successors(cur, c)).min();
        match next {
            Some(v) => {
                cur = v;
                text += &show(cur);
            }
            None => {
                text += &format!("{m}: no step (edge of the quadrant or of the window)\n");
            }
        }
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        assert_eq!(evaluate("").unwrap(), "(0;)");
        assert_eq!(evaluate("b").unwrap(), "(1; 0)");
        assert!(evaluate("x").is_err());
    }

    #[test]
    fn solving() {
        let s = solve_window("comb", "ball:2", "e=tas").unwrap();
        assert!(s.starts_with("SAT\n") && s.contains("(0;) tas\n"));
        assert_eq!(solve_window("comb", "ball:1", "e=tas").unwrap().lines().count(), 1 + 5);
        assert!(solve_window("comb", "disc:3", "").is_err());
    }

    #[test]
    fn walking() {
        let s = sea_walk("EEN").unwrap();
        let last = s.lines().last().unwrap();
        assert!(last.ends_with("(2, 1)"), "{s}");
        assert!(sea_walk("W").unwrap().contains("no step"));
        assert!(sea_walk("Q").is_err());
    }
}
