//! The concrete simulators: folding the quadrant onto the plane, reading
//! the plane off the comb, reading the quadrant off the sea level, and
//! compressing runs of bad vertices.

use super::labels::*;
use std::collections::BTreeSet;

use super::{apply_simulator, check_grid, GridReport, Host, SimBuilder, Simulator};
use crate::error::{Error, Result};
use crate::lamplighter::{GroupPoint, Window, WindowKind, GEN_A, GEN_A_INV, GEN_B, GEN_B_INV};
use crate::tiles::builtin::{comb_tile, omega_symbol, NW, SEA, SW, TAS, TBS, TDS, TSS};

pub const BUILTIN_SIMULATORS: [&str; 4] = ["quadrant_to_plane", "comb_to_plane", "sea_to_quadrant", "rectangle_compress"];

pub fn builtin_simulator(name: &str) -> Result<Simulator> {
    match name {
        "quadrant_to_plane" => Ok(quadrant_to_plane()),
        "comb_to_plane" => Ok(comb_to_plane()),
        "sea_to_quadrant" => Ok(sea_to_quadrant()),
        "rectangle_compress" => Ok(rectangle_compress()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Sign of a folded coordinate: 0, + or −.
const SIGNS: [i64; 3] = [0, 1, -1];

/// Quadrant state (i, j) index, for signs i, j ∈ {0, +, −}.
pub fn quadrant_state(i: usize, j: usize) -> usize {
    3 * j + i
}

/// Plane point of a quadrant point (x, y) read in state `s`.
pub fn unfold(s: usize, x: i64, y: i64) -> (i64, i64) {
    (SIGNS[s % 3] * x, SIGNS[s / 3] * y)
}

/// Nine states (i, j) ∈ {0, +, −}²; state (i, j) reads the quadrant point
/// (x, y) as the plane point (i·x, j·y). The axes are read twice and the
/// interior four times.
pub fn quadrant_to_plane() -> Simulator {
    let q = quadrant_labels();
    let mut b = SimBuilder::new(q.graph.clone(), plane_dirs());
    let label = |i: usize, j: usize| match (i == 0, j == 0) {
        (true, true) => Q_NE,
        (true, false) => Q_NES,
        (false, true) => Q_NEW,
        (false, false) => Q_NESW,
    };
    for j in 0..3 {
        for i in 0..3 {
            let name = format!("{}{}", ["0", "+", "-"][i], ["0", "+", "-"][j]);
            b.vertex(name, label(i, j), 0);
        }
    }
    let st = quadrant_state;
    // along x: 0 → ±, then ± → ±; + reads E as E, − reads E as W
    for j in 0..3 {
        for (from, to, dir) in [(0, 1, DIR_E), (0, 2, DIR_W), (1, 1, DIR_E), (2, 2, DIR_W)] {
            let alpha = q.edge(label(from, j), DIR_E, label(to, j));
            let beta = b.beta(0, dir, 0);
            b.pair(st(from, j), st(to, j), alpha, beta);
        }
    }
    for i in 0..3 {
        for (from, to, dir) in [(0, 1, DIR_N), (0, 2, DIR_S), (1, 1, DIR_N), (2, 2, DIR_S)] {
            let alpha = q.edge(label(i, from), DIR_N, label(i, to));
            let beta = b.beta(0, dir, 0);
            b.pair(st(i, from), st(i, to), alpha, beta);
        }
    }
    b.finish().expect("quadrant simulator is well labelled")
}

/// Simulator of the plane on the comb. Spine and teeth move east along b;
/// north on the spine is a, and north on a tooth (south on an antitooth)
/// is a hexagonal circuit through the spine-facing teeth.
pub fn comb_to_plane() -> Simulator {
    let comb = comb_labels();
    let mut b = SimBuilder::new(comb.graph.clone(), plane_dirs());
    let mid = b.sub().edge_vertex(DIR_N);
    let mut node = std::collections::HashMap::new();
    for (n, t, split) in [
        ("a", TAS, true),
        ("b", TBS, true),
        ("B", TDS, true),
        ("c", TAS, false),
        ("d", TDS, false),
        ("e", TSS, false),
        ("f", TDS, false),
        ("g", TSS, false),
        ("h", TBS, false),
        ("C", TAS, false),
        ("D", TBS, false),
        ("E", TSS, false),
        ("F", TBS, false),
        ("G", TSS, false),
        ("H", TDS, false),
    ] {
        let v = b.vertex(n, t, if split { 0 } else { mid });
        node.insert(n, (v, t));
    }
    let (a, aa, bb, bi) = (GEN_A, GEN_A_INV, GEN_B, GEN_B_INV);
    let mut add = |t: &str, h: &str, gen: usize, i: usize, dir: usize, j: usize| {
        let ((vt, lt), (vh, lh)) = (node[t], node[h]);
        let beta = b.beta(i, dir, j);
        b.pair(vt, vh, comb.edge(lt, gen, lh), beta);
    };
    add("a", "b", bb, 0, DIR_E, 0);
    add("a", "a", a, 0, DIR_N, 0);
    add("B", "a", bb, 0, DIR_E, 0);
    add("B", "B", bb, 0, DIR_E, 0);
    add("b", "b", bb, 0, DIR_E, 0);
    for (hex, dir) in [(["b", "c", "d", "e", "f", "g", "h"], DIR_N), (["B", "C", "D", "E", "F", "G", "H"], DIR_S)] {
        let [s, c, d, e, f, g, h] = hex;
        // the right hexagon climbs with A then descends with b; the left
        // one mirrors it with a and B
        let (up, down, across) = if dir == DIR_N { (aa, bb, a) } else { (a, bi, aa) };
        add(s, d, up, 0, dir, 1);
        add(s, e, up, 0, dir, 1);
        add(c, s, down, 1, dir, 0);
        add(d, c, down, 1, dir, 1);
        add(d, f, down, 1, dir, 1);
        add(e, d, up, 1, dir, 1);
        add(e, e, up, 1, dir, 1);
        add(f, g, across, 1, dir, 1);
        add(f, h, across, 1, dir, 1);
        add(g, g, across, 1, dir, 1);
        add(g, h, across, 1, dir, 1);
        add(h, s, down, 1, dir, 0);
    }
    b.finish().expect("comb simulator is well labelled")
}

/// Quadrant label of an Ω_↔ symbol: left marks x = 0, right marks y = 0.
pub fn lr_quadrant(lr: usize) -> usize {
    3 - lr
}

/// Simulator of the quadrant on the sea level. East is the walk
/// b* a B A* (binary increment of the right word), north its mirror
/// B* A b a* (increment of the left word). Sea vertices are split by their
/// Ω_↔ symbol, which fixes the quadrant label; circuit vertices come in one
/// copy per Ω_↔ symbol.
pub fn sea_to_quadrant() -> Simulator {
    let omega = omega_labels();
    let quad = quadrant_labels();
    let mut b = SimBuilder::new(omega.graph.clone(), quad.graph.clone());
    let sym = |lr: usize, s: usize| lr * 7 + s;
    let sea: Vec<usize> = (0..4).map(|lr| b.vertex(format!("sea{lr}"), sym(lr, SEA), lr_quadrant(lr))).collect();
    // E steps clear left (x > 0), N steps clear right (y > 0)
    for (dir, target, symbol, gens, tag) in [
        (DIR_E, (|lr: usize| lr % 2) as fn(usize) -> usize, NW, [GEN_A, GEN_B, GEN_B_INV, GEN_A_INV], "up"),
        (DIR_N, |lr: usize| lr & 2, SW, [GEN_A_INV, GEN_B_INV, GEN_B, GEN_A], "down"),
    ] {
        let [step, climb, back, descend] = gens;
        for lr in 0..4 {
            let lr2 = target(lr);
            let c = quad.edge(lr_quadrant(lr), dir, lr_quadrant(lr2));
            let mid = b.sub().edge_vertex(c);
            let mk = |b: &mut SimBuilder, k: usize| -> Vec<usize> {
                (0..4).map(|l| b.vertex(format!("{tag}{k}/{lr}/{l}"), sym(l, symbol), mid)).collect()
            };
            let (n0, n1, n2) = (mk(&mut b, 0), mk(&mut b, 1), mk(&mut b, 2));
            let (s, s2) = (sea[lr], sea[lr2]);
            let edge = |x: usize, g: usize, y: usize| omega.edge(x, g, y);
            for l in 0..4 {
                let (x0, x1, x2) = (sym(l, symbol), sym(l, symbol), sym(l, symbol));
                let (f01, f10) = (b.beta(0, c, 1), b.beta(1, c, 0));
                b.pair(s, n1[l], edge(sym(lr, SEA), step, x1), f01);
                b.pair(n1[l], s2, edge(x1, back, sym(lr2, SEA)), f10);
                b.pair(s, n0[l], edge(sym(lr, SEA), climb, x0), f01);
                b.pair(n2[l], s2, edge(x2, descend, sym(lr2, SEA)), f10);
                let f11 = b.beta(1, c, 1);
                for l2 in 0..4 {
                    let y = sym(l2, symbol);
                    b.pair(n0[l], n0[l2], edge(x0, climb, y), f11);
                    b.pair(n0[l], n1[l2], edge(x0, step, y), f11);
                    b.pair(n1[l], n2[l2], edge(x1, back, y), f11);
                    b.pair(n2[l], n2[l2], edge(x2, descend, y), f11);
                }
            }
        }
    }
    b.finish().expect("sea-level simulator is well labelled")
}

/// Simulator of the plane on a good/bad-marked plane: a step in direction s
/// from a good vertex skips over consecutive bad vertices.
pub fn rectangle_compress() -> Simulator {
    let gb = goodbad_labels();
    let mut b = SimBuilder::new(gb.graph.clone(), plane_dirs());
    let good = b.vertex("good", GOOD, 0);
    let bad: Vec<usize> = (0..4).map(|s| b.vertex(format!("bad/{}", DIR_NAMES[s]), BAD, b.sub().edge_vertex(s))).collect();
    for s in [DIR_E, DIR_N] {
        let beta = b.beta(0, s, 0);
        b.pair(good, good, gb.edge(GOOD, s, GOOD), beta);
    }
    for s in 0..4 {
        let (f01, f11, f10) = (b.beta(0, s, 1), b.beta(1, s, 1), b.beta(1, s, 0));
        b.pair(good, bad[s], gb.edge(GOOD, s, BAD), f01);
        b.pair(bad[s], bad[s], gb.edge(BAD, s, BAD), f11);
        b.pair(bad[s], good, gb.edge(BAD, s, GOOD), f10);
    }
    b.finish().expect("compression simulator is well labelled")
}

/// Grid point (m, n) of the comb element aⁿbᵐ, None for other elements.
pub fn comb_coord(g: &GroupPoint) -> Option<(i64, i64)> {
    let lamps = g.lamps();
    let Some((&l, &r)) = lamps.first().zip(lamps.last()) else { return Some((0, g.marker)) };
    if (r - l + 1) as usize != lamps.len() {
        return None;
    }
    let len = r - l + 1;
    if g.marker == r + 1 {
        Some((len, l))
    } else if g.marker == l {
        Some((-len, r + 1))
    } else {
        None
    }
}

/// The element aⁿbᵐ.
pub fn comb_point(m: i64, n: i64) -> GroupPoint {
    let mut g = GroupPoint::identity();
    for _ in 0..n.abs() {
        g = g.mul_gen(if n > 0 { GEN_A } else { GEN_A_INV });
    }
    for _ in 0..m.abs() {
        g = g.mul_gen(if m > 0 { GEN_B } else { GEN_B_INV });
    }
    g
}

/// Quadrant point (m, n) of a sea-level element: the lamps at and above
/// height 0 spell m in binary, those below spell n. None off the sea level.
pub fn sea_coord(g: &GroupPoint) -> Option<(i64, i64)> {
    if g.marker != 0 {
        return None;
    }
    let (mut m, mut n) = (0i64, 0i64);
    for k in g.lamps() {
        if k >= 0 {
            m |= 1 << k;
        } else {
            n |= 1 << (-1 - k);
        }
    }
    Some((m, n))
}

/// A comb-labelled window carrying the seeded comb configuration.
pub fn comb_host(w: &Window) -> Result<Host> {
    let x: Vec<usize> = w.points.iter().map(comb_tile).collect();
    comb_labels().window_host(w, &x)
}

/// An Ω-labelled window carrying the seeded Ω configuration.
pub fn sea_host(w: &Window) -> Result<Host> {
    let x: Vec<usize> = w.points.iter().map(omega_symbol).collect();
    omega_labels().window_host(w, &x)
}

/// Runs the comb simulator on a window and compares with the plane patch
/// {(m, n) : aⁿbᵐ in the window}.
pub fn check_comb(w: &Window) -> Result<GridReport> {
    let host = comb_host(w)?;
    let out = apply_simulator(&host, &comb_to_plane())?;
    let r = w.points.iter().map(|g| g.marker.abs() + g.lamps().len() as i64).max().unwrap_or(0) + 1;
    let expected: BTreeSet<(i64, i64)> =
        (-r..=r).flat_map(|m| (-r..=r).map(move |n| (m, n))).filter(|&(m, n)| w.vertex(&comb_point(m, n)).is_some()).collect();
    Ok(check_grid(&out, |u| comb_coord(&w.points[out.ids[u].0]), |c| c, &expected, |_| true, |_| 0))
}

/// Runs the sea-level simulator on a tetrahedron window and compares with
/// the quadrant patch [0, 2^hi) × [0, 2^−lo).
pub fn check_sea(w: &Window) -> Result<GridReport> {
    let WindowKind::Tetra(lo, hi) = w.kind else { return Err(Error::Invalid("sea-level check needs a tetrahedron window".into())) };
    let host = sea_host(w)?;
    let out = apply_simulator(&host, &sea_to_quadrant())?;
    let (mx, ny) = (1i64 << hi.max(0), 1i64 << (-lo).max(0));
    let expected: BTreeSet<(i64, i64)> = (0..mx).flat_map(|m| (0..ny).map(move |n| (m, n))).collect();
    let quad = quadrant_labels();
    Ok(check_grid(
        &out,
        |u| sea_coord(&w.points[out.ids[u].0]),
        |c| quad.dir_of(c),
        &expected,
        |(x, y)| x >= 0 && y >= 0,
        |(x, y)| quadrant_label(x, y),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamplighter::{ball, tetrahedron};
    use std::collections::BTreeMap;

    #[test]
    fn sizes() {
        let q = quadrant_to_plane();
        assert_eq!((q.nverts(), q.nedges()), (9, 48));
        let c = comb_to_plane();
        assert_eq!((c.nverts(), c.nedges()), (15, 58));
        let s = sea_to_quadrant();
        assert_eq!((s.nverts(), s.nedges()), (100, 1280));
        let r = rectangle_compress();
        assert_eq!((r.nverts(), r.nedges()), (5, 28));
        for n in BUILTIN_SIMULATORS {
            builtin_simulator(n).unwrap().graph.validate().unwrap();
        }
        assert!(builtin_simulator("nope").is_err());
    }

    #[test]
    fn quadrant_folds_like_a_handkerchief() {
        let patch = quadrant_patch(5, 5);
        let out = apply_simulator(&patch.host, &quadrant_to_plane()).unwrap();
        assert_eq!(out.graph.nverts(), 81);
        let point: Vec<(i64, i64)> = out
            .ids
            .iter()
            .map(|&(h, s)| {
                let (x, y) = patch.coords[h];
                unfold(s, x, y)
            })
            .collect();
        let distinct: BTreeSet<(i64, i64)> = point.iter().copied().collect();
        assert_eq!(distinct.len(), 81);
        let mut covers: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for &(h, _) in &out.ids {
            *covers.entry(patch.coords[h]).or_default() += 1;
        }
        assert_eq!(covers[&(0, 0)], 1);
        assert_eq!(covers[&(3, 0)], 2);
        assert_eq!(covers[&(0, 2)], 2);
        assert_eq!(covers[&(2, 2)], 4);
        for (u, c, v) in out.triples() {
            let d = DIR_DELTA[c];
            assert_eq!((point[u].0 + d.0, point[u].1 + d.1), point[v]);
        }
        // complete (u, c) pairs in the patch interior have their neighbour
        let edges = out.triples();
        for u in 0..out.graph.nverts() {
            for c in 0..4 {
                let has = edges.iter().any(|&(x, y, _)| x == u && y == c);
                let inside = {
                    let d = DIR_DELTA[c];
                    let p = (point[u].0 + d.0, point[u].1 + d.1);
                    distinct.contains(&p)
                };
                if out.is_complete(u, c) {
                    assert_eq!(has, inside, "vertex {u} dir {c}");
                }
            }
        }
    }

    #[test]
    fn compression_skips_bad_runs() {
        let gb = goodbad_labels();
        let row = [GOOD, BAD, BAD, GOOD, GOOD];
        let g = marked_plane_patch(5, 1, &gb, |x, _| row[x as usize]);
        let out = apply_simulator(&g.host, &rectangle_compress()).unwrap();
        assert_eq!(out.graph.nverts(), 3);
        let host_of: Vec<usize> = out.ids.iter().map(|&(h, _)| h).collect();
        let east: BTreeSet<(usize, usize)> =
            out.triples().into_iter().filter(|&(_, c, _)| c == DIR_E).map(|(u, _, v)| (host_of[u], host_of[v])).collect();
        assert_eq!(east, [(0, 3), (3, 4)].into());
    }

    #[test]
    fn comb_reads_the_plane() {
        let rep = check_comb(&ball(5).unwrap()).unwrap();
        assert!(rep.ok(), "{:?}", &rep.problems[..rep.problems.len().min(5)]);
        assert!(rep.complete > 0);
    }

    #[test]
    fn comb_coordinates() {
        for m in -3..=3 {
            for n in -3..=3 {
                assert_eq!(comb_coord(&comb_point(m, n)), Some((m, n)));
            }
        }
    }

    #[test]
    fn sea_reads_the_quadrant() {
        let rep = check_sea(&tetrahedron(-2, 2).unwrap()).unwrap();
        assert!(rep.ok(), "{:?}", &rep.problems[..rep.problems.len().min(5)]);
        assert_eq!(rep.vertices, 16);
    }
}
