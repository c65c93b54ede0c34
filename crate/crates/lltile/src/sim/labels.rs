//! Label graphs for simulations: the plane's direction graph, vertex
//! decorations of a direction graph by a symbol set, and grid hosts.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::Host;
use crate::error::{Error, Result};
use crate::graph::{Graph, LabelGraph};
use crate::lamplighter::lamplighter_labels;
use crate::tiles::builtin;

pub const DIR_E: usize = 0;
pub const DIR_W: usize = 1;
pub const DIR_N: usize = 2;
pub const DIR_S: usize = 3;
pub const DIR_NAMES: [&str; 4] = ["E", "W", "N", "S"];
pub const DIR_DELTA: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Quadrant vertex labels, by available directions.
pub const Q_NE: usize = 0;
pub const Q_NES: usize = 1;
pub const Q_NEW: usize = 2;
pub const Q_NESW: usize = 3;
pub const QUADRANT_NAMES: [&str; 4] = ["NE", "NES", "NEW", "NESW"];

pub const GOOD: usize = 0;
pub const BAD: usize = 1;

/// Label graph of the plane ℤ²: one vertex, edges E/W and N/S.
pub fn plane_dirs() -> Arc<Graph> {
    let mut g = Graph::unoriented();
    g.add_vertex("*");
    g.add_edge_pair(0, 0, "E", "W");
    g.add_edge_pair(0, 0, "N", "S");
    Arc::new(g)
}

/// Vertex-decorated direction graph: one vertex per symbol and an edge
/// (x, d, y) for every pair of symbols and every direction d of a
/// one-vertex direction graph. Edge (x, d, y) has index (x·|D| + d)·|Σ| + y
/// and is named `x/d/y`.
#[derive(Clone, Debug)]
pub struct Decorated {
    pub symbols: Vec<String>,
    pub dirs: Arc<Graph>,
    pub graph: Arc<Graph>,
}

impl Decorated {
    pub fn new(symbols: Vec<String>, dirs: Arc<Graph>) -> Decorated {
        assert_eq!(dirs.nverts(), 1);
        let (ns, nd) = (symbols.len(), dirs.nedges());
        let mut g = if dirs.is_unoriented() { Graph::unoriented() } else { Graph::new() };
        for s in &symbols {
            g.add_vertex(s.clone());
        }
        for x in 0..ns {
            for d in 0..nd {
                for y in 0..ns {
                    g.add_edge(x, y, format!("{}/{}/{}", symbols[x], dirs.enames[d], symbols[y]));
                }
            }
        }
        if let Some(r) = &dirs.rev {
            let rv = (0..g.nedges())
                .map(|e| {
                    let (x, d, y) = (e / (nd * ns), (e / ns) % nd, e % ns);
                    (y * nd + r[d]) * ns + x
                })
                .collect();
            g.rev = Some(rv);
        }
        Decorated { symbols, dirs, graph: Arc::new(g) }
    }

    pub fn nsym(&self) -> usize {
        self.symbols.len()
    }

    pub fn edge(&self, x: usize, d: usize, y: usize) -> usize {
        (x * self.dirs.nedges() + d) * self.nsym() + y
    }

    /// Inverse of [`Decorated::edge`].
    pub fn decode(&self, e: usize) -> (usize, usize, usize) {
        let (ns, nd) = (self.nsym(), self.dirs.nedges());
        (e / (nd * ns), (e / ns) % nd, e % ns)
    }

    pub fn dir_of(&self, e: usize) -> usize {
        self.decode(e).1
    }

    /// Labels a window of the Cayley graph (or a DL graph) by a symbol per
    /// vertex. Open pairs are the decorated edges along directions whose
    /// neighbour lies outside the window.
    pub fn window_host(&self, w: &crate::lamplighter::Window, x: &[usize]) -> Result<Host> {
        if *w.graph.target != *self.dirs {
            return Err(Error::LabelMismatch("window directions differ from the decoration's".into()));
        }
        if x.len() != w.len() || x.iter().any(|&s| s >= self.nsym()) {
            return Err(Error::Invalid("labelling does not fit the window".into()));
        }
        let g = &w.graph;
        let elab = (0..g.nedges())
            .map(|e| {
                let (t, h) = g.graph.edges[e];
                self.edge(x[t], g.elab[e], x[h])
            })
            .collect();
        let graph = LabelGraph { graph: g.graph.clone(), vlab: x.to_vec(), elab, target: self.graph.clone() };
        let mut open = BTreeSet::new();
        for u in 0..w.len() {
            for d in 0..self.dirs.nedges() {
                if w.missing(u, d) {
                    open.extend((0..self.nsym()).map(|y| (u, self.edge(x[u], d, y))));
                }
            }
        }
        Ok(Host { graph, open })
    }
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// ℤ² decorated by the quadrant's vertex labels.
pub fn quadrant_labels() -> Decorated {
    Decorated::new(strings(&QUADRANT_NAMES), plane_dirs())
}

/// ℤ² decorated by good/bad marks.
pub fn goodbad_labels() -> Decorated {
    Decorated::new(strings(&["good", "bad"]), plane_dirs())
}

/// The lamplighter Cayley graph decorated by comb tiles.
pub fn comb_labels() -> Decorated {
    Decorated::new(builtin::comb().names, lamplighter_labels())
}

/// The lamplighter Cayley graph decorated by Ω symbols.
pub fn omega_labels() -> Decorated {
    Decorated::new(builtin::omega_full().alphabet, lamplighter_labels())
}

/// Label graph by name: `plane`, `lamplighter`, or a decoration `quadrant`,
/// `goodbad`, `comb`, `omega`.
pub fn named_labels(name: &str) -> Result<Arc<Graph>> {
    Ok(match name {
        "plane" => plane_dirs(),
        "lamplighter" => lamplighter_labels(),
        "quadrant" => quadrant_labels().graph,
        "goodbad" => goodbad_labels().graph,
        "comb" => comb_labels().graph,
        "omega" => omega_labels().graph,
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

/// Name under which [`named_labels`] returns a graph equal to `g`.
pub fn labels_name(g: &Graph) -> Option<&'static str> {
    ["plane", "lamplighter", "quadrant", "goodbad", "comb", "omega"]
        .into_iter()
        .find(|n| named_labels(n).map(|h| *h == *g).unwrap_or(false))
}

/// Quadrant label of a point of ℕ².
pub fn quadrant_label(x: i64, y: i64) -> usize {
    match (x == 0, y == 0) {
        (true, true) => Q_NE,
        (true, false) => Q_NES,
        (false, true) => Q_NEW,
        (false, false) => Q_NESW,
    }
}

/// A finite patch of ℤ² or ℕ² as a host, with the coordinates of its vertices.
#[derive(Clone, Debug)]
pub struct GridHost {
    pub host: Host,
    pub coords: Vec<(i64, i64)>,
    pub index: HashMap<(i64, i64), usize>,
}

impl GridHost {
    fn build(
        coords: Vec<(i64, i64)>,
        in_universe: impl Fn((i64, i64)) -> bool,
        target: Arc<Graph>,
        vlab: Vec<usize>,
        elab: impl Fn(usize, usize, usize) -> usize,
        nsym: usize,
    ) -> GridHost {
        let index: HashMap<(i64, i64), usize> = coords.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut g = LabelGraph::unoriented(target);
        for (i, &(x, y)) in coords.iter().enumerate() {
            g.add_vertex(format!("({x},{y})"), vlab[i]);
        }
        let mut open = BTreeSet::new();
        for (u, &(x, y)) in coords.iter().enumerate() {
            for d in 0..4 {
                let p = (x + DIR_DELTA[d].0, y + DIR_DELTA[d].1);
                match index.get(&p) {
                    Some(&v) if d % 2 == 0 => {
                        let n = format!("{}{}", g.graph.vnames[u], DIR_NAMES[d]);
                        let r = format!("{}{}", g.graph.vnames[v], DIR_NAMES[d + 1]);
                        g.add_edge_pair(u, v, n, r, elab(vlab[u], d, vlab[v]));
                    }
                    Some(_) => {}
                    None if in_universe(p) => open.extend((0..nsym).map(|s| (u, elab(vlab[u], d, s)))),
                    None => {}
                }
            }
        }
        GridHost { host: Host { graph: g, open }, coords, index }
    }
}

/// The w × h patch {0..w−1} × {0..h−1} of the quadrant with its vertex labels.
pub fn quadrant_patch(w: usize, h: usize) -> GridHost {
    let q = quadrant_labels();
    let coords: Vec<(i64, i64)> = (0..h as i64).flat_map(|y| (0..w as i64).map(move |x| (x, y))).collect();
    let vlab = coords.iter().map(|&(x, y)| quadrant_label(x, y)).collect();
    GridHost::build(coords, |(x, y)| x >= 0 && y >= 0, q.graph.clone(), vlab, |a, d, b| q.edge(a, d, b), q.nsym())
}

/// The patch [x0, x1] × [y0, y1] of the plane.
pub fn plane_patch(x0: i64, x1: i64, y0: i64, y1: i64) -> GridHost {
    let coords: Vec<(i64, i64)> = (y0..=y1).flat_map(|y| (x0..=x1).map(move |x| (x, y))).collect();
    let n = coords.len();
    GridHost::build(coords, |_| true, plane_dirs(), vec![0; n], |_, d, _| d, 1)
}

/// A w × h patch of the plane whose vertices carry decoration symbols.
pub fn marked_plane_patch(w: usize, h: usize, deco: &Decorated, label: impl Fn(i64, i64) -> usize) -> GridHost {
    let coords: Vec<(i64, i64)> = (0..h as i64).flat_map(|y| (0..w as i64).map(move |x| (x, y))).collect();
    let vlab = coords.iter().map(|&(x, y)| label(x, y)).collect();
    GridHost::build(coords, |_| true, deco.graph.clone(), vlab, |a, d, b| deco.edge(a, d, b), deco.nsym())
}

/// Parses `<w>x<h>` into a quadrant patch.
pub fn parse_grid(spec: &str) -> Result<GridHost> {
    let (w, h) = spec.split_once('x').ok_or_else(|| Error::InvalidToken(spec.to_string()))?;
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::InvalidToken(spec.to_string()));
    let (w, h) = (num(w)?, num(h)?);
    if w == 0 || h == 0 {
        return Err(Error::Invalid(format!("grid {spec} is empty")));
    }
    Ok(quadrant_patch(w, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decorated_reversal() {
        let q = quadrant_labels();
        assert_eq!(q.graph.nedges(), 64);
        q.graph.validate().unwrap();
        let e = q.edge(Q_NE, DIR_E, Q_NEW);
        assert_eq!(q.graph.rev_of(e), Some(q.edge(Q_NEW, DIR_W, Q_NE)));
        assert_eq!(q.decode(e), (Q_NE, DIR_E, Q_NEW));
        assert_eq!(labels_name(&q.graph), Some("quadrant"));
    }

    #[test]
    fn quadrant_patches() {
        let one = quadrant_patch(1, 1);
        assert_eq!(one.host.graph.vlab, vec![Q_NE]);
        let three = quadrant_patch(3, 3);
        let mut counts = [0; 4];
        for &l in &three.host.graph.vlab {
            counts[l] += 1;
        }
        assert_eq!(counts, [1, 2, 2, 4]);
        three.host.graph.validate().unwrap();
        // 12 undirected grid edges
        assert_eq!(three.host.graph.nedges(), 24);
        // the corner misses nothing to the west or south
        let c = three.index[&(0, 0)];
        assert!(three.host.open.iter().all(|&(u, _)| u != c));
    }
}
