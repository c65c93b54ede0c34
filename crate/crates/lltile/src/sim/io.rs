//! Simulator text format and DOT export.
//!
//! ```text
//! alpha <label graph name>
//! beta <label graph name>
//! vertex <id> <name> <A-vertex> <V:B-vertex | E:B-edge>
//! edge <id> <tail> <head> <A-edge> <(i,B-edge,j)> [rev <id>]
//! ```
//!
//! Label graphs are referred to by the names of [`named_labels`]; `E:c`
//! is the edge-vertex of c in B*.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::labels::{labels_name, named_labels};
use super::Simulator;
use crate::error::{Error, Result};
use crate::graph::{BiLabelGraph, Graph, SubVertex, Subdivision};

fn beta_vertex_text(sim: &Simulator, v: usize) -> String {
    let base = sim.b();
    match sim.sub.decode_vertex(v) {
        SubVertex::Vertex(x) => format!("V:{}", base.vnames[x]),
        SubVertex::Edge(e) => format!("E:{}", base.enames[e]),
    }
}

pub fn simulator_to_text(sim: &Simulator) -> Result<String> {
    let name = |g: &Graph, what: &str| labels_name(g).ok_or_else(|| Error::Invalid(format!("{what} label graph has no registered name")));
    let g = &sim.graph;
    let mut s = String::new();
    let _ = writeln!(s, "alpha {}", name(g.a.as_ref(), "host")?);
    let _ = writeln!(s, "beta {}", name(sim.b().as_ref(), "target")?);
    for v in 0..g.graph.nverts() {
        let _ = writeln!(s, "vertex {v} {} {} {}", g.graph.vnames[v], g.a.vnames[g.avlab[v]], beta_vertex_text(sim, g.bvlab[v]));
    }
    for e in 0..g.graph.nedges() {
        let (t, h) = g.graph.edges[e];
        let _ = write!(s, "edge {e} {t} {h} {} {}", g.a.enames[g.aelab[e]], g.b.enames[g.belab[e]]);
        if let Some(r) = g.graph.rev_of(e) {
            let _ = write!(s, " rev {r}");
        }
        s.push('\n');
    }
    Ok(s)
}

pub fn parse_simulator(text: &str) -> Result<Simulator> {
    let mut a = None;
    let mut sub: Option<std::sync::Arc<Subdivision>> = None;
    let mut g = Graph::new();
    let (mut avlab, mut aelab, mut bvlab, mut belab) = (vec![], vec![], vec![], vec![]);
    let mut vids = HashMap::new();
    let mut eids = HashMap::new();
    let mut revs: Vec<(usize, usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok[0] {
            "alpha" if tok.len() == 2 => {
                a = Some(named_labels(tok[1]).map_err(|_| Error::parse(ln, format!("unknown label graph `{}`", tok[1])))?)
            }
            "beta" if tok.len() == 2 => {
                let b = named_labels(tok[1]).map_err(|_| Error::parse(ln, format!("unknown label graph `{}`", tok[1])))?;
                sub = Some(Subdivision::new(b));
            }
            "vertex" if tok.len() == 5 => {
                let (Some(a), Some(sub)) = (&a, &sub) else { return Err(Error::parse(ln, "vertex before `alpha` and `beta`")) };
                let av = a.vertex_by_name(tok[3]).ok_or_else(|| Error::parse(ln, format!("unknown A-vertex `{}`", tok[3])))?;
                let bv = if let Some(n) = tok[4].strip_prefix("V:") {
                    sub.base.vertex_by_name(n)
                } else if let Some(n) = tok[4].strip_prefix("E:") {
                    sub.base.edge_by_name(n).map(|e| sub.edge_vertex(e))
                } else {
                    None
                };
                let bv = bv.ok_or_else(|| Error::parse(ln, format!("bad β-vertex `{}`", tok[4])))?;
                if vids.insert(tok[1].to_string(), g.nverts()).is_some() {
                    return Err(Error::parse(ln, format!("duplicate vertex id `{}`", tok[1])));
                }
                g.add_vertex(tok[2]);
                avlab.push(av);
                bvlab.push(bv);
            }
            "edge" if tok.len() == 6 || (tok.len() == 8 && tok[6] == "rev") => {
                let (Some(a), Some(sub)) = (&a, &sub) else { return Err(Error::parse(ln, "edge before `alpha` and `beta`")) };
                let end = |t: &str| vids.get(t).copied().ok_or_else(|| Error::parse(ln, format!("unknown vertex id `{t}`")));
                let (t, h) = (end(tok[2])?, end(tok[3])?);
                let ae = a.edge_by_name(tok[4]).ok_or_else(|| Error::parse(ln, format!("unknown A-edge `{}`", tok[4])))?;
                let be = sub.star.edge_by_name(tok[5]).ok_or_else(|| Error::parse(ln, format!("bad β-edge `{}`", tok[5])))?;
                if eids.insert(tok[1].to_string(), g.nedges()).is_some() {
                    return Err(Error::parse(ln, format!("duplicate edge id `{}`", tok[1])));
                }
                if let Some(r) = tok.get(7) {
                    revs.push((ln, g.nedges(), r.to_string()));
                }
                g.add_edge(t, h, format!("{}:{}", tok[4], tok[5]));
                aelab.push(ae);
                belab.push(be);
            }
            _ => return Err(Error::parse(ln, format!("unrecognised line `{line}`"))),
        }
    }
    let (Some(a), Some(sub)) = (a, sub) else { return Err(Error::parse(0, "missing `alpha` or `beta` line")) };
    if !revs.is_empty() {
        if revs.len() != g.nedges() {
            return Err(Error::parse(0, "either every edge or no edge has a `rev` entry"));
        }
        let mut r = vec![0; g.nedges()];
        for (ln, e, id) in revs {
            r[e] = *eids.get(&id).ok_or_else(|| Error::parse(ln, format!("unknown edge id `{id}`")))?;
        }
        g.rev = Some(r);
        g.validate()?;
    }
    let graph = BiLabelGraph { graph: g, avlab, aelab, a, bvlab, belab, b: sub.star.clone() };
    Simulator::new(graph, sub)
}

/// DOT rendering; vertex and edge labels show `α | β`.
pub fn simulator_to_dot(sim: &Simulator) -> String {
    let g = &sim.graph;
    let mut s = String::from("digraph simulator {\n");
    for v in 0..g.graph.nverts() {
        let _ = writeln!(s, "  v{v} [label=\"{}\\n{} | {}\"];", g.graph.vnames[v], g.a.vnames[g.avlab[v]], g.b.vnames[g.bvlab[v]]);
    }
    for e in 0..g.graph.nedges() {
        let (t, h) = g.graph.edges[e];
        let _ = writeln!(s, "  v{t} -> v{h} [label=\"{} | {}\"];", g.a.enames[g.aelab[e]], g.b.enames[g.belab[e]]);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::super::builtin::*;
    use super::*;

    #[test]
    fn text_round_trip() {
        for n in BUILTIN_SIMULATORS {
            let sim = builtin_simulator(n).unwrap();
            let text = simulator_to_text(&sim).unwrap();
            let back = parse_simulator(&text).unwrap();
            assert_eq!(back.graph.avlab, sim.graph.avlab, "{n}");
            assert_eq!(back.graph.bvlab, sim.graph.bvlab, "{n}");
            assert_eq!(back.graph.aelab, sim.graph.aelab, "{n}");
            assert_eq!(back.graph.belab, sim.graph.belab, "{n}");
            assert_eq!(back.graph.graph.edges, sim.graph.graph.edges, "{n}");
            assert_eq!(back.graph.graph.rev, sim.graph.graph.rev, "{n}");
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_simulator("vertex 0 x NE V:*"), Err(Error::Parse { line: 1, .. })));
        let bad = "alpha quadrant\nbeta plane\nvertex 0 x NE V:nowhere\n";
        assert!(matches!(parse_simulator(bad), Err(Error::Parse { line: 3, .. })));
        let ok = "alpha quadrant\nbeta plane\nvertex 0 x NE V:*\nedge 0 0 0 NE/E/NE (0,E,0)\n";
        assert_eq!(parse_simulator(ok).unwrap().nedges(), 1);
    }

    #[test]
    fn dot_mentions_every_edge() {
        let sim = rectangle_compress();
        let dot = simulator_to_dot(&sim);
        assert_eq!(dot.matches("->").count(), sim.nedges());
    }
}
