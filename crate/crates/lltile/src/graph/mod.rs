//! Finite directed graphs with an optional reversal involution, labelled
//! graphs, morphisms and the categorical constructions built on them.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};

mod exp;
mod homs;
mod ops;

pub use exp::*;
pub use homs::*;
pub use ops::*;

/// A finite directed multigraph. When `rev` is present the graph is
/// unoriented: `rev` is an involution on edges reversing their direction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    pub vnames: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub enames: Vec<String>,
    pub rev: Option<Vec<usize>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unoriented() -> Self {
        Graph { rev: Some(Vec::new()), ..Self::default() }
    }

    pub fn nverts(&self) -> usize {
        self.vnames.len()
    }

    pub fn nedges(&self) -> usize {
        self.edges.len()
    }

    pub fn tail(&self, e: usize) -> usize {
        self.edges[e].0
    }

    pub fn head(&self, e: usize) -> usize {
        self.edges[e].1
    }

    pub fn is_unoriented(&self) -> bool {
        self.rev.is_some()
    }

    /// Reverse of `e`, if the graph is unoriented.
    pub fn rev_of(&self, e: usize) -> Option<usize> {
        self.rev.as_ref().map(|r| r[e])
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.vnames.push(name.into());
        self.vnames.len() - 1
    }

    /// Adds an edge. In an unoriented graph the new edge starts out as its
    /// own reverse; use [`Graph::pair`] or [`Graph::add_edge_pair`] to pair it.
    pub fn add_edge(&mut self, tail: usize, head: usize, name: impl Into<String>) -> usize {
        let e = self.edges.len();
        self.edges.push((tail, head));
        self.enames.push(name.into());
        if let Some(r) = self.rev.as_mut() {
            r.push(e);
        }
        e
    }

    /// Adds `tail -> head` and its reverse, returning both indices. Only
    /// valid on unoriented graphs.
    pub fn add_edge_pair(&mut self, tail: usize, head: usize, name: impl Into<String>, rname: impl Into<String>) -> (usize, usize) {
        let e = self.add_edge(tail, head, name);
        let f = self.add_edge(head, tail, rname);
        self.pair(e, f);
        (e, f)
    }

    pub fn pair(&mut self, e: usize, f: usize) {
        let r = self.rev.as_mut().expect("pairing edges of an oriented graph");
        r[e] = f;
        r[f] = e;
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vnames.iter().position(|n| n == name)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        self.enames.iter().position(|n| n == name)
    }

    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nverts()];
        for (e, &(t, _)) in self.edges.iter().enumerate() {
            out[t].push(e);
        }
        out
    }

    pub fn in_edges(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.nverts()];
        for (e, &(_, h)) in self.edges.iter().enumerate() {
            inc[h].push(e);
        }
        inc
    }

    /// Checks endpoints and the reversal involution.
    pub fn validate(&self) -> Result<()> {
        if self.enames.len() != self.edges.len() {
            return Err(Error::Invalid("edge name count differs from edge count".into()));
        }
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if t >= self.nverts() || h >= self.nverts() {
                return Err(Error::Invalid(format!("edge {e} has an endpoint out of range")));
            }
        }
        if let Some(r) = &self.rev {
            if r.len() != self.nedges() {
                return Err(Error::Invalid("reversal is not total".into()));
            }
            for e in 0..self.nedges() {
                let f = r[e];
                if f >= self.nedges() || r[f] != e {
                    return Err(Error::Invalid(format!("reversal is not an involution at edge {e}")));
                }
                if self.head(f) != self.tail(e) || self.tail(f) != self.head(e) {
                    return Err(Error::Invalid(format!("reverse of edge {e} has wrong endpoints")));
                }
            }
        }
        Ok(())
    }

    fn vname(&self, v: usize) -> &str {
        &self.vnames[v]
    }

    /// Line-oriented text form (`vertex <id> <name>`, `edge <id> <t> <h> <name> [rev <id>]`).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, n) in self.vnames.iter().enumerate() {
            let _ = writeln!(s, "vertex {v} {n}");
        }
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            let _ = write!(s, "edge {e} {t} {h} {}", self.enames[e]);
            if let Some(r) = &self.rev {
                let _ = write!(s, " rev {}", r[e]);
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Graph> {
        let raw = parse_lines(text)?;
        let mut g = if raw.edges.iter().any(|e| e.rev.is_some()) { Graph::unoriented() } else { Graph::new() };
        for (_, name) in &raw.vertices {
            g.add_vertex(name.clone());
        }
        for e in &raw.edges {
            g.add_edge(e.tail, e.head, e.label.clone());
        }
        raw.apply_rev(&mut g)?;
        g.validate()?;
        Ok(g)
    }
}

/// A graph together with a labelling morphism into `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelGraph {
    pub graph: Graph,
    pub vlab: Vec<usize>,
    pub elab: Vec<usize>,
    pub target: Arc<Graph>,
}

impl LabelGraph {
    pub fn new(target: Arc<Graph>) -> Self {
        LabelGraph { graph: Graph::new(), vlab: Vec::new(), elab: Vec::new(), target }
    }

    pub fn unoriented(target: Arc<Graph>) -> Self {
        LabelGraph { graph: Graph::unoriented(), vlab: Vec::new(), elab: Vec::new(), target }
    }

    /// The label graph labelled by itself.
    pub fn identity(target: Arc<Graph>) -> Self {
        LabelGraph { graph: (*target).clone(), vlab: (0..target.nverts()).collect(), elab: (0..target.nedges()).collect(), target }
    }

    pub fn nverts(&self) -> usize {
        self.graph.nverts()
    }

    pub fn nedges(&self) -> usize {
        self.graph.nedges()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, label: usize) -> usize {
        self.vlab.push(label);
        self.graph.add_vertex(name)
    }

    pub fn add_edge(&mut self, tail: usize, head: usize, name: impl Into<String>, label: usize) -> usize {
        self.elab.push(label);
        self.graph.add_edge(tail, head, name)
    }

    /// Adds an edge and its reverse, labelled by `label` and its reverse in the target.
    pub fn add_edge_pair(
        &mut self,
        tail: usize,
        head: usize,
        name: impl Into<String>,
        rname: impl Into<String>,
        label: usize,
    ) -> (usize, usize) {
        let rl = self.target.rev_of(label).expect("unoriented label graph");
        self.elab.push(label);
        self.elab.push(rl);
        self.graph.add_edge_pair(tail, head, name, rname)
    }

    /// Whether reversals are present on both sides, so labels must commute with them.
    pub fn reversal_labelled(&self) -> bool {
        self.graph.is_unoriented() && self.target.is_unoriented()
    }

    pub fn validate(&self) -> Result<()> {
        self.graph.validate()?;
        self.target.validate()?;
        if self.vlab.len() != self.nverts() || self.elab.len() != self.nedges() {
            return Err(Error::Invalid("labelling is not total".into()));
        }
        for (v, &l) in self.vlab.iter().enumerate() {
            if l >= self.target.nverts() {
                return Err(Error::Invalid(format!("vertex {v} has an unknown label")));
            }
        }
        for e in 0..self.nedges() {
            let l = self.elab[e];
            if l >= self.target.nedges() {
                return Err(Error::Invalid(format!("edge {e} has an unknown label")));
            }
            if self.vlab[self.graph.tail(e)] != self.target.tail(l) || self.vlab[self.graph.head(e)] != self.target.head(l) {
                return Err(Error::Invalid(format!("labelling is not a morphism at edge {} ({})", e, self.graph.enames[e])));
            }
            if self.reversal_labelled() {
                let r = self.graph.rev_of(e).unwrap();
                if self.elab[r] != self.target.rev_of(l).unwrap() {
                    return Err(Error::Invalid(format!("labelling does not commute with reversal at edge {e}")));
                }
            }
        }
        Ok(())
    }

    pub fn check_same_target(&self, other: &LabelGraph) -> Result<()> {
        if Arc::ptr_eq(&self.target, &other.target) || *self.target == *other.target {
            Ok(())
        } else {
            Err(Error::LabelMismatch("graphs are labelled over different label graphs".into()))
        }
    }

    /// Same graph with the reversal forgotten.
    pub fn oriented(&self) -> LabelGraph {
        let mut g = self.clone();
        g.graph.rev = None;
        g
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in 0..self.nverts() {
            let _ = writeln!(s, "vertex {v} {}", self.target.vnames[self.vlab[v]]);
        }
        for (e, &(t, h)) in self.graph.edges.iter().enumerate() {
            let _ = write!(s, "edge {e} {t} {h} {}", self.target.enames[self.elab[e]]);
            if let Some(r) = &self.graph.rev {
                let _ = write!(s, " rev {}", r[e]);
            }
            s.push('\n');
        }
        s
    }

    /// Text form with vertices sorted by (label, name) and edges by their
    /// rewritten endpoints, so isomorphic graphs with equal names agree.
    pub fn canonical_text(&self) -> String {
        let tv = &self.target.vnames;
        let mut vs: Vec<usize> = (0..self.nverts()).collect();
        vs.sort_by(|&a, &b| (&tv[self.vlab[a]], &self.graph.vnames[a]).cmp(&(&tv[self.vlab[b]], &self.graph.vnames[b])));
        let mut pos = vec![0; self.nverts()];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let te = &self.target.enames;
        let key = |e: usize| {
            let (t, h) = self.graph.edges[e];
            (pos[t], pos[h], te[self.elab[e]].clone(), self.graph.enames[e].clone())
        };
        let mut es: Vec<usize> = (0..self.nedges()).collect();
        es.sort_by_key(|&e| key(e));
        let mut epos = vec![0; self.nedges()];
        for (i, &e) in es.iter().enumerate() {
            epos[e] = i;
        }
        let mut s = String::new();
        for (i, &v) in vs.iter().enumerate() {
            let _ = writeln!(s, "vertex {i} {} {}", tv[self.vlab[v]], self.graph.vnames[v]);
        }
        for (i, &e) in es.iter().enumerate() {
            let (t, h, l, _) = key(e);
            let _ = write!(s, "edge {i} {t} {h} {l}");
            if let Some(r) = &self.graph.rev {
                let _ = write!(s, " rev {}", epos[r[e]]);
            }
            s.push('\n');
        }
        s
    }

    /// Parses the text form, resolving labels by name in `target`.
    pub fn parse(text: &str, target: Arc<Graph>) -> Result<LabelGraph> {
        let raw = parse_lines(text)?;
        let unoriented = raw.edges.iter().any(|e| e.rev.is_some());
        let mut g = if unoriented { LabelGraph::unoriented(target.clone()) } else { LabelGraph::new(target.clone()) };
        for (line, name) in &raw.vertices {
            let l = target.vertex_by_name(name).ok_or_else(|| Error::parse(*line, format!("unknown vertex label `{name}`")))?;
            g.add_vertex(format!("v{}", g.nverts()), l);
        }
        for e in &raw.edges {
            let l = target.edge_by_name(&e.label).ok_or_else(|| Error::parse(e.line, format!("unknown edge label `{}`", e.label)))?;
            g.add_edge(e.tail, e.head, format!("e{}", g.nedges()), l);
        }
        raw.apply_rev(&mut g.graph)?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for v in 0..self.nverts() {
            let _ = writeln!(s, "  v{v} [label=\"{}\\n{}\"];", escape(self.graph.vname(v)), escape(&self.target.vnames[self.vlab[v]]));
        }
        for (e, &(t, h)) in self.graph.edges.iter().enumerate() {
            match self.graph.rev_of(e) {
                Some(r) if r < e => continue,
                Some(r) if r != e => {
                    let _ = writeln!(s, "  v{t} -> v{h} [label=\"{}\", dir=both];", escape(&self.target.enames[self.elab[e]]));
                }
                _ => {
                    let _ = writeln!(s, "  v{t} -> v{h} [label=\"{}\"];", escape(&self.target.enames[self.elab[e]]));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

struct RawEdge {
    line: usize,
    tail: usize,
    head: usize,
    label: String,
    rev: Option<String>,
}

struct RawGraph {
    vertices: Vec<(usize, String)>,
    edges: Vec<RawEdge>,
    eids: HashMap<String, usize>,
}

impl RawGraph {
    fn apply_rev(&self, g: &mut Graph) -> Result<()> {
        if g.rev.is_none() {
            return Ok(());
        }
        for (e, raw) in self.edges.iter().enumerate() {
            let Some(r) = &raw.rev else {
                return Err(Error::parse(raw.line, "every edge needs a `rev` once any edge has one"));
            };
            let f = *self.eids.get(r).ok_or_else(|| Error::parse(raw.line, format!("unknown edge id `{r}`")))?;
            g.rev.as_mut().unwrap()[e] = f;
        }
        Ok(())
    }
}

fn parse_lines(text: &str) -> Result<RawGraph> {
    let mut vids = HashMap::new();
    let mut raw = RawGraph { vertices: Vec::new(), edges: Vec::new(), eids: HashMap::new() };
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok[0] {
            "vertex" if tok.len() == 3 => {
                if vids.insert(tok[1].to_string(), raw.vertices.len()).is_some() {
                    return Err(Error::parse(ln, format!("duplicate vertex id `{}`", tok[1])));
                }
                raw.vertices.push((ln, tok[2].to_string()));
            }
            "edge" if tok.len() == 5 || (tok.len() == 7 && tok[5] == "rev") => {
                let end = |t: &str| vids.get(t).copied().ok_or_else(|| Error::parse(ln, format!("unknown vertex id `{t}`")));
                let (tail, head) = (end(tok[2])?, end(tok[3])?);
                if raw.eids.insert(tok[1].to_string(), raw.edges.len()).is_some() {
                    return Err(Error::parse(ln, format!("duplicate edge id `{}`", tok[1])));
                }
                raw.edges.push(RawEdge { line: ln, tail, head, label: tok[4].to_string(), rev: tok.get(6).map(|s| s.to_string()) });
            }
            _ => return Err(Error::parse(ln, format!("unrecognised line `{line}`"))),
        }
    }
    Ok(raw)
}

/// A pair of maps on vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub vmap: Vec<usize>,
    pub emap: Vec<usize>,
}

impl Morphism {
    /// Checks that the maps interlace heads, tails and (where both sides
    /// have one) the reversal.
    pub fn is_morphism(&self, dom: &Graph, cod: &Graph) -> bool {
        if self.vmap.len() != dom.nverts() || self.emap.len() != dom.nedges() {
            return false;
        }
        if self.vmap.iter().any(|&v| v >= cod.nverts()) || self.emap.iter().any(|&e| e >= cod.nedges()) {
            return false;
        }
        for e in 0..dom.nedges() {
            let f = self.emap[e];
            if self.vmap[dom.tail(e)] != cod.tail(f) || self.vmap[dom.head(e)] != cod.head(f) {
                return false;
            }
            if let (Some(r), Some(cr)) = (dom.rev_of(e), cod.rev_of(f)) {
                if self.emap[r] != cr {
                    return false;
                }
            }
        }
        true
    }

    /// Morphism in the slice category over the common label graph.
    pub fn is_slice_morphism(&self, dom: &LabelGraph, cod: &LabelGraph) -> bool {
        self.is_morphism(&dom.graph, &cod.graph)
            && (0..dom.nverts()).all(|v| dom.vlab[v] == cod.vlab[self.vmap[v]])
            && (0..dom.nedges()).all(|e| dom.elab[e] == cod.elab[self.emap[e]])
    }
}

/// Whether same-label edges sharing one endpoint share both.
pub fn is_weakly_etale(g: &LabelGraph) -> bool {
    let mut out: HashMap<(usize, usize), usize> = HashMap::new();
    let mut inc: HashMap<(usize, usize), usize> = HashMap::new();
    for e in 0..g.nedges() {
        let (t, h) = g.graph.edges[e];
        let l = g.elab[e];
        if *out.entry((t, l)).or_insert(h) != h || *inc.entry((h, l)).or_insert(t) != t {
            return false;
        }
    }
    true
}

/// Whether the labelling is locally injective on edges.
pub fn is_etale(g: &LabelGraph) -> bool {
    let mut out = std::collections::HashSet::new();
    let mut inc = std::collections::HashSet::new();
    (0..g.nedges()).all(|e| {
        let (t, h) = g.graph.edges[e];
        out.insert((t, g.elab[e])) && inc.insert((h, g.elab[e]))
    })
}

/// Merges parallel edges carrying the same label.
pub fn simplify(g: &LabelGraph) -> LabelGraph {
    simplify_impl(g, false)
}

/// Merges parallel same-label edges and removes self-loops.
pub fn full_simplify(g: &LabelGraph) -> LabelGraph {
    simplify_impl(g, true)
}

fn simplify_impl(g: &LabelGraph, drop_loops: bool) -> LabelGraph {
    let mut out = LabelGraph {
        graph: Graph { vnames: g.graph.vnames.clone(), rev: g.graph.rev.as_ref().map(|_| Vec::new()), ..Graph::default() },
        vlab: g.vlab.clone(),
        elab: Vec::new(),
        target: g.target.clone(),
    };
    let mut rep: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut new_of = vec![usize::MAX; g.nedges()];
    for e in 0..g.nedges() {
        let (t, h) = g.graph.edges[e];
        if drop_loops && t == h {
            continue;
        }
        let k = (t, h, g.elab[e]);
        new_of[e] = *rep.entry(k).or_insert_with(|| out.add_edge(t, h, g.graph.enames[e].clone(), g.elab[e]));
    }
    if let Some(r) = &g.graph.rev {
        for e in 0..g.nedges() {
            if new_of[e] != usize::MAX {
                out.graph.rev.as_mut().unwrap()[new_of[e]] = new_of[r[e]];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn one_vertex(labels: &[&str]) -> Arc<Graph> {
        let mut b = Graph::new();
        b.add_vertex("*");
        for l in labels {
            b.add_edge(0, 0, *l);
        }
        Arc::new(b)
    }

    #[test]
    fn validate_catches_bad_reversal() {
        let mut g = Graph::unoriented();
        g.add_vertex("x");
        g.add_vertex("y");
        g.add_edge(0, 1, "e");
        g.add_edge(0, 1, "f");
        g.pair(0, 1);
        assert!(g.validate().is_err());
        g.edges[1] = (1, 0);
        assert!(g.validate().is_ok());
    }

    #[test]
    fn parallel_edges_simplify() {
        let b = one_vertex(&["c"]);
        let mut g = LabelGraph::new(b);
        g.add_vertex("v", 0);
        g.add_vertex("w", 0);
        g.add_edge(0, 1, "e1", 0);
        g.add_edge(0, 1, "e2", 0);
        assert!(is_weakly_etale(&g));
        assert!(!is_etale(&g));
        let s = simplify(&g);
        assert_eq!(s.nedges(), 1);
        assert!(is_etale(&s));
    }

    #[test]
    fn diverging_edges_not_weakly_etale() {
        let b = one_vertex(&["c"]);
        let mut g = LabelGraph::new(b);
        for n in ["v", "w", "w2"] {
            g.add_vertex(n, 0);
        }
        g.add_edge(0, 1, "e1", 0);
        g.add_edge(0, 2, "e2", 0);
        assert!(!is_weakly_etale(&g));
    }

    #[test]
    fn full_simplify_drops_loops() {
        let b = one_vertex(&["c"]);
        let mut g = LabelGraph::new(b);
        g.add_vertex("v", 0);
        g.add_edge(0, 0, "l", 0);
        assert_eq!(simplify(&g).nedges(), 1);
        assert_eq!(full_simplify(&g).nedges(), 0);
    }

    #[test]
    fn text_round_trip() {
        let mut b = Graph::unoriented();
        b.add_vertex("*");
        b.add_edge_pair(0, 0, "a", "A");
        let b = Arc::new(b);
        let mut g = LabelGraph::unoriented(b.clone());
        g.add_vertex("x", 0);
        g.add_vertex("y", 0);
        g.add_edge_pair(0, 1, "e", "e'", 0);
        g.validate().unwrap();
        let t = g.to_text();
        let h = LabelGraph::parse(&t, b.clone()).unwrap();
        assert_eq!(h.to_text(), t);
        let plain = Graph::parse(&b.to_text()).unwrap();
        assert_eq!(plain, *b);
    }

    #[test]
    fn parse_reports_line() {
        let b = one_vertex(&["c"]);
        let err = LabelGraph::parse("vertex 0 *\nedge 0 0 9 c\n", b).unwrap_err();
        assert_eq!(err, Error::parse(2, "unknown vertex id `9`"));
    }

    #[test]
    fn morphism_checks_reversal() {
        let mut g = Graph::unoriented();
        g.add_vertex("x");
        g.add_edge_pair(0, 0, "e", "e'");
        let m = Morphism { vmap: vec![0], emap: vec![0, 0] };
        assert!(!m.is_morphism(&g, &g));
        let m = Morphism { vmap: vec![0], emap: vec![1, 0] };
        assert!(m.is_morphism(&g, &g));
    }
}
