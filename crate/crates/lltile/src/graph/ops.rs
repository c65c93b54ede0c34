use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use super::{Graph, LabelGraph};
use crate::error::{Error, Result};

/// Fibre product of two labelled graphs together with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub graph: LabelGraph,
    pub vpairs: Vec<(usize, usize)>,
    pub epairs: Vec<(usize, usize)>,
}

pub fn pullback(g1: &LabelGraph, g2: &LabelGraph) -> Result<Pullback> {
    g1.check_same_target(g2)?;
    let unoriented = g1.reversal_labelled() && g2.reversal_labelled();
    Ok(pullback_raw((&g1.graph, &g1.vlab, &g1.elab), (&g2.graph, &g2.vlab, &g2.elab), g1.target.clone(), unoriented))
}

type Side<'a> = (&'a Graph, &'a [usize], &'a [usize]);

/// Pullback of two graphs given explicit labellings into `target`. Pairs
/// are listed lexicographically; the result is labelled through the first
/// factor.
pub fn pullback_raw(s1: Side<'_>, s2: Side<'_>, target: Arc<Graph>, unoriented: bool) -> Pullback {
    let (g1, v1, e1) = s1;
    let (g2, v2, e2) = s2;
    let mut vby = vec![Vec::new(); target.nverts()];
    for (u, &l) in v2.iter().enumerate() {
        vby[l].push(u);
    }
    let mut eby = vec![Vec::new(); target.nedges()];
    for (e, &l) in e2.iter().enumerate() {
        eby[l].push(e);
    }
    let mut out = if unoriented { LabelGraph::unoriented(target.clone()) } else { LabelGraph::new(target.clone()) };
    let mut vpairs = Vec::new();
    let mut vidx = HashMap::new();
    for u1 in 0..g1.nverts() {
        for &u2 in &vby[v1[u1]] {
            vidx.insert((u1, u2), vpairs.len());
            vpairs.push((u1, u2));
            out.add_vertex(format!("({},{})", g1.vnames[u1], g2.vnames[u2]), v1[u1]);
        }
    }
    let mut epairs = Vec::new();
    let mut eidx = HashMap::new();
    for a in 0..g1.nedges() {
        for &b in &eby[e1[a]] {
            let t = vidx[&(g1.tail(a), g2.tail(b))];
            let h = vidx[&(g1.head(a), g2.head(b))];
            eidx.insert((a, b), epairs.len());
            epairs.push((a, b));
            out.add_edge(t, h, format!("({},{})", g1.enames[a], g2.enames[b]), e1[a]);
        }
    }
    if unoriented {
        let (r1, r2) = (g1.rev.as_ref().unwrap(), g2.rev.as_ref().unwrap());
        let rev = out.graph.rev.as_mut().unwrap();
        for (i, &(a, b)) in epairs.iter().enumerate() {
            rev[i] = eidx[&(r1[a], r2[b])];
        }
    }
    Pullback { graph: out, vpairs, epairs }
}

/// Vertex of a path subdivision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubVertex {
    Vertex(usize),
    /// The edge-vertex of the class containing this edge.
    Edge(usize),
}

/// Path subdivision B* of a label graph B. Vertex v of B is vertex v of B*;
/// edge e yields the edge-vertex `nv + class[e]`; the edge (i,e,j) of B* has
/// index `4e + 2i + j`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub base: Arc<Graph>,
    pub star: Arc<Graph>,
    pub class: Vec<usize>,
    pub nclass: usize,
    pub class_rep: Vec<usize>,
}

impl Subdivision {
    pub fn new(base: Arc<Graph>) -> Arc<Subdivision> {
        let (class, class_rep) = edge_classes(&base, base.is_unoriented());
        let nclass = class_rep.len();
        let mut star = if base.is_unoriented() { Graph::unoriented() } else { Graph::new() };
        for n in &base.vnames {
            star.add_vertex(n.clone());
        }
        for &e in &class_rep {
            star.add_vertex(format!("[{}]", base.enames[e]));
        }
        let nv = base.nverts();
        for e in 0..base.nedges() {
            let (t, h) = base.edges[e];
            let m = nv + class[e];
            for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let tail = if i == 0 { t } else { m };
                let head = if j == 0 { h } else { m };
                star.add_edge(tail, head, format!("({},{},{})", i, base.enames[e], j));
            }
        }
        if let Some(r) = &base.rev {
            let rv: Vec<usize> = (0..star.nedges())
                .map(|x| {
                    let (e, i, j) = (x / 4, (x / 2) % 2, x % 2);
                    4 * r[e] + 2 * j + i
                })
                .collect();
            star.rev = Some(rv);
        }
        Arc::new(Subdivision { base, star: Arc::new(star), class, nclass, class_rep })
    }

    pub fn edge(&self, i: usize, e: usize, j: usize) -> usize {
        4 * e + 2 * i + j
    }

    /// Decodes a B* edge into (i, e, j).
    pub fn decode_edge(&self, x: usize) -> (usize, usize, usize) {
        ((x / 2) % 2, x / 4, x % 2)
    }

    pub fn edge_vertex(&self, e: usize) -> usize {
        self.base.nverts() + self.class[e]
    }

    pub fn decode_vertex(&self, x: usize) -> SubVertex {
        if x < self.base.nverts() {
            SubVertex::Vertex(x)
        } else {
            SubVertex::Edge(self.class_rep[x - self.base.nverts()])
        }
    }
}

/// Edge classes: orbits of the reversal when `merge`, singletons otherwise.
/// Classes are numbered in order of their least edge.
fn edge_classes(g: &Graph, merge: bool) -> (Vec<usize>, Vec<usize>) {
    let mut class = vec![usize::MAX; g.nedges()];
    let mut rep = Vec::new();
    for e in 0..g.nedges() {
        if class[e] != usize::MAX {
            continue;
        }
        class[e] = rep.len();
        if merge {
            class[g.rev_of(e).unwrap()] = rep.len();
        }
        rep.push(e);
    }
    (class, rep)
}

/// Functorial path subdivision of a graph labelled over `sub.base`. The
/// result is unoriented when both the graph and the base are.
pub fn subdivide(g: &LabelGraph, sub: &Subdivision) -> Result<LabelGraph> {
    if *g.target != *sub.base {
        return Err(Error::LabelMismatch("graph is not labelled over the subdivided base".into()));
    }
    let unoriented = g.reversal_labelled();
    let (class, rep) = edge_classes(&g.graph, unoriented);
    let mut out = if unoriented { LabelGraph::unoriented(sub.star.clone()) } else { LabelGraph::new(sub.star.clone()) };
    for v in 0..g.nverts() {
        out.add_vertex(g.graph.vnames[v].clone(), g.vlab[v]);
    }
    for &e in &rep {
        out.add_vertex(format!("[{}]", g.graph.enames[e]), sub.edge_vertex(g.elab[e]));
    }
    let nv = g.nverts();
    for e in 0..g.nedges() {
        let (t, h) = g.graph.edges[e];
        let m = nv + class[e];
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let tail = if i == 0 { t } else { m };
            let head = if j == 0 { h } else { m };
            out.add_edge(tail, head, format!("({},{},{})", i, g.graph.enames[e], j), sub.edge(i, g.elab[e], j));
        }
    }
    if unoriented {
        let r = g.graph.rev.as_ref().unwrap();
        let rv = out.graph.rev.as_mut().unwrap();
        for x in 0..4 * g.nedges() {
            let (e, i, j) = (x / 4, (x / 2) % 2, x % 2);
            rv[x] = 4 * r[e] + 2 * j + i;
        }
    }
    Ok(out)
}

/// Result of deflating coherent paths.
#[derive(Clone, Debug)]
pub struct Flat {
    /// The simplified ♭, labelled over the base of the subdivision.
    pub graph: LabelGraph,
    /// For each vertex of `graph`, the vertex of the input it comes from.
    pub origin: Vec<usize>,
    /// (vertex of `graph`, base edge) pairs for which some coherent path
    /// may continue outside the finite input.
    pub incomplete: Vec<(usize, usize)>,
}

pub fn flat(g: &LabelGraph, sub: &Subdivision) -> Result<Flat> {
    flat_with(g, sub, |_, _, _| false)
}

/// ♭ with a boundary oracle: `leak(x, c, mid)` reports whether a coherent
/// c-path reaching input vertex `x` (as its start when `mid` is false) might
/// continue through an edge missing from the input.
pub fn flat_with(g: &LabelGraph, sub: &Subdivision, leak: impl Fn(usize, usize, bool) -> bool) -> Result<Flat> {
    if *g.target != *sub.star {
        return Err(Error::LabelMismatch("graph is not labelled over a path subdivision".into()));
    }
    let nb = sub.base.nverts();
    let mut new_of = vec![usize::MAX; g.nverts()];
    let mut origin = Vec::new();
    for v in 0..g.nverts() {
        if g.vlab[v] < nb {
            new_of[v] = origin.len();
            origin.push(v);
        }
    }
    let out_edges = g.graph.out_edges();
    let mut triples = BTreeSet::new();
    let mut incomplete = BTreeSet::new();
    let mut seen = vec![usize::MAX; g.nverts()];
    let mut stamp = 0usize;
    for (nu, &u) in origin.iter().enumerate() {
        let mut starts: Vec<(usize, usize)> = Vec::new();
        for &e in &out_edges[u] {
            let (i, c, j) = sub.decode_edge(g.elab[e]);
            if i != 0 {
                continue;
            }
            let h = g.graph.head(e);
            if j == 0 {
                triples.insert((nu, c, new_of[h]));
            } else {
                starts.push((c, h));
            }
        }
        for c in 0..sub.base.nedges() {
            if leak(u, c, false) {
                incomplete.insert((nu, c));
            }
        }
        starts.sort_unstable();
        let mut k = 0;
        while k < starts.len() {
            let c = starts[k].0;
            stamp += 1;
            let mut queue = VecDeque::new();
            while k < starts.len() && starts[k].0 == c {
                let x = starts[k].1;
                if seen[x] != stamp {
                    seen[x] = stamp;
                    queue.push_back(x);
                }
                k += 1;
            }
            while let Some(x) = queue.pop_front() {
                if leak(x, c, true) {
                    incomplete.insert((nu, c));
                }
                for &e in &out_edges[x] {
                    let (i, c2, j) = sub.decode_edge(g.elab[e]);
                    if i != 1 || c2 != c {
                        continue;
                    }
                    let h = g.graph.head(e);
                    if j == 0 {
                        triples.insert((nu, c, new_of[h]));
                    } else if seen[h] != stamp {
                        seen[h] = stamp;
                        queue.push_back(h);
                    }
                }
            }
        }
    }
    let unoriented = g.reversal_labelled();
    let mut out = if unoriented { LabelGraph::unoriented(sub.base.clone()) } else { LabelGraph::new(sub.base.clone()) };
    for &v in &origin {
        out.add_vertex(g.graph.vnames[v].clone(), g.vlab[v]);
    }
    let mut eidx = HashMap::new();
    for &(u, c, v) in &triples {
        let e = out.add_edge(u, v, sub.base.enames[c].clone(), c);
        eidx.insert((u, c, v), e);
    }
    if unoriented {
        let br = sub.base.rev.as_ref().unwrap();
        for (&(u, c, v), &e) in &eidx {
            let r = *eidx.get(&(v, br[c], u)).ok_or_else(|| Error::Invalid("coherent paths are not closed under reversal".into()))?;
            out.graph.rev.as_mut().unwrap()[e] = r;
        }
    }
    Ok(Flat { graph: out, origin, incomplete: incomplete.into_iter().collect() })
}

/// Adds sink vertices to the subdivision of `g` so that every partial
/// coherent path can be completed. Sinks are labelled by edge-vertices of
/// B*; in the unoriented case (−,c) and (+,c′) are the same sink.
pub fn sharp(g: &LabelGraph, sub: &Subdivision) -> Result<LabelGraph> {
    let mut out = subdivide(g, sub)?;
    let base = &sub.base;
    let merged = base.is_unoriented();
    let mut minus = vec![0; base.nedges()];
    let mut plus = vec![0; base.nedges()];
    for c in 0..base.nedges() {
        minus[c] = out.add_vertex(format!("(-,{})", base.enames[c]), sub.edge_vertex(c));
        if !merged {
            plus[c] = out.add_vertex(format!("(+,{})", base.enames[c]), sub.edge_vertex(c));
        }
    }
    if merged {
        let r = base.rev.as_ref().unwrap();
        for c in 0..base.nedges() {
            plus[c] = minus[r[c]];
        }
    }
    let nv = g.nverts();
    let (class, _) = edge_classes(&g.graph, g.reversal_labelled());
    let mut keys: Vec<(usize, usize, usize)> = Vec::new();
    for e in 0..g.nedges() {
        let c = g.elab[e];
        let m = nv + class[e];
        keys.push((plus[c], m, sub.edge(1, c, 1)));
        keys.push((m, minus[c], sub.edge(1, c, 1)));
    }
    // Every vertex that could start or end a c-edge gets its sink edges,
    // whether or not it has such an edge: a computation started at a
    // vertex without c-edges must still have somewhere to go.
    for c in 0..base.nedges() {
        let (lt, lh) = base.edges[c];
        for v in 0..nv {
            if g.vlab[v] == lt {
                keys.push((v, minus[c], sub.edge(0, c, 1)));
            }
            if g.vlab[v] == lh {
                keys.push((plus[c], v, sub.edge(1, c, 0)));
            }
        }
        let l = sub.edge(1, c, 1);
        keys.push((plus[c], plus[c], l));
        keys.push((plus[c], minus[c], l));
        keys.push((minus[c], minus[c], l));
    }
    let mut idx: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for k in keys {
        if idx.contains_key(&k) {
            continue;
        }
        let name = format!("sink{}", sub.star.enames[k.2]);
        let e = out.add_edge(k.0, k.1, name, k.2);
        idx.insert(k, e);
    }
    if out.graph.is_unoriented() {
        let sr = sub.star.rev.as_ref().unwrap();
        for (&(t, h, l), &e) in &idx {
            let r = *idx.get(&(h, t, sr[l])).ok_or_else(|| Error::Invalid("sink edges are not closed under reversal".into()))?;
            out.graph.rev.as_mut().unwrap()[e] = r;
        }
    }
    Ok(out)
}

/// Vertex blow-up A^k of a label graph: vertices (a, i) with i < k(a),
/// edges (i, e, j) from (e⁻, i) to (e⁺, j).
#[derive(Clone, Debug)]
pub struct Blowup {
    pub base: Arc<Graph>,
    pub k: Vec<usize>,
    pub label: Arc<Graph>,
    voff: Vec<usize>,
    eoff: Vec<usize>,
}

impl Blowup {
    pub fn new(base: Arc<Graph>, k: Vec<usize>) -> Blowup {
        assert_eq!(k.len(), base.nverts());
        let mut g = if base.is_unoriented() { Graph::unoriented() } else { Graph::new() };
        let mut voff = Vec::with_capacity(base.nverts());
        for a in 0..base.nverts() {
            voff.push(g.nverts());
            for i in 0..k[a] {
                g.add_vertex(format!("({},{})", base.vnames[a], i));
            }
        }
        let mut eoff = Vec::with_capacity(base.nedges());
        for e in 0..base.nedges() {
            eoff.push(g.nedges());
            let (t, h) = base.edges[e];
            for i in 0..k[t] {
                for j in 0..k[h] {
                    g.add_edge(voff[t] + i, voff[h] + j, format!("({},{},{})", i, base.enames[e], j));
                }
            }
        }
        let mut b = Blowup { base, k, label: Arc::new(Graph::new()), voff, eoff };
        if let Some(r) = &b.base.rev {
            let mut rv = vec![0; g.nedges()];
            for e in 0..b.base.nedges() {
                let (t, h) = b.base.edges[e];
                for i in 0..b.k[t] {
                    for j in 0..b.k[h] {
                        rv[b.edge(i, e, j)] = b.edge(j, r[e], i);
                    }
                }
            }
            g.rev = Some(rv);
        }
        b.label = Arc::new(g);
        b
    }

    pub fn vertex(&self, a: usize, i: usize) -> usize {
        self.voff[a] + i
    }

    pub fn edge(&self, i: usize, e: usize, j: usize) -> usize {
        self.eoff[e] + i * self.k[self.base.head(e)] + j
    }

    /// Inverse of [`Blowup::vertex`].
    pub fn decode_vertex(&self, x: usize) -> (usize, usize) {
        let a = self.voff.partition_point(|&o| o <= x) - 1;
        (a, x - self.voff[a])
    }

    /// Inverse of [`Blowup::edge`].
    pub fn decode_edge(&self, x: usize) -> (usize, usize, usize) {
        let e = self.eoff.partition_point(|&o| o <= x) - 1;
        let kh = self.k[self.base.head(e)];
        let r = x - self.eoff[e];
        (r / kh, e, r % kh)
    }

    /// Blow-up of a graph labelled over the base.
    pub fn apply(&self, g: &LabelGraph) -> Result<LabelGraph> {
        if *g.target != *self.base {
            return Err(Error::LabelMismatch("graph is not labelled over the blown-up base".into()));
        }
        let unoriented = g.reversal_labelled();
        let mut out = if unoriented { LabelGraph::unoriented(self.label.clone()) } else { LabelGraph::new(self.label.clone()) };
        let mut voff = Vec::with_capacity(g.nverts());
        for u in 0..g.nverts() {
            voff.push(out.nverts());
            for i in 0..self.k[g.vlab[u]] {
                out.add_vertex(format!("({},{})", g.graph.vnames[u], i), self.vertex(g.vlab[u], i));
            }
        }
        let mut eoff = Vec::with_capacity(g.nedges());
        for e in 0..g.nedges() {
            eoff.push(out.nedges());
            let (t, h) = g.graph.edges[e];
            let (kt, kh) = (self.k[g.vlab[t]], self.k[g.vlab[h]]);
            for i in 0..kt {
                for j in 0..kh {
                    out.add_edge(voff[t] + i, voff[h] + j, format!("({},{},{})", i, g.graph.enames[e], j), self.edge(i, g.elab[e], j));
                }
            }
        }
        if unoriented {
            let r = g.graph.rev.as_ref().unwrap();
            let rv = out.graph.rev.as_mut().unwrap();
            for e in 0..g.nedges() {
                let (t, h) = g.graph.edges[e];
                let (kt, kh) = (self.k[g.vlab[t]], self.k[g.vlab[h]]);
                for i in 0..kt {
                    for j in 0..kh {
                        rv[eoff[e] + i * kh + j] = eoff[r[e]] + j * kt + i;
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn vertex_blowup(g: &LabelGraph, k: Vec<usize>) -> Result<(Blowup, LabelGraph)> {
    let b = Blowup::new(g.target.clone(), k);
    let out = b.apply(g)?;
    Ok((b, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_weakly_etale, simplify};

    fn single_edge() -> Arc<Graph> {
        let mut b = Graph::new();
        b.add_vertex("v");
        b.add_vertex("w");
        b.add_edge(0, 1, "c");
        Arc::new(b)
    }

    #[test]
    fn subdivide_single_edge() {
        let s = Subdivision::new(single_edge());
        assert_eq!(s.star.nverts(), 3);
        assert_eq!(s.star.nedges(), 4);
        assert_eq!(s.star.edges[s.edge(0, 0, 0)], (0, 1));
        assert_eq!(s.star.edges[s.edge(0, 0, 1)], (0, 2));
        assert_eq!(s.star.edges[s.edge(1, 0, 1)], (2, 2));
        assert_eq!(s.star.edges[s.edge(1, 0, 0)], (2, 1));
    }

    #[test]
    fn subdivide_unoriented_merges() {
        let mut b = Graph::unoriented();
        b.add_vertex("v");
        b.add_vertex("w");
        b.add_edge_pair(0, 1, "c", "C");
        let s = Subdivision::new(Arc::new(b));
        assert_eq!(s.star.nverts(), 3);
        s.star.validate().unwrap();
        let r = s.star.rev.as_ref().unwrap();
        assert_eq!(r[s.edge(0, 0, 1)], s.edge(1, 1, 0));
    }

    #[test]
    fn subdivide_edgeless() {
        let mut b = Graph::new();
        b.add_vertex("v");
        let s = Subdivision::new(Arc::new(b.clone()));
        assert_eq!(*s.star, b);
    }

    fn path(sub: &Arc<Subdivision>, labels: &[usize]) -> LabelGraph {
        let mut g = LabelGraph::new(sub.star.clone());
        let n = labels.len();
        for i in 0..=n {
            let l = if i == 0 || i == n {
                if i == 0 {
                    0
                } else {
                    1
                }
            } else {
                2
            };
            g.add_vertex(format!("p{i}"), l);
        }
        for (i, &l) in labels.iter().enumerate() {
            g.add_edge(i, i + 1, format!("q{i}"), l);
        }
        g
    }

    #[test]
    fn flat_contracts_coherent_path() {
        let s = Subdivision::new(single_edge());
        let g = path(&s, &[s.edge(0, 0, 1), s.edge(1, 0, 1), s.edge(1, 0, 0)]);
        g.validate().unwrap();
        let f = flat(&g, &s).unwrap();
        assert_eq!(f.graph.nverts(), 2);
        assert_eq!(f.graph.graph.edges, vec![(0, 1)]);
        assert_eq!(f.origin, vec![0, 3]);
    }

    #[test]
    fn flat_single_step() {
        let s = Subdivision::new(single_edge());
        let mut g = LabelGraph::new(s.star.clone());
        g.add_vertex("x", 0);
        g.add_vertex("y", 1);
        g.add_edge(0, 1, "e", s.edge(0, 0, 0));
        let f = flat(&g, &s).unwrap();
        assert_eq!(f.graph.elab, vec![0]);
        assert_eq!(f.graph.graph.edges, vec![(0, 1)]);
    }

    #[test]
    fn flat_ignores_lonely_loop() {
        let mut b = Graph::new();
        b.add_vertex("v");
        b.add_edge(0, 0, "c");
        let s = Subdivision::new(Arc::new(b));
        let mut g = LabelGraph::new(s.star.clone());
        g.add_vertex("m", 1);
        g.add_edge(0, 0, "l", s.edge(1, 0, 1));
        let f = flat(&g, &s).unwrap();
        assert_eq!(f.graph.nverts(), 0);
        assert_eq!(f.graph.nedges(), 0);
    }

    #[test]
    fn sharp_single_edge() {
        let b = single_edge();
        let s = Subdivision::new(b.clone());
        let g = LabelGraph::identity(b);
        let h = sharp(&g, &s).unwrap();
        h.validate().unwrap();
        assert_eq!(h.nverts(), 5);
        assert_eq!(h.nedges(), 11);
        let f = flat(&h, &s).unwrap();
        assert_eq!(f.graph.nverts(), 2);
        assert_eq!(f.graph.graph.edges, vec![(0, 1)]);
    }

    #[test]
    fn sharp_absorbs_unfinished_steps() {
        // a c-step starts at x but never finishes; the target has no c-edge
        let b = single_edge();
        let s = Subdivision::new(b.clone());
        let mut g = LabelGraph::new(s.star.clone());
        g.add_vertex("x", 0);
        g.add_vertex("m", s.edge_vertex(0));
        g.add_edge(0, 1, "go", s.edge(0, 0, 1));
        g.add_edge(1, 1, "wait", s.edge(1, 0, 1));
        let mut h = LabelGraph::new(b);
        h.add_vertex("u", 0);
        h.add_vertex("v", 1);
        let f = flat(&g, &s).unwrap().graph;
        assert!(is_weakly_etale(&f));
        assert!(crate::graph::hom_exists(&f, &h).unwrap());
        assert!(crate::graph::hom_exists(&g, &sharp(&h, &s).unwrap()).unwrap());
    }

    #[test]
    fn sharp_unoriented_closed() {
        let mut b = Graph::unoriented();
        b.add_vertex("*");
        b.add_edge_pair(0, 0, "a", "A");
        let b = Arc::new(b);
        let s = Subdivision::new(b.clone());
        let mut g = LabelGraph::unoriented(b);
        g.add_vertex("x", 0);
        g.add_vertex("y", 0);
        g.add_edge_pair(0, 1, "e", "e'", 0);
        let h = sharp(&g, &s).unwrap();
        h.validate().unwrap();
        let f = flat(&h, &s).unwrap();
        assert_eq!(f.graph.nverts(), 2);
        assert_eq!(simplify(&f.graph).nedges(), 2);
        assert!(is_weakly_etale(&f.graph));
    }

    #[test]
    fn sharp_edgeless() {
        let mut b = Graph::new();
        b.add_vertex("v");
        let b = Arc::new(b);
        let s = Subdivision::new(b.clone());
        let g = LabelGraph::identity(b);
        let h = sharp(&g, &s).unwrap();
        assert_eq!(h.nverts(), 1);
        assert_eq!(h.nedges(), 0);
    }

    #[test]
    fn pullback_with_identity() {
        let b = single_edge();
        let mut g = LabelGraph::new(b.clone());
        g.add_vertex("x", 0);
        g.add_vertex("y", 1);
        g.add_vertex("z", 1);
        g.add_edge(0, 1, "e", 0);
        g.add_edge(0, 2, "f", 0);
        let p = pullback(&g, &LabelGraph::identity(b)).unwrap();
        assert_eq!(p.graph.nverts(), 3);
        assert_eq!(p.graph.graph.edges, g.graph.edges);
    }

    #[test]
    fn pullback_mismatch() {
        let a = LabelGraph::identity(single_edge());
        let mut other = Graph::new();
        other.add_vertex("q");
        let b = LabelGraph::identity(Arc::new(other));
        assert!(matches!(pullback(&a, &b), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn blowup_loop_by_two() {
        let mut b = Graph::new();
        b.add_vertex("v");
        b.add_edge(0, 0, "c");
        let (bl, g) = vertex_blowup(&LabelGraph::identity(Arc::new(b)), vec![2]).unwrap();
        assert_eq!(g.nverts(), 2);
        assert_eq!(g.nedges(), 4);
        g.validate().unwrap();
        for x in 0..g.nedges() {
            let (i, e, j) = bl.decode_edge(x);
            assert_eq!(bl.edge(i, e, j), x);
        }
        assert_eq!(bl.decode_vertex(1), (0, 1));
    }

    #[test]
    fn blowup_unit_is_identity() {
        let mut b = Graph::unoriented();
        b.add_vertex("v");
        b.add_vertex("w");
        b.add_edge_pair(0, 1, "c", "C");
        let b = Arc::new(b);
        let mut g = LabelGraph::unoriented(b.clone());
        g.add_vertex("x", 0);
        g.add_vertex("y", 1);
        g.add_edge_pair(0, 1, "e", "E", 0);
        let (_, h) = vertex_blowup(&g, vec![1, 1]).unwrap();
        h.validate().unwrap();
        assert_eq!(h.graph.edges, g.graph.edges);
        assert_eq!(h.graph.rev, g.graph.rev);
    }
}
