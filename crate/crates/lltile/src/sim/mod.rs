//! Simulators: finite graphs labelled into a host label graph A and into
//! the path subdivision B* of a target label graph B. Applying a simulator
//! to an A-labelled window yields a B-labelled graph (pullback, then ♭).

pub mod builtin;
pub mod gwa;
pub mod io;
pub mod labels;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{flat_with, pullback_over_b, pullback_raw, subdivide, BiLabelGraph, Graph, LabelGraph, Subdivision};

/// An A-labelled host graph with its open boundary: (vertex, A-edge) pairs
/// whose edge may exist in the infinite graph but is missing from `graph`.
#[derive(Clone, Debug, PartialEq)]
pub struct Host {
    pub graph: LabelGraph,
    pub open: BTreeSet<(usize, usize)>,
}

impl Host {
    /// A host with no boundary.
    pub fn closed(graph: LabelGraph) -> Host {
        Host { graph, open: BTreeSet::new() }
    }
}

/// An (A, B)-simulator: α into A, β into B* = `sub.star`.
#[derive(Clone, Debug)]
pub struct Simulator {
    pub graph: BiLabelGraph,
    pub sub: Arc<Subdivision>,
}

impl Simulator {
    pub fn new(graph: BiLabelGraph, sub: Arc<Subdivision>) -> Result<Simulator> {
        if *graph.b != *sub.star {
            return Err(Error::LabelMismatch("β does not land in the path subdivision".into()));
        }
        graph.validate()?;
        Ok(Simulator { graph, sub })
    }

    pub fn a(&self) -> &Arc<Graph> {
        &self.graph.a
    }

    pub fn b(&self) -> &Arc<Graph> {
        &self.sub.base
    }

    pub fn nverts(&self) -> usize {
        self.graph.graph.nverts()
    }

    pub fn nedges(&self) -> usize {
        self.graph.graph.nedges()
    }

    /// The simulator reproducing every A-labelled graph: S = A with β sending
    /// v to v and e to (0, e, 0).
    pub fn identity(a: Arc<Graph>) -> Simulator {
        let sub = Subdivision::new(a.clone());
        let graph = BiLabelGraph {
            graph: (*a).clone(),
            avlab: (0..a.nverts()).collect(),
            aelab: (0..a.nedges()).collect(),
            a: a.clone(),
            bvlab: (0..a.nverts()).collect(),
            belab: (0..a.nedges()).map(|e| sub.edge(0, e, 0)).collect(),
            b: sub.star.clone(),
        };
        Simulator { graph, sub }
    }
}

/// Incremental construction of a simulator. In the unoriented case
/// [`SimBuilder::pair`] adds an edge together with its reverse.
pub struct SimBuilder {
    a: Arc<Graph>,
    sub: Arc<Subdivision>,
    g: Graph,
    avlab: Vec<usize>,
    aelab: Vec<usize>,
    bvlab: Vec<usize>,
    belab: Vec<usize>,
}

impl SimBuilder {
    pub fn new(a: Arc<Graph>, b: Arc<Graph>) -> SimBuilder {
        let sub = Subdivision::new(b);
        let g = if a.is_unoriented() && sub.base.is_unoriented() { Graph::unoriented() } else { Graph::new() };
        SimBuilder { a, sub, g, avlab: vec![], aelab: vec![], bvlab: vec![], belab: vec![] }
    }

    pub fn sub(&self) -> &Arc<Subdivision> {
        &self.sub
    }

    pub fn vertex(&mut self, name: impl Into<String>, alpha: usize, beta: usize) -> usize {
        self.avlab.push(alpha);
        self.bvlab.push(beta);
        self.g.add_vertex(name)
    }

    pub fn edge(&mut self, t: usize, h: usize, alpha: usize, beta: usize) -> usize {
        let name = format!("{}:{}", self.a.enames[alpha], self.sub.star.enames[beta]);
        self.aelab.push(alpha);
        self.belab.push(beta);
        self.g.add_edge(t, h, name)
    }

    /// Adds `t → h` with labels (α, β) and its reverse.
    pub fn pair(&mut self, t: usize, h: usize, alpha: usize, beta: usize) -> (usize, usize) {
        let ra = self.a.rev_of(alpha).expect("pairing over an oriented host label graph");
        let rb = self.sub.star.rev_of(beta).expect("pairing over an oriented target label graph");
        let e = self.edge(t, h, alpha, beta);
        let f = self.edge(h, t, ra, rb);
        self.g.pair(e, f);
        (e, f)
    }

    /// The B* edge (i, c, j).
    pub fn beta(&self, i: usize, c: usize, j: usize) -> usize {
        self.sub.edge(i, c, j)
    }

    pub fn finish(self) -> Result<Simulator> {
        let graph = BiLabelGraph {
            graph: self.g,
            avlab: self.avlab,
            aelab: self.aelab,
            a: self.a,
            bvlab: self.bvlab,
            belab: self.belab,
            b: self.sub.star.clone(),
        };
        Simulator::new(graph, self.sub)
    }
}

/// The simulated graph G ⋊ S over B.
#[derive(Clone, Debug)]
pub struct Simulated {
    pub graph: LabelGraph,
    /// Per vertex: (host vertex, simulator vertex).
    pub ids: Vec<(usize, usize)>,
    /// (vertex, B-edge) pairs whose coherent paths may leave the host.
    pub incomplete: BTreeSet<(usize, usize)>,
}

impl Simulated {
    pub fn triples(&self) -> BTreeSet<(usize, usize, usize)> {
        (0..self.graph.nedges())
            .map(|e| {
                let (t, h) = self.graph.graph.edges[e];
                (t, self.graph.elab[e], h)
            })
            .collect()
    }

    pub fn is_complete(&self, u: usize, c: usize) -> bool {
        !self.incomplete.contains(&(u, c))
    }

    /// Out-neighbours of `u` along B-edge `c`.
    pub fn successors(&self, u: usize, c: usize) -> Vec<usize> {
        (0..self.graph.nedges())
            .filter(|&e| self.graph.graph.tail(e) == u && self.graph.elab[e] == c)
            .map(|e| self.graph.graph.head(e))
            .collect()
    }

    /// The simulated graph as a host for a further simulation.
    pub fn to_host(&self) -> Host {
        Host { graph: self.graph.clone(), open: self.incomplete.clone() }
    }

    /// Vertex index by identity.
    pub fn index(&self) -> BTreeMap<(usize, usize), usize> {
        self.ids.iter().enumerate().map(|(i, &k)| (k, i)).collect()
    }
}

/// G ⋊ S = (G ×_A S)♭. A coherent path is reported incomplete when it may
/// continue through an open pair of the host.
pub fn apply_simulator(host: &Host, sim: &Simulator) -> Result<Simulated> {
    let (p, over_b) = pullback_over_b(&host.graph, &sim.graph)?;
    let s = &sim.graph;
    let s_out = s.graph.out_edges();
    let leak = |x: usize, c: usize, mid: bool| {
        if host.open.is_empty() {
            return false;
        }
        let (h, v) = p.vpairs[x];
        s_out[v].iter().any(|&e| {
            let (i, c2, _) = sim.sub.decode_edge(s.belab[e]);
            i == mid as usize && c2 == c && host.open.contains(&(h, s.aelab[e]))
        })
    };
    let fl = flat_with(&over_b, &sim.sub, leak)?;
    Ok(Simulated {
        ids: fl.origin.iter().map(|&x| p.vpairs[x]).collect(),
        graph: fl.graph,
        incomplete: fl.incomplete.into_iter().collect(),
    })
}

/// Composite (A, C)-simulator U = S ×_{B*} T* with β relabelled by ♮:
/// (i, (i′, c, j′), j) ↦ (max(i, i′), c, max(j, j′)). Vertex `k` of U is the
/// pair `pairs[k]` of an S-vertex and a T*-vertex; T* lists T's vertices
/// first, then one vertex per edge class of T.
pub fn compose(s: &Simulator, t: &Simulator) -> Result<(Simulator, Vec<(usize, usize)>)> {
    if **s.b() != **t.a() {
        return Err(Error::LabelMismatch("the first simulator's target is not the second's host".into()));
    }
    let tstar = subdivide(&t.graph.alpha_view(), &s.sub)?;
    let ntv = t.nverts();
    let csub = &t.sub;
    let tb = &t.graph;
    // ♮ of the C** labelling of T*
    let mut nat_v = tb.bvlab.clone();
    let mut class_seen = vec![false; tstar.nverts() - ntv];
    nat_v.resize(tstar.nverts(), 0);
    let mut nat_e = vec![0; tstar.nedges()];
    for x in 0..tstar.nedges() {
        let (e, i, j) = (x / 4, (x / 2) % 2, x % 2);
        let (i2, c, j2) = csub.decode_edge(tb.belab[e]);
        nat_e[x] = csub.edge(i.max(i2), c, j.max(j2));
        if i == 1 {
            let m = tstar.graph.tail(x);
            if !class_seen[m - ntv] {
                class_seen[m - ntv] = true;
                nat_v[m] = csub.edge_vertex(c);
            }
        }
    }
    let unoriented = s.graph.graph.is_unoriented() && tstar.graph.is_unoriented();
    let p = pullback_raw(
        (&s.graph.graph, &s.graph.bvlab, &s.graph.belab),
        (&tstar.graph, &tstar.vlab, &tstar.elab),
        s.sub.star.clone(),
        unoriented,
    );
    let graph = BiLabelGraph {
        graph: p.graph.graph.clone(),
        avlab: p.vpairs.iter().map(|&(x, _)| s.graph.avlab[x]).collect(),
        aelab: p.epairs.iter().map(|&(e, _)| s.graph.aelab[e]).collect(),
        a: s.graph.a.clone(),
        bvlab: p.vpairs.iter().map(|&(_, y)| nat_v[y]).collect(),
        belab: p.epairs.iter().map(|&(_, f)| nat_e[f]).collect(),
        b: csub.star.clone(),
    };
    Ok((Simulator::new(graph, csub.clone())?, p.vpairs))
}

/// Compares the composite simulation with the two-step one. Returns a list
/// of discrepancies: a triple present on one side only, or a (vertex, edge)
/// pair complete on both sides with different successors.
pub fn compare_composite(host: &Host, s: &Simulator, t: &Simulator) -> Result<Vec<String>> {
    let first = apply_simulator(host, s)?;
    let second = apply_simulator(&first.to_host(), t)?;
    let (u, pairs) = compose(s, t)?;
    let direct = apply_simulator(host, &u)?;
    // identify direct vertices (h, (s, t)) with two-step vertices ((h, s), t)
    let first_idx = first.index();
    let second_idx = second.index();
    let mut map = Vec::with_capacity(direct.graph.nverts());
    for &(h, k) in &direct.ids {
        let (sv, tv) = pairs[k];
        let v1 = first_idx.get(&(h, sv)).copied();
        let v2 = v1.and_then(|v1| second_idx.get(&(v1, tv)).copied());
        map.push(v2.ok_or_else(|| Error::Invalid(format!("composite vertex {h}/{k} has no two-step counterpart")))?);
    }
    let mut bad = Vec::new();
    if map.len() != second.graph.nverts() {
        bad.push(format!("vertex counts differ: {} composite, {} two-step", map.len(), second.graph.nverts()));
    }
    let mapped: BTreeSet<(usize, usize, usize)> = direct.triples().into_iter().map(|(a, c, b)| (map[a], c, map[b])).collect();
    let two = second.triples();
    let c_names = &t.b().enames;
    for &(a, c, b) in mapped.symmetric_difference(&two) {
        let (a2, b2) = (a, b);
        let side = if two.contains(&(a, c, b)) { "two-step" } else { "composite" };
        let complete_both = second.is_complete(a2, c) && {
            let inv = map.iter().position(|&m| m == a2);
            inv.map(|i| direct.is_complete(i, c)).unwrap_or(false)
        };
        if complete_both {
            bad.push(format!("edge {a2} -{}-> {b2} only in the {side} simulation", c_names[c]));
        }
    }
    Ok(bad)
}

/// Outcome of comparing a simulated graph with a patch of ℤ² or ℕ².
#[derive(Clone, Debug, Default)]
pub struct GridReport {
    pub vertices: usize,
    /// (vertex, direction) pairs with no incomplete edge in that direction.
    pub complete: usize,
    pub problems: Vec<String>,
}

impl GridReport {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Compares a simulated graph over a (possibly decorated) plane label graph
/// with the grid: `coord` places each vertex, `expected` is the patch it
/// should cover bijectively, `label` the expected vertex label of a point.
/// Every emitted edge must be a unit step in its direction, and every
/// complete (vertex, direction) pair must have exactly the patch neighbour,
/// which must exist when the step stays in `universe`.
pub fn check_grid(
    sim: &Simulated,
    coord: impl Fn(usize) -> Option<(i64, i64)>,
    dir_of: impl Fn(usize) -> usize,
    expected: &BTreeSet<(i64, i64)>,
    universe: impl Fn((i64, i64)) -> bool,
    label: impl Fn((i64, i64)) -> usize,
) -> GridReport {
    use labels::DIR_DELTA;
    let g = &sim.graph;
    let n = g.nverts();
    let mut rep = GridReport { vertices: n, ..GridReport::default() };
    let mut pts = Vec::with_capacity(n);
    for u in 0..n {
        match coord(u) {
            Some(p) => pts.push(p),
            None => {
                rep.problems.push(format!("vertex {} is not on the grid", g.graph.vnames[u]));
                return rep;
            }
        }
    }
    let image: BTreeSet<(i64, i64)> = pts.iter().copied().collect();
    if image.len() != n {
        rep.problems.push(format!("{} vertices cover only {} points", n, image.len()));
    }
    if image != *expected {
        let extra = image.difference(expected).next();
        let missing = expected.difference(&image).next();
        rep.problems.push(format!("image differs from the patch (extra {extra:?}, missing {missing:?})"));
    }
    for u in 0..n {
        if g.vlab[u] != label(pts[u]) {
            rep.problems.push(format!("vertex at {:?} has label {}", pts[u], g.target.vnames[g.vlab[u]]));
        }
    }
    let mut succ = vec![[(); 4].map(|_| BTreeSet::new()); n];
    for e in 0..g.nedges() {
        let (t, h) = g.graph.edges[e];
        let d = dir_of(g.elab[e]);
        let (p, q) = (pts[t], pts[h]);
        if (p.0 + DIR_DELTA[d].0, p.1 + DIR_DELTA[d].1) != q {
            rep.problems.push(format!("edge {p:?} -{}-> {q:?} is not a unit step", labels::DIR_NAMES[d]));
        }
        succ[t][d].insert(q);
    }
    let mut open = vec![[false; 4]; n];
    for &(u, c) in &sim.incomplete {
        open[u][dir_of(c)] = true;
    }
    for u in 0..n {
        for d in 0..4 {
            if open[u][d] {
                continue;
            }
            rep.complete += 1;
            let p = pts[u];
            let q = (p.0 + DIR_DELTA[d].0, p.1 + DIR_DELTA[d].1);
            let want: BTreeSet<(i64, i64)> = if image.contains(&q) { [q].into() } else { BTreeSet::new() };
            if succ[u][d] != want {
                rep.problems.push(format!("{p:?} {}: successors {:?}, expected {want:?}", labels::DIR_NAMES[d], succ[u][d]));
            } else if want.is_empty() && universe(q) {
                rep.problems.push(format!("{p:?} {}: complete but the neighbour {q:?} is missing", labels::DIR_NAMES[d]));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::labels::*;
    use super::*;

    fn path_host() -> Host {
        // a 3-vertex E-path in the plane labels with open ends
        let g = plane_patch(0, 2, 0, 0);
        g.host
    }

    #[test]
    fn identity_simulator_reproduces_host() {
        let host = path_host();
        let id = Simulator::identity(plane_dirs());
        let out = apply_simulator(&host, &id).unwrap();
        assert_eq!(out.graph.nverts(), 3);
        let want: BTreeSet<(usize, usize, usize)> =
            (0..host.graph.nedges()).map(|e| (host.graph.graph.tail(e), host.graph.elab[e], host.graph.graph.head(e))).collect();
        assert_eq!(out.triples(), want);
        assert_eq!(out.incomplete, host.open);
    }

    #[test]
    fn stretching_simulator_reads_two_steps() {
        // B-edge E realised by two host E-steps through a middle node
        let a = plane_dirs();
        let mut b = SimBuilder::new(a.clone(), a.clone());
        let v = b.vertex("v", 0, 0);
        let m = b.vertex("m", 0, b.sub().edge_vertex(DIR_E));
        let (e1, e2) = (b.beta(0, DIR_E, 1), b.beta(1, DIR_E, 0));
        b.pair(v, m, DIR_E, e1);
        b.pair(m, v, DIR_E, e2);
        let sim = b.finish().unwrap();
        let host = plane_patch(0, 4, 0, 0).host;
        let out = apply_simulator(&host, &sim).unwrap();
        // vertices (x, v) for x = 0..4; edges x → x+2
        let idx = out.index();
        let node = |x: usize| idx[&(x, v)];
        let mut want = BTreeSet::new();
        for x in 0..3 {
            want.insert((node(x), DIR_E, node(x + 2)));
            want.insert((node(x + 2), DIR_W, node(x)));
        }
        assert_eq!(out.triples(), want);
        // the path from x = 3 eastwards leaves the window
        assert!(!out.is_complete(node(3), DIR_E));
        assert!(out.is_complete(node(2), DIR_E));
    }

    #[test]
    fn compose_with_identity() {
        let sim = builtin::quadrant_to_plane();
        let host = quadrant_patch(3, 3).host;
        let id_a = Simulator::identity(sim.a().clone());
        let id_b = Simulator::identity(sim.b().clone());
        assert!(compare_composite(&host, &id_a, &sim).unwrap().is_empty());
        assert!(compare_composite(&host, &sim, &id_b).unwrap().is_empty());
    }
}
