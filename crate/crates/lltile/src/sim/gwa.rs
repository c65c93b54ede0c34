//! Graph-walking automata: one finite automaton per target edge, reading
//! host edge labels while moving along the host. Conversion to and from
//! simulators goes through a vertex blow-up of the host label graph.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use super::{apply_simulator, Host, Simulated, Simulator};
use crate::error::{Error, Result};
use crate::graph::{BiLabelGraph, Blowup, Graph, LabelGraph, SubVertex, Subdivision};

/// A nondeterministic automaton over the edges of a label graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    pub names: Vec<String>,
    pub initial: BTreeSet<usize>,
    pub fin: BTreeSet<usize>,
    /// (state, A-edge, state)
    pub delta: Vec<(usize, usize, usize)>,
}

impl Automaton {
    pub fn nstates(&self) -> usize {
        self.names.len()
    }
}

/// A GWA simulator: a partial vertex map λ: V(A) → V(B) and one automaton
/// per edge of B.
#[derive(Clone, Debug)]
pub struct Gwa {
    pub a: Arc<Graph>,
    pub b: Arc<Graph>,
    pub lambda: Vec<Option<usize>>,
    pub machines: Vec<Automaton>,
}

impl Gwa {
    pub fn validate(&self) -> Result<()> {
        if self.lambda.len() != self.a.nverts() || self.lambda.iter().flatten().any(|&v| v >= self.b.nverts()) {
            return Err(Error::Invalid("λ is not a partial map V(A) → V(B)".into()));
        }
        if self.machines.len() != self.b.nedges() {
            return Err(Error::Invalid("one automaton per edge of B is required".into()));
        }
        for (e, m) in self.machines.iter().enumerate() {
            if m.initial.intersection(&m.fin).next().is_some() {
                return Err(Error::Invalid(format!("automaton {} has initial final states", self.b.enames[e])));
            }
            let n = m.nstates();
            if m.initial.iter().chain(&m.fin).any(|&q| q >= n) || m.delta.iter().any(|&(q, x, r)| q >= n || r >= n || x >= self.a.nedges())
            {
                return Err(Error::Invalid(format!("automaton {} refers to missing states or labels", self.b.enames[e])));
            }
        }
        Ok(())
    }
}

/// Result of running an automaton from one vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Run {
    pub successors: BTreeSet<usize>,
    /// Some partial run could continue through an open pair of the host.
    pub incomplete: bool,
}

/// Reusable product-graph search over a fixed host and automaton.
pub struct Runner<'a> {
    host: &'a Host,
    out: Vec<Vec<usize>>,
    m: &'a Automaton,
    step: HashMap<(usize, usize), Vec<usize>>,
    open_by_vertex: Vec<Vec<usize>>,
}

impl<'a> Runner<'a> {
    pub fn new(host: &'a Host, m: &'a Automaton) -> Runner<'a> {
        let mut step: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for &(q, x, r) in &m.delta {
            step.entry((q, x)).or_default().push(r);
        }
        let mut open_by_vertex = vec![Vec::new(); host.graph.nverts()];
        for &(u, x) in &host.open {
            open_by_vertex[u].push(x);
        }
        Runner { host, out: host.graph.graph.out_edges(), m, step, open_by_vertex }
    }

    /// Breadth-first search over (vertex, state) from (u, I).
    pub fn run(&self, u: usize) -> Run {
        let g = &self.host.graph;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        for &q in &self.m.initial {
            if seen.insert((u, q)) {
                queue.push_back((u, q));
            }
        }
        let mut res = Run::default();
        while let Some((x, q)) = queue.pop_front() {
            if !res.incomplete && self.open_by_vertex[x].iter().any(|&l| self.step.contains_key(&(q, l))) {
                res.incomplete = true;
            }
            for &e in &self.out[x] {
                let Some(next) = self.step.get(&(q, g.elab[e])) else { continue };
                let h = g.graph.head(e);
                for &r in next {
                    if self.m.fin.contains(&r) {
                        res.successors.insert(h);
                    }
                    if seen.insert((h, r)) {
                        queue.push_back((h, r));
                    }
                }
            }
        }
        res
    }
}

/// Successors of `u` under automaton `m` on the host.
pub fn run_gwa(host: &Host, m: &Automaton, u: usize) -> Run {
    Runner::new(host, m).run(u)
}

/// The graph GWA-simulated on the host: vertices are the host vertices on
/// which λ is defined (ids record the host vertex and its λ-value), with an
/// e-edge u → v whenever an M_e-run leads from u to v, λ(u) = e⁻ and
/// λ(v) = e⁺.
pub fn gwa_simulate(host: &Host, gwa: &Gwa) -> Result<Simulated> {
    if *host.graph.target != *gwa.a {
        return Err(Error::LabelMismatch("host is not labelled over the automaton's alphabet".into()));
    }
    let g = &host.graph;
    let lam = |u: usize| gwa.lambda[g.vlab[u]];
    let mut new_of = vec![usize::MAX; g.nverts()];
    let mut ids = Vec::new();
    for u in 0..g.nverts() {
        if let Some(b) = lam(u) {
            new_of[u] = ids.len();
            ids.push((u, b));
        }
    }
    let mut triples = BTreeSet::new();
    let mut incomplete = BTreeSet::new();
    for (e, m) in gwa.machines.iter().enumerate() {
        let (bt, bh) = gwa.b.edges[e];
        let runner = Runner::new(host, m);
        for u in (0..g.nverts()).filter(|&u| lam(u) == Some(bt)) {
            let r = runner.run(u);
            if r.incomplete {
                incomplete.insert((new_of[u], e));
            }
            for v in r.successors.into_iter().filter(|&v| lam(v) == Some(bh)) {
                triples.insert((new_of[u], e, new_of[v]));
            }
        }
    }
    let closed =
        gwa.b.rev.as_ref().filter(|_| g.reversal_labelled()).filter(|r| triples.iter().all(|&(u, c, v)| triples.contains(&(v, r[c], u))));
    let mut out = if closed.is_some() { LabelGraph::unoriented(gwa.b.clone()) } else { LabelGraph::new(gwa.b.clone()) };
    for &(u, b) in &ids {
        out.add_vertex(g.graph.vnames[u].clone(), b);
    }
    let mut eidx = HashMap::new();
    for &(u, c, v) in &triples {
        eidx.insert((u, c, v), out.add_edge(u, v, gwa.b.enames[c].clone(), c));
    }
    if let Some(r) = closed {
        for (&(u, c, v), &e) in &eidx {
            out.graph.rev.as_mut().unwrap()[e] = eidx[&(v, r[c], u)];
        }
    }
    Ok(Simulated { graph: out, ids, incomplete })
}

/// A simulator turned into a GWA over the blow-up of A by the fibre sizes
/// of α. Host vertex (h, i) of the blown-up host stands for the pair (h, s)
/// with s the i-th simulator vertex over the label of h.
#[derive(Clone, Debug)]
pub struct GwaForm {
    pub gwa: Gwa,
    pub blowup: Blowup,
    /// Position of each simulator vertex in its α-fibre.
    pub pos: Vec<usize>,
    /// Simulator vertex at each blown-up label vertex.
    pub sim_vertex: Vec<usize>,
}

impl GwaForm {
    /// Blows up a host, including its open pairs. Returns the new host and
    /// the offset of each original vertex.
    pub fn blow_host(&self, host: &Host) -> Result<(Host, Vec<usize>)> {
        let g = self.blowup.apply(&host.graph)?;
        let k = &self.blowup.k;
        let mut off = Vec::with_capacity(host.graph.nverts());
        let mut acc = 0;
        for u in 0..host.graph.nverts() {
            off.push(acc);
            acc += k[host.graph.vlab[u]];
        }
        let a = &self.blowup.base;
        let mut open = BTreeSet::new();
        for &(h, x) in &host.open {
            for i in 0..k[a.tail(x)] {
                for j in 0..k[a.head(x)] {
                    open.insert((off[h] + i, self.blowup.edge(i, x, j)));
                }
            }
        }
        Ok((Host { graph: g, open }, off))
    }
}

/// Three copies of the simulator's vertices per B-edge e: copy 0 over e⁻,
/// copy 1 over the edge-vertex of e, copy 2 over e⁺. An S-edge with
/// β = (i, e, j) becomes a transition from copy i to copy 1 (j = 1) or
/// copy 2 (j = 0).
pub fn simulator_to_gwa(sim: &Simulator) -> GwaForm {
    let s = &sim.graph;
    let a = s.a.clone();
    let ns = s.graph.nverts();
    let mut k = vec![0; a.nverts()];
    let mut pos = vec![0; ns];
    for v in 0..ns {
        pos[v] = k[s.avlab[v]];
        k[s.avlab[v]] += 1;
    }
    let blowup = Blowup::new(a, k);
    let mut sim_vertex = vec![0; blowup.label.nverts()];
    let mut lambda = vec![None; blowup.label.nverts()];
    let nb = sim.b().nverts();
    for v in 0..ns {
        let x = blowup.vertex(s.avlab[v], pos[v]);
        sim_vertex[x] = v;
        if s.bvlab[v] < nb {
            lambda[x] = Some(s.bvlab[v]);
        }
    }
    let b = sim.b().clone();
    let mut machines = Vec::with_capacity(b.nedges());
    for e in 0..b.nedges() {
        let (bt, bh) = b.edges[e];
        let names = (0..3).flat_map(|c| (0..ns).map(move |v| (c, v))).map(|(c, v)| format!("{}/{c}", s.graph.vnames[v])).collect();
        let initial = (0..ns).filter(|&v| s.bvlab[v] == bt).collect();
        let fin = (0..ns).filter(|&v| s.bvlab[v] == bh).map(|v| 2 * ns + v).collect();
        machines.push(Automaton { names, initial, fin, delta: Vec::new() });
    }
    for x in 0..s.graph.nedges() {
        let (i, e, j) = sim.sub.decode_edge(s.belab[x]);
        let (t, h) = s.graph.edges[x];
        let from = i * ns + t;
        let to = if j == 0 { 2 * ns + h } else { ns + h };
        let label = blowup.edge(pos[t], s.aelab[x], pos[h]);
        machines[e].delta.push((from, label, to));
    }
    let gwa = Gwa { a: blowup.label.clone(), b, lambda, machines };
    GwaForm { gwa, blowup, pos, sim_vertex }
}

/// The simulator of a GWA (oriented): a vertex u per A-vertex with λ(u)
/// defined, and a vertex (e, q, a) per automaton state q of M_e and A-vertex
/// a. Returns the simulator and the simulator vertex of each λ-vertex.
pub fn gwa_to_simulator(gwa: &Gwa) -> Result<(Simulator, Vec<Option<usize>>)> {
    gwa.validate()?;
    let a = &gwa.a;
    let sub = Subdivision::new(gwa.b.clone());
    let mut g = Graph::new();
    let (mut avlab, mut aelab, mut bvlab, mut belab) = (vec![], vec![], vec![], vec![]);
    let mut vertex_of = vec![None; a.nverts()];
    for u in 0..a.nverts() {
        if let Some(b) = gwa.lambda[u] {
            vertex_of[u] = Some(g.add_vertex(a.vnames[u].clone()));
            avlab.push(u);
            bvlab.push(b);
        }
    }
    let mut states: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut edges: BTreeSet<(usize, usize, usize, usize)> = BTreeSet::new();
    for (e, m) in gwa.machines.iter().enumerate() {
        let (bt, bh) = gwa.b.edges[e];
        let mut state = |q: usize, av: usize, g: &mut Graph, avlab: &mut Vec<usize>, bvlab: &mut Vec<usize>| {
            *states.entry((e, q, av)).or_insert_with(|| {
                avlab.push(av);
                bvlab.push(sub.edge_vertex(e));
                g.add_vertex(format!("{}@{}@{}", gwa.b.enames[e], m.names[q], a.vnames[av]))
            })
        };
        for &(q, x, r) in &m.delta {
            let (at, ah) = a.edges[x];
            let starts = m.initial.contains(&q) && gwa.lambda[at] == Some(bt);
            let ends = m.fin.contains(&r) && gwa.lambda[ah] == Some(bh);
            let (vt, vh) = (vertex_of[at], vertex_of[ah]);
            if starts && ends {
                edges.insert((vt.unwrap(), vh.unwrap(), x, sub.edge(0, e, 0)));
            }
            let sr = state(r, ah, &mut g, &mut avlab, &mut bvlab);
            let sq = state(q, at, &mut g, &mut avlab, &mut bvlab);
            if starts {
                edges.insert((vt.unwrap(), sr, x, sub.edge(0, e, 1)));
            }
            edges.insert((sq, sr, x, sub.edge(1, e, 1)));
            if ends {
                edges.insert((sq, vh.unwrap(), x, sub.edge(1, e, 0)));
            }
        }
    }
    for &(t, h, x, y) in &edges {
        g.add_edge(t, h, format!("{}:{}", a.enames[x], sub.star.enames[y]));
        aelab.push(x);
        belab.push(y);
    }
    let graph = BiLabelGraph { graph: g, avlab, aelab, a: a.clone(), bvlab, belab, b: sub.star.clone() };
    Ok((Simulator::new(graph, sub)?, vertex_of))
}

/// The blow-up simulator of A by k: S = A^k with α the projection and β
/// sending every vertex and edge to its base (the blow-up of every host
/// simulates the host itself).
pub fn blowup_simulator(a: Arc<Graph>, k: Vec<usize>) -> Result<Simulator> {
    let bl = Blowup::new(a.clone(), k);
    let sub = Subdivision::new(a);
    let g = (*bl.label).clone();
    let avlab: Vec<usize> = (0..g.nverts()).collect();
    let aelab: Vec<usize> = (0..g.nedges()).collect();
    let bvlab = (0..g.nverts()).map(|x| bl.decode_vertex(x).0).collect();
    let belab = (0..g.nedges()).map(|x| sub.edge(0, bl.decode_edge(x).1, 0)).collect();
    let graph = BiLabelGraph { graph: g, avlab, aelab, a: bl.label.clone(), bvlab, belab, b: sub.star.clone() };
    Simulator::new(graph, sub)
}

/// Checks the automaton semantics against ♭ on one host: the simulator's
/// image, the image under its GWA on the blown-up host, and the image under
/// the simulator of that GWA must agree edge for edge and on incompleteness.
pub fn gwa_agreement(host: &Host, sim: &Simulator) -> Result<Vec<String>> {
    let direct = apply_simulator(host, sim)?;
    let form = simulator_to_gwa(sim);
    let (blown, off) = form.blow_host(host)?;
    let via_gwa = gwa_simulate(&blown, &form.gwa)?;
    let (back, _) = gwa_to_simulator(&form.gwa)?;
    let round = apply_simulator(&blown, &back)?;
    let mut bad = Vec::new();
    let key = |(h, s): (usize, usize)| off[h] + form.pos[s];
    let direct_keys: Vec<usize> = direct.ids.iter().map(|&x| key(x)).collect();
    for (what, other) in [("GWA", &via_gwa), ("round-trip simulator", &round)] {
        let idx: HashMap<usize, usize> = other.ids.iter().enumerate().map(|(i, &(h, _))| (h, i)).collect();
        if idx.len() != direct.graph.nverts() {
            bad.push(format!("{what}: {} vertices, expected {}", idx.len(), direct.graph.nverts()));
            continue;
        }
        let Some(map) = direct_keys.iter().map(|k| idx.get(k).copied()).collect::<Option<Vec<usize>>>() else {
            bad.push(format!("{what}: vertex sets differ"));
            continue;
        };
        let mapped: BTreeSet<(usize, usize, usize)> = direct.triples().into_iter().map(|(u, c, v)| (map[u], c, map[v])).collect();
        let theirs = other.triples();
        if let Some(&(u, c, v)) = mapped.symmetric_difference(&theirs).next() {
            bad.push(format!("{what}: edge {u} -{}-> {v} differs", sim.b().enames[c]));
        }
        let inc: BTreeSet<(usize, usize)> = direct.incomplete.iter().map(|&(u, c)| (map[u], c)).collect();
        if inc != other.incomplete {
            bad.push(format!("{what}: incomplete pairs differ"));
        }
    }
    Ok(bad)
}

/// Step-by-step GWA execution of a simulator on a host, addressed by
/// (host vertex, simulator vertex) pairs.
pub struct Walker {
    pub form: GwaForm,
    pub host: Host,
    off: Vec<usize>,
}

impl Walker {
    pub fn new(host: &Host, sim: &Simulator) -> Result<Walker> {
        let form = simulator_to_gwa(sim);
        let (host, off) = form.blow_host(host)?;
        Ok(Walker { form, host, off })
    }

    pub fn vertex(&self, h: usize, s: usize) -> usize {
        self.off[h] + self.form.pos[s]
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        let h = self.off.partition_point(|&o| o <= x) - 1;
        (h, self.form.sim_vertex[self.host.graph.vlab[x]])
    }

    /// Successors of (h, s) along B-edge `c`.
    pub fn step(&self, h: usize, s: usize, c: usize) -> (BTreeSet<(usize, usize)>, bool) {
        let gwa = &self.form.gwa;
        let x = self.vertex(h, s);
        let lam = |v: usize| gwa.lambda[self.host.graph.vlab[v]];
        let (bt, bh) = gwa.b.edges[c];
        if lam(x) != Some(bt) {
            return (BTreeSet::new(), false);
        }
        let r = run_gwa(&self.host, &gwa.machines[c], x);
        let succ = r.successors.into_iter().filter(|&v| lam(v) == Some(bh)).map(|v| self.decode(v)).collect();
        (succ, r.incomplete)
    }
}

/// Kind of a vertex of the subdivision (re-exported for simulator readers).
pub fn beta_vertex_kind(sim: &Simulator, v: usize) -> SubVertex {
    sim.sub.decode_vertex(sim.graph.bvlab[v])
}

#[cfg(test)]
mod tests {
    use super::super::builtin::*;
    use super::super::labels::*;
    use super::*;

    #[test]
    fn empty_automaton_has_no_successors() {
        let host = quadrant_patch(2, 2).host;
        let m = Automaton { names: vec!["i".into(), "f".into()], initial: [0].into(), fin: [1].into(), delta: vec![] };
        assert_eq!(run_gwa(&host, &m, 0), Run::default());
    }

    #[test]
    fn initial_final_overlap_rejected() {
        let a = plane_dirs();
        let m = Automaton { names: vec!["q".into()], initial: [0].into(), fin: [0].into(), delta: vec![] };
        let gwa = Gwa { a: a.clone(), b: a, lambda: vec![Some(0)], machines: vec![m.clone(), m.clone(), m.clone(), m] };
        assert!(gwa.validate().is_err());
    }

    #[test]
    fn length_one_runs_give_plain_edges() {
        // one step per target edge: the GWA copies the host
        let a = plane_dirs();
        let machines = (0..4)
            .map(|e| Automaton { names: vec!["i".into(), "f".into()], initial: [0].into(), fin: [1].into(), delta: vec![(0, e, 1)] })
            .collect();
        let gwa = Gwa { a: a.clone(), b: a.clone(), lambda: vec![Some(0)], machines };
        let (sim, _) = gwa_to_simulator(&gwa).unwrap();
        let sub = &sim.sub;
        for v in 0..sim.nverts() {
            if let SubVertex::Edge(_) = sub.decode_vertex(sim.graph.bvlab[v]) {
                continue;
            }
            for x in 0..sim.nedges() {
                if sim.graph.graph.tail(x) == v && sim.graph.graph.head(x) == v {
                    assert_eq!(sub.decode_edge(sim.graph.belab[x]).0, 0);
                    assert_eq!(sub.decode_edge(sim.graph.belab[x]).2, 0);
                }
            }
        }
        let host = plane_patch(0, 3, 0, 2).host;
        let out = apply_simulator(&host, &sim).unwrap();
        let want: BTreeSet<(usize, usize, usize)> =
            (0..host.graph.nedges()).map(|e| (host.graph.graph.tail(e), host.graph.elab[e], host.graph.graph.head(e))).collect();
        assert_eq!(out.triples(), want);
    }

    #[test]
    fn blowup_simulator_gwa_is_single_step() {
        let sim = blowup_simulator(plane_dirs(), vec![2]).unwrap();
        let form = simulator_to_gwa(&sim);
        assert!(form.gwa.lambda.iter().all(|l| l.is_some()));
        for m in &form.gwa.machines {
            // every transition goes straight from an initial to a final state
            assert!(m.delta.iter().all(|(q, _, r)| m.initial.contains(q) && m.fin.contains(r)));
        }
        let patch = plane_patch(0, 2, 0, 1).host;
        let host = Host::closed(Blowup::new(plane_dirs(), vec![2]).apply(&patch.graph).unwrap());
        assert!(gwa_agreement(&host, &sim).unwrap().is_empty());
        // the blown-up host simulates the host, once per copy
        let out = apply_simulator(&host, &sim).unwrap();
        assert_eq!(out.graph.nverts(), 2 * patch.graph.nverts());
    }

    #[test]
    fn builtins_agree_with_their_automata() {
        let host = quadrant_patch(4, 4).host;
        assert_eq!(gwa_agreement(&host, &quadrant_to_plane()).unwrap(), Vec::<String>::new());
        let g = marked_plane_patch(5, 3, &goodbad_labels(), |x, y| if (x + y) % 3 == 1 { BAD } else { GOOD });
        assert_eq!(gwa_agreement(&g.host, &rectangle_compress()).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn east_runs_from_the_identity() {
        use crate::lamplighter::{ball, evaluate_word, tetrahedron, GroupPoint};
        let w = ball(4).unwrap();
        let sim = comb_to_plane();
        let walker = Walker::new(&comb_host(&w).unwrap(), &sim).unwrap();
        let e = w.vertex(&GroupPoint::identity()).unwrap();
        let (succ, inc) = walker.step(e, 0, DIR_E);
        assert!(!inc);
        let pts: Vec<GroupPoint> = succ.iter().map(|&(h, _)| w.points[h].clone()).collect();
        assert_eq!(pts, vec![evaluate_word("b").unwrap()]);

        let w = tetrahedron(-3, 3).unwrap();
        let sim = sea_to_quadrant();
        let quad = quadrant_labels();
        let walker = Walker::new(&sea_host(&w).unwrap(), &sim).unwrap();
        let mut cur = (w.vertex(&GroupPoint::identity()).unwrap(), 3);
        let mut seen = vec![];
        for _ in 0..2 {
            let lab = lr_quadrant(cur.1);
            let next: BTreeSet<(usize, usize)> = (0..4).flat_map(|y| walker.step(cur.0, cur.1, quad.edge(lab, DIR_E, y)).0).collect();
            assert_eq!(next.len(), 1);
            cur = *next.iter().next().unwrap();
            seen.push(w.points[cur.0].clone());
        }
        assert_eq!(seen[0], evaluate_word("aB").unwrap());
        assert_eq!(sea_coord(&seen[1]), Some((2, 0)));
    }
}
