use std::collections::HashMap;
use std::sync::Arc;

use super::{pullback_raw, Graph, LabelGraph, Morphism, Pullback};
use crate::error::{Error, Result};

/// Default cap on the number of vertices (and of edges) of an exponential.
pub const DEFAULT_EXP_CAP: usize = 100_000;

/// A graph carrying two labellings, into `a` and into `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiLabelGraph {
    pub graph: Graph,
    pub avlab: Vec<usize>,
    pub aelab: Vec<usize>,
    pub a: Arc<Graph>,
    pub bvlab: Vec<usize>,
    pub belab: Vec<usize>,
    pub b: Arc<Graph>,
}

impl BiLabelGraph {
    pub fn alpha_view(&self) -> LabelGraph {
        LabelGraph { graph: self.graph.clone(), vlab: self.avlab.clone(), elab: self.aelab.clone(), target: self.a.clone() }
    }

    pub fn beta_view(&self) -> LabelGraph {
        LabelGraph { graph: self.graph.clone(), vlab: self.bvlab.clone(), elab: self.belab.clone(), target: self.b.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        self.alpha_view().validate()?;
        self.beta_view().validate()
    }

    fn reversal_labelled(&self) -> bool {
        self.graph.is_unoriented() && self.a.is_unoriented() && self.b.is_unoriented()
    }
}

/// Edge of an exponential: an A-edge together with vertex maps on the two
/// slots (given as exponential vertices) and the edge map φ on α⁻¹(a).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpEdge {
    pub a: usize,
    pub minus: usize,
    pub plus: usize,
    pub phi: Vec<usize>,
}

/// The exponential `base^span`, labelled over `span.a`. A vertex over
/// a ∈ V(A) is a B-labelled map from the fibre α⁻¹(a) into `base`. An edge
/// over an A-edge a has separate source and target slots, one per endpoint of
/// a, even when a is a loop.
#[derive(Clone, Debug)]
pub struct Exponential {
    pub graph: LabelGraph,
    /// Per exponential vertex: (A-vertex, image of each fibre vertex in order).
    pub vdata: Vec<(usize, Vec<usize>)>,
    pub edata: Vec<ExpEdge>,
    pub fibre: Vec<Vec<usize>>,
    pub efibre: Vec<Vec<usize>>,
    fpos: Vec<usize>,
    epos: Vec<usize>,
    vindex: HashMap<(usize, Vec<usize>), usize>,
    eindex: HashMap<ExpEdge, usize>,
}

fn odometer(choice: &mut [usize], sizes: &[usize]) -> bool {
    let mut k = choice.len();
    while k > 0 {
        k -= 1;
        choice[k] += 1;
        if choice[k] < sizes[k] {
            return true;
        }
        choice[k] = 0;
    }
    false
}

pub fn exponential(base: &LabelGraph, span: &BiLabelGraph, cap: usize) -> Result<Exponential> {
    if *base.target != *span.b {
        return Err(Error::LabelMismatch("exponent and base are labelled over different graphs".into()));
    }
    let a = &span.a;
    let g2 = &span.graph;
    let mut fibre = vec![Vec::new(); a.nverts()];
    let mut fpos = vec![0; g2.nverts()];
    for x in 0..g2.nverts() {
        fpos[x] = fibre[span.avlab[x]].len();
        fibre[span.avlab[x]].push(x);
    }
    let mut efibre = vec![Vec::new(); a.nedges()];
    let mut epos = vec![0; g2.nedges()];
    for e in 0..g2.nedges() {
        epos[e] = efibre[span.aelab[e]].len();
        efibre[span.aelab[e]].push(e);
    }
    let mut by_label = vec![Vec::new(); span.b.nverts()];
    for v in 0..base.nverts() {
        by_label[base.vlab[v]].push(v);
    }
    let unoriented = span.reversal_labelled() && base.reversal_labelled();
    let mut out = if unoriented { LabelGraph::unoriented(a.clone()) } else { LabelGraph::new(a.clone()) };
    let mut vdata = Vec::new();
    let mut vindex = HashMap::new();
    let mut over = vec![Vec::new(); a.nverts()];
    for av in 0..a.nverts() {
        let cands: Vec<&Vec<usize>> = fibre[av].iter().map(|&x| &by_label[span.bvlab[x]]).collect();
        let sizes: Vec<usize> = cands.iter().map(|c| c.len()).collect();
        if sizes.contains(&0) {
            continue;
        }
        let mut choice = vec![0; sizes.len()];
        loop {
            let f: Vec<usize> = choice.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
            let id = out.add_vertex(format!("{}{:?}", a.vnames[av], f), av);
            if id >= cap {
                return Err(Error::capacity(format!("exponential vertices over {}", a.vnames[av]), cap));
            }
            over[av].push(id);
            vindex.insert((av, f.clone()), id);
            vdata.push((av, f));
            if !odometer(&mut choice, &sizes) {
                break;
            }
        }
    }
    let mut index: HashMap<(usize, usize, usize), Vec<usize>> = HashMap::new();
    for x in 0..base.nedges() {
        let (t, h) = base.graph.edges[x];
        index.entry((t, h, base.elab[x])).or_default().push(x);
    }
    let empty = Vec::new();
    let mut edata = Vec::new();
    let mut eindex = HashMap::new();
    for ae in 0..a.nedges() {
        let (at, ah) = a.edges[ae];
        for &m in &over[at] {
            for &p in &over[ah] {
                let (fm, fp) = (&vdata[m].1, &vdata[p].1);
                let cands: Vec<&Vec<usize>> = efibre[ae]
                    .iter()
                    .map(|&e| {
                        let (t, h) = g2.edges[e];
                        index.get(&(fm[fpos[t]], fp[fpos[h]], span.belab[e])).unwrap_or(&empty)
                    })
                    .collect();
                let sizes: Vec<usize> = cands.iter().map(|c| c.len()).collect();
                if sizes.contains(&0) {
                    continue;
                }
                let mut choice = vec![0; sizes.len()];
                loop {
                    let phi: Vec<usize> = choice.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
                    let id = out.add_edge(m, p, format!("{}{:?}", a.enames[ae], phi), ae);
                    if id >= cap {
                        return Err(Error::capacity(format!("exponential edges over {}", a.enames[ae]), cap));
                    }
                    let ed = ExpEdge { a: ae, minus: m, plus: p, phi };
                    eindex.insert(ed.clone(), id);
                    edata.push(ed);
                    if !odometer(&mut choice, &sizes) {
                        break;
                    }
                }
            }
        }
    }
    if unoriented {
        let (ar, gr, br) = (a.rev.as_ref().unwrap(), g2.rev.as_ref().unwrap(), base.graph.rev.as_ref().unwrap());
        for (id, ed) in edata.iter().enumerate() {
            let ra = ar[ed.a];
            let phi = efibre[ra].iter().map(|&e| br[ed.phi[epos[gr[e]]]]).collect();
            let key = ExpEdge { a: ra, minus: ed.plus, plus: ed.minus, phi };
            let r = *eindex.get(&key).ok_or_else(|| Error::Invalid("exponential is not closed under reversal".into()))?;
            out.graph.rev.as_mut().unwrap()[id] = r;
        }
    }
    Ok(Exponential { graph: out, vdata, edata, fibre, efibre, fpos, epos, vindex, eindex })
}

/// Pullback `g1 ×_A span` labelled over B through the span.
pub fn pullback_over_b(g1: &LabelGraph, span: &BiLabelGraph) -> Result<(Pullback, LabelGraph)> {
    if *g1.target != *span.a {
        return Err(Error::LabelMismatch("graph and span disagree on A".into()));
    }
    let unoriented = g1.reversal_labelled() && span.reversal_labelled();
    let p = pullback_raw((&g1.graph, &g1.vlab, &g1.elab), (&span.graph, &span.avlab, &span.aelab), span.a.clone(), unoriented);
    let over_b = LabelGraph {
        graph: p.graph.graph.clone(),
        vlab: p.vpairs.iter().map(|&(_, x)| span.bvlab[x]).collect(),
        elab: p.epairs.iter().map(|&(_, e)| span.belab[e]).collect(),
        target: span.b.clone(),
    };
    Ok((p, over_b))
}

impl Exponential {
    /// Turns λ: g1 ×_A span → base into ρ: g1 → exponential.
    pub fn curry(&self, g1: &LabelGraph, p: &Pullback, lambda: &Morphism) -> Result<Morphism> {
        let vidx: HashMap<(usize, usize), usize> = p.vpairs.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let eidx: HashMap<(usize, usize), usize> = p.epairs.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut vmap = Vec::with_capacity(g1.nverts());
        for u in 0..g1.nverts() {
            let a = g1.vlab[u];
            let f: Vec<usize> = self.fibre[a].iter().map(|&x| lambda.vmap[vidx[&(u, x)]]).collect();
            vmap.push(*self.vindex.get(&(a, f)).ok_or_else(|| Error::Invalid("curried vertex missing".into()))?);
        }
        let mut emap = Vec::with_capacity(g1.nedges());
        for e in 0..g1.nedges() {
            let a = g1.elab[e];
            let (t, h) = g1.graph.edges[e];
            let phi = self.efibre[a].iter().map(|&x| lambda.emap[eidx[&(e, x)]]).collect();
            let key = ExpEdge { a, minus: vmap[t], plus: vmap[h], phi };
            emap.push(*self.eindex.get(&key).ok_or_else(|| Error::Invalid("curried edge missing".into()))?);
        }
        Ok(Morphism { vmap, emap })
    }

    /// Turns ρ: g1 → exponential into λ: g1 ×_A span → base.
    pub fn uncurry(&self, p: &Pullback, rho: &Morphism) -> Morphism {
        let vmap = p.vpairs.iter().map(|&(u, x)| self.vdata[rho.vmap[u]].1[self.fpos[x]]).collect();
        let emap = p.epairs.iter().map(|&(e, x)| self.edata[rho.emap[e]].phi[self.epos[x]]).collect();
        Morphism { vmap, emap }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{count_homs, enumerate_homs};

    fn isolated(n: usize) -> Arc<Graph> {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(format!("p{i}"));
        }
        Arc::new(g)
    }

    #[test]
    fn two_sets() {
        // A = B = two isolated points; base has sizes (2, 3), exponent fibres (1, 2)
        let a = isolated(2);
        let mut base = LabelGraph::new(a.clone());
        for (n, l) in [("s0", 0), ("s0'", 0), ("s1", 1), ("s1'", 1), ("s1''", 1)] {
            base.add_vertex(n, l);
        }
        let mut g = Graph::new();
        for n in ["t0", "t1", "t1'"] {
            g.add_vertex(n);
        }
        let span =
            BiLabelGraph { graph: g, avlab: vec![0, 1, 1], aelab: vec![], a: a.clone(), bvlab: vec![0, 1, 1], belab: vec![], b: a.clone() };
        let ex = exponential(&base, &span, DEFAULT_EXP_CAP).unwrap();
        let count = |l| ex.graph.vlab.iter().filter(|&&x| x == l).count();
        assert_eq!(count(0), 2);
        assert_eq!(count(1), 9);
        assert_eq!(ex.graph.nedges(), 0);
    }

    #[test]
    fn empty_fibre_gives_one_vertex() {
        let a = isolated(2);
        let base = LabelGraph::new(a.clone());
        let span = BiLabelGraph { graph: Graph::new(), avlab: vec![], aelab: vec![], a: a.clone(), bvlab: vec![], belab: vec![], b: a };
        let ex = exponential(&base, &span, DEFAULT_EXP_CAP).unwrap();
        assert_eq!(ex.graph.vlab, vec![0, 1]);
    }

    #[test]
    fn loop_slots_are_separate() {
        // A: one loop; g1: edge between two distinct vertices over the loop
        let mut a = Graph::new();
        a.add_vertex("*");
        a.add_edge(0, 0, "s");
        let a = Arc::new(a);
        let mut g1 = LabelGraph::new(a.clone());
        g1.add_vertex("x", 0);
        g1.add_vertex("y", 0);
        g1.add_edge(0, 1, "e", 0);
        let mut g2 = Graph::new();
        g2.add_vertex("z");
        g2.add_edge(0, 0, "l");
        let span = BiLabelGraph { graph: g2, avlab: vec![0], aelab: vec![0], a: a.clone(), bvlab: vec![0], belab: vec![0], b: a.clone() };
        // g3: a 2-cycle
        let mut g3 = LabelGraph::new(a.clone());
        g3.add_vertex("p", 0);
        g3.add_vertex("q", 0);
        g3.add_edge(0, 1, "f", 0);
        g3.add_edge(1, 0, "g", 0);
        let ex = exponential(&g3, &span, DEFAULT_EXP_CAP).unwrap();
        let (p, over_b) = pullback_over_b(&g1, &span).unwrap();
        let lhs = count_homs(&over_b, &g3).unwrap();
        let rhs = count_homs(&g1, &ex.graph).unwrap();
        assert_eq!(lhs, 2);
        assert_eq!(lhs, rhs);
        for lam in enumerate_homs(&over_b, &g3).unwrap() {
            let rho = ex.curry(&g1, &p, &lam).unwrap();
            assert!(rho.is_slice_morphism(&g1, &ex.graph));
            assert_eq!(ex.uncurry(&p, &rho), lam);
        }
    }
}
