use std::collections::HashMap;

use super::{LabelGraph, Morphism};
use crate::error::{Error, Result};

/// Default bound on candidate assignments explored by a Hom search.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

struct Search<'a> {
    g: &'a LabelGraph,
    f: &'a LabelGraph,
    vcands: Vec<Vec<usize>>,
    index: HashMap<(usize, usize, usize), Vec<usize>>,
    /// Representative edges of reversal orbits (all edges when oriented).
    reps: Vec<usize>,
    /// Representative edges whose later endpoint is the given vertex.
    closing: Vec<Vec<usize>>,
    use_rev: bool,
    budget: usize,
    nodes: usize,
}

impl<'a> Search<'a> {
    fn new(g: &'a LabelGraph, f: &'a LabelGraph, budget: usize) -> Result<Self> {
        g.check_same_target(f)?;
        let use_rev = g.graph.is_unoriented() && f.graph.is_unoriented();
        let mut by_label = vec![Vec::new(); g.target.nverts()];
        for v in 0..f.nverts() {
            by_label[f.vlab[v]].push(v);
        }
        let vcands = (0..g.nverts()).map(|v| by_label[g.vlab[v]].clone()).collect();
        let mut index: HashMap<(usize, usize, usize), Vec<usize>> = HashMap::new();
        for x in 0..f.nedges() {
            let (t, h) = f.graph.edges[x];
            index.entry((t, h, f.elab[x])).or_default().push(x);
        }
        let reps: Vec<usize> = (0..g.nedges()).filter(|&e| !use_rev || g.graph.rev_of(e).unwrap() >= e).collect();
        let mut closing = vec![Vec::new(); g.nverts()];
        for &e in &reps {
            let (t, h) = g.graph.edges[e];
            closing[t.max(h)].push(e);
        }
        Ok(Search { g, f, vcands, index, reps, closing, use_rev, budget, nodes: 0 })
    }

    fn edge_cands(&self, vmap: &[usize], e: usize) -> Vec<usize> {
        let (t, h) = self.g.graph.edges[e];
        let Some(list) = self.index.get(&(vmap[t], vmap[h], self.g.elab[e])) else {
            return Vec::new();
        };
        if self.use_rev && self.g.graph.rev_of(e) == Some(e) {
            list.iter().copied().filter(|&x| self.f.graph.rev_of(x) == Some(x)).collect()
        } else {
            list.clone()
        }
    }

    fn has_edge(&self, vmap: &[usize], e: usize) -> bool {
        let (t, h) = self.g.graph.edges[e];
        match self.index.get(&(vmap[t], vmap[h], self.g.elab[e])) {
            None => false,
            Some(list) => !(self.use_rev && self.g.graph.rev_of(e) == Some(e)) || list.iter().any(|&x| self.f.graph.rev_of(x) == Some(x)),
        }
    }

    /// Visits every vertex map admitting at least one edge map. The visitor
    /// returns `false` to stop the search.
    fn run(&mut self, visit: &mut dyn FnMut(&Self, &[usize]) -> Result<bool>) -> Result<()> {
        let mut vmap = vec![0; self.g.nverts()];
        self.descend(0, &mut vmap, visit).map(|_| ())
    }

    fn descend(&mut self, v: usize, vmap: &mut Vec<usize>, visit: &mut dyn FnMut(&Self, &[usize]) -> Result<bool>) -> Result<bool> {
        if v == self.g.nverts() {
            return visit(self, vmap);
        }
        for i in 0..self.vcands[v].len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::capacity("Hom search nodes", self.budget));
            }
            vmap[v] = self.vcands[v][i];
            if self.closing[v].iter().all(|&e| self.has_edge(vmap, e)) && !self.descend(v + 1, vmap, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn complete(&self, vmap: &[usize], cands: &[Vec<usize>], choice: &[usize]) -> Morphism {
        let mut emap = vec![0; self.g.nedges()];
        for (k, &e) in self.reps.iter().enumerate() {
            let x = cands[k][choice[k]];
            emap[e] = x;
            if self.use_rev {
                emap[self.g.graph.rev_of(e).unwrap()] = self.f.graph.rev_of(x).unwrap();
            }
        }
        Morphism { vmap: vmap.to_vec(), emap }
    }
}

/// All slice morphisms from `g` to `f`, sorted by (vertex map, edge map).
pub fn enumerate_homs(g: &LabelGraph, f: &LabelGraph) -> Result<Vec<Morphism>> {
    enumerate_homs_with_budget(g, f, DEFAULT_NODE_BUDGET)
}

pub fn enumerate_homs_with_budget(g: &LabelGraph, f: &LabelGraph, budget: usize) -> Result<Vec<Morphism>> {
    let mut s = Search::new(g, f, budget)?;
    let mut out = Vec::new();
    s.run(&mut |s, vmap| {
        let cands: Vec<Vec<usize>> = s.reps.iter().map(|&e| s.edge_cands(vmap, e)).collect();
        let mut choice = vec![0; cands.len()];
        loop {
            out.push(s.complete(vmap, &cands, &choice));
            if out.len() > s.budget {
                return Err(Error::capacity("Hom enumeration size", s.budget));
            }
            // odometer, last position fastest
            let mut k = cands.len();
            loop {
                if k == 0 {
                    return Ok(true);
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < cands[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    })?;
    Ok(out)
}

/// Number of slice morphisms from `g` to `f`.
pub fn count_homs(g: &LabelGraph, f: &LabelGraph) -> Result<u64> {
    let mut s = Search::new(g, f, DEFAULT_NODE_BUDGET)?;
    let mut total: u64 = 0;
    s.run(&mut |s, vmap| {
        let mut prod: u64 = 1;
        for &e in &s.reps {
            prod = prod.checked_mul(s.edge_cands(vmap, e).len() as u64).ok_or_else(|| Error::capacity("Hom count", u64::MAX as usize))?;
        }
        total = total.checked_add(prod).ok_or_else(|| Error::capacity("Hom count", u64::MAX as usize))?;
        Ok(true)
    })?;
    Ok(total)
}

/// First morphism in the enumeration order, if any.
pub fn find_hom(g: &LabelGraph, f: &LabelGraph) -> Result<Option<Morphism>> {
    let mut s = Search::new(g, f, DEFAULT_NODE_BUDGET)?;
    let mut found = None;
    s.run(&mut |s, vmap| {
        let cands: Vec<Vec<usize>> = s.reps.iter().map(|&e| s.edge_cands(vmap, e)).collect();
        found = Some(s.complete(vmap, &cands, &vec![0; cands.len()]));
        Ok(false)
    })?;
    Ok(found)
}

pub fn hom_exists(g: &LabelGraph, f: &LabelGraph) -> Result<bool> {
    Ok(find_hom(g, f)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use std::sync::Arc;

    fn point() -> Arc<Graph> {
        let mut a = Graph::new();
        a.add_vertex("*");
        Arc::new(a)
    }

    #[test]
    fn vertex_into_n_vertices() {
        let a = point();
        let mut g = LabelGraph::new(a.clone());
        g.add_vertex("x", 0);
        let mut f = LabelGraph::new(a);
        for i in 0..5 {
            f.add_vertex(format!("y{i}"), 0);
        }
        let homs = enumerate_homs(&g, &f).unwrap();
        assert_eq!(homs.len(), 5);
        assert_eq!(count_homs(&g, &f).unwrap(), 5);
        assert!(homs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn loop_to_loop() {
        let mut a = Graph::new();
        a.add_vertex("*");
        a.add_edge(0, 0, "c");
        let a = Arc::new(a);
        let g = LabelGraph::identity(a.clone());
        assert_eq!(enumerate_homs(&g, &g).unwrap().len(), 1);
    }

    #[test]
    fn reversal_orbits_respected() {
        let mut a = Graph::unoriented();
        a.add_vertex("*");
        a.add_edge_pair(0, 0, "s", "S");
        let a = Arc::new(a);
        let mut g = LabelGraph::unoriented(a.clone());
        g.add_vertex("x", 0);
        g.add_vertex("y", 0);
        g.add_edge_pair(0, 1, "e", "E", 0);
        // f: two vertices joined both ways plus a loop orbit
        let mut f = LabelGraph::unoriented(a);
        f.add_vertex("p", 0);
        f.add_vertex("q", 0);
        f.add_edge_pair(0, 1, "u", "U", 0);
        f.add_edge_pair(1, 0, "w", "W", 0);
        f.add_edge_pair(0, 0, "l", "L", 0);
        let homs = enumerate_homs(&g, &f).unwrap();
        for m in &homs {
            assert!(m.is_slice_morphism(&g, &f));
        }
        // s-edges of f: u (p->q), w (q->p), l (p->p)
        assert_eq!(homs.len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let a = point();
        let mut g = LabelGraph::new(a.clone());
        for i in 0..6 {
            g.add_vertex(format!("x{i}"), 0);
        }
        let mut f = LabelGraph::new(a);
        for i in 0..10 {
            f.add_vertex(format!("y{i}"), 0);
        }
        assert!(matches!(enumerate_homs_with_budget(&g, &f, 1000), Err(Error::Capacity { .. })));
    }
}
