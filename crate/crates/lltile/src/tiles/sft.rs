//! SFTs given by allowed patterns on generator words of bounded length, and
//! their conversion to and from Hom-shift targets.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, LabelGraph};

/// An SFT over the monoid of an oriented one-vertex generator graph: a
/// pattern assigns a symbol to every word of length at most `radius`.
#[derive(Clone, Debug)]
pub struct Sft {
    pub alphabet: Vec<String>,
    pub gens: Arc<Graph>,
    pub radius: usize,
    /// Words in shortlex order; the empty word comes first.
    pub words: Vec<Vec<usize>>,
    pub patterns: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

fn check_gens(gens: &Graph) -> Result<()> {
    if gens.nverts() != 1 || gens.is_unoriented() {
        return Err(Error::Invalid("SFT generators must form an oriented one-vertex graph".into()));
    }
    Ok(())
}

fn words_upto(ngens: usize, radius: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..ngens {
                let mut v: Vec<usize> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

impl Sft {
    pub fn new(alphabet: Vec<String>, gens: Arc<Graph>, radius: usize, mut patterns: Vec<Vec<usize>>) -> Result<Sft> {
        check_gens(&gens)?;
        let words = words_upto(gens.nedges(), radius);
        if let Some(p) = patterns.iter().find(|p| p.len() != words.len() || p.iter().any(|&x| x >= alphabet.len())) {
            return Err(Error::Invalid(format!("pattern {p:?} does not fit {} words", words.len())));
        }
        patterns.sort();
        patterns.dedup();
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(Sft { alphabet, gens, radius, words, patterns, index })
    }

    /// All patterns satisfying `pred`.
    pub fn from_predicate(alphabet: Vec<String>, gens: Arc<Graph>, radius: usize, pred: impl Fn(&Sft, &[usize]) -> bool) -> Result<Sft> {
        let mut s = Sft::new(alphabet, gens, radius, Vec::new())?;
        let (k, n) = (s.alphabet.len(), s.words.len());
        let total = (k as u128).checked_pow(n as u32).filter(|&t| t <= 1 << 20).ok_or_else(|| Error::capacity("SFT patterns", 1 << 20))?;
        let mut pats = Vec::new();
        for code in 0..total {
            let mut c = code;
            let p: Vec<usize> = (0..n)
                .map(|_| {
                    let x = (c % k as u128) as usize;
                    c /= k as u128;
                    x
                })
                .collect();
            if pred(&s, &p) {
                pats.push(p);
            }
        }
        pats.sort();
        s.patterns = pats;
        Ok(s)
    }

    pub fn word_index(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Brute-force solutions on a finite window labelled over the
    /// generators: every vertex whose whole pattern scope lies inside must
    /// show an allowed pattern. Out-edges must be deterministic per label.
    pub fn solutions_on(&self, g: &LabelGraph, cap: usize) -> Result<Vec<Vec<usize>>> {
        if *g.target != *self.gens {
            return Err(Error::LabelMismatch("window is not labelled by the SFT generators".into()));
        }
        let ns = self.gens.nedges();
        let mut succ = vec![vec![None; ns]; g.nverts()];
        for e in 0..g.nedges() {
            let (t, h) = g.graph.edges[e];
            if succ[t][g.elab[e]].replace(h).is_some() {
                return Err(Error::Invalid("window has two out-edges with the same label".into()));
            }
        }
        let scopes: Vec<Option<Vec<usize>>> = (0..g.nverts())
            .map(|v| self.words.iter().map(|w| w.iter().try_fold(v, |u, &s| succ[u][s])).collect::<Option<Vec<usize>>>())
            .collect();
        let k = self.alphabet.len();
        let n = g.nverts();
        let total = (k as u128)
            .checked_pow(n as u32)
            .filter(|&t| t <= cap as u128)
            .ok_or_else(|| Error::capacity("brute-force SFT assignments", cap))?;
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let x: Vec<usize> = (0..n)
                .map(|_| {
                    let d = (c % k as u128) as usize;
                    c /= k as u128;
                    d
                })
                .collect();
            let ok = scopes.iter().flatten().all(|sc| {
                let p: Vec<usize> = sc.iter().map(|&u| x[u]).collect();
                self.patterns.binary_search(&p).is_ok()
            });
            if ok {
                out.push(x);
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Hom-shift target whose vertices are the allowed patterns, with an
/// s-edge P → P′ whenever P′(w) = P(s·w) for all |w| < radius.
pub fn sft_to_dhs(sft: &Sft) -> LabelGraph {
    let mut f = LabelGraph::new(sft.gens.clone());
    for p in &sft.patterns {
        let name: Vec<&str> = p.iter().map(|&x| sft.alphabet[x].as_str()).collect();
        f.add_vertex(name.join(""), 0);
    }
    let short: Vec<usize> = (0..sft.words.len()).filter(|&i| sft.words[i].len() < sft.radius).collect();
    for s in 0..sft.gens.nedges() {
        let shifted: Vec<usize> = short
            .iter()
            .map(|&i| {
                let mut w = vec![s];
                w.extend(&sft.words[i]);
                sft.word_index(&w).unwrap()
            })
            .collect();
        for (i, p) in sft.patterns.iter().enumerate() {
            for (j, q) in sft.patterns.iter().enumerate() {
                if short.iter().zip(&shifted).all(|(&w, &sw)| q[w] == p[sw]) {
                    f.add_edge(i, j, format!("{}{}{}", i, sft.gens.enames[s], j), s);
                }
            }
        }
    }
    f
}

/// Radius-1 SFT over the vertices of F: a pattern is allowed when F has an
/// s-edge from its centre to its s-symbol for every generator s.
pub fn dhs_to_sft(f: &LabelGraph) -> Result<Sft> {
    check_gens(&f.target)?;
    let alphabet: Vec<String> = f.graph.vnames.clone();
    let gens = f.target.clone();
    let mut has = std::collections::HashSet::new();
    for e in 0..f.nedges() {
        let (t, h) = f.graph.edges[e];
        has.insert((t, f.elab[e], h));
    }
    Sft::from_predicate(alphabet, gens, 1, |s, p| (0..s.gens.nedges()).all(|g| has.contains(&(p[0], g, p[s.word_index(&[g]).unwrap()]))))
}

/// Projection of a Hom-shift solution back to SFT symbols: each vertex
/// keeps the centre symbol of its pattern.
pub fn project_patterns(sft: &Sft, x: &[usize]) -> Vec<usize> {
    x.iter().map(|&p| sft.patterns[p][0]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_homs;
    use std::collections::BTreeSet;

    fn one_gen() -> Arc<Graph> {
        let mut g = Graph::new();
        g.add_vertex("*");
        g.add_edge(0, 0, "s");
        Arc::new(g)
    }

    fn path(n: usize) -> LabelGraph {
        let mut g = LabelGraph::new(one_gen());
        for i in 0..n {
            g.add_vertex(format!("{i}"), 0);
        }
        for i in 0..n - 1 {
            g.add_edge(i, i + 1, format!("s{i}"), 0);
        }
        g
    }

    fn golden() -> Sft {
        let ab = vec!["0".to_string(), "1".to_string()];
        Sft::from_predicate(ab, one_gen(), 1, |s, p| !(p[0] == 1 && p[s.word_index(&[0]).unwrap()] == 1)).unwrap()
    }

    fn hom_vertex_maps(g: &LabelGraph, f: &LabelGraph) -> BTreeSet<Vec<usize>> {
        enumerate_homs(g, f).unwrap().into_iter().map(|m| m.vmap).collect()
    }

    #[test]
    fn full_shift_is_complete_graph() {
        let ab = vec!["0".to_string(), "1".to_string()];
        let s = Sft::from_predicate(ab, one_gen(), 0, |_, _| true).unwrap();
        let f = sft_to_dhs(&s);
        assert_eq!(f.nverts(), 2);
        assert_eq!(f.nedges(), 4);
    }

    #[test]
    fn golden_mean_forward() {
        let f = sft_to_dhs(&golden());
        assert_eq!(f.nverts(), 3);
        // 00 -> 00, 00 -> 01, 01 -> 10, 10 -> 00, 10 -> 01
        assert_eq!(f.nedges(), 5);
    }

    #[test]
    fn forward_preserves_solutions_on_path() {
        let s = golden();
        let f = sft_to_dhs(&s);
        let g = path(6);
        let direct: BTreeSet<Vec<usize>> = s.solutions_on(&g, 1 << 16).unwrap().into_iter().collect();
        assert_eq!(direct.len(), 21);
        let via: BTreeSet<Vec<usize>> = hom_vertex_maps(&g, &f).iter().map(|x| project_patterns(&s, x)).collect();
        assert_eq!(direct, via);
    }

    #[test]
    fn backward_preserves_solutions_on_path() {
        let mut f = LabelGraph::new(one_gen());
        for n in ["x", "y", "z"] {
            f.add_vertex(n, 0);
        }
        for (t, h) in [(0, 1), (1, 2), (2, 0), (2, 2)] {
            f.add_edge(t, h, format!("{t}{h}"), 0);
        }
        let s = dhs_to_sft(&f).unwrap();
        let g = path(6);
        let direct: BTreeSet<Vec<usize>> = s.solutions_on(&g, 1 << 16).unwrap().into_iter().collect();
        assert_eq!(direct, hom_vertex_maps(&g, &f));
        // and back again
        let f2 = sft_to_dhs(&s);
        let again: BTreeSet<Vec<usize>> = hom_vertex_maps(&g, &f2).iter().map(|x| project_patterns(&s, x)).collect();
        assert_eq!(direct, again);
    }
}
